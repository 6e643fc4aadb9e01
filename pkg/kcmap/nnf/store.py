from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from kcmap.common.errors import InvalidReferenceError, MissingVariableError
from kcmap.nnf.literals import var_of

TRUE = "T"
FALSE = "F"
LIT = "L"
AND = "A"
OR = "O"

KINDS = (TRUE, FALSE, LIT, AND, OR)


@dataclass(frozen=True)
class Node:
    kind: str
    lit: int = 0
    children: Tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.kind in (TRUE, FALSE, LIT)

    def key(self) -> Tuple:
        if self.kind == LIT:
            return (LIT, self.lit)
        if self.kind in (AND, OR):
            return (self.kind, self.children)
        return (self.kind,)


class NnfStore:
    """Append-only, hash-consed node table. Node ids are dense and every child id is smaller than its parent's."""

    def __init__(self, num_vars: int = 0):
        self.num_vars = int(num_vars)
        self.nodes: List[Node] = []
        self._unique: Dict[Tuple, int] = {}
        self._vars: Dict[int, FrozenSet[int]] = {}
        self._height: Dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, ref: int) -> Node:
        if not isinstance(ref, int) or ref < 0 or ref >= len(self.nodes):
            raise InvalidReferenceError(f"node id {ref} out of range (store has {len(self.nodes)} nodes)")
        return self.nodes[ref]

    def ensure_vars(self, n: int) -> None:
        if n > self.num_vars:
            self.num_vars = int(n)

    def _find_or_make(self, node: Node) -> int:
        key = node.key()
        ref = self._unique.get(key)
        if ref is not None:
            return ref
        ref = len(self.nodes)
        for c in node.children:
            assert c < ref, "child id must precede parent"
        self.nodes.append(node)
        self._unique[key] = ref
        return ref

    def build(self, kind: str, children: Iterable[int] = (), lit: int = 0) -> int:
        if kind == TRUE:
            return self._find_or_make(Node(TRUE))
        if kind == FALSE:
            return self._find_or_make(Node(FALSE))
        if kind == LIT:
            if lit == 0:
                raise ValueError("literal 0 is not a variable")
            self.ensure_vars(var_of(lit))
            return self._find_or_make(Node(LIT, lit=int(lit)))
        if kind not in (AND, OR):
            raise ValueError(f"unknown node kind {kind!r}")
        kids = sorted(set(children))
        for c in kids:
            self.node(c)
        if not kids:
            return self.true() if kind == AND else self.false()
        return self._find_or_make(Node(kind, children=tuple(kids)))

    def true(self) -> int:
        return self.build(TRUE)

    def false(self) -> int:
        return self.build(FALSE)

    def literal(self, lit: int) -> int:
        return self.build(LIT, lit=lit)

    def conj(self, children: Iterable[int]) -> int:
        return self.build(AND, children)

    def disj(self, children: Iterable[int]) -> int:
        return self.build(OR, children)

    def decision(self, var: int, hi: int, lo: int) -> int:
        """(var ∧ hi) ∨ (¬var ∧ lo), without reduction."""
        return self.disj([self.conj([self.literal(var), hi]), self.conj([self.literal(-var), lo])])

    def vars_at(self, ref: int) -> FrozenSet[int]:
        got = self._vars.get(ref)
        if got is not None:
            return got
        # children precede parents, so an ascending sweep fills the cache bottom-up
        for r in reachable(self, ref):
            if r in self._vars:
                continue
            n = self.nodes[r]
            if n.kind == LIT:
                self._vars[r] = frozenset([var_of(n.lit)])
            elif n.kind in (AND, OR):
                acc: FrozenSet[int] = frozenset()
                for c in n.children:
                    acc = acc | self._vars[c]
                self._vars[r] = acc
            else:
                self._vars[r] = frozenset()
        return self._vars[ref]

    def height_at(self, ref: int) -> int:
        got = self._height.get(ref)
        if got is not None:
            return got
        for r in reachable(self, ref):
            if r in self._height:
                continue
            n = self.nodes[r]
            self._height[r] = 1 + max(self._height[c] for c in n.children) if n.children else 0
        return self._height[ref]


@dataclass(frozen=True)
class Sentence:
    store: NnfStore = field(repr=False)
    root: int

    def __post_init__(self) -> None:
        self.store.node(self.root)

    @property
    def node(self) -> Node:
        return self.store.nodes[self.root]

    def at(self, ref: int) -> "Sentence":
        return Sentence(self.store, ref)


def build_node(store: NnfStore, kind: str, children: Iterable[int] = (), lit: int = 0) -> int:
    return store.build(kind, children, lit)


def reachable(store: NnfStore, root: int) -> List[int]:
    """Ids reachable from root, ascending (a topological order: children first)."""
    store.node(root)
    seen = {root}
    stack = [root]
    while stack:
        r = stack.pop()
        for c in store.nodes[r].children:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return sorted(seen)


def vars_of(s: Sentence) -> FrozenSet[int]:
    return s.store.vars_at(s.root)


def size(s: Sentence) -> int:
    return sum(len(s.store.nodes[r].children) for r in reachable(s.store, s.root))


def height(s: Sentence) -> int:
    return s.store.height_at(s.root)


def node_count(s: Sentence) -> int:
    return len(reachable(s.store, s.root))


def evaluate(s: Sentence, a: Mapping[int, bool]) -> bool:
    vals: Dict[int, bool] = {}
    for r in reachable(s.store, s.root):
        n = s.store.nodes[r]
        if n.kind == TRUE:
            vals[r] = True
        elif n.kind == FALSE:
            vals[r] = False
        elif n.kind == LIT:
            v = var_of(n.lit)
            if v not in a:
                raise MissingVariableError(v)
            vals[r] = bool(a[v]) == (n.lit > 0)
        elif n.kind == AND:
            vals[r] = all(vals[c] for c in n.children)
        else:
            vals[r] = any(vals[c] for c in n.children)
    return vals[s.root]


def decision_of(store: NnfStore, ref: int) -> Optional[Tuple[int, int, int]]:
    """(var, hi, lo) when ref has the shape (X ∧ hi) ∨ (¬X ∧ lo) with hi, lo constants or or-nodes."""
    n = store.nodes[ref]
    if n.kind != OR or len(n.children) != 2:
        return None
    halves = []
    for c in n.children:
        cn = store.nodes[c]
        if cn.kind != AND or len(cn.children) != 2:
            return None
        a, b = (store.nodes[x] for x in cn.children)
        if a.kind == LIT and b.kind in (TRUE, FALSE, OR):
            halves.append((a.lit, cn.children[1]))
        elif b.kind == LIT and a.kind in (TRUE, FALSE, OR):
            halves.append((b.lit, cn.children[0]))
        else:
            return None
    (l1, s1), (l2, s2) = halves
    if l1 != -l2:
        return None
    return (var_of(l1), s1, s2) if l1 > 0 else (var_of(l1), s2, s1)


def decision_view(s: Sentence) -> Dict[int, Tuple[int, int, int]]:
    """Decision nodes reachable from root through decision edges only."""
    out: Dict[int, Tuple[int, int, int]] = {}
    stack = [s.root]
    while stack:
        r = stack.pop()
        if r in out:
            continue
        d = decision_of(s.store, r)
        if d is None:
            continue
        out[r] = d
        stack.extend((d[1], d[2]))
    return out
