from __future__ import annotations
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from kcmap.common.errors import PreconditionError
from kcmap.nnf.literals import var_of
from kcmap.nnf.order import VarOrder
from kcmap.nnf.store import AND, FALSE, LIT, TRUE, NnfStore, Sentence, decision_of, reachable



class ObddManager:
    """Reduced ordered decision diagrams living in an NNF store.

    A decision node is (x ∧ hi) ∨ (¬x ∧ lo); the store's unique table merges
    isomorphic nodes, and find_or_make elides redundant tests, so two reduced
    diagrams for the same function under one order share a root id.
    """

    def __init__(self, store: NnfStore, order: VarOrder):
        self.store = store
        self.order = order
        self.leaf1 = store.true()
        self.leaf0 = store.false()
        self.operation_cache: Dict[Tuple[str, int, int], int] = {}
        self.apply_count = 0

    def top(self, u: int) -> Optional[Tuple[int, int, int]]:
        if u == self.leaf0 or u == self.leaf1:
            return None
        d = decision_of(self.store, u)
        if d is None:
            raise PreconditionError(f"node {u} is not a decision node")
        return d

    def level(self, u: int) -> int:
        d = self.top(u)
        if d is None:
            return len(self.order)
        return self.order.rank(d[0])

    def find_or_make(self, var: int, hi: int, lo: int) -> int:
        if hi == lo:
            return hi
        return self.store.decision(var, hi, lo)

    def literal(self, lit: int) -> int:
        v = var_of(lit)
        if v not in self.order:
            raise PreconditionError(f"x{v} is not in the variable order")
        return self.find_or_make(v, self.leaf1, self.leaf0) if lit > 0 else self.find_or_make(v, self.leaf0, self.leaf1)

    def clause(self, lits: Iterable[int]) -> int:
        ordered = sorted(set(lits), key=lambda l: self.order.rank(var_of(l)), reverse=True)
        if any(-l in ordered for l in ordered):
            return self.leaf1
        node = self.leaf0
        for l in ordered:
            node = self.find_or_make(var_of(l), self.leaf1, node) if l > 0 else self.find_or_make(var_of(l), node, self.leaf1)
        return node

    def term(self, lits: Iterable[int]) -> int:
        ordered = sorted(set(lits), key=lambda l: self.order.rank(var_of(l)), reverse=True)
        if any(-l in ordered for l in ordered):
            return self.leaf0
        node = self.leaf1
        for l in ordered:
            node = self.find_or_make(var_of(l), node, self.leaf0) if l > 0 else self.find_or_make(var_of(l), self.leaf0, node)
        return node

    def _cofactors(self, u: int, var: int) -> Tuple[int, int]:
        d = self.top(u)
        if d is not None and d[0] == var:
            return d[1], d[2]
        return u, u

    def apply(self, op: str, u: int, v: int) -> int:
        self.apply_count += 1
        one, zero = self.leaf1, self.leaf0
        if op == "and":
            if u == zero or v == zero:
                return zero
            if u == one:
                return v
            if v == one or u == v:
                return u
        elif op == "or":
            if u == one or v == one:
                return one
            if u == zero:
                return v
            if v == zero or u == v:
                return u
        else:
            raise ValueError(f"unknown apply operation {op!r}")
        if u > v:
            u, v = v, u
        key = (op, u, v)
        hit = self.operation_cache.get(key)
        if hit is not None:
            return hit
        lu, lv = self.level(u), self.level(v)
        var = self.order.order[min(lu, lv)]
        uh, ul = self._cofactors(u, var)
        vh, vl = self._cofactors(v, var)
        out = self.find_or_make(var, self.apply(op, uh, vh), self.apply(op, ul, vl))
        self.operation_cache[key] = out
        return out

    def apply_and(self, u: int, v: int) -> int:
        return self.apply("and", u, v)

    def apply_or(self, u: int, v: int) -> int:
        return self.apply("or", u, v)

    def negate(self, u: int) -> int:
        memo: Dict[int, int] = {self.leaf0: self.leaf1, self.leaf1: self.leaf0}

        def go(n: int) -> int:
            if n in memo:
                return memo[n]
            var, hi, lo = self.top(n)  # type: ignore[misc]
            memo[n] = self.find_or_make(var, go(hi), go(lo))
            return memo[n]

        return go(u)

    def restrict(self, u: int, term: Iterable[int]) -> int:
        assign = {var_of(l): l > 0 for l in term}
        memo: Dict[int, int] = {}

        def go(n: int) -> int:
            d = self.top(n)
            if d is None:
                return n
            if n in memo:
                return memo[n]
            var, hi, lo = d
            if var in assign:
                out = go(hi) if assign[var] else go(lo)
            else:
                out = self.find_or_make(var, go(hi), go(lo))
            memo[n] = out
            return out

        return go(u)

    def exists(self, u: int, var: int) -> int:
        return self.apply_or(self.restrict(u, [var]), self.restrict(u, [-var]))

    def reduce(self, u: int) -> int:
        """Rebuilds a decision DAG that respects the order into its reduced form."""
        m: Dict[int, int] = {self.leaf0: self.leaf0, self.leaf1: self.leaf1}
        for r in reachable(self.store, u):
            if r in m:
                continue
            d = decision_of(self.store, r)
            if d is None:
                continue
            var, hi, lo = d
            m[r] = self.find_or_make(var, m[hi], m[lo])
        if u not in m:
            raise PreconditionError(f"node {u} is not a decision node")
        return m[u]

    def from_sentence(self, s: Sentence) -> int:
        """Bottom-up apply over an arbitrary NNF sentence."""
        m: Dict[int, int] = {}
        for r in reachable(s.store, s.root):
            n = s.store.nodes[r]
            if n.kind == TRUE:
                m[r] = self.leaf1
            elif n.kind == FALSE:
                m[r] = self.leaf0
            elif n.kind == LIT:
                m[r] = self.literal(n.lit)
            else:
                acc = self.leaf1 if n.kind == AND else self.leaf0
                for c in n.children:
                    acc = self.apply_and(acc, m[c]) if n.kind == AND else self.apply_or(acc, m[c])
                m[r] = acc
        return m[s.root]

    def sentence(self, u: int) -> Sentence:
        return Sentence(self.store, u)


def obdd_nodes(s: Sentence) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """(decision nodes, sinks) reachable through decision edges."""
    store = s.store
    decisions = set()
    sinks = set()
    stack = [s.root]
    while stack:
        r = stack.pop()
        if r in decisions or r in sinks:
            continue
        kind = store.nodes[r].kind
        if kind in (TRUE, FALSE):
            sinks.add(r)
            continue
        d = decision_of(store, r)
        if d is None:
            raise PreconditionError(f"node {r} is not a decision node")
        decisions.add(r)
        stack.extend((d[1], d[2]))
    return frozenset(decisions), frozenset(sinks)


def obdd_node_count(s: Sentence) -> int:
    decisions, sinks = obdd_nodes(s)
    return len(decisions) + len(sinks)


def decision_count(s: Sentence) -> int:
    return len(obdd_nodes(s)[0])


def is_reduced(s: Sentence) -> bool:
    """No redundant test and no two decision nodes with the same (var, hi, lo)."""
    decisions, _ = obdd_nodes(s)
    seen = set()
    for r in decisions:
        var, hi, lo = decision_of(s.store, r)  # type: ignore[misc]
        if hi == lo or (var, hi, lo) in seen:
            return False
        seen.add((var, hi, lo))
    return True
