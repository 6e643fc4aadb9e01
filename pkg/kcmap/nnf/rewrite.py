from __future__ import annotations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional

from kcmap.nnf.literals import Clause, Term, sorted_sets, var_of
from kcmap.nnf.store import AND, FALSE, LIT, OR, TRUE, Node, NnfStore, Sentence, reachable

# leaf_map(ref, node) returns a replacement id in the same store, or None to keep the node
LeafMap = Callable[[int, Node], Optional[int]]


def rebuild(s: Sentence, leaf_map: LeafMap) -> Sentence:
    """Copies the DAG bottom-up, replacing leaves (or any node) via leaf_map; no simplification."""
    store = s.store
    m: Dict[int, int] = {}
    for r in reachable(store, s.root):
        n = store.nodes[r]
        hit = leaf_map(r, n)
        if hit is not None:
            m[r] = hit
        elif n.kind in (AND, OR):
            m[r] = store.build(n.kind, [m[c] for c in n.children])
        else:
            m[r] = r
    return Sentence(store, m[s.root])


def substitute(s: Sentence, gamma: Iterable[int]) -> Sentence:
    """Verbatim conditioning: leaves over Vars(gamma) become True/False, nothing else changes."""
    g = frozenset(gamma)
    store = s.store
    t, f = store.true(), store.false()

    def leaf(_r: int, n: Node) -> Optional[int]:
        if n.kind != LIT:
            return None
        if n.lit in g:
            return t
        if -n.lit in g:
            return f
        return None

    return rebuild(s, leaf)


def simplify(s: Sentence) -> Sentence:
    """Constant propagation plus single-child collapse."""
    store = s.store
    t, f = store.true(), store.false()
    m: Dict[int, int] = {}
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind == AND:
            kids = [m[c] for c in n.children]
            if f in kids:
                m[r] = f
                continue
            kids = sorted(set(k for k in kids if k != t))
            m[r] = t if not kids else kids[0] if len(kids) == 1 else store.conj(kids)
        elif n.kind == OR:
            kids = [m[c] for c in n.children]
            if t in kids:
                m[r] = t
                continue
            kids = sorted(set(k for k in kids if k != f))
            m[r] = f if not kids else kids[0] if len(kids) == 1 else store.disj(kids)
        else:
            m[r] = r
    return Sentence(store, m[s.root])


def replace_vars_with_true(s: Sentence, xs: Iterable[int]) -> Sentence:
    xset = frozenset(xs)
    t = s.store.true()
    return rebuild(s, lambda _r, n: t if n.kind == LIT and var_of(n.lit) in xset else None)


# -- flat sentences as clause / term sets ---------------------------------------------


def _leaf_lits(store: NnfStore, ref: int) -> Optional[FrozenSet[int]]:
    n = store.nodes[ref]
    if n.kind == LIT:
        return frozenset([n.lit])
    if n.kind in (AND, OR) and all(store.nodes[c].kind == LIT for c in n.children):
        return frozenset(store.nodes[c].lit for c in n.children)
    return None


def cnf_clauses(s: Sentence) -> List[Clause]:
    """Clauses of a CNF-shaped sentence (root And of clauses, a single clause, a literal or a constant)."""
    store = s.store
    n = s.node
    if n.kind == TRUE:
        return []
    if n.kind == FALSE:
        return [frozenset()]
    if n.kind in (LIT, OR):
        lits = _leaf_lits(store, s.root)
        if lits is None:
            raise ValueError("not a clause")
        return [lits]
    out: List[Clause] = []
    for c in n.children:
        cn = store.nodes[c]
        if cn.kind == TRUE:
            continue
        if cn.kind == FALSE:
            out.append(frozenset())
        elif cn.kind == AND:
            # nested term: each literal is a unit clause
            lits = _leaf_lits(store, c)
            if lits is None:
                raise ValueError("not a CNF")
            out.extend(frozenset([l]) for l in lits)
        else:
            lits = _leaf_lits(store, c)
            if lits is None:
                raise ValueError("not a CNF")
            out.append(lits)
    return out


def dnf_terms(s: Sentence) -> List[Term]:
    store = s.store
    n = s.node
    if n.kind == TRUE:
        return [frozenset()]
    if n.kind == FALSE:
        return []
    if n.kind in (LIT, AND):
        lits = _leaf_lits(store, s.root)
        if lits is None:
            raise ValueError("not a term")
        return [lits]
    out: List[Term] = []
    for c in n.children:
        cn = store.nodes[c]
        if cn.kind == FALSE:
            continue
        if cn.kind == TRUE:
            out.append(frozenset())
        elif cn.kind == OR:
            lits = _leaf_lits(store, c)
            if lits is None:
                raise ValueError("not a DNF")
            out.extend(frozenset([l]) for l in lits)
        else:
            lits = _leaf_lits(store, c)
            if lits is None:
                raise ValueError("not a DNF")
            out.append(lits)
    return out


def build_clause(store: NnfStore, clause: Iterable[int]) -> int:
    lits = sorted(clause, key=lambda l: (var_of(l), l < 0))
    if len(lits) == 1:
        return store.literal(lits[0])
    return store.disj(store.literal(l) for l in lits)


def build_term(store: NnfStore, term: Iterable[int]) -> int:
    lits = sorted(term, key=lambda l: (var_of(l), l < 0))
    if len(lits) == 1:
        return store.literal(lits[0])
    return store.conj(store.literal(l) for l in lits)


def build_cnf(store: NnfStore, clauses: Iterable[Clause]) -> Sentence:
    cs = sorted_sets(clauses)
    if not cs:
        return Sentence(store, store.true())
    if any(len(c) == 0 for c in cs):
        return Sentence(store, store.false())
    return Sentence(store, store.conj(build_clause(store, c) for c in cs))


def build_dnf(store: NnfStore, terms: Iterable[Term]) -> Sentence:
    ts = sorted_sets(terms)
    if not ts:
        return Sentence(store, store.false())
    if any(len(t) == 0 for t in ts):
        return Sentence(store, store.true())
    return Sentence(store, store.disj(build_term(store, t) for t in ts))


def copy_into(s: Sentence, store: NnfStore) -> Sentence:
    """Copies s into another store; a no-op when it already lives there."""
    if s.store is store:
        return s
    store.ensure_vars(s.store.num_vars)
    m: Dict[int, int] = {}
    for r in reachable(s.store, s.root):
        n = s.store.nodes[r]
        if n.kind in (AND, OR):
            m[r] = store.build(n.kind, [m[c] for c in n.children])
        else:
            m[r] = store.build(n.kind, lit=n.lit)
    return Sentence(store, m[s.root])


def de_morgan(s: Sentence) -> Sentence:
    """Negation by swapping and/or, flipping literals and swapping constants."""
    store = s.store
    m: Dict[int, int] = {}
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind == TRUE:
            m[r] = store.false()
        elif n.kind == FALSE:
            m[r] = store.true()
        elif n.kind == LIT:
            m[r] = store.literal(-n.lit)
        else:
            m[r] = store.build(OR if n.kind == AND else AND, [m[c] for c in n.children])
    return Sentence(store, m[s.root])
