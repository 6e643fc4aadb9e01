from __future__ import annotations
import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from kcmap.common.errors import PreconditionError
from kcmap.languages.capabilities import require_query
from kcmap.languages.tags import LanguageTag, QueryTag
from kcmap.nnf.literals import is_inconsistent, is_tautology, make_set, negate_set
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import build_clause, build_term, cnf_clauses, copy_into, dnf_terms
from kcmap.nnf.store import AND, FALSE, LIT, TRUE, Sentence, decision_of, decision_view, reachable, vars_of
from kcmap.oracle import truth_table
from kcmap.oracle.truth_table import Assignment
from kcmap.properties import checks
from kcmap.properties.membership import require_member
from kcmap.transform.obdd import ObddManager
from kcmap.transform.smoothing import smooth
from kcmap.transform.transformer import conditioned

logger = logging.getLogger("query")

L = LanguageTag
Q = QueryTag

DIAGRAMS = (L.FBDD, L.OBDD, L.OBDD_LT)
TERM_SETS = (L.DNF, L.MODS, L.IP)


def _gate(q: QueryTag, lang: LanguageTag, operands: Sequence[Sentence], order: Optional[VarOrder], force_oracle: bool) -> bool:
    """True when the caller should answer from the oracle instead."""
    if force_oracle:
        logger.warning("query %s on %s answered by the oracle (capability gate bypassed)", q.value, lang.value, extra={"lang": lang.value})
        return True
    require_query(lang, q)
    for s in operands:
        require_member(s, lang, order)
    return False


def _report(q: QueryTag, lang: LanguageTag, s: Sentence, result):
    logger.info("query op=%s result=%s", q.value, result, extra={"lang": lang.value, "root": s.root})
    return result


def _universe(s: Sentence, over: Optional[Iterable[int]]) -> Tuple[int, ...]:
    mentioned = vars_of(s)
    if over is None:
        return tuple(sorted(mentioned))
    ov = tuple(sorted(set(int(v) for v in over)))
    missing = mentioned - set(ov)
    if missing:
        raise PreconditionError(f"variables {sorted(missing)} are not in the declared universe")
    return ov


# -- CO / VA ------------------------------------------------------------------------------


def _reaches_one(s: Sentence) -> bool:
    store = s.store
    val: Dict[int, bool] = {}
    for r in reachable(store, s.root):
        kind = store.nodes[r].kind
        if kind in (TRUE, FALSE, LIT):
            val[r] = kind != FALSE
            continue
        d = decision_of(store, r)
        if d is not None:
            val[r] = val[d[1]] or val[d[2]]
    return val[s.root]


def _dnnf_consistent(s: Sentence) -> bool:
    # sound by decomposability: conjuncts never constrain each other
    store = s.store
    val: Dict[int, bool] = {}
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind in (TRUE, LIT):
            val[r] = True
        elif n.kind == FALSE:
            val[r] = False
        elif n.kind == AND:
            val[r] = all(val[c] for c in n.children)
        else:
            val[r] = any(val[c] for c in n.children)
    return val[s.root]


def _co(s: Sentence, lang: LanguageTag) -> bool:
    if lang in DIAGRAMS:
        return _reaches_one(s)
    if lang in TERM_SETS:
        return any(not is_inconsistent(t) for t in dnf_terms(s))
    if lang == L.PI:
        return frozenset() not in cnf_clauses(s)
    return _dnnf_consistent(s)


def co(s: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None, force_oracle: bool = False) -> bool:
    """Consistency."""
    if _gate(Q.CO, lang, [s], order, force_oracle):
        return _report(Q.CO, lang, s, truth_table.consistent_bf(s))
    return _report(Q.CO, lang, s, _co(s, lang))


def _va(s: Sentence, lang: LanguageTag) -> bool:
    if lang in (L.CNF, L.PI):
        return all(is_tautology(c) for c in cnf_clauses(s))
    if lang == L.IP:
        return frozenset() in dnf_terms(s)
    return _ct(s, lang, tuple(sorted(vars_of(s)))) == 1 << len(vars_of(s))


def va(s: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None, force_oracle: bool = False) -> bool:
    """Validity."""
    if _gate(Q.VA, lang, [s], order, force_oracle):
        return _report(Q.VA, lang, s, truth_table.valid_bf(s))
    return _report(Q.VA, lang, s, _va(s, lang))


# -- CE / IM ------------------------------------------------------------------------------


def ce(s: Sentence, lang: LanguageTag, clause: Iterable[int], order: Optional[VarOrder] = None, force_oracle: bool = False) -> bool:
    """Clausal entailment: Σ ⊨ γ iff Σ | ¬γ is inconsistent."""
    gamma = make_set(clause)
    if _gate(Q.CE, lang, [s], order, force_oracle):
        c = Sentence(s.store, build_clause(s.store, gamma)) if gamma else Sentence(s.store, s.store.false())
        return _report(Q.CE, lang, s, truth_table.entails_bf(s, c))
    if is_tautology(gamma):
        return _report(Q.CE, lang, s, True)
    if lang == L.PI:
        return _report(Q.CE, lang, s, any(c <= gamma for c in cnf_clauses(s)))
    return _report(Q.CE, lang, s, not _co(conditioned(s, negate_set(gamma), lang, order), lang))


def im(s: Sentence, lang: LanguageTag, term: Iterable[int], order: Optional[VarOrder] = None, force_oracle: bool = False) -> bool:
    """Implicant check: γ ⊨ Σ iff Σ | γ is valid."""
    gamma = make_set(term)
    if is_inconsistent(gamma):
        raise PreconditionError(f"term {sorted(gamma)} is inconsistent")
    if _gate(Q.IM, lang, [s], order, force_oracle):
        t = Sentence(s.store, build_term(s.store, gamma)) if gamma else Sentence(s.store, s.store.true())
        return _report(Q.IM, lang, s, truth_table.entails_bf(t, s))
    if lang in (L.CNF, L.PI):
        # γ entails a clause iff they share a literal
        return _report(Q.IM, lang, s, all(c & gamma or is_tautology(c) for c in cnf_clauses(s)))
    if lang == L.IP:
        return _report(Q.IM, lang, s, any(t <= gamma for t in dnf_terms(s)))
    return _report(Q.IM, lang, s, _va(conditioned(s, gamma, lang, order), lang))


# -- EQ / SE ------------------------------------------------------------------------------


def _shared(a: Sentence, b: Sentence) -> Tuple[Sentence, Sentence]:
    return a, copy_into(b, a.store)


def _mods_entails(a: Sentence, b: Sentence) -> bool:
    va_, vb = vars_of(a), vars_of(b)
    common = va_ & vb
    free = len(vb - common)
    # b-terms grouped by their restriction to the shared variables
    groups = Counter(frozenset(l for l in t if abs(l) in common) for t in dnf_terms(b))
    for t in dnf_terms(a):
        if groups.get(frozenset(l for l in t if abs(l) in common), 0) != 1 << free:
            return False
    return True


def _obdd_pair(a: Sentence, b: Sentence, order: Optional[VarOrder]) -> Optional[Tuple[ObddManager, int, int]]:
    every = vars_of(a) | vars_of(b)
    if order is None:
        order = checks.ordering_of(a, b)
        if order is None:
            return None
    mgr = ObddManager(a.store, order.covering(every))
    return mgr, mgr.reduce(a.root), mgr.reduce(b.root)


def _obdd_eq_mixed(a: Sentence, b: Sentence) -> bool:
    """Equivalence of two OBDDs built under different orders.

    For every decision node v of b pick one path π_v reaching it and let g_v be a | π_v,
    canonical under a's order. The diagrams agree iff every edge v -x-> w of b satisfies
    g_v | x == g_w (a sink w demands the matching constant).
    """
    order_a = checks.ordering_of(a)
    order_b = checks.ordering_of(b)
    if order_a is None or order_b is None:
        raise PreconditionError("operand is not ordered")
    mgr = ObddManager(a.store, order_a.covering(vars_of(a) | vars_of(b)))
    root_a = mgr.reduce(a.root)
    dec = decision_view(b)
    if not dec:
        return root_a == b.root
    paths: Dict[int, FrozenSet[int]] = {b.root: frozenset()}
    stack = [b.root]
    while stack:
        v = stack.pop()
        var, hi, lo = dec[v]
        for child, lit in ((hi, var), (lo, -var)):
            if child in dec and child not in paths:
                paths[child] = paths[v] | {lit}
                stack.append(child)
    g = {v: mgr.restrict(root_a, p) for v, p in paths.items()}
    for v, (var, hi, lo) in dec.items():
        for child, lit in ((hi, var), (lo, -var)):
            got = mgr.restrict(g[v], [lit])
            want = g[child] if child in dec else child
            if got != want:
                return False
    return True


def eq(a: Sentence, b: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None, force_oracle: bool = False) -> bool:
    """Equivalence of two sentences of lang."""
    a, b = _shared(a, b)
    if _gate(Q.EQ, lang, [a, b], order, force_oracle):
        return _report(Q.EQ, lang, a, truth_table.equivalent_bf(a, b))
    if lang in (L.OBDD, L.OBDD_LT):
        pair = _obdd_pair(a, b, order if lang == L.OBDD_LT else None)
        if pair is None:
            if lang == L.OBDD_LT:
                raise PreconditionError("OBDD_< operands do not share a variable order")
            return _report(Q.EQ, lang, a, _obdd_eq_mixed(a, b))
        _, ra, rb = pair
        return _report(Q.EQ, lang, a, ra == rb)
    if lang == L.PI:
        return _report(Q.EQ, lang, a, set(cnf_clauses(a)) == set(cnf_clauses(b)))
    if lang == L.IP:
        return _report(Q.EQ, lang, a, set(dnf_terms(a)) == set(dnf_terms(b)))
    return _report(Q.EQ, lang, a, _mods_entails(a, b) and _mods_entails(b, a))


def se(a: Sentence, b: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None, force_oracle: bool = False) -> bool:
    """Sentential entailment a ⊨ b."""
    a, b = _shared(a, b)
    if _gate(Q.SE, lang, [a, b], order, force_oracle):
        return _report(Q.SE, lang, a, truth_table.entails_bf(a, b))
    if lang == L.OBDD_LT:
        pair = _obdd_pair(a, b, order)
        if pair is None:
            raise PreconditionError("OBDD_< operands do not share a variable order")
        mgr, ra, rb = pair
        return _report(Q.SE, lang, a, mgr.apply_and(ra, mgr.negate(rb)) == mgr.leaf0)
    if lang == L.PI:
        ours = cnf_clauses(a)
        return _report(Q.SE, lang, a, all(is_tautology(c) or any(p <= c for p in ours) for c in cnf_clauses(b)))
    if lang == L.IP:
        theirs = dnf_terms(b)
        return _report(Q.SE, lang, a, all(any(p <= t for p in theirs) for t in dnf_terms(a)))
    return _report(Q.SE, lang, a, _mods_entails(a, b))


# -- CT / ME ------------------------------------------------------------------------------


def _ct(s: Sentence, lang: LanguageTag, over: Tuple[int, ...]) -> int:
    gap = len(over) - len(vars_of(s))
    if lang == L.MODS:
        terms = set(dnf_terms(s))
        return len(terms) << gap
    sm = smooth(s)
    store = sm.store
    val: Dict[int, int] = {}
    for r in reachable(store, sm.root):
        n = store.nodes[r]
        if n.kind in (TRUE, LIT):
            val[r] = 1
        elif n.kind == FALSE:
            val[r] = 0
        elif n.kind == AND:
            prod = 1
            for c in n.children:
                prod *= val[c]
            val[r] = prod
        else:
            val[r] = sum(val[c] for c in n.children)
    return val[sm.root] << gap


def ct(s: Sentence, lang: LanguageTag, over: Optional[Iterable[int]] = None, order: Optional[VarOrder] = None, force_oracle: bool = False) -> int:
    """Model count over `over` (default: the variables of s), arbitrary precision."""
    universe = _universe(s, over)
    if _gate(Q.CT, lang, [s], order, force_oracle):
        return _report(Q.CT, lang, s, truth_table.count_bf(s, universe))
    return _report(Q.CT, lang, s, _ct(s, lang, universe))


def me(s: Sentence, lang: LanguageTag, over: Optional[Iterable[int]] = None, order: Optional[VarOrder] = None, force_oracle: bool = False) -> Iterator[Assignment]:
    """Models in lexicographic order, by decision-tree expansion over the sorted universe."""
    universe = _universe(s, over)
    if _gate(Q.ME, lang, [s], order, force_oracle):
        yield from truth_table.models_bf(s, universe)
        return
    emitted = 0
    if _co(s, lang):
        stack: List[Tuple[int, Tuple[int, ...]]] = [(0, ())]
        while stack:
            depth, partial = stack.pop()
            if depth == len(universe):
                emitted += 1
                yield Assignment(universe, tuple(l > 0 for l in partial))
                continue
            v = universe[depth]
            # push the 1-branch first so the 0-branch is expanded first
            for lit in (v, -v):
                extended = partial + (lit,)
                if _co(conditioned(s, frozenset(extended), lang, order), lang):
                    stack.append((depth + 1, extended))
    _report(Q.ME, lang, s, emitted)


QUERIES = {
    "co": co,
    "va": va,
    "ce": ce,
    "im": im,
    "eq": eq,
    "se": se,
    "ct": ct,
    "me": me,
}
