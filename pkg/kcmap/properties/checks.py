from __future__ import annotations
import heapq
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from kcmap.common.errors import OracleCapError, PreconditionError
from kcmap.languages.tags import Verdict
from kcmap.nnf.literals import minimize_subsumed
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import cnf_clauses, dnf_terms
from kcmap.nnf.store import AND, FALSE, LIT, OR, TRUE, NnfStore, Sentence, decision_of, reachable, vars_of
from kcmap.oracle import truth_table

logger = logging.getLogger("classify")


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    witness: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES


YES = CheckResult(Verdict.YES)


def _no(witness: int, reason: str) -> CheckResult:
    return CheckResult(Verdict.NO, witness, reason)


def is_decomposable(s: Sentence) -> CheckResult:
    store = s.store
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind != AND:
            continue
        seen: Set[int] = set()
        for c in n.children:
            v = store.vars_at(c)
            if seen & v:
                return _no(r, f"and-node shares variables {sorted(seen & v)}")
            seen |= v
    return YES


def is_smooth(s: Sentence) -> CheckResult:
    store = s.store
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind != OR or len(n.children) < 2:
            continue
        first = store.vars_at(n.children[0])
        for c in n.children[1:]:
            if store.vars_at(c) != first:
                return _no(r, "or-node disjuncts mention different variables")
    return YES


def _guards(store: NnfStore, ref: int) -> FrozenSet[int]:
    # literals that are conjuncts of ref, looking through nested and-nodes
    out: Set[int] = set()
    stack = [ref]
    while stack:
        n = store.nodes[stack.pop()]
        if n.kind == LIT:
            out.add(n.lit)
        elif n.kind == AND:
            stack.extend(n.children)
    return frozenset(out)


def guard_separated(store: NnfStore, ref: int) -> bool:
    """Structural determinism: disjuncts pairwise carry complementary literal conjuncts (or are False)."""
    if decision_of(store, ref) is not None:
        return True
    kids = [c for c in store.nodes[ref].children if store.nodes[c].kind != FALSE]
    guards = [_guards(store, c) for c in kids]
    for i in range(len(kids)):
        for j in range(i + 1, len(kids)):
            if not any(-l in guards[j] for l in guards[i]):
                return False
    return True


def is_deterministic(s: Sentence, use_oracle: bool = True) -> CheckResult:
    store = s.store
    unknown: Optional[int] = None
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind != OR or len(n.children) < 2:
            continue
        if guard_separated(store, r):
            continue
        if not use_oracle or len(store.vars_at(r)) > truth_table.MAX_VARS:
            if unknown is None:
                unknown = r
            continue
        if not truth_table.pairwise_disjoint_bf([s.at(c) for c in n.children]):
            return _no(r, "or-node disjuncts are jointly satisfiable")
    if unknown is not None:
        return CheckResult(Verdict.UNKNOWN, unknown, "or-node beyond oracle cap")
    return YES


def is_flat(s: Sentence) -> CheckResult:
    h = s.store.height_at(s.root)
    return YES if h <= 2 else _no(s.root, f"height {h} exceeds 2")


def _simple(s: Sentence, kind: str) -> CheckResult:
    store = s.store
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind != kind:
            continue
        seen: Set[int] = set()
        for c in n.children:
            cn = store.nodes[c]
            if cn.kind != LIT or abs(cn.lit) in seen:
                return _no(r, "children are not literals over distinct variables")
            seen.add(abs(cn.lit))
    return YES


def is_simple_disjunction(s: Sentence) -> CheckResult:
    return _simple(s, OR)


def is_simple_conjunction(s: Sentence) -> CheckResult:
    return _simple(s, AND)


def is_clausal(s: Sentence, kind: str) -> CheckResult:
    """Flat with literal-only or-nodes (kind=OR) or and-nodes (kind=AND); repeated variables allowed."""
    flat = is_flat(s)
    if not flat:
        return flat
    store = s.store
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind == kind and any(store.nodes[c].kind != LIT for c in n.children):
            return _no(r, "children are not literals")
    return YES


def is_decision(s: Sentence) -> CheckResult:
    store = s.store
    seen: Set[int] = set()
    stack = [s.root]
    while stack:
        r = stack.pop()
        if r in seen:
            continue
        seen.add(r)
        n = store.nodes[r]
        if n.kind in (TRUE, FALSE):
            continue
        d = decision_of(store, r)
        if d is None:
            return _no(r, "not a decision node")
        stack.extend((d[1], d[2]))
    return YES


def _decision_edges(s: Sentence) -> Optional[Dict[int, Tuple[int, int, int]]]:
    if not is_decision(s):
        return None
    out: Dict[int, Tuple[int, int, int]] = {}
    for r in reachable(s.store, s.root):
        d = decision_of(s.store, r)
        if d is not None:
            out[r] = d
    return out


def read_once(s: Sentence) -> CheckResult:
    dec = _decision_edges(s)
    if dec is None:
        return is_decision(s)
    below: Dict[int, FrozenSet[int]] = {}
    for r in sorted(dec):
        var, hi, lo = dec[r]
        under = below.get(hi, frozenset()) | below.get(lo, frozenset())
        if var in under:
            return _no(r, f"x{var} is tested again below")
        below[r] = under | {var}
    return YES


def ordering_of(s: Sentence, *more: Sentence) -> Optional[VarOrder]:
    """Lexicographically least total order consistent with every parent/child test pair, or None.

    Extra sentences contribute their constraints too, giving an order shared by all operands.
    """
    universe: Set[int] = set()
    succ: Dict[int, Set[int]] = {}
    for one in (s,) + more:
        dec = _decision_edges(one)
        if dec is None:
            return None
        universe |= set(range(1, one.store.num_vars + 1)) | set(vars_of(one))
        for v in universe:
            succ.setdefault(v, set())
        for var, hi, lo in dec.values():
            for child in (hi, lo):
                if child in dec:
                    cv = dec[child][0]
                    if cv == var:
                        return None
                    succ[var].add(cv)
    indeg = {v: 0 for v in universe}
    for v in universe:
        for w in succ[v]:
            indeg[w] += 1
    heap = [v for v in universe if indeg[v] == 0]
    heapq.heapify(heap)
    out: List[int] = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(out) != len(universe):
        return None
    return VarOrder(tuple(out))


def respects_order(s: Sentence, order: VarOrder) -> CheckResult:
    dec = _decision_edges(s)
    if dec is None:
        return is_decision(s)
    for r, (var, hi, lo) in sorted(dec.items()):
        if var not in order:
            return _no(r, f"x{var} missing from order")
        for child in (hi, lo):
            if child in dec and order.rank(dec[child][0]) <= order.rank(var):
                return _no(r, f"x{dec[child][0]} tested below x{var}")
    return YES


def _prime_form(s: Sentence, implicates: bool) -> CheckResult:
    if implicates:
        base = is_flat(s) and is_simple_disjunction(s)
        if not base:
            raise PreconditionError("prime implicate check needs a CNF sentence")
        sets = cnf_clauses(s)
    else:
        base = is_flat(s) and is_simple_conjunction(s)
        if not base:
            raise PreconditionError("prime implicant check needs a DNF sentence")
        sets = dnf_terms(s)
    if len(minimize_subsumed(sets)) != len(sets):
        return _no(s.root, "a clause or term subsumes another")
    try:
        primes = truth_table.prime_implicates_bf(s) if implicates else truth_table.prime_implicants_bf(s)
    except OracleCapError:
        return CheckResult(Verdict.UNKNOWN, s.root, "beyond prime oracle cap")
    have = set(sets)
    for p in primes:
        if p not in have:
            return _no(s.root, f"prime {sorted(p)} missing")
    if len(have) != len(primes):
        return _no(s.root, "non-prime clause or term present")
    return YES


def is_pi(s: Sentence) -> CheckResult:
    return _prime_form(s, True)


def is_ip(s: Sentence) -> CheckResult:
    return _prime_form(s, False)
