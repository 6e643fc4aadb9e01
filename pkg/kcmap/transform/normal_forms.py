from __future__ import annotations
from typing import FrozenSet, Iterable, List, Set

from kcmap.nnf.literals import Clause, Term, is_tautology, minimize_subsumed, negate_set, sorted_sets, var_of


def resolve_pair(left: Clause, right: Clause) -> List[Clause]:
    out = []
    for lit in left:
        if -lit in right:
            combined = (left - {lit}) | (right - {-lit})
            if not is_tautology(combined):
                out.append(frozenset(combined))
    return out


def resolution_closure(clauses: Iterable[Clause]) -> List[Clause]:
    """Prime implicates of a clause set: resolve to fixpoint with subsumption elimination."""
    pool = minimize_subsumed(c for c in clauses if not is_tautology(c))
    if frozenset() in pool:
        return [frozenset()]
    changed = True
    while changed:
        changed = False
        fresh: Set[Clause] = set()
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                for r in resolve_pair(pool[i], pool[j]):
                    if not any(p <= r for p in pool):
                        fresh.add(r)
        if fresh:
            pool = minimize_subsumed(list(pool) + list(fresh))
            changed = True
            if frozenset() in pool:
                return [frozenset()]
    return pool


def consensus_closure(terms: Iterable[Term]) -> List[Term]:
    """Prime implicants of a DNF: the dual of resolution_closure."""
    return sorted_sets(negate_set(c) for c in resolution_closure(negate_set(t) for t in terms))


def condition_sets(sets: Iterable[FrozenSet[int]], gamma: Iterable[int], clauses: bool) -> List[FrozenSet[int]]:
    """Conditions a clause set (clauses=True) or term set on a consistent term gamma."""
    g = frozenset(gamma)
    neg = negate_set(g)
    out = []
    for s in sets:
        if clauses:
            if s & g:
                continue  # satisfied clause
            out.append(s - neg)
        else:
            if s & neg:
                continue  # falsified term
            out.append(s - g)
    return sorted_sets(out)


def cnf_condition(clauses: Iterable[Clause], gamma: Iterable[int]) -> List[Clause]:
    return [c for c in condition_sets(clauses, gamma, True) if not is_tautology(c)]


def dnf_condition(terms: Iterable[Term], gamma: Iterable[int]) -> List[Term]:
    return [t for t in condition_sets(terms, gamma, False) if not is_tautology(t)]


def pi_conjoin_term(clauses: Iterable[Clause], gamma: Iterable[int]) -> List[Clause]:
    units = [frozenset([l]) for l in gamma]
    neg = negate_set(gamma)
    return minimize_subsumed(units + [c - neg for c in clauses])


def pi_forget(clauses: Iterable[Clause], xs: Iterable[int]) -> List[Clause]:
    xset = frozenset(xs)
    return sorted_sets(c for c in clauses if not any(var_of(l) in xset for l in c))


def pi_condition(clauses: Iterable[Clause], gamma: Iterable[int]) -> List[Clause]:
    g = list(gamma)
    return pi_forget(pi_conjoin_term(clauses, g), [var_of(l) for l in g])


def ip_condition(terms: Iterable[Term], gamma: Iterable[int]) -> List[Term]:
    # the logically weakest conditioned terms are the subset-minimal ones
    return minimize_subsumed(condition_sets(terms, gamma, False))


def term_products(left: Iterable[Term], right: Iterable[Term]) -> List[Term]:
    right = list(right)
    return sorted_sets(a | b for a in left for b in right if not is_tautology(a | b))


def clause_products(left: Iterable[Clause], right: Iterable[Clause]) -> List[Clause]:
    right = list(right)
    return sorted_sets(a | b for a in left for b in right if not is_tautology(a | b))


def ip_conjoin(left: Iterable[Term], right: Iterable[Term]) -> List[Term]:
    return minimize_subsumed(term_products(left, right))


def pi_disjoin(left: Iterable[Clause], right: Iterable[Clause]) -> List[Clause]:
    return minimize_subsumed(clause_products(left, right))


def forget_literals(sets: Iterable[FrozenSet[int]], xs: Iterable[int]) -> List[FrozenSet[int]]:
    xset = frozenset(xs)
    return sorted_sets(frozenset(l for l in s if var_of(l) not in xset) for s in sets)
