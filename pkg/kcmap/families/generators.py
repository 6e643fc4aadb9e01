"""Parameterized separation families and seeded random corpora.

Variable numbering is fixed per family so reports stay stable across runs:

- parity(n): x_i is i.
- pair_clauses(n): clause i is (x_{2i-1} ∨ x_{2i}).
- equivalences(n): x_i is i and y_i is n+i.
- chandra_markowsky(k, m): p_i is i, q_ij is k+(i-1)m+j, the guard x is k+km+1.
- all_ones(n): x_i is i.
"""
from __future__ import annotations
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from kcmap.compile.dimacs import CnfFormula
from kcmap.nnf.literals import Clause, Term
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import build_clause, build_dnf, build_term
from kcmap.nnf.store import NnfStore, Sentence

FAMILIES = ("parity", "pair_clauses", "equivalences", "chandra_markowsky", "all_ones", "random")

# CLI short names
ALIASES = {"pairs": "pair_clauses", "equiv": "equivalences", "cm": "chandra_markowsky", "ones": "all_ones"}


@dataclass
class FamilyInstance:
    family: str
    params: Tuple[int, ...]
    sentence: Optional[Sentence] = None
    cnf: Optional[CnfFormula] = None
    terms: Optional[List[Term]] = None
    orders: Dict[str, VarOrder] = field(default_factory=dict)

    def as_sentence(self) -> Sentence:
        if self.sentence is None:
            assert self.cnf is not None
            self.sentence = self.cnf.to_sentence()
        return self.sentence

    @property
    def num_vars(self) -> int:
        return self.cnf.num_vars if self.cnf is not None else self.as_sentence().store.num_vars


def _check(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"{name} must be at least 1, got {value}")


def gen_parity(n: int, store: Optional[NnfStore] = None) -> FamilyInstance:
    """Odd parity of x1..xn as nested decisions; each level splits on one variable."""
    _check("n", n)
    st = store if store is not None else NnfStore(n)
    odd, even = st.literal(1), st.literal(-1)
    for i in range(2, n + 1):
        odd, even = st.decision(i, even, odd), st.decision(i, odd, even)
    return FamilyInstance("parity", (n,), sentence=Sentence(st, odd))


def gen_pair_clauses(n: int) -> FamilyInstance:
    _check("n", n)
    clauses = [frozenset([2 * i - 1, 2 * i]) for i in range(1, n + 1)]
    return FamilyInstance("pair_clauses", (n,), cnf=CnfFormula(2 * n, clauses))


def gen_equivalences(n: int) -> FamilyInstance:
    _check("n", n)
    clauses: List[Clause] = []
    for i in range(1, n + 1):
        clauses.append(frozenset([-i, n + i]))
        clauses.append(frozenset([i, -(n + i)]))
    interleaved = VarOrder.of(v for i in range(1, n + 1) for v in (i, n + i))
    blocked = VarOrder.natural(2 * n)
    return FamilyInstance(
        "equivalences", (n,), cnf=CnfFormula(2 * n, clauses),
        orders={"interleaved": interleaved, "blocked": blocked},
    )


def cm_vars(k: int, m: int) -> Tuple[List[int], Dict[Tuple[int, int], int], int]:
    p = list(range(1, k + 1))
    q = {(i, j): k + (i - 1) * m + j for i in range(1, k + 1) for j in range(1, m + 1)}
    return p, q, k + k * m + 1


def cm_terms(k: int, m: int, guarded: bool) -> List[Term]:
    """Terms of the guarded formula (guarded=True) or of its projection without x."""
    p, q, x = cm_vars(k, m)
    pos = [x] if guarded else []
    neg = [-x] if guarded else []
    terms = [frozenset(pos + [p[i - 1], q[i, j]]) for (i, j) in q]
    terms.append(frozenset(neg + [-v for v in p]))
    return terms


def gen_chandra_markowsky(k: int, m: int, store: Optional[NnfStore] = None) -> Tuple[FamilyInstance, FamilyInstance]:
    """(guarded, projected): forgetting x from the first yields the second."""
    _check("k", k)
    _check("m", m)
    st = store if store is not None else NnfStore(k + k * m + 1)
    guarded = cm_terms(k, m, True)
    projected = cm_terms(k, m, False)
    return (
        FamilyInstance("chandra_markowsky", (k, m), sentence=build_dnf(st, guarded), terms=guarded),
        FamilyInstance("chandra_markowsky", (k, m), sentence=build_dnf(st, projected), terms=projected),
    )


def cm_prime_count(k: int, m: int) -> int:
    # with a single p the terms p ∧ q_j are absorbed by their consensus q_j
    if k == 1:
        return m + 1
    return (m + 1) ** k + m * k


def gen_all_ones(n: int, store: Optional[NnfStore] = None) -> Tuple[Sentence, FamilyInstance]:
    """The single-model term x1∧…∧xn and the instance for its dual x1∨…∨xn."""
    _check("n", n)
    st = store if store is not None else NnfStore(n)
    lits = list(range(1, n + 1))
    term = Sentence(st, build_term(st, lits))
    dual = FamilyInstance("all_ones", (n,), sentence=Sentence(st, build_clause(st, lits)),
                          cnf=CnfFormula(n, [frozenset(lits)]))
    return term, dual


def random_nnf(store: NnfStore, n_vars: int, max_edges: int, rng: random.Random) -> Sentence:
    """A random NNF DAG over x1..x_{n_vars}; internal nodes reuse earlier nodes, so sharing is common."""
    store.ensure_vars(n_vars)
    pool = [store.literal(v if rng.random() < 0.5 else -v) for v in range(1, n_vars + 1)]
    pool += [store.literal(rng.choice([1, -1]) * rng.randint(1, n_vars)) for _ in range(n_vars)]
    root = pool[-1]
    edges = 0
    while True:
        width = rng.randint(2, 3)
        if edges + width > max_edges:
            break
        kids = rng.sample(pool, min(width, len(pool)))
        root = store.conj(kids) if rng.random() < 0.5 else store.disj(kids)
        pool.append(root)
        edges += width
    return Sentence(store, root)


def random_cnf(n_vars: int, n_clauses: int, width: int, rng: random.Random) -> CnfFormula:
    w = min(width, n_vars)
    clauses = []
    for _ in range(n_clauses):
        vs = rng.sample(range(1, n_vars + 1), w)
        clauses.append(frozenset(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n_vars, clauses)


def gen_random(n: int, seed: int = 0) -> FamilyInstance:
    """Random 3-CNF with about 2n clauses, seeded by (seed, n)."""
    _check("n", n)
    rng = random.Random(seed * 1009 + n)
    return FamilyInstance("random", (n,), cnf=random_cnf(n, 2 * n, 3, rng))


# direct evaluators used to cross-check the generators
def parity_holds(a: Mapping[int, bool], n: int) -> bool:
    return sum(1 for i in range(1, n + 1) if a[i]) % 2 == 1


def pair_clauses_hold(a: Mapping[int, bool], n: int) -> bool:
    return all(a[2 * i - 1] or a[2 * i] for i in range(1, n + 1))


def equivalences_hold(a: Mapping[int, bool], n: int) -> bool:
    return all(a[i] == a[n + i] for i in range(1, n + 1))


def cm_holds(a: Mapping[int, bool], k: int, m: int) -> bool:
    p, q, _ = cm_vars(k, m)
    return any(a[p[i - 1]] and a[q[i, j]] for (i, j) in q) or not any(a[v] for v in p)


REFERENCE: Dict[str, Callable[..., bool]] = {
    "parity": parity_holds,
    "pair_clauses": pair_clauses_hold,
    "equivalences": equivalences_hold,
    "chandra_markowsky": cm_holds,
}
