from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from kcmap.common.errors import OracleCapError, PreconditionError
from kcmap.nnf.literals import Clause, Term, negate_set, sorted_sets
from kcmap.nnf.store import AND, FALSE, LIT, TRUE, Sentence, reachable, vars_of

logger = logging.getLogger("oracle")

MAX_VARS = 20
MAX_PRIME_VARS = 14

CALLS = {"tables": 0}


@dataclass(frozen=True)
class Assignment(Mapping[int, bool]):
    over: Tuple[int, ...]
    bits: Tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.over) != len(self.bits):
            raise ValueError("assignment must be total over its variables")

    def __getitem__(self, var: int) -> bool:
        try:
            return self.bits[self.over.index(var)]
        except ValueError:
            raise KeyError(var)

    def __iter__(self) -> Iterator[int]:
        return iter(self.over)

    def __len__(self) -> int:
        return len(self.over)

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def as_term(self) -> Term:
        return frozenset(v if b else -v for v, b in zip(self.over, self.bits))

    @classmethod
    def from_index(cls, over: Tuple[int, ...], idx: int) -> "Assignment":
        n = len(over)
        return cls(over, tuple(bool((idx >> (n - 1 - p)) & 1) for p in range(n)))


@dataclass(frozen=True)
class ModelSet:
    over: Tuple[int, ...]
    models: Tuple[Assignment, ...]

    def __len__(self) -> int:
        return len(self.models)

    def __iter__(self) -> Iterator[Assignment]:
        return iter(self.models)

    def bitstrings(self) -> List[str]:
        return [m.bitstring() for m in self.models]


def _check_cap(what: str, n: int, cap: int) -> None:
    if n > cap:
        logger.warning("%s refused: %d variables over cap %d", what, n, cap)
        raise OracleCapError(what, n, cap)


def _order(over: Optional[Iterable[int]], s_vars: FrozenSet[int]) -> Tuple[int, ...]:
    if over is None:
        return tuple(sorted(s_vars))
    ov = tuple(sorted(set(over)))
    missing = s_vars - set(ov)
    if missing:
        raise PreconditionError(f"variables {sorted(missing)} are not in the declared universe")
    return ov


def _column(n: int, pos: int) -> np.ndarray:
    # first variable is the most significant bit, so index order is lexicographic order
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx >> (n - 1 - pos)) & 1).astype(bool)


def truth_table(s: Sentence, over: Optional[Iterable[int]] = None, cap: Optional[int] = None) -> Tuple[Tuple[int, ...], np.ndarray]:
    order = _order(over, vars_of(s))
    n = len(order)
    _check_cap("truth table", n, MAX_VARS if cap is None else cap)
    CALLS["tables"] += 1
    logger.debug("truth table vars=%d", n, extra={"root": s.root})
    pos = {v: i for i, v in enumerate(order)}
    store = s.store
    ids = reachable(store, s.root)
    uses: Dict[int, int] = {}
    for r in ids:
        for c in store.nodes[r].children:
            uses[c] = uses.get(c, 0) + 1
    size = 1 << n
    vals: Dict[int, np.ndarray] = {}
    for r in ids:
        node = store.nodes[r]
        if node.kind == TRUE:
            vals[r] = np.ones(size, dtype=bool)
        elif node.kind == FALSE:
            vals[r] = np.zeros(size, dtype=bool)
        elif node.kind == LIT:
            col = _column(n, pos[abs(node.lit)])
            vals[r] = col if node.lit > 0 else ~col
        else:
            arrs = [vals[c] for c in node.children]
            if node.kind == AND:
                vals[r] = np.logical_and.reduce(arrs)
            else:
                vals[r] = np.logical_or.reduce(arrs)
            for c in node.children:
                uses[c] -= 1
                if uses[c] == 0 and c != s.root:
                    del vals[c]
    return order, vals[s.root]


def models_bf(s: Sentence, over: Optional[Iterable[int]] = None) -> ModelSet:
    order, tt = truth_table(s, over)
    return ModelSet(order, tuple(Assignment.from_index(order, int(i)) for i in np.flatnonzero(tt)))


def count_bf(s: Sentence, over: Optional[Iterable[int]] = None) -> int:
    _, tt = truth_table(s, over)
    return int(np.count_nonzero(tt))


def _pair_tables(a: Sentence, b: Sentence) -> Tuple[np.ndarray, np.ndarray]:
    over = sorted(vars_of(a) | vars_of(b))
    _check_cap("truth table", len(over), MAX_VARS)
    return truth_table(a, over)[1], truth_table(b, over)[1]


def equivalent_bf(a: Sentence, b: Sentence) -> bool:
    ta, tb = _pair_tables(a, b)
    return bool(np.array_equal(ta, tb))


def entails_bf(a: Sentence, b: Sentence) -> bool:
    ta, tb = _pair_tables(a, b)
    return not bool(np.any(ta & ~tb))


def consistent_bf(s: Sentence) -> bool:
    return bool(np.any(truth_table(s)[1]))


def valid_bf(s: Sentence) -> bool:
    return bool(np.all(truth_table(s)[1]))


def pairwise_disjoint_bf(children: Sequence[Sentence]) -> bool:
    if not children:
        return True
    over: Set[int] = set()
    for c in children:
        over |= vars_of(c)
    _check_cap("pairwise disjointness", len(over), MAX_VARS)
    seen = np.zeros(1 << len(over), dtype=bool)
    for c in children:
        t = truth_table(c, over)[1]
        if np.any(seen & t):
            return False
        seen |= t
    return True


def _cube_table(tt: np.ndarray, n: int) -> np.ndarray:
    # axis value 2 stands for "variable absent"; entry is True iff the cube is an implicant
    g = tt.reshape((2,) * n)
    for axis in range(n):
        both = np.logical_and(np.take(g, [0], axis=axis), np.take(g, [1], axis=axis))
        g = np.concatenate([g, both], axis=axis)
    return g


def _prime_cubes(tt: np.ndarray, order: Tuple[int, ...]) -> List[Term]:
    n = len(order)
    if n == 0:
        return [frozenset()] if bool(tt[0]) else []
    g = _cube_table(tt, n)
    raisable = np.zeros(g.shape, dtype=bool)
    for axis in range(n):
        raised = np.take(g, [2, 2, 2], axis=axis)
        fixed_shape = [1] * n
        fixed_shape[axis] = 3
        fixed = np.array([True, True, False]).reshape(fixed_shape)
        raisable |= raised & fixed
    primes = g & ~raisable
    out: List[Term] = []
    for digits in np.argwhere(primes):
        out.append(frozenset(order[p] if d == 1 else -order[p] for p, d in enumerate(digits) if d != 2))
    return sorted_sets(out)


def prime_implicants_bf(s: Sentence) -> List[Term]:
    """Prime implicant terms of s, sorted.

    A cube is prime when it implies s and no cube obtained by dropping one literal does.
    Increasing-length enumeration with superset pruning keeps exactly these cubes: an
    implicant is pruned iff some strict sub-cube is an implicant, and since every cube
    containing an implicant is itself an implicant, that holds iff a sub-cube one literal
    shorter is one.
    The 3^n table checks that one-step condition for every cube at once.
    """
    order = tuple(sorted(vars_of(s)))
    _check_cap("prime implicants", len(order), MAX_PRIME_VARS)
    _, tt = truth_table(s, order)
    return _prime_cubes(tt, order)


def prime_implicates_bf(s: Sentence) -> List[Clause]:
    """Prime implicate clauses of s: the negated prime implicants of ¬s."""
    order = tuple(sorted(vars_of(s)))
    _check_cap("prime implicates", len(order), MAX_PRIME_VARS)
    _, tt = truth_table(s, order)
    return sorted_sets(negate_set(t) for t in _prime_cubes(~tt, order))
