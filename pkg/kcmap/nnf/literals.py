from __future__ import annotations
from typing import FrozenSet, Iterable, List, Tuple

# Literals are signed DIMACS integers: x3 is 3, ¬x3 is -3.
Literal = int
Clause = FrozenSet[int]
Term = FrozenSet[int]


def var_of(lit: int) -> int:
    return lit if lit > 0 else -lit


def make_set(lits: Iterable[int]) -> FrozenSet[int]:
    out = frozenset(int(l) for l in lits)
    if 0 in out:
        raise ValueError("literal 0 is not a variable")
    return out


def vars_of_lits(lits: Iterable[int]) -> FrozenSet[int]:
    return frozenset(var_of(l) for l in lits)


def is_tautology(clause: Iterable[int]) -> bool:
    c = set(clause)
    return any(-l in c for l in c)


# a term is inconsistent exactly when the same set read as a clause is valid
is_inconsistent = is_tautology


def negate_set(lits: Iterable[int]) -> FrozenSet[int]:
    return frozenset(-l for l in lits)


def sort_key(lits: Iterable[int]) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    ordered = sorted(lits, key=lambda l: (var_of(l), l < 0))
    return (len(ordered), tuple((var_of(l), 1 if l < 0 else 0) for l in ordered))


def sorted_sets(sets: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    return sorted(set(sets), key=sort_key)


def format_lits(lits: Iterable[int]) -> str:
    return " ".join(str(l) for l in sorted(lits, key=lambda l: (var_of(l), l < 0)))


def minimize_subsumed(sets: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    """Drops every set that strictly contains another; result sorted by sort_key."""
    uniq = sorted_sets(sets)
    kept: List[FrozenSet[int]] = []
    for s in uniq:
        # shorter sets come first, so a subsuming set is already kept
        if any(k <= s for k in kept):
            continue
        kept.append(s)
    return kept
