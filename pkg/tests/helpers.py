"""Shared builders for the test suite."""
import itertools
import os
import random
from typing import Dict, Iterable, List

from kcmap.families.generators import random_cnf, random_nnf
from kcmap.nnf.store import NnfStore, Sentence, evaluate, vars_of


def full_corpus() -> bool:
    return os.environ.get("KCMAP_FULL_CORPUS") == "1"


def corpus_size(small: int, full: int) -> int:
    return full if full_corpus() else small


def nnf_corpus(n: int, seed: int = 0, max_vars: int = 8, max_edges: int = 40) -> List[Sentence]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        st = NnfStore()
        out.append(random_nnf(st, rng.randint(1, max_vars), rng.randint(2, max_edges), rng))
    return out


def cnf_corpus(n: int, seed: int = 0, max_vars: int = 8):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        nv = rng.randint(2, max_vars)
        out.append(random_cnf(nv, rng.randint(1, 2 * nv), 3, rng))
    return out


def assignments(over: Iterable[int]):
    over = sorted(over)
    for bits in itertools.product([False, True], repeat=len(over)):
        yield dict(zip(over, bits))


def models_by_eval(s: Sentence, over: Iterable[int]) -> List[Dict[int, bool]]:
    return [a for a in assignments(over) if evaluate(s, a)]


def same_function(a: Sentence, b: Sentence) -> bool:
    over = sorted(vars_of(a) | vars_of(b))
    return all(evaluate(a, x) == evaluate(b, x) for x in assignments(over))


def cnf_holds(clauses, a) -> bool:
    return all(any(a[abs(l)] == (l > 0) for l in c) for c in clauses)
