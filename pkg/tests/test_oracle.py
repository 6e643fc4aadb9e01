import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcmap.common.errors import EXIT_CAP_EXCEEDED, OracleCapError, PreconditionError
from kcmap.families.generators import gen_parity, random_nnf
from kcmap.nnf.rewrite import build_cnf, build_dnf
from kcmap.nnf.store import NnfStore, Sentence, evaluate, vars_of
from kcmap.oracle import truth_table
from kcmap.oracle.truth_table import (
    consistent_bf, count_bf, entails_bf, equivalent_bf, models_bf, pairwise_disjoint_bf,
    prime_implicants_bf, prime_implicates_bf, valid_bf,
)

from helpers import assignments, models_by_eval


def test_models_in_lexicographic_order(store):
    s = Sentence(store, store.disj([store.literal(1), store.literal(2)]))
    assert models_bf(s).bitstrings() == ["01", "10", "11"]
    assert count_bf(s) == 3
    assert count_bf(s, over=[1, 2, 3]) == 6


def test_universe_must_cover_sentence(store):
    s = Sentence(store, store.literal(3))
    with pytest.raises(PreconditionError):
        count_bf(s, over=[1, 2])


def test_constants_over_empty_universe(store):
    t = Sentence(store, store.true())
    f = Sentence(store, store.false())
    assert count_bf(t) == 1
    assert count_bf(f) == 0
    assert models_bf(t).bitstrings() == [""]
    assert valid_bf(t) and not consistent_bf(f)
    assert prime_implicants_bf(t) == [frozenset()]
    assert prime_implicants_bf(f) == []


def test_entailment_and_equivalence(store):
    a = Sentence(store, store.conj([store.literal(1), store.literal(2)]))
    b = Sentence(store, store.literal(1))
    assert entails_bf(a, b)
    assert not entails_bf(b, a)
    assert not equivalent_bf(a, b)
    c = Sentence(store, store.conj([store.literal(2), store.literal(1)]))
    assert equivalent_bf(a, c)


def test_pairwise_disjoint(store):
    assert pairwise_disjoint_bf([Sentence(store, store.literal(1)), Sentence(store, store.literal(-1))])
    assert not pairwise_disjoint_bf([Sentence(store, store.literal(1)), Sentence(store, store.literal(2))])
    assert pairwise_disjoint_bf([])


def test_prime_implicates_of_resolvable_pair(store):
    s = build_cnf(store, [frozenset({1, 2}), frozenset({-1, 2})])
    assert prime_implicates_bf(s) == [frozenset({2})]


def test_parity_prime_implicants_are_full_terms():
    s = gen_parity(3).sentence
    primes = prime_implicants_bf(s)
    assert len(primes) == 4
    assert all(len(p) == 3 for p in primes)


def test_prime_implicants_of_consensus(store):
    s = build_dnf(store, [frozenset({1, 2}), frozenset({-1, 3})])
    assert set(prime_implicants_bf(s)) == {frozenset({1, 2}), frozenset({-1, 3}), frozenset({2, 3})}


def test_cap_raises(monkeypatch, store):
    monkeypatch.setattr(truth_table, "MAX_VARS", 2)
    s = Sentence(store, store.conj([store.literal(1), store.literal(2), store.literal(3)]))
    with pytest.raises(OracleCapError) as err:
        count_bf(s)
    assert err.value.exit_code == EXIT_CAP_EXCEEDED
    assert err.value.n == 3 and err.value.cap == 2


def test_prime_cap_is_separate(monkeypatch, store):
    monkeypatch.setattr(truth_table, "MAX_PRIME_VARS", 1)
    s = Sentence(store, store.disj([store.literal(1), store.literal(2)]))
    assert count_bf(s) == 3
    with pytest.raises(OracleCapError):
        prime_implicants_bf(s)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=2, max_value=30), st.integers(min_value=0, max_value=10_000))
def test_count_matches_direct_evaluation(n_vars, max_edges, seed):
    store = NnfStore()
    s = random_nnf(store, n_vars, max_edges, random.Random(seed))
    over = sorted(vars_of(s))
    expected = models_by_eval(s, over)
    got = models_bf(s)
    assert len(got) == len(expected) == count_bf(s)
    assert [dict(m) for m in got] == expected


def _shortest_first_implicants(s, over):
    # enumerate cubes by length, dropping any that contain an implicant already found
    found = []
    for k in range(len(over) + 1):
        for vs in itertools.combinations(over, k):
            for signs in itertools.product([1, -1], repeat=k):
                cube = frozenset(v * sg for v, sg in zip(vs, signs))
                if any(p <= cube for p in found):
                    continue
                fixed = {abs(lit): lit > 0 for lit in cube}
                free = [v for v in over if v not in fixed]
                if all(evaluate(s, {**fixed, **a}) for a in assignments(free)):
                    found.append(cube)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=2, max_value=20), st.integers(min_value=0, max_value=10_000))
def test_prime_table_matches_shortest_first_enumeration(n_vars, max_edges, seed):
    store = NnfStore()
    s = random_nnf(store, n_vars, max_edges, random.Random(seed))
    over = sorted(vars_of(s))
    expected = _shortest_first_implicants(s, over)
    assert set(prime_implicants_bf(s)) == set(expected)
    assert len(prime_implicants_bf(s)) == len(expected)
