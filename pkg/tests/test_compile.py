import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcmap.common.errors import DimacsParseError, OracleCapError, PreconditionError
from kcmap.compile import prime
from kcmap.compile.compiler import (
    TARGETS, compile_mods, compile_obdd, compile_obdd_from_sentence, compile_sddnnf, compile_to, target_language,
)
from kcmap.compile.ddnnf import branch_variable, compile_ddnnf, components
from kcmap.compile.dimacs import CnfFormula, parse_dimacs, write_clause_list, write_dimacs, write_term_list
from kcmap.compile.prime import compile_ip, compile_pi, prime_implicants_of_cnf, prime_implicants_of_dnf, prime_implicates
from kcmap.families.generators import cm_prime_count, cm_terms, gen_all_ones, gen_equivalences, gen_pair_clauses, gen_parity, random_cnf
from kcmap.languages.tags import LanguageTag
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import cnf_clauses, dnf_terms
from kcmap.nnf.store import NnfStore
from kcmap.oracle.truth_table import count_bf, equivalent_bf, prime_implicants_bf
from kcmap.properties import checks
from kcmap.transform.obdd import is_reduced, obdd_node_count

from helpers import cnf_corpus, cnf_holds, corpus_size, models_by_eval


# -- DIMACS ---------------------------------------------------------------------------


def test_parse_simple_clause():
    f = parse_dimacs("p cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2
    assert f.clauses == [frozenset({1, -2})]


def test_duplicate_literals_merge():
    f = parse_dimacs("p cnf 1 1\n1 1 0\n")
    assert f.clauses == [frozenset({1})]


def test_comments_and_multiline_clause():
    f = parse_dimacs(io.StringIO("c hello\np cnf 3 2\n1 2\n3 0 -1 0\n%\n0\n"))
    assert f.clauses == [frozenset({1, 2, 3}), frozenset({-1})]


def test_tautologies_are_flagged_not_dropped():
    f = parse_dimacs("p cnf 2 2\n1 -1 0\n2 0\n")
    assert len(f.clauses) == 2
    assert f.tautologies == [0]
    assert f.variables == [1, 2]


@pytest.mark.parametrize(
    "text, kind, line",
    [
        ("p cnf 1 1\n2 0\n", "range", 2),
        ("1 0\n", "header", 1),
        ("c only a comment\n", "header", 1),
        ("p cnf x 1\n1 0\n", "header", 1),
        ("p dnf 1 1\n1 0\n", "header", 1),
        ("p cnf 1 1\np cnf 1 1\n1 0\n", "header", 2),
        ("p cnf 2 1\n1 2\n", "unterminated", 2),
        ("p cnf 2 2\n1 0\n", "count", 2),
        ("p cnf 2 1\n1 a 0\n", "token", 2),
    ],
)
def test_dimacs_errors(text, kind, line):
    with pytest.raises(DimacsParseError) as err:
        parse_dimacs(text)
    assert err.value.kind == kind
    assert err.value.line == line


def test_write_lists():
    assert write_clause_list(2, [frozenset({1, -2})]) == "p cnf 2 1\n1 -2 0\n"
    assert write_term_list(3, [frozenset({-3}), frozenset()]) == "p dnf 3 2\n-3 0\n0\n"
    f = CnfFormula(3, [frozenset({2, -1}), frozenset({3})])
    assert parse_dimacs(write_dimacs(f)).clauses == f.clauses


# -- d-DNNF ---------------------------------------------------------------------------


def test_components_split_on_shared_variables():
    parts = components([frozenset({1, 2}), frozenset({3}), frozenset({2, -4})])
    assert parts == [[frozenset({1, 2}), frozenset({2, -4})], [frozenset({3})]]


def test_branch_variable_prefers_frequent_then_low():
    assert branch_variable([frozenset({1, 3}), frozenset({-3, 2})]) == 3
    assert branch_variable([frozenset({2}), frozenset({1})]) == 1


def test_trivial_inputs():
    assert compile_ddnnf(CnfFormula(2, [])).node.kind == "T"
    assert compile_ddnnf(CnfFormula(2, [frozenset()])).node.kind == "F"
    assert compile_ddnnf(CnfFormula(1, [frozenset({1, -1})])).node.kind == "T"


def test_ddnnf_is_deterministic_and_decomposable():
    for f in cnf_corpus(corpus_size(25, 200), seed=11):
        s = compile_ddnnf(f)
        assert checks.is_decomposable(s)
        assert checks.is_deterministic(s, use_oracle=False)
        expected = len(models_by_eval(f.to_sentence(s.store), range(1, f.num_vars + 1)))
        assert count_bf(s, over=range(1, f.num_vars + 1)) == expected


def test_sddnnf_is_smooth():
    for f in cnf_corpus(10, seed=12):
        s = compile_sddnnf(f)
        assert checks.is_smooth(s)
        assert checks.is_decomposable(s)
        assert equivalent_bf(s, f.to_sentence(s.store))


def test_ddnnf_splits_after_branching():
    # x1 falsified leaves the (x2) block apart from the rest
    f = CnfFormula(5, [frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 1, 3})])
    s = compile_ddnnf(f)
    assert count_bf(s, over=range(1, 6)) == 17


# -- OBDD -----------------------------------------------------------------------------


def test_obdd_canonical_under_clause_permutation():
    rng = random.Random(4)
    for f in cnf_corpus(15, seed=13):
        st_ = NnfStore(f.num_vars)
        a = compile_obdd(f, store=st_)
        shuffled = list(f.clauses)
        rng.shuffle(shuffled)
        b = compile_obdd(CnfFormula(f.num_vars, shuffled), store=st_)
        assert a.root == b.root
        assert is_reduced(a)
        c = compile_obdd_from_sentence(compile_ddnnf(f, st_))
        assert c.root == a.root


def test_equivalence_orders():
    for n in (2, 3):
        inst = gen_equivalences(n)
        inter = compile_obdd(inst.cnf, inst.orders["interleaved"])
        blocked = compile_obdd(inst.cnf, inst.orders["blocked"])
        assert obdd_node_count(inter) == 3 * n + 2
        assert obdd_node_count(blocked) == {2: 11, 3: 23}[n]


def test_parity_obdd_is_linear():
    for n in range(1, 7):
        s = compile_obdd_from_sentence(gen_parity(n).sentence)
        assert obdd_node_count(s) == 2 * n + 1


def test_order_must_cover_variables():
    with pytest.raises(PreconditionError):
        compile_obdd(CnfFormula(3, [frozenset({1, 3})]), VarOrder.of([1, 2]))


# -- prime forms and models -----------------------------------------------------------


def test_prime_implicates_of_resolvable_pair():
    assert prime_implicates([frozenset({1, 2}), frozenset({-1, 2})]) == [frozenset({2})]
    s = compile_pi(CnfFormula(2, [frozenset({1, 2}), frozenset({-1, 2})]))
    assert cnf_clauses(s) == [frozenset({2})]


def test_prime_implicates_detect_contradiction():
    assert prime_implicates([frozenset({1}), frozenset({-1})]) == [frozenset()]


def test_pair_clause_primes():
    for n in range(1, 5):
        f = gen_pair_clauses(n).cnf
        assert len(prime_implicants_of_cnf(f.clauses)) == 2 ** n
        assert len(prime_implicates(f.clauses)) == n
        assert checks.is_ip(compile_ip(f))


@pytest.mark.parametrize("k, m, expected", [(1, 1, 2), (1, 3, 4), (2, 1, 6), (2, 2, 13)])
def test_chandra_markowsky_prime_counts(k, m, expected):
    primes = prime_implicants_of_dnf(cm_terms(k, m, guarded=False))
    assert len(primes) == expected == cm_prime_count(k, m)


def test_prime_implicants_match_oracle():
    for f in cnf_corpus(15, seed=14, max_vars=6):
        s = f.to_sentence()
        assert sorted(map(sorted, prime_implicants_of_cnf(f.clauses))) == sorted(map(sorted, prime_implicants_bf(s)))


def test_prime_cap(monkeypatch):
    monkeypatch.setattr(prime, "MAX_VARS", 2)
    with pytest.raises(OracleCapError):
        compile_pi(CnfFormula(3, [frozenset({1, 2, 3})]))


def test_mods_lists_every_model():
    _, dual = gen_all_ones(3)
    s = compile_mods(dual.cnf)
    terms = dnf_terms(s)
    assert len(terms) == 7
    assert all(len(t) == 3 for t in terms)


def test_compile_to_dispatch():
    f = CnfFormula(2, [frozenset({1, 2})])
    for target in TARGETS:
        s = compile_to(target, f)
        assert count_bf(s, over=[1, 2]) == 3
    assert target_language("obdd") is LanguageTag.OBDD_LT
    with pytest.raises(PreconditionError):
        compile_to("sdd", f)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=7), st.integers(min_value=1, max_value=14), st.integers(min_value=0, max_value=10_000))
def test_ddnnf_models_satisfy_clauses(n_vars, n_clauses, seed):
    f = random_cnf(n_vars, n_clauses, 3, random.Random(seed))
    s = compile_ddnnf(f)
    for a in models_by_eval(s, range(1, n_vars + 1)):
        assert cnf_holds(f.clauses, a)
    expected = models_by_eval(f.to_sentence(s.store), range(1, n_vars + 1))
    assert count_bf(s, over=range(1, n_vars + 1)) == len(expected)
