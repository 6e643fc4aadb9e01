"""Cross-checks of compilers, checks, queries and transforms against plain evaluation.

The corpus is small by default; KCMAP_FULL_CORPUS=1 runs the long version.
"""
import itertools

from kcmap.compile.compiler import TARGETS, compile_obdd_from_sentence, compile_to
from kcmap.languages.tags import LanguageTag as L, Verdict
from kcmap.nnf.rewrite import de_morgan
from kcmap.nnf.store import AND, OR, evaluate, reachable
from kcmap.properties import checks
from kcmap.properties.classify import classify
from kcmap.queries.queries import ct, me
from kcmap.transform.obdd import is_reduced
from kcmap.transform.smoothing import smooth

from helpers import cnf_corpus, cnf_holds, corpus_size, models_by_eval, nnf_corpus, same_function


def _overlapping_disjuncts(s, r):
    store = s.store
    kids = store.nodes[r].children
    over = sorted(store.vars_at(r))
    for bits in itertools.product([False, True], repeat=len(over)):
        a = dict(zip(over, bits))
        if sum(evaluate(s.at(c), a) for c in kids) > 1:
            return True
    return False


def test_structural_checks_match_definitions():
    for s in nnf_corpus(corpus_size(40, 400), seed=41):
        store = s.store
        shared_and = False
        for r in reachable(store, s.root):
            n = store.nodes[r]
            if n.kind == AND:
                vs = [store.vars_at(c) for c in n.children]
                if any(a & b for a, b in itertools.combinations(vs, 2)):
                    shared_and = True
        assert bool(checks.is_decomposable(s)) == (not shared_and)


def test_determinism_matches_evaluation():
    for s in nnf_corpus(corpus_size(30, 300), seed=42, max_vars=6):
        store = s.store
        overlapping = any(
            _overlapping_disjuncts(s, r)
            for r in reachable(store, s.root)
            if store.nodes[r].kind == OR and len(store.nodes[r].children) > 1
        )
        verdict = checks.is_deterministic(s, use_oracle=True).verdict
        assert verdict is (Verdict.NO if overlapping else Verdict.YES)


def test_classification_is_upward_closed():
    for s in nnf_corpus(corpus_size(20, 200), seed=43, max_vars=5):
        report = classify(s)
        if report.verdicts[L.SD_DNNF] is Verdict.YES:
            assert report.verdicts[L.D_DNNF] is Verdict.YES
        if report.verdicts[L.D_DNNF] is Verdict.YES:
            assert report.verdicts[L.DNNF] is Verdict.YES and report.verdicts[L.D_NNF] is Verdict.YES
        assert report.verdicts[L.NNF] is Verdict.YES


def test_every_target_keeps_the_models():
    for f in cnf_corpus(corpus_size(12, 120), seed=44, max_vars=6):
        universe = range(1, f.num_vars + 1)
        expected = [a for a in (dict(zip(universe, bits)) for bits in itertools.product([False, True], repeat=f.num_vars))
                    if cnf_holds(f.clauses, a)]
        for target in TARGETS:
            out = compile_to(target, f)
            assert models_by_eval(out, universe) == expected, target


def test_counting_and_enumeration_on_compiled_forms():
    for f in cnf_corpus(corpus_size(12, 120), seed=45, max_vars=6):
        universe = range(1, f.num_vars + 1)
        for target in ("ddnnf", "sddnnf", "obdd", "mods"):
            lang = TARGETS[target][0]
            out = compile_to(target, f)
            expected = models_by_eval(out, universe)
            assert ct(out, lang, over=universe) == len(expected)
            got = [m.bitstring() for m in me(out, lang, over=universe)]
            assert got == ["".join("1" if a[v] else "0" for v in universe) for a in expected]


def test_rewrites_keep_semantics():
    for s in nnf_corpus(corpus_size(25, 250), seed=46, max_vars=6):
        neg = de_morgan(s)
        over = sorted(s.store.vars_at(s.root))
        for bits in itertools.product([False, True], repeat=len(over)):
            a = dict(zip(over, bits))
            assert evaluate(neg, a) != evaluate(s, a)
        assert same_function(smooth(s), s)
        assert checks.is_smooth(smooth(s))
        obdd = compile_obdd_from_sentence(s)
        assert is_reduced(obdd)
        assert same_function(obdd, s)
