import pytest

from kcmap.common.errors import CapabilityError
from kcmap.languages import capabilities as caps
from kcmap.languages.tags import (
    PARENTS, LanguageTag as L, QueryTag as Q, TransformTag as T, Verdict,
    ancestors, close_upwards, combine, parse_language, topo_languages,
)


def test_every_cell_is_known():
    for lang in L:
        for q in Q:
            assert caps.query_cell(lang, q) in caps.CELL_TEXT
        for t in T:
            assert caps.transform_cell(lang, t) in caps.CELL_TEXT


def test_sublanguages_keep_parent_queries():
    for child, parents in PARENTS.items():
        for parent in parents:
            for q in Q:
                if caps.query_supported(parent, q):
                    assert caps.query_supported(child, q), (child, parent, q)


def test_spot_cells():
    assert caps.query_cell(L.FBDD, Q.SE) == caps.HARD
    assert caps.query_cell(L.D_DNNF, Q.EQ) == caps.OPEN
    assert caps.transform_cell(L.OBDD_LT, T.AND_BC) == caps.OK
    assert caps.transform_cell(L.OBDD, T.AND_C) == caps.NEVER
    assert all(caps.query_supported(L.MODS, q) for q in Q)
    assert caps.transform_supported(L.DNNF, T.FO)
    assert not caps.transform_supported(L.D_DNNF, T.NOT_C)
    assert not caps.transform_supported(L.NNF, T.FO)
    assert [t for t in T if caps.transform_supported(L.IP, t)] == [T.CD, T.AND_BC]


def test_gate_message_names_the_cell():
    with pytest.raises(CapabilityError) as err:
        caps.require_query(L.FBDD, Q.SE)
    assert "(FBDD, SE)" in str(err.value)
    assert "hard" in str(err.value)
    assert err.value.exit_code == 3
    assert err.value.lang == "FBDD" and err.value.op == "SE"
    with pytest.raises(CapabilityError):
        caps.require_transform(L.D_DNNF, T.NOT_C)
    caps.require_transform(L.OBDD_LT, T.NOT_C)


def test_model_enumeration_support():
    assert caps.me_supported(L.D_DNNF)
    assert caps.me_supported(L.DNNF)
    assert not caps.me_supported(L.CNF)


def test_succinctness():
    assert caps.strictly_more_succinct(L.DNNF, L.DNF)
    assert caps.strictly_more_succinct(L.OBDD, L.OBDD_LT)
    assert not caps.strictly_more_succinct(L.MODS, L.OBDD)
    assert caps.succinctness(L.PI, L.MODS) == "open"
    assert L.BDD not in caps.succinctness_languages()
    with pytest.raises(KeyError):
        caps.succinctness(L.BDD, L.NNF)


def test_malformed_table_rejected(tmp_path):
    bad = tmp_path / "caps.yaml"
    bad.write_text("queries:\n  columns: [CO, VA]\n  rows:\n    NNF: [ok]\n", encoding="utf-8")
    with pytest.raises(ValueError):
        caps.load_tables(str(bad))


def test_lattice_helpers():
    order = topo_languages()
    for child, parents in PARENTS.items():
        assert all(order.index(p) < order.index(child) for p in parents)
    assert ancestors(L.FBDD) == {L.BDD, L.D_NNF, L.D_DNNF, L.DNNF, L.NNF}
    assert close_upwards([L.PI]) == {L.PI, L.CNF, L.F_NNF, L.NNF}
    assert combine([Verdict.YES, Verdict.UNKNOWN]) is Verdict.UNKNOWN
    assert combine([Verdict.UNKNOWN, Verdict.NO]) is Verdict.NO
    assert combine([]) is Verdict.YES


@pytest.mark.parametrize(
    "txt, tag",
    [("d-DNNF", L.D_DNNF), ("sd_dnnf", L.SD_DNNF), ("obdd<", L.OBDD_LT), ("OBDD_<", L.OBDD_LT), ("mods", L.MODS)],
)
def test_parse_language(txt, tag):
    assert parse_language(txt) is tag


def test_parse_language_unknown():
    with pytest.raises(ValueError):
        parse_language("SDD")
