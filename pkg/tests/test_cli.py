import io

import pandas as pd
import pytest

from kcmap.cli import main
from kcmap.families.generators import gen_parity
from kcmap.nnf.io import read_nnf_file, write_nnf_file
from kcmap.oracle.truth_table import count_bf

DIMACS = "c two clauses\np cnf 3 2\n1 -2 0\n2 3 0\n"


def run(cfg, *argv):
    out = io.StringIO()
    code = main(["--config", cfg, *argv], stdout=out)
    return code, out.getvalue()


@pytest.fixture
def parity4(tmp_path):
    path = tmp_path / "parity4.nnf"
    write_nnf_file(gen_parity(4).sentence, str(path))
    return str(path)


@pytest.fixture
def cnf_file(tmp_path):
    path = tmp_path / "f.cnf"
    path.write_text(DIMACS, encoding="utf-8")
    return str(path)


def test_count_with_claimed_language(quiet_config, parity4):
    assert run(quiet_config, "query", parity4, "--op", "ct", "--lang", "sd-DNNF") == (0, "8\n")
    assert run(quiet_config, "query", parity4, "--op", "ct", "--lang", "d-DNNF", "--over", "1,2,3,4,5") == (0, "16\n")


def test_language_is_picked_when_omitted(quiet_config, parity4):
    assert run(quiet_config, "query", parity4, "--op", "ct") == (0, "8\n")


def test_boolean_answers_map_to_exit_codes(quiet_config, parity4):
    assert run(quiet_config, "query", parity4, "--op", "co", "--lang", "d-DNNF") == (0, "true\n")
    assert run(quiet_config, "query", parity4, "--op", "va", "--lang", "d-DNNF") == (1, "false\n")
    assert run(quiet_config, "query", parity4, "--op", "ce", "--lang", "d-DNNF", "--clause", "1 -1") == (0, "true\n")


def test_capability_refusal(quiet_config, parity4, capsys):
    code, out = run(quiet_config, "query", parity4, parity4, "--op", "se", "--lang", "FBDD")
    assert code == 3
    assert out == ""
    assert "(FBDD, SE)" in capsys.readouterr().err


def test_membership_refusal(quiet_config, tmp_path):
    path = tmp_path / "overlap.nnf"
    # x1 ∧ (x1 ∨ x2)
    path.write_text("nnf 4 4 2\nL 1\nL 2\nO 0 2 0 1\nA 2 0 2\n", encoding="utf-8")
    code, _ = run(quiet_config, "query", str(path), "--op", "co", "--lang", "DNNF")
    assert code == 3


def test_usage_errors(quiet_config, parity4, tmp_path):
    assert run(quiet_config, "query", parity4)[0] == 2
    assert run(quiet_config, "query", parity4, "--op", "ce", "--lang", "d-DNNF")[0] == 2
    assert run(quiet_config, "query", parity4, "--op", "ct", "--lang", "SDD")[0] == 2
    assert run(quiet_config, "query", str(tmp_path / "missing.nnf"), "--op", "ct")[0] == 2
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 1\n1 3 0\n", encoding="utf-8")
    assert run(quiet_config, "compile", str(bad), "--to", "ddnnf")[0] == 2


def test_oracle_cap_exit_code(tmp_path, parity4):
    cfg = tmp_path / "capped.yaml"
    cfg.write_text("logging:\n  to_files: false\n  console: false\noracle:\n  max_vars: 2\n", encoding="utf-8")
    code, _ = run(str(cfg), "query", parity4, "--op", "ct", "--force-oracle")
    assert code == 4


def test_compile_then_query(quiet_config, cnf_file, tmp_path):
    out = tmp_path / "out" / "f.nnf"
    assert run(quiet_config, "compile", cnf_file, "--to", "ddnnf", "-o", str(out))[0] == 0
    assert count_bf(read_nnf_file(str(out)), over=range(1, 4)) == 4
    assert run(quiet_config, "query", str(out), "--op", "ct", "--lang", "d-DNNF", "--over", "1,2,3") == (0, "4\n")
    code, text = run(quiet_config, "query", str(out), "--op", "me", "--lang", "d-DNNF", "--over", "1,2,3")
    assert code == 0
    assert text.split() == ["001", "101", "110", "111"]


def test_compile_obdd_with_order(quiet_config, cnf_file):
    code, text = run(quiet_config, "compile", cnf_file, "--to", "obdd", "--order", "3,2,1")
    assert code == 0
    assert text.startswith("nnf ")


def test_prime_export(quiet_config, cnf_file, tmp_path):
    listing = tmp_path / "pi.txt"
    code, _ = run(quiet_config, "compile", cnf_file, "--to", "pi", "-o", str(tmp_path / "pi.nnf"), "--export-list", str(listing))
    assert code == 0
    lines = listing.read_text(encoding="utf-8").splitlines()
    # (x1 ∨ ¬x2), (x2 ∨ x3) and their resolvent (x1 ∨ x3)
    assert lines[0] == "p cnf 3 3"
    assert run(quiet_config, "compile", cnf_file, "--to", "ddnnf", "--export-list", str(listing))[0] == 2


def test_classify_output(quiet_config, parity4):
    code, text = run(quiet_config, "classify", parity4)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "NNF yes"
    assert "sd-DNNF yes" in lines


def test_transform_condition(quiet_config, cnf_file, tmp_path):
    obdd = tmp_path / "f.obdd.nnf"
    cond = tmp_path / "cond.nnf"
    assert run(quiet_config, "compile", cnf_file, "--to", "obdd", "-o", str(obdd))[0] == 0
    assert run(quiet_config, "transform", str(obdd), "--op", "cd", "--lang", "OBDD_<", "--term", "-2", "-o", str(cond))[0] == 0
    # x2 false leaves x3
    assert count_bf(read_nnf_file(str(cond)), over=[1, 3]) == 2
    assert run(quiet_config, "transform", str(obdd), "--op", "sfo", "--lang", "OBDD_<", "--vars", "1,2")[0] == 2
    assert run(quiet_config, "transform", str(obdd), "--op", "fo", "--lang", "OBDD_<", "--vars", "1")[0] == 3


def test_oracle_subcommand(quiet_config, parity4):
    code, text = run(quiet_config, "oracle", parity4, "--op", "count")
    assert (code, text) == (0, "8\n")
    code, text = run(quiet_config, "oracle", parity4, parity4, "--op", "equiv")
    assert (code, text) == (0, "true\n")


def test_bench_writes_csv(quiet_config, tmp_path):
    csv = tmp_path / "bench" / "sizes.csv"
    code, _ = run(
        quiet_config, "bench", "--family", "parity", "--range", "2..4", "--targets", "obdd,dnf",
        "--workers", "1", "-o", str(csv),
    )
    assert code == 0
    df = pd.read_csv(csv)
    assert len(df) == 6
    obdd = df[df.target == "obdd"].sort_values("params")
    assert list(obdd.value.astype(int)) == [5, 7, 9]


def test_bench_unknown_family(quiet_config):
    assert run(quiet_config, "bench", "--family", "cliques")[0] == 2
