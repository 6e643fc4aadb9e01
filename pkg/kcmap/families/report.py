"""Size measurements per (family, params, target) and the growth claims checked on them."""
from __future__ import annotations
import logging
import numbers
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from kcmap.common.config import ensure_parent_dir, parse_int_list
from kcmap.common.errors import KcmapError, OracleCapError
from kcmap.common.logging_config import get_progress_interval
from kcmap.compile.compiler import compile_obdd, compile_obdd_from_sentence, compile_sddnnf
from kcmap.compile.ddnnf import compile_ddnnf
from kcmap.compile.dimacs import CnfFormula
from kcmap.compile.prime import prime_implicants_of_cnf, prime_implicants_of_dnf, prime_implicates
from kcmap.families.generators import (
    ALIASES,
    FamilyInstance,
    cm_prime_count,
    gen_all_ones,
    gen_chandra_markowsky,
    gen_equivalences,
    gen_pair_clauses,
    gen_parity,
    gen_random,
)
from kcmap.nnf.store import size
from kcmap.oracle.truth_table import count_bf, prime_implicants_bf, prime_implicates_bf
from kcmap.transform.obdd import obdd_node_count

logger = logging.getLogger("bench")

COLUMNS = ["family", "params", "target", "metric", "value"]
CAP_EXCEEDED = "cap-exceeded"
UNSUPPORTED = "unsupported"

DEFAULT_TARGETS: Dict[str, List[str]] = {
    "parity": ["nnf", "obdd", "dnf"],
    "pair_clauses": ["cnf", "pi", "ip", "obdd", "ddnnf"],
    "equivalences": ["cnf", "obdd_interleaved", "obdd_blocked", "ddnnf"],
    "chandra_markowsky": ["dnf", "ip", "obdd"],
    "all_ones": ["cnf", "mods", "obdd"],
    "random": ["cnf", "ddnnf", "sddnnf", "obdd", "pi"],
}

DEFAULT_RANGES: Dict[str, str] = {
    "parity": "2..10",
    "pair_clauses": "1..4",
    "equivalences": "2..8",
    "chandra_markowsky": "1..2;1..3",
    "all_ones": "1..8",
    "random": "4..8",
}

Value = Union[int, str]


@dataclass(frozen=True)
class ClaimResult:
    name: str
    ok: bool
    detail: str


@dataclass
class SizeReport:
    rows: pd.DataFrame
    claims: List[ClaimResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    def value(self, family: str, params: str, target: str) -> Optional[Value]:
        df = self.rows
        hit = df[(df.family == family) & (df.params == params) & (df.target == target)]
        return None if hit.empty else hit.iloc[0]["value"]


def parse_range(txt: Union[str, Sequence[int]]) -> List[int]:
    """'2..10' is inclusive; '3,5,8' or a list is taken as is."""
    if isinstance(txt, str) and ".." in txt:
        lo, hi = txt.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return parse_int_list(txt)


def param_grid(family: str, span: Union[str, Sequence[int]]) -> List[Tuple[int, ...]]:
    if family == "chandra_markowsky":
        txt = span if isinstance(span, str) else ";".join(str(x) for x in span)
        ks, _, ms = txt.partition(";")
        return [(k, m) for k in parse_range(ks) for m in parse_range(ms or ks)]
    return [(n,) for n in parse_range(span)]


def format_params(family: str, params: Tuple[int, ...]) -> str:
    if family == "chandra_markowsky":
        return f"k={params[0]};m={params[1]}"
    return f"n={params[0]}"


def instance(family: str, params: Tuple[int, ...], seed: int = 0) -> FamilyInstance:
    if family == "parity":
        return gen_parity(params[0])
    if family == "pair_clauses":
        return gen_pair_clauses(params[0])
    if family == "equivalences":
        return gen_equivalences(params[0])
    if family == "chandra_markowsky":
        return gen_chandra_markowsky(params[0], params[1])[1]
    if family == "all_ones":
        return gen_all_ones(params[0])[1]
    if family == "random":
        return gen_random(params[0], seed)
    raise KcmapError(f"unknown family {family!r}")


def _prime_terms(inst: FamilyInstance) -> int:
    if inst.terms is not None:
        return len(prime_implicants_of_dnf(inst.terms))
    if inst.cnf is not None:
        return len(prime_implicants_of_cnf(inst.cnf.clauses))
    return len(prime_implicants_bf(inst.as_sentence()))


def _dnf_terms(inst: FamilyInstance) -> int:
    if inst.terms is not None:
        return len(inst.terms)
    # sentences not given as a DNF are measured by their prime-implicant cover
    return _prime_terms(inst)


def _prime_clauses(inst: FamilyInstance) -> int:
    if inst.cnf is not None:
        return len(prime_implicates(inst.cnf.clauses))
    return len(prime_implicates_bf(inst.as_sentence()))


def _obdd(inst: FamilyInstance, order_name: Optional[str] = None) -> int:
    order = inst.orders.get(order_name) if order_name else None
    if inst.cnf is not None:
        return obdd_node_count(compile_obdd(inst.cnf, order))
    return obdd_node_count(compile_obdd_from_sentence(inst.as_sentence(), order))


def _need_cnf(inst: FamilyInstance) -> CnfFormula:
    if inst.cnf is None:
        raise KcmapError(f"{inst.family} is not given as a CNF")
    return inst.cnf


MEASURES: Dict[str, Tuple[str, Callable[[FamilyInstance], int]]] = {
    "nnf": ("edges", lambda inst: size(inst.as_sentence())),
    "cnf": ("clauses", lambda inst: len(_need_cnf(inst).clauses)),
    "dnf": ("terms", _dnf_terms),
    "ip": ("terms", _prime_terms),
    "pi": ("clauses", _prime_clauses),
    "mods": ("terms", lambda inst: count_bf(inst.as_sentence(), over=range(1, inst.num_vars + 1))),
    "obdd": ("nodes", lambda inst: _obdd(inst)),
    "obdd_interleaved": ("nodes", lambda inst: _obdd(inst, "interleaved")),
    "obdd_blocked": ("nodes", lambda inst: _obdd(inst, "blocked")),
    "ddnnf": ("edges", lambda inst: size(compile_ddnnf(_need_cnf(inst)))),
    "sddnnf": ("edges", lambda inst: size(compile_sddnnf(_need_cnf(inst)))),
}


def measure(inst: FamilyInstance, target: str) -> Tuple[str, Value]:
    """One report cell; a cap overflow or an inapplicable target becomes a marker."""
    if target not in MEASURES:
        return "none", UNSUPPORTED
    metric, fn = MEASURES[target]
    if target.startswith("obdd_") and target[5:] not in inst.orders:
        return metric, UNSUPPORTED
    try:
        return metric, fn(inst)
    except OracleCapError as e:
        logger.warning("cell cap exceeded family=%s params=%s target=%s: %s", inst.family, inst.params, target, e)
        return metric, CAP_EXCEEDED
    except KcmapError as e:
        logger.debug("cell unsupported family=%s target=%s: %s", inst.family, target, e)
        return metric, UNSUPPORTED


def _cell(family: str, params: Tuple[int, ...], target: str, seed: int) -> Dict[str, Any]:
    # each cell builds its own instance and store
    inst = instance(family, params, seed)
    metric, value = measure(inst, target)
    return {"family": family, "params": params, "target": target, "metric": metric, "value": value}


def _values(df: pd.DataFrame, family: str, target: str) -> List[Tuple[Tuple[int, ...], Value]]:
    sub = df[(df.family == family) & (df.target == target)]
    return [(p, v) for p, v in zip(sub["params"], sub["value"])]


def _ints(pairs: List[Tuple[Tuple[int, ...], Value]]) -> List[Tuple[Tuple[int, ...], int]]:
    return [(p, int(v)) for p, v in pairs if isinstance(v, numbers.Integral)]


def check_claims(df: pd.DataFrame) -> List[ClaimResult]:
    """Growth directions the separation families are expected to exhibit."""
    out: List[ClaimResult] = []

    def exact(name: str, family: str, target: str, expected: Callable[[Tuple[int, ...]], int]) -> None:
        cells = _ints(_values(df, family, target))
        if not cells:
            return
        bad = [(p, v, expected(p)) for p, v in cells if v != expected(p)]
        out.append(ClaimResult(name, not bad, "; ".join(f"{p}: got {v}, expected {e}" for p, v, e in bad) or f"{len(cells)} cells"))

    def bounded(name: str, family: str, target: str, bound: Callable[[Tuple[int, ...]], int]) -> None:
        cells = _ints(_values(df, family, target))
        if not cells:
            return
        bad = [(p, v, bound(p)) for p, v in cells if v > bound(p)]
        out.append(ClaimResult(name, not bad, "; ".join(f"{p}: {v} > {b}" for p, v, b in bad) or f"{len(cells)} cells"))

    bounded("parity obdd affine", "parity", "obdd", lambda p: 4 * p[0] + 4)
    exact("parity dnf terms", "parity", "dnf", lambda p: 2 ** (p[0] - 1))
    exact("pair_clauses ip terms", "pair_clauses", "ip", lambda p: 2 ** p[0])
    exact("pair_clauses pi clauses", "pair_clauses", "pi", lambda p: p[0])
    exact("chandra_markowsky ip terms", "chandra_markowsky", "ip", lambda p: cm_prime_count(p[0], p[1]))
    exact("all_ones mods terms", "all_ones", "mods", lambda p: 2 ** p[0] - 1)

    inter = dict(_ints(_values(df, "equivalences", "obdd_interleaved")))
    blocked = dict(_ints(_values(df, "equivalences", "obdd_blocked")))
    shared = sorted(set(inter) & set(blocked))
    if shared:
        ratios = [(p, blocked[p] / inter[p]) for p in shared]
        mono = all(b[1] >= a[1] for a, b in zip(ratios, ratios[1:]))
        detail = ", ".join(f"n={p[0]}:{r:.2f}" for p, r in ratios)
        out.append(ClaimResult("equivalences ratio nondecreasing", mono, detail))
        at8 = [r for p, r in ratios if p[0] == 8]
        if at8:
            out.append(ClaimResult("equivalences ratio at n=8", at8[0] >= 4, f"{at8[0]:.2f}"))
    return out


def _plan(families: Dict[str, Any]) -> List[Tuple[str, Tuple[int, ...], str]]:
    cells = []
    for name, fam_cfg in families.items():
        family = ALIASES.get(name, name)
        fam_cfg = fam_cfg if isinstance(fam_cfg, dict) else {"range": fam_cfg}
        grid = param_grid(family, fam_cfg.get("range") or DEFAULT_RANGES.get(family, "1..4"))
        targets = fam_cfg.get("targets") or DEFAULT_TARGETS.get(family, ["nnf"])
        if isinstance(targets, str):
            targets = [t.strip() for t in targets.split(",") if t.strip()]
        cells.extend((family, params, t) for params in grid for t in targets)
    return cells


def run_size_report(config: Dict[str, Any]) -> SizeReport:
    """Builds every configured cell, then checks the claims.

    config keys: families (name -> {range, targets}), workers, seed, output (csv path), excel.
    """
    families = config.get("families") or {f: {} for f in DEFAULT_TARGETS if f != "random"}
    seed = int(config.get("seed", 0))
    workers = max(1, int(config.get("workers", 1)))
    plan = _plan(families)
    logger.info("bench start cells=%d workers=%d", len(plan), workers, extra={"is_progress": True})
    interval = get_progress_interval()
    rows: List[Dict[str, Any]] = []
    if workers == 1:
        for i, (fam, params, target) in enumerate(plan, start=1):
            rows.append(_cell(fam, params, target, seed))
            if i % interval == 0:
                logger.info("bench progress %d/%d", i, len(plan), extra={"is_progress": True})
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            fut_map = {ex.submit(_cell, fam, params, target, seed): (fam, params, target) for fam, params, target in plan}
            for i, fut in enumerate(as_completed(fut_map), start=1):
                fam, params, target = fut_map[fut]
                try:
                    rows.append(fut.result())
                except Exception as e:  # pragma: no cover
                    logger.error("cell failed family=%s params=%s target=%s: %s", fam, params, target, e)
                    rows.append({"family": fam, "params": params, "target": target, "metric": "none", "value": f"error: {e}"})
                if i % interval == 0:
                    logger.info("bench progress %d/%d", i, len(plan), extra={"is_progress": True})

    rows.sort(key=lambda r: (r["family"], r["params"], r["target"]))
    df = pd.DataFrame(rows, columns=COLUMNS)
    claims = check_claims(df)
    for c in claims:
        if c.ok:
            logger.info("claim ok %s (%s)", c.name, c.detail)
        else:
            logger.warning("claim failed %s: %s", c.name, c.detail)
    df["params"] = [format_params(f, p) for f, p in zip(df["family"], df["params"])]
    report = SizeReport(df, claims)
    if config.get("output"):
        write_report(report, config["output"], config.get("excel"))
    logger.info("bench done rows=%d claims_ok=%s", len(df), report.ok, extra={"is_progress": True})
    return report


def write_report(report: SizeReport, csv_path: str, excel_path: Optional[str] = None) -> Dict[str, Optional[str]]:
    ensure_parent_dir(csv_path)
    report.rows.to_csv(csv_path, index=False, lineterminator="\n")
    result: Dict[str, Optional[str]] = {"csv": csv_path, "excel": None}
    if excel_path:
        try:
            ensure_parent_dir(excel_path)
            claims = pd.DataFrame([{"claim": c.name, "ok": c.ok, "detail": c.detail} for c in report.claims], columns=["claim", "ok", "detail"])
            with pd.ExcelWriter(excel_path, engine="openpyxl") as writer:
                report.rows.to_excel(writer, index=False, sheet_name="sizes")
                claims.to_excel(writer, index=False, sheet_name="claims")
            result["excel"] = excel_path
        except ImportError as e:
            logger.warning("xlsx skipped, csv only: %s", e)
    logger.info("write report csv=%s xlsx=%s", csv_path, result["excel"])
    return result

