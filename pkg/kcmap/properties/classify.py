from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from kcmap.languages.tags import PARENTS, LanguageTag, Verdict, combine, topo_languages
from kcmap.nnf.order import VarOrder
from kcmap.nnf.store import Sentence
from kcmap.properties import checks
from kcmap.properties.checks import CheckResult

logger = logging.getLogger("classify")

USE_ORACLE = True

L = LanguageTag


@dataclass
class ClassificationReport:
    verdicts: Dict[LanguageTag, Verdict]
    witnesses: Dict[str, Optional[int]] = field(default_factory=dict)
    tag_witness: Dict[LanguageTag, Optional[int]] = field(default_factory=dict)
    order: Optional[VarOrder] = None

    @property
    def definite(self) -> FrozenSet[LanguageTag]:
        return frozenset(t for t, v in self.verdicts.items() if v is Verdict.YES)

    @property
    def unknown(self) -> FrozenSet[LanguageTag]:
        return frozenset(t for t, v in self.verdicts.items() if v is Verdict.UNKNOWN)

    def __contains__(self, tag: object) -> bool:
        return tag in self.definite

    def lines(self) -> List[str]:
        out = []
        for tag in LanguageTag:
            v = self.verdicts[tag]
            w = self.tag_witness.get(tag)
            suffix = f" witness={w}" if v is not Verdict.YES and w is not None else ""
            out.append(f"{tag.value} {v.value}{suffix}")
        return out


class _Props:
    """Lazily evaluated property results for one sentence."""

    def __init__(self, s: Sentence, order: Optional[VarOrder], use_oracle: bool):
        self.s = s
        self.order = order
        self.use_oracle = use_oracle
        self.results: Dict[str, CheckResult] = {}
        self.found_order: Optional[VarOrder] = None

    def get(self, name: str) -> CheckResult:
        if name not in self.results:
            self.results[name] = self._compute(name)
        return self.results[name]

    def _compute(self, name: str) -> CheckResult:
        s = self.s
        if name == "decomposable":
            return checks.is_decomposable(s)
        if name == "deterministic":
            return checks.is_deterministic(s, use_oracle=self.use_oracle)
        if name == "smooth":
            return checks.is_smooth(s)
        if name == "flat":
            return checks.is_flat(s)
        if name == "simple_disjunction":
            return checks.is_simple_disjunction(s)
        if name == "simple_conjunction":
            return checks.is_simple_conjunction(s)
        if name == "decision":
            return checks.is_decision(s)
        if name == "read_once":
            return checks.read_once(s)
        if name == "ordered":
            found = checks.ordering_of(s)
            self.found_order = found
            return checks.YES if found is not None else CheckResult(Verdict.NO, s.root, "no consistent variable order")
        if name == "ordered_by":
            if self.order is None:
                return self.get("ordered")
            return checks.respects_order(s, self.order)
        if name == "prime_implicates":
            if not self.use_oracle:
                return CheckResult(Verdict.UNKNOWN, s.root, "oracle disabled")
            return checks.is_pi(s)
        if name == "prime_implicants":
            if not self.use_oracle:
                return CheckResult(Verdict.UNKNOWN, s.root, "oracle disabled")
            return checks.is_ip(s)
        raise KeyError(name)


# each tag lists the properties it adds on top of its lattice parents
_OWN: Dict[LanguageTag, List[str]] = {
    L.NNF: [],
    L.DNNF: ["decomposable"],
    L.D_NNF: ["deterministic"],
    L.S_NNF: ["smooth"],
    L.F_NNF: ["flat"],
    L.D_DNNF: [],
    L.SD_DNNF: [],
    L.BDD: ["decision"],
    L.FBDD: ["read_once"],
    L.OBDD: ["ordered"],
    L.OBDD_LT: ["ordered_by"],
    L.DNF: ["simple_conjunction"],
    L.CNF: ["simple_disjunction"],
    L.PI: ["prime_implicates"],
    L.IP: ["prime_implicants"],
    L.MODS: [],
}


def classify(s: Sentence, order: Optional[VarOrder] = None, use_oracle: Optional[bool] = None) -> ClassificationReport:
    props = _Props(s, order, USE_ORACLE if use_oracle is None else use_oracle)
    verdicts: Dict[LanguageTag, Verdict] = {}
    tag_witness: Dict[LanguageTag, Optional[int]] = {}
    for tag in topo_languages():
        parent_vs = [verdicts[p] for p in PARENTS[tag]]
        if Verdict.NO in parent_vs:
            # short-circuit: expensive own checks are skipped once a parent already failed
            verdicts[tag] = Verdict.NO
            tag_witness[tag] = next(tag_witness[p] for p in PARENTS[tag] if verdicts[p] is Verdict.NO)
            continue
        own = [props.get(name) for name in _OWN[tag]]
        verdicts[tag] = combine(parent_vs + [r.verdict for r in own])
        witness = None
        for r in own:
            if r.verdict is not Verdict.YES:
                witness = r.witness
                break
        if witness is None:
            for p in PARENTS[tag]:
                if verdicts[p] is not Verdict.YES:
                    witness = tag_witness.get(p)
                    break
        tag_witness[tag] = witness
    report = ClassificationReport(
        verdicts=verdicts,
        witnesses={name: r.witness for name, r in props.results.items() if r.verdict is not Verdict.YES},
        tag_witness=tag_witness,
        order=order if order is not None else props.found_order,
    )
    logger.debug(
        "classified definite=%s unknown=%s",
        ",".join(sorted(t.value for t in report.definite)),
        ",".join(sorted(t.value for t in report.unknown)),
        extra={"root": s.root},
    )
    return report


def member_verdict(s: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None) -> Verdict:
    return classify(s, order).verdicts[lang]
