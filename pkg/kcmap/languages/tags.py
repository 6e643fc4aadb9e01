from __future__ import annotations
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple


class LanguageTag(str, Enum):
    NNF = "NNF"
    DNNF = "DNNF"
    D_NNF = "d-NNF"
    S_NNF = "s-NNF"
    F_NNF = "f-NNF"
    D_DNNF = "d-DNNF"
    SD_DNNF = "sd-DNNF"
    BDD = "BDD"
    FBDD = "FBDD"
    OBDD = "OBDD"
    OBDD_LT = "OBDD_<"
    DNF = "DNF"
    CNF = "CNF"
    PI = "PI"
    IP = "IP"
    MODS = "MODS"

    def __str__(self) -> str:
        return self.value


class QueryTag(str, Enum):
    CO = "CO"
    VA = "VA"
    CE = "CE"
    IM = "IM"
    EQ = "EQ"
    SE = "SE"
    CT = "CT"
    ME = "ME"

    def __str__(self) -> str:
        return self.value


class TransformTag(str, Enum):
    CD = "CD"
    FO = "FO"
    SFO = "SFO"
    AND_C = "AndC"
    AND_BC = "AndBC"
    OR_C = "OrC"
    OR_BC = "OrBC"
    NOT_C = "NotC"

    def __str__(self) -> str:
        return self.value


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


L = LanguageTag

ALL_LANGUAGES: Tuple[LanguageTag, ...] = tuple(LanguageTag)

# direct subset edges: child -> parents
PARENTS: Dict[LanguageTag, Tuple[LanguageTag, ...]] = {
    L.NNF: (),
    L.DNNF: (L.NNF,),
    L.D_NNF: (L.NNF,),
    L.S_NNF: (L.NNF,),
    L.F_NNF: (L.NNF,),
    L.D_DNNF: (L.DNNF, L.D_NNF),
    L.SD_DNNF: (L.D_DNNF, L.S_NNF),
    L.BDD: (L.D_NNF,),
    L.FBDD: (L.BDD, L.D_DNNF),
    L.OBDD: (L.FBDD,),
    L.OBDD_LT: (L.OBDD,),
    L.DNF: (L.F_NNF, L.DNNF),
    L.CNF: (L.F_NNF,),
    L.PI: (L.CNF,),
    L.IP: (L.DNF,),
    L.MODS: (L.DNF, L.SD_DNNF),
}


def parse_language(txt: str) -> LanguageTag:
    norm = txt.strip()
    for tag in LanguageTag:
        if tag.value.lower() == norm.lower() or tag.name.lower() == norm.lower().replace("-", "_"):
            return tag
    if norm.lower() in ("obdd<", "obdd_lt"):
        return L.OBDD_LT
    raise ValueError(f"unknown language {txt!r}")


def ancestors(lang: LanguageTag) -> FrozenSet[LanguageTag]:
    out: Set[LanguageTag] = set()
    stack = list(PARENTS[lang])
    while stack:
        p = stack.pop()
        if p not in out:
            out.add(p)
            stack.extend(PARENTS[p])
    return frozenset(out)


def close_upwards(tags: Iterable[LanguageTag]) -> FrozenSet[LanguageTag]:
    out: Set[LanguageTag] = set()
    for t in tags:
        out.add(t)
        out |= ancestors(t)
    return frozenset(out)


def combine(verdicts: Iterable[Verdict]) -> Verdict:
    """Three-valued conjunction."""
    seen = list(verdicts)
    if Verdict.NO in seen:
        return Verdict.NO
    if Verdict.UNKNOWN in seen:
        return Verdict.UNKNOWN
    return Verdict.YES


def topo_languages() -> List[LanguageTag]:
    """Languages ordered so that every parent precedes its children."""
    done: List[LanguageTag] = []
    pending = list(ALL_LANGUAGES)
    while pending:
        for tag in list(pending):
            if all(p in done for p in PARENTS[tag]):
                done.append(tag)
                pending.remove(tag)
    return done
