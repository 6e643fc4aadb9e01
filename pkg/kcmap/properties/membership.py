from __future__ import annotations
import logging
from typing import Callable, Dict, List, Optional

from kcmap.common.errors import NotInLanguageError
from kcmap.languages.tags import LanguageTag, Verdict, close_upwards, topo_languages
from kcmap.nnf.literals import is_tautology, minimize_subsumed
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import cnf_clauses, dnf_terms
from kcmap.nnf.store import AND, OR, Sentence
from kcmap.properties import checks
from kcmap.properties.checks import CheckResult
from kcmap.properties.classify import _OWN

logger = logging.getLogger("classify")

# determinism and primality go to the oracle within its cap; above it an undecided verdict passes
VERIFY_SEMANTIC = True

L = LanguageTag


def required_properties(lang: LanguageTag) -> List[str]:
    """Every property the language and its lattice ancestors impose, parents first."""
    wanted = close_upwards([lang])
    out: List[str] = []
    for tag in topo_languages():
        if tag in wanted:
            for name in _OWN[tag]:
                if name not in out:
                    out.append(name)
    return out


def _antichain(s: Sentence, implicates: bool) -> CheckResult:
    sets = cnf_clauses(s) if implicates else dnf_terms(s)
    if implicates and any(is_tautology(c) for c in sets):
        return CheckResult(Verdict.NO, s.root, "valid clause is never prime")
    if len(minimize_subsumed(sets)) != len(set(sets)):
        return CheckResult(Verdict.NO, s.root, "a clause or term subsumes another")
    return checks.YES


def _check(s: Sentence, name: str, order: Optional[VarOrder], semantic: bool) -> CheckResult:
    structural: Dict[str, Callable[[], CheckResult]] = {
        "decomposable": lambda: checks.is_decomposable(s),
        "smooth": lambda: checks.is_smooth(s),
        "flat": lambda: checks.is_flat(s),
        # clauses may repeat a variable; terms are kept strict through decomposability
        "simple_disjunction": lambda: checks.is_clausal(s, OR),
        "simple_conjunction": lambda: checks.is_clausal(s, AND),
        "decision": lambda: checks.is_decision(s),
        "read_once": lambda: checks.read_once(s),
    }
    if name in structural:
        return structural[name]()
    if name == "deterministic":
        return checks.is_deterministic(s, use_oracle=semantic)
    if name == "ordered" or (name == "ordered_by" and order is None):
        if checks.ordering_of(s) is None:
            return CheckResult(Verdict.NO, s.root, "no consistent variable order")
        return checks.YES
    if name == "ordered_by":
        return checks.respects_order(s, order)  # type: ignore[arg-type]
    if name in ("prime_implicates", "prime_implicants"):
        implicates = name == "prime_implicates"
        res = _antichain(s, implicates)
        if not res or not semantic:
            return res
        return checks.is_pi(s) if implicates else checks.is_ip(s)
    raise KeyError(name)


def check_member(s: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None, verify_semantic: Optional[bool] = None) -> Optional[NotInLanguageError]:
    semantic = VERIFY_SEMANTIC if verify_semantic is None else verify_semantic
    for name in required_properties(lang):
        res = _check(s, name, order, semantic)
        if res.verdict is Verdict.NO:
            return NotInLanguageError(lang.value, name, res.witness)
        if res.verdict is Verdict.UNKNOWN:
            logger.debug("membership %s undecided for %s", name, lang.value, extra={"lang": lang.value, "root": s.root})
    return None


def require_member(s: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None, verify_semantic: Optional[bool] = None) -> None:
    err = check_member(s, lang, order, verify_semantic)
    if err is not None:
        logger.warning("%s", err, extra={"lang": lang.value, "root": s.root})
        raise err
