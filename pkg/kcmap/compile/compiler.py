"""Compilation front end: one entry per target language, selected by name."""
from __future__ import annotations
import logging
from typing import Callable, Dict, Optional, Tuple

from kcmap.common.errors import PreconditionError
from kcmap.compile.dimacs import CnfFormula
from kcmap.compile.ddnnf import compile_ddnnf
from kcmap.compile.prime import compile_ip, compile_pi
from kcmap.languages.tags import LanguageTag
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import build_dnf
from kcmap.nnf.store import NnfStore, Sentence, size
from kcmap.oracle.truth_table import models_bf
from kcmap.transform.obdd import ObddManager, obdd_node_count
from kcmap.transform.smoothing import smooth

logger = logging.getLogger("compile")


def _order(num_vars: int, order: Optional[VarOrder]) -> VarOrder:
    if order is None:
        return VarOrder.natural(num_vars)
    missing = [v for v in range(1, num_vars + 1) if v not in order]
    if missing:
        raise PreconditionError(f"order {order} does not cover variables {missing}")
    return order


def compile_sddnnf(f: CnfFormula, store: Optional[NnfStore] = None) -> Sentence:
    return smooth(compile_ddnnf(f, store))


def compile_obdd(f: CnfFormula, order: Optional[VarOrder] = None, store: Optional[NnfStore] = None) -> Sentence:
    """Folds the clause diagrams with apply-and, in input order."""
    st = store if store is not None else NnfStore(f.num_vars)
    st.ensure_vars(f.num_vars)
    mgr = ObddManager(st, _order(f.num_vars, order))
    root = mgr.leaf1
    for c in f.clauses:
        root = mgr.apply_and(root, mgr.clause(c))
        if root == mgr.leaf0:
            break
    out = mgr.sentence(root)
    logger.info("obdd vars=%d clauses=%d nodes=%d applies=%d", f.num_vars, len(f.clauses), obdd_node_count(out), mgr.apply_count)
    return out


def compile_obdd_from_sentence(s: Sentence, order: Optional[VarOrder] = None) -> Sentence:
    mgr = ObddManager(s.store, _order(s.store.num_vars, order))
    out = mgr.sentence(mgr.from_sentence(s))
    logger.info("obdd from sentence size=%d nodes=%d applies=%d", size(s), obdd_node_count(out), mgr.apply_count)
    return out


def compile_mods(f: CnfFormula, store: Optional[NnfStore] = None) -> Sentence:
    """One full term per model over x1..xn; capped by the oracle."""
    st = store if store is not None else NnfStore(f.num_vars)
    models = models_bf(f.to_sentence(st), over=range(1, f.num_vars + 1))
    logger.info("mods vars=%d models=%d", f.num_vars, len(models))
    return build_dnf(st, [m.as_term() for m in models])


Compiler = Callable[[CnfFormula, Optional[VarOrder], Optional[NnfStore]], Sentence]

TARGETS: Dict[str, Tuple[LanguageTag, Compiler]] = {
    "ddnnf": (LanguageTag.D_DNNF, lambda f, order, store: compile_ddnnf(f, store)),
    "sddnnf": (LanguageTag.SD_DNNF, lambda f, order, store: compile_sddnnf(f, store)),
    "dnnf": (LanguageTag.DNNF, lambda f, order, store: compile_ddnnf(f, store)),
    "obdd": (LanguageTag.OBDD_LT, lambda f, order, store: compile_obdd(f, order, store)),
    "mods": (LanguageTag.MODS, lambda f, order, store: compile_mods(f, store)),
    "pi": (LanguageTag.PI, lambda f, order, store: compile_pi(f, store)),
    "ip": (LanguageTag.IP, lambda f, order, store: compile_ip(f, store)),
}


def compile_to(target: str, f: CnfFormula, order: Optional[VarOrder] = None, store: Optional[NnfStore] = None) -> Sentence:
    try:
        _, fn = TARGETS[target]
    except KeyError:
        raise PreconditionError(f"unknown target {target!r}; expected one of {', '.join(TARGETS)}") from None
    return fn(f, order, store)


def target_language(target: str) -> LanguageTag:
    return TARGETS[target][0]
