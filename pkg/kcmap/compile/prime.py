from __future__ import annotations
import logging
from typing import List, Optional

from kcmap.common.errors import OracleCapError
from kcmap.compile.dimacs import CnfFormula
from kcmap.nnf.literals import Clause, Term, is_tautology, vars_of_lits
from kcmap.nnf.rewrite import build_cnf, build_dnf
from kcmap.nnf.store import NnfStore, Sentence
from kcmap.transform.normal_forms import consensus_closure, ip_conjoin, resolution_closure

logger = logging.getLogger("compile")

MAX_VARS = 14


def _check_cap(what: str, sets: List[frozenset]) -> None:
    n = len(vars_of_lits(l for s in sets for l in s))
    if n > MAX_VARS:
        raise OracleCapError(what, n, MAX_VARS)


def prime_implicates(clauses: List[Clause]) -> List[Clause]:
    _check_cap("prime implicates", clauses)
    return resolution_closure(clauses)


def prime_implicants_of_cnf(clauses: List[Clause]) -> List[Term]:
    """Multiplies the clauses out one at a time, keeping only minimal consistent terms."""
    _check_cap("prime implicants", clauses)
    acc: List[Term] = [frozenset()]
    for c in clauses:
        if is_tautology(c):
            continue
        acc = ip_conjoin(acc, [frozenset([l]) for l in c])
        if not acc:
            break
    return acc


def prime_implicants_of_dnf(terms: List[Term]) -> List[Term]:
    _check_cap("prime implicants", terms)
    return consensus_closure(terms)


def compile_pi(f: CnfFormula, store: Optional[NnfStore] = None) -> Sentence:
    st = store if store is not None else NnfStore(f.num_vars)
    st.ensure_vars(f.num_vars)
    primes = prime_implicates(list(f.clauses))
    logger.info("pi vars=%d clauses=%d primes=%d", f.num_vars, len(f.clauses), len(primes))
    return build_cnf(st, primes)


def compile_ip(f: CnfFormula, store: Optional[NnfStore] = None) -> Sentence:
    st = store if store is not None else NnfStore(f.num_vars)
    st.ensure_vars(f.num_vars)
    primes = prime_implicants_of_cnf(list(f.clauses))
    logger.info("ip vars=%d clauses=%d primes=%d", f.num_vars, len(f.clauses), len(primes))
    return build_dnf(st, primes)
