from __future__ import annotations
import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from kcmap.compile.dimacs import CnfFormula
from kcmap.nnf.literals import Clause, is_tautology, sorted_sets, var_of
from kcmap.nnf.store import NnfStore, Sentence
from kcmap.transform.normal_forms import cnf_condition

logger = logging.getLogger("compile")

Key = Tuple[Clause, ...]


def components(clauses: Sequence[Clause]) -> List[List[Clause]]:
    """Partitions clauses into groups that share no variable (union-find over variables)."""
    parent: Dict[int, int] = {}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for c in clauses:
        vs = [var_of(l) for l in c]
        for v in vs:
            parent.setdefault(v, v)
        for v in vs[1:]:
            a, b = find(vs[0]), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[Clause]] = {}
    for c in clauses:
        groups.setdefault(find(var_of(next(iter(c)))), []).append(c)
    return [groups[k] for k in sorted(groups)]


def branch_variable(clauses: Sequence[Clause]) -> int:
    # most frequent variable, ties to the lowest index
    freq = Counter(var_of(l) for c in clauses for l in c)
    return min(freq, key=lambda v: (-freq[v], v))


class DdnnfCompiler:
    """Exhaustive DPLL trace with component decomposition and a component cache.

    Every and-node joins variable-disjoint components and every or-node is a
    decision on a branching variable, so the output is d-DNNF by construction.
    """

    def __init__(self, store: NnfStore):
        self.store = store
        self.cache: Dict[Key, int] = {}
        self.decisions = 0
        self.cache_hits = 0

    def _guarded(self, lit: int, sub: int) -> Optional[int]:
        store = self.store
        if sub == store.false():
            return None
        lit_ref = store.literal(lit)
        return lit_ref if sub == store.true() else store.conj([lit_ref, sub])

    def compile(self, clauses: Sequence[Clause]) -> int:
        store = self.store
        if any(len(c) == 0 for c in clauses):
            return store.false()
        if not clauses:
            return store.true()
        key: Key = tuple(sorted_sets(clauses))
        hit = self.cache.get(key)
        if hit is not None:
            self.cache_hits += 1
            return hit
        parts = components(key)
        if len(parts) > 1:
            kids = [self.compile(p) for p in parts]
            out = store.false() if store.false() in kids else store.conj(kids)
        else:
            x = branch_variable(key)
            self.decisions += 1
            branches = [self._guarded(x, self.compile(cnf_condition(key, [x]))),
                        self._guarded(-x, self.compile(cnf_condition(key, [-x])))]
            kept = [b for b in branches if b is not None]
            out = store.false() if not kept else kept[0] if len(kept) == 1 else store.disj(kept)
        self.cache[key] = out
        return out


def compile_ddnnf(f: CnfFormula, store: Optional[NnfStore] = None) -> Sentence:
    st = store if store is not None else NnfStore(f.num_vars)
    st.ensure_vars(f.num_vars)
    compiler = DdnnfCompiler(st)
    clauses = [c for c in f.clauses if not is_tautology(c)]
    root = compiler.compile(clauses)
    logger.info(
        "ddnnf vars=%d clauses=%d decisions=%d cache_entries=%d cache_hits=%d root=%d",
        f.num_vars, len(f.clauses), compiler.decisions, len(compiler.cache), compiler.cache_hits, root,
    )
    return Sentence(st, root)
