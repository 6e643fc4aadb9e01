from __future__ import annotations
import logging
import weakref
from typing import Dict, Iterable, MutableMapping

from kcmap.common.errors import PreconditionError
from kcmap.nnf.store import AND, OR, NnfStore, Sentence, decision_of, reachable, size
from kcmap.properties import checks

logger = logging.getLogger("transform")

# store -> {root: smoothed root}
_SMOOTHED: MutableMapping[NnfStore, Dict[int, int]] = weakref.WeakKeyDictionary()


def pad(store: NnfStore, var: int) -> int:
    """The tautology (¬v ∨ v)."""
    return store.disj([store.literal(-var), store.literal(var)])


def padded(store: NnfStore, ref: int, missing: Iterable[int]) -> int:
    pads = [pad(store, v) for v in sorted(missing)]
    if not pads:
        return ref
    return store.conj([ref] + pads)


def smooth(s: Sentence) -> Sentence:
    """Pads every or-node's disjuncts with (¬v ∨ v) for the variables they miss.

    Equivalence, decomposability and determinism are preserved; nodes that are
    already smooth keep their ids.
    """
    store = s.store
    cache = _SMOOTHED.setdefault(store, {})
    hit = cache.get(s.root)
    if hit is not None:
        return Sentence(store, hit)
    m: Dict[int, int] = {}
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind == AND:
            m[r] = store.conj([m[c] for c in n.children])
        elif n.kind == OR:
            kids = [m[c] for c in n.children]
            scope = store.vars_at(r)
            m[r] = store.disj([padded(store, k, scope - store.vars_at(k)) for k in kids]) if len(kids) > 1 else store.disj(kids)
        else:
            m[r] = r
    logger.debug("smooth in_size=%d out_size=%d", size(s), size(Sentence(store, m[s.root])), extra={"root": s.root})
    cache[s.root] = m[s.root]
    return Sentence(store, m[s.root])


def smooth_fbdd(s: Sentence) -> Sentence:
    """Smooths a read-once decision DAG without leaving the decision shape.

    A branch missing variable y is wrapped as (y ∧ α) ∨ (¬y ∧ α).
    """
    if not checks.read_once(s):
        raise PreconditionError("smooth_fbdd needs an FBDD sentence")
    store = s.store
    m: Dict[int, int] = {store.true(): store.true(), store.false(): store.false()}
    for r in reachable(store, s.root):
        if r in m:
            continue
        d = decision_of(store, r)
        if d is None:
            continue
        var, hi, lo = d
        new_hi, new_lo = m[hi], m[lo]
        vh, vl = store.vars_at(hi), store.vars_at(lo)
        new_hi = _wrap(store, new_hi, vl - vh)
        new_lo = _wrap(store, new_lo, vh - vl)
        m[r] = store.decision(var, new_hi, new_lo)
    return Sentence(store, m[s.root])


def _wrap(store: NnfStore, ref: int, missing: Iterable[int]) -> int:
    # innermost test is the largest index so the smallest ends on top
    for v in sorted(missing, reverse=True):
        ref = store.decision(v, ref, ref)
    return ref


def or_edges(s: Sentence) -> int:
    return sum(len(s.store.nodes[r].children) for r in reachable(s.store, s.root) if s.store.nodes[r].kind == OR)


def smoothing_bound(s: Sentence) -> int:
    """Edge budget for smooth(s): at most 2·|Vars| new edges per or-edge.

    A disjunct missing m variables gains an and-node with 1 + m edges. Each shared pad
    (¬v ∨ v) adds 2 edges once, charged to an or-node where some disjunct misses v;
    there at most k - 1 of its k disjuncts miss v, so every or-node stays within
    k·|scope| pad charges.
    """
    nv = len(s.store.vars_at(s.root))
    return size(s) + 2 * or_edges(s) * nv
