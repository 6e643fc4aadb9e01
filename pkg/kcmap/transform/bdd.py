"""Decision-DAG rewrites that keep the diagram unreduced: restrict, sink swap and sink linking."""
from __future__ import annotations
from typing import Callable, Dict, Optional, Tuple

from kcmap.common.errors import PreconditionError
from kcmap.nnf.literals import var_of
from kcmap.nnf.store import Sentence, decision_of, reachable

# (var, new_hi, new_lo) -> replacement id, or None to rebuild the decision node as is
NodeMap = Callable[[int, int, int], Optional[int]]


def _rebuild(s: Sentence, true_to: int, false_to: int, node_map: Optional[NodeMap] = None) -> Sentence:
    store = s.store
    t, f = store.true(), store.false()
    m: Dict[int, int] = {t: true_to, f: false_to}
    for r in reachable(store, s.root):
        if r in m:
            continue
        d = decision_of(store, r)
        if d is None:
            continue
        var, hi, lo = d
        if hi not in m or lo not in m:
            raise PreconditionError(f"node {r} is not a decision node")
        hit = node_map(var, m[hi], m[lo]) if node_map is not None else None
        m[r] = hit if hit is not None else store.decision(var, m[hi], m[lo])
    if s.root not in m:
        raise PreconditionError(f"node {s.root} is not a decision node")
    return Sentence(store, m[s.root])


def restrict(s: Sentence, gamma) -> Sentence:
    """Redirects every node testing a variable of gamma to the selected child."""
    assign: Dict[int, bool] = {var_of(l): l > 0 for l in gamma}
    store = s.store

    def pick(var: int, hi: int, lo: int) -> Optional[int]:
        if var in assign:
            return hi if assign[var] else lo
        return None

    return _rebuild(s, store.true(), store.false(), pick)


def swap_sinks(s: Sentence) -> Sentence:
    store = s.store
    return _rebuild(s, store.false(), store.true())


def link_sink(s: Sentence, sink_true: bool, target: int) -> Sentence:
    """Redirects the 1-sink (sink_true) or the 0-sink of s to target."""
    store = s.store
    if sink_true:
        return _rebuild(s, target, store.false())
    return _rebuild(s, store.true(), target)


def cofactors(s: Sentence, var: int) -> Tuple[Sentence, Sentence]:
    return restrict(s, [var]), restrict(s, [-var])
