from __future__ import annotations
import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from kcmap.common.errors import OracleCapError, PreconditionError
from kcmap.languages.capabilities import require_transform
from kcmap.languages.tags import LanguageTag, TransformTag
from kcmap.nnf.literals import is_inconsistent, is_tautology, make_set, negate_set, var_of
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import (
    build_cnf, build_dnf, build_term, cnf_clauses, copy_into, de_morgan, dnf_terms,
    replace_vars_with_true, simplify, substitute,
)
from kcmap.nnf.store import AND, FALSE, LIT, OR, TRUE, Sentence, reachable, size, vars_of
from kcmap.oracle import truth_table
from kcmap.properties import checks
from kcmap.properties.membership import require_member
from kcmap.transform import bdd, normal_forms as nf
from kcmap.transform.obdd import ObddManager
from kcmap.transform.smoothing import smooth

logger = logging.getLogger("transform")

# oracle re-check of PI conditioning output (within the prime cap)
VERIFY_PI = True

L = LanguageTag
T = TransformTag

NNF_LIKE = (L.NNF, L.DNNF, L.D_NNF, L.S_NNF, L.F_NNF, L.D_DNNF, L.SD_DNNF)
SMOOTH_LANGS = (L.S_NNF, L.SD_DNNF)
OBDDS = (L.OBDD, L.OBDD_LT)


def _gate(tag: TransformTag, lang: LanguageTag, operands: Sequence[Sentence], order: Optional[VarOrder] = None) -> None:
    require_transform(lang, tag)
    for s in operands:
        require_member(s, lang, order)


def _done(op: str, lang: LanguageTag, inputs: Sequence[Sentence], out: Sentence) -> Sentence:
    logger.info(
        "transform op=%s in_size=%s out_size=%d out_root=%d",
        op, ",".join(str(size(s)) for s in inputs), size(out), out.root,
        extra={"lang": lang.value, "root": out.root},
    )
    return out


def _same_store(items: Sequence[Sentence]) -> List[Sentence]:
    if not items:
        return []
    store = items[0].store
    return [copy_into(s, store) for s in items]


def _order_for(items: Sequence[Sentence], order: Optional[VarOrder]) -> VarOrder:
    every = set()
    for s in items:
        every |= set(vars_of(s))
    if order is not None:
        return order.covering(every)
    found = checks.ordering_of(*items)
    if found is None:
        raise PreconditionError("operands do not share a variable order")
    return found.covering(every)


def _term(gamma: Iterable[int]) -> frozenset:
    g = make_set(gamma)
    if is_inconsistent(g):
        raise PreconditionError(f"term {sorted(g)} is inconsistent")
    return g


# -- conditioning -------------------------------------------------------------------------


def condition(s: Sentence, gamma: Iterable[int], lang: LanguageTag, order: Optional[VarOrder] = None) -> Sentence:
    """Σ | γ, staying inside lang."""
    g = _term(gamma)
    _gate(T.CD, lang, [s], order)
    return _done("cd", lang, [s], conditioned(s, g, lang, order))


def conditioned(s: Sentence, g: frozenset, lang: LanguageTag, order: Optional[VarOrder] = None) -> Sentence:
    """The conditioning route for lang, without the capability and membership gate."""
    store = s.store
    if lang in NNF_LIKE:
        out = simplify(substitute(s, g))
        if lang in SMOOTH_LANGS:
            out = smooth(out)
    elif lang in (L.DNF, L.MODS):
        out = build_dnf(store, nf.dnf_condition(dnf_terms(s), g))
    elif lang == L.CNF:
        out = build_cnf(store, nf.cnf_condition(cnf_clauses(s), g))
    elif lang == L.PI:
        out = build_cnf(store, _pi_condition(s, g))
    elif lang == L.IP:
        out = build_dnf(store, nf.ip_condition(dnf_terms(s), g))
    elif lang in (L.BDD, L.FBDD):
        out = bdd.restrict(s, g)
    else:
        # restriction never consults the order
        mgr = ObddManager(store, order or VarOrder.natural(store.num_vars))
        out = mgr.sentence(mgr.restrict(s.root, g))
    return out


def _pi_condition(s: Sentence, g: frozenset) -> List[frozenset]:
    clauses = nf.pi_condition(cnf_clauses(s), g)
    if not VERIFY_PI:
        return clauses
    check = build_cnf(s.store, clauses)
    try:
        primes = truth_table.prime_implicates_bf(check)
    except OracleCapError:
        return clauses
    if set(primes) != set(clauses):
        logger.error("PI conditioning disagrees with oracle primes; using oracle result", extra={"lang": "PI", "root": s.root})
        return primes
    return clauses


# -- forgetting ---------------------------------------------------------------------------


def forget(s: Sentence, xs: Iterable[int], lang: LanguageTag) -> Sentence:
    """∃X.Σ for the languages with polytime forgetting."""
    xset = frozenset(int(x) for x in xs)
    _gate(T.FO, lang, [s])
    if not xset:
        return s
    store = s.store
    if lang == L.PI:
        out = build_cnf(store, nf.pi_forget(cnf_clauses(s), xset))
    elif lang in (L.DNF, L.MODS):
        # MODS duplicates collapse once the terms become sets again
        out = build_dnf(store, nf.forget_literals(dnf_terms(s), xset))
    else:
        out = simplify(replace_vars_with_true(s, xset))
    return _done("fo", lang, [s], out)


def forget_single(s: Sentence, x: int, lang: LanguageTag, order: Optional[VarOrder] = None) -> Sentence:
    """∃x.Σ ≡ (Σ|x) ∨ (Σ|¬x)."""
    x = var_of(int(x))
    require_transform(lang, T.SFO)
    if lang in (L.DNNF, L.DNF, L.PI, L.MODS):
        return forget(s, [x], lang)
    require_member(s, lang, order)
    store = s.store
    if lang in (L.NNF, L.S_NNF, L.D_NNF):
        pos = simplify(substitute(s, [x]))
        neg = simplify(substitute(s, [-x]))
        if lang == L.D_NNF:
            out = simplify(_dnnf_or(pos, neg))
        else:
            out = simplify(Sentence(store, store.disj([pos.root, neg.root])))
            if lang == L.S_NNF:
                out = smooth(out)
    elif lang == L.F_NNF:
        out = _forget_flat(normalize_flat(s), x)
    elif lang == L.CNF:
        clauses = cnf_clauses(s)
        out = build_cnf(store, nf.clause_products(nf.cnf_condition(clauses, [x]), nf.cnf_condition(clauses, [-x])))
    elif lang == L.BDD:
        pos, neg = bdd.cofactors(s, x)
        out = bdd.link_sink(pos, False, neg.root)
    else:
        mgr = ObddManager(store, _order_for([s], order))
        out = mgr.sentence(mgr.exists(mgr.reduce(s.root), x))
    return _done("sfo", lang, [s], out)


def _forget_flat(s: Sentence, x: int) -> Sentence:
    n = s.node
    store = s.store
    if n.kind == LIT:
        return Sentence(store, store.true()) if var_of(n.lit) == x else s
    if n.kind == AND:
        clauses = cnf_clauses(s)
        return build_cnf(store, nf.clause_products(nf.cnf_condition(clauses, [x]), nf.cnf_condition(clauses, [-x])))
    if n.kind == OR:
        return build_dnf(store, nf.forget_literals(dnf_terms(s), [x]))
    return s


# -- negation -----------------------------------------------------------------------------


def negate_dnnf(s: Sentence) -> Sentence:
    """Deterministic negation of a d-NNF sentence.

    ¬Or(N1..Nk) is And(¬N1..¬Nk); ¬And(N1..Nk) is the disjunction over i of
    ¬Ni ∧ N1 ∧ ... ∧ N(i-1), with the prefix conjunctions shared as a chain.
    """
    store = s.store
    m: Dict[int, int] = {}
    for r in reachable(store, s.root):
        n = store.nodes[r]
        if n.kind == TRUE:
            m[r] = store.false()
        elif n.kind == FALSE:
            m[r] = store.true()
        elif n.kind == LIT:
            m[r] = store.literal(-n.lit)
        elif n.kind == OR:
            m[r] = store.conj([m[c] for c in n.children])
        else:
            kids = list(n.children)
            disjuncts = [m[kids[0]]]
            prefix: Optional[int] = None
            for i in range(1, len(kids)):
                prefix = kids[0] if prefix is None else store.conj([prefix, kids[i - 1]])
                disjuncts.append(store.conj([m[kids[i]], prefix]))
            m[r] = store.disj(disjuncts)
    return Sentence(store, m[s.root])


def negate(s: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None) -> Sentence:
    _gate(T.NOT_C, lang, [s], order)
    if lang in (L.NNF, L.F_NNF):
        out = de_morgan(s)
    elif lang == L.S_NNF:
        out = smooth(de_morgan(s))
    elif lang == L.D_NNF:
        out = negate_dnnf(s)
    elif lang in (L.BDD, L.FBDD):
        out = bdd.swap_sinks(s)
    else:
        mgr = ObddManager(s.store, _order_for([s], order))
        out = mgr.sentence(mgr.negate(mgr.reduce(s.root)))
    return _done("not", lang, [s], out)


# -- conjunction and disjunction ----------------------------------------------------------


def _dnnf_or(a: Sentence, b: Sentence) -> Sentence:
    # a ∨ (¬a ∧ b)
    store = a.store
    return Sentence(store, store.disj([a.root, store.conj([negate_dnnf(a).root, b.root])]))


def _combine(items: Sequence[Sentence], lang: LanguageTag, conjoin: bool, order: Optional[VarOrder]) -> Sentence:
    store = items[0].store
    if lang in (L.NNF, L.DNNF, L.S_NNF) or (lang == L.D_NNF and conjoin):
        root = store.conj([s.root for s in items]) if conjoin else store.disj([s.root for s in items])
        out = Sentence(store, root)
        if lang == L.S_NNF and not conjoin:
            out = smooth(out)
        return out
    if lang == L.D_NNF:
        # disjunct i is N_i ∧ ¬N_1 ∧ ... ∧ ¬N_(i-1)
        disjuncts = [items[0].root]
        prefix: Optional[int] = None
        for i in range(1, len(items)):
            neg_prev = negate_dnnf(items[i - 1]).root
            prefix = neg_prev if prefix is None else store.conj([prefix, neg_prev])
            disjuncts.append(store.conj([items[i].root, prefix]))
        return Sentence(store, store.disj(disjuncts))
    if lang == L.BDD:
        out = items[-1]
        for s in reversed(items[:-1]):
            out = bdd.link_sink(s, conjoin, out.root)
        return out
    if lang in OBDDS:
        mgr = ObddManager(store, _order_for(items, order))
        acc = mgr.reduce(items[0].root)
        for s in items[1:]:
            acc = mgr.apply("and" if conjoin else "or", acc, mgr.reduce(s.root))
        return mgr.sentence(acc)
    if lang in (L.CNF, L.PI):
        sets = [cnf_clauses(s) for s in items]
        if conjoin:
            return build_cnf(store, [c for cs in sets for c in cs])
        acc = sets[0]
        for cs in sets[1:]:
            acc = nf.pi_disjoin(acc, cs) if lang == L.PI else nf.clause_products(acc, cs)
        return build_cnf(store, acc)
    # DNF, MODS, IP
    sets = [dnf_terms(s) for s in items]
    if not conjoin:
        return build_dnf(store, [t for ts in sets for t in ts])
    acc = sets[0]
    for ts in sets[1:]:
        acc = nf.ip_conjoin(acc, ts) if lang == L.IP else nf.term_products(acc, ts)
    return build_dnf(store, acc)


def apply_and(a: Sentence, b: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None) -> Sentence:
    """Bounded conjunction (two operands)."""
    a, b = _same_store([a, b])
    _gate(T.AND_BC, lang, [a, b], order)
    return _done("and", lang, [a, b], _combine([a, b], lang, True, order))


def apply_or(a: Sentence, b: Sentence, lang: LanguageTag, order: Optional[VarOrder] = None) -> Sentence:
    """Bounded disjunction (two operands)."""
    a, b = _same_store([a, b])
    _gate(T.OR_BC, lang, [a, b], order)
    if lang == L.D_NNF:
        return _done("or", lang, [a, b], _dnnf_or(a, b))
    return _done("or", lang, [a, b], _combine([a, b], lang, False, order))


def conjoin_many(items: Sequence[Sentence], lang: LanguageTag) -> Sentence:
    require_transform(lang, T.AND_C)
    if not items:
        raise PreconditionError("conjoin_many needs at least one operand")
    items = _same_store(items)
    for s in items:
        require_member(s, lang)
    return _done("and_many", lang, items, _combine(items, lang, True, None))


def disjoin_many(items: Sequence[Sentence], lang: LanguageTag) -> Sentence:
    require_transform(lang, T.OR_C)
    if not items:
        raise PreconditionError("disjoin_many needs at least one operand")
    items = _same_store(items)
    for s in items:
        require_member(s, lang)
    return _done("or_many", lang, items, _combine(items, lang, False, None))


# -- d-DNNF ∨ clause, flat normalization --------------------------------------------------


def or_clause_ddnnf(s: Sentence, gamma: Iterable[int]) -> Sentence:
    """((Σ | α) ∧ α) ∨ β with α = ¬γ and β = ∨i (l_i ∧ ¬l_1 ∧ ... ∧ ¬l_(i-1)); stays d-DNNF."""
    clause = make_set(gamma)
    store = s.store
    if is_tautology(clause):
        return Sentence(store, store.true())
    require_member(s, L.D_DNNF)
    lits = sorted(clause, key=lambda l: (var_of(l), l < 0))
    alpha = negate_set(clause)
    disjuncts: List[int] = []
    cond = simplify(substitute(s, alpha)).root
    if cond != store.false():
        alpha_term = build_term(store, alpha) if alpha else store.true()
        disjuncts.append(alpha_term if cond == store.true() else store.conj([cond, alpha_term]))
    for i, l in enumerate(lits):
        disjuncts.append(build_term(store, [l] + [-p for p in lits[:i]]))
    out = Sentence(store, disjuncts[0] if len(disjuncts) == 1 else store.disj(disjuncts))
    return _done("or_clause", L.D_DNNF, [s], out)


def normalize_flat(s: Sentence) -> Sentence:
    """Turns a flat sentence into CNF (and root) or DNF (or root); a leaf is returned unchanged."""
    if not checks.is_flat(s):
        raise PreconditionError("normalize_flat needs a flat sentence")
    store = s.store
    n = s.node
    if n.kind not in (AND, OR):
        return s
    outer_and = n.kind == AND
    groups: List[frozenset] = []
    for c in n.children:
        cn = store.nodes[c]
        if cn.kind == LIT:
            groups.append(frozenset([cn.lit]))
            continue
        if cn.kind in (TRUE, FALSE):
            # True drops from a conjunction, False from a disjunction
            if (cn.kind == FALSE) == outer_and:
                groups.append(frozenset())
            continue
        kids = [store.nodes[k] for k in cn.children]
        if cn.kind == n.kind:
            # nested same-kind node: each literal stands alone
            groups.extend(frozenset([k.lit]) for k in kids if k.kind == LIT)
            if any(k.kind == (FALSE if outer_and else TRUE) for k in kids):
                groups.append(frozenset())
            continue
        absorbing = TRUE if outer_and else FALSE
        if any(k.kind == absorbing for k in kids):
            continue
        lits = frozenset(k.lit for k in kids if k.kind == LIT)
        if is_tautology(lits):
            continue
        groups.append(lits)
    out = build_cnf(store, groups) if outer_and else build_dnf(store, groups)
    return _done("normalize_flat", L.F_NNF, [s], out)


TRANSFORMS: Dict[str, Callable[..., Sentence]] = {
    "cd": condition,
    "fo": forget,
    "sfo": forget_single,
    "and": apply_and,
    "or": apply_or,
    "not": negate,
    "and_many": conjoin_many,
    "or_many": disjoin_many,
    "or_clause": or_clause_ddnnf,
    "normalize_flat": normalize_flat,
    "smooth": smooth,
}
