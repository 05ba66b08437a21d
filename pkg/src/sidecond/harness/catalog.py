"""The property catalog: one executable statement per structural lemma.

Each property draws its inputs from a universe with a seeded generator,
checks every hypothesis explicitly (the premise), and only then evaluates the
conclusion.  Generators build inputs so that hypotheses hold by construction
most of the time; the premise check is what makes a trial count, never the
generator's intent.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable

from .. import adequacy as ad
from .. import product_forcing as pf
from .. import single_forcing as sf
from .. import traces as tr
from ..errors import SideCondError
from ..product_forcing import QCondition
from ..single_forcing import PCondition
from ..traces import KAPPA
from ..universe import ModelRel, OrdS, SetE, Universe
from .builders import Builder, add_model

Inputs = dict[str, Any]


@dataclass(frozen=True)
class PropertySpec:
    id: str
    anchor: str
    generate: Callable[[Universe, random.Random], Inputs | None]
    premise: Callable[[Universe, Inputs], bool]
    conclusion: Callable[[Universe, Inputs], bool]


CATALOG: dict[str, PropertySpec] = {}


def prop(pid: str, anchor: str, generate, premise):
    def deco(fn):
        CATALOG[pid] = PropertySpec(pid, anchor, generate, premise, fn)
        return fn
    return deco


# --------------------------------------------------------------------------
# shared predicates


def _safe(fn) -> bool:
    try:
        return bool(fn())
    except SideCondError:
        return False


def is_p(u, p) -> bool:
    return isinstance(p, PCondition) and sf.is_condition(u, p)


def is_q(u, q) -> bool:
    return isinstance(q, QCondition) and pf.is_q_condition(u, q)


def rel(u, m, n) -> ModelRel:
    return u.relation(m, n)


def lt(u, m, n) -> bool:
    return rel(u, m, n) is ModelRel.LESS


def sim(u, m, n) -> bool:
    return rel(u, m, n) is ModelRel.EQUIV


def le(u, m, n) -> bool:
    return ad.leq(u, m, n)


def min_above(u, m, b):
    return tr.min_at_least(u.cm(m).trace, b)


def simple_countables(u) -> list[str]:
    return [m for m in u.countables if u.is_simple(m)]


def simple_uncountables(u) -> list[str]:
    return [p for p in u.uncountables if u.is_simple(p)]


def nested(u) -> list[tuple[str, str]]:
    """Pairs ``(N, P)`` of simple models with ``P ∈ N``."""
    return [
        (n, p) for n in simple_countables(u) for p in simple_uncountables(u)
        if u.model_in(p, n)
    ]


def random_adequate(u, rng, lo=1, hi=4, pool=None) -> frozenset[str]:
    pool = sorted(u.countables if pool is None else pool)
    rng.shuffle(pool)
    want = rng.randint(lo, hi)
    out: list[str] = []
    for m in pool:
        if len(out) >= want:
            break
        if ad.is_adequate(u, out + [m]):
            out.append(m)
    return frozenset(out)


def dn(u, r, n) -> bool:
    return u.is_countable(n) and u.is_simple(n) and sf.in_dn(u, r, n)


def dq(u, q, big) -> bool:
    return u.is_uncountable(big) and u.is_simple(big) and sf.in_dq(u, q, big)


def d_class(u, p, model) -> bool:
    if u.is_uncountable(model):
        return dq(u, p, model)
    return dn(u, p, model)


def q_d_class(u, p, model) -> bool:
    return u.is_simple(model) and pf.in_d_class(u, p, model)


# --------------------------------------------------------------------------
# generators shared by several properties


def gen_pair(u, rng) -> Inputs | None:
    ids = list(u.countables)
    return {"M": rng.choice(ids), "N": rng.choice(ids)}


def gen_adequate(u, rng) -> Inputs | None:
    return {"A": random_adequate(u, rng, 1, 5)}


def gen_closure_setup(u, rng, uncountable: bool) -> Inputs | None:
    """A closed under N (or P) and B with ``A ∩ N ⊆ B ⊆ N``."""
    if uncountable:
        cands = simple_uncountables(u)
    else:
        cands = simple_countables(u)
    if not cands:
        return None
    n = rng.choice(cands)
    if uncountable:
        a = ad.closure_under_uncountable(u, random_adequate(u, rng, 0, 4), n)
    else:
        a0 = random_adequate(u, rng, 0, 3) | {n}
        if not ad.is_adequate(u, a0):
            a0 = frozenset({n})
        a = ad.closure_under_countable(u, a0, n)
    inside = [m for m in u.countables if u.model_in(m, n)]
    core = frozenset(m for m in a if u.model_in(m, n))
    extra = random_adequate(u, rng, 0, 3, inside)
    b = core | extra
    if not ad.is_adequate(u, b):
        b = core
    return {"A": a, "B": b, "N": n}


def closure_premise(u, x) -> bool:
    a, b, n = x["A"], x["B"], x["N"]
    if not (ad.is_adequate(u, a) and ad.is_adequate(u, b) and u.is_simple(n)):
        return False
    if u.is_countable(n):
        if n not in a:
            return False
        for m in a:
            if lt(u, m, n) and _safe(lambda: u.intersect(m, n) not in a):
                return False
    else:
        for m in a:
            if _safe(lambda: u.intersect(m, n) not in a):
                return False
    inside = {m for m in a if u.model_in(m, n)}
    return inside <= b and all(u.model_in(m, n) for m in b)


def gen_condition(u, rng) -> Inputs | None:
    return {"p": Builder(u, rng).condition(rng.randint(2, 10))}


def remainder_pairs_below(u) -> list[tuple[str, str]]:
    """``(K, N)`` with ``K < N``, ``N`` simple and the least point of K past β in S."""
    s = u.config.s_union
    out = []
    for n in simple_countables(u):
        for k in u.countables:
            if lt(u, k, n) and min_above(u, k, u.beta(k, n)) in s:
                out.append((k, n))
    return out


def gen_dn(u, rng) -> Inputs | None:
    ns = simple_countables(u)
    if not ns:
        return None
    steer = remainder_pairs_below(u)
    if steer and rng.random() < 0.5:
        k, n = rng.choice(steer)
        return {"N": n, "r": Builder(u, rng).in_dn(n, extra=k)}
    n = rng.choice(ns)
    return {"N": n, "r": Builder(u, rng).in_dn(n)}


def gen_dq(u, rng) -> Inputs | None:
    qs = simple_uncountables(u)
    if not qs:
        return None
    big = rng.choice(qs)
    return {"Q": big, "q": Builder(u, rng).in_dq(big)}


def gen_amalg_countable(u, rng) -> Inputs | None:
    x = gen_dn(u, rng)
    if x is None:
        return None
    b = Builder(u, rng)
    x["w"] = b.below_inside(sf.restrict(u, x["r"], x["N"]), x["N"], rng.randint(0, 10))
    return x


def gen_amalg_uncountable(u, rng) -> Inputs | None:
    x = gen_dq(u, rng)
    if x is None:
        return None
    b = Builder(u, rng)
    x["w"] = b.below_inside(sf.restrict(u, x["q"], x["Q"]), x["Q"], rng.randint(0, 10))
    return x


def amalg_countable_premise(u, x) -> bool:
    w, r, n = x["w"], x["r"], x["N"]
    return (
        is_p(u, w) and is_p(u, r) and dn(u, r, n) and sf.condition_in(u, w, n)
        and _safe(lambda: sf.leq_p(u, w, sf.restrict(u, r, n)))
    )


def amalg_uncountable_premise(u, x) -> bool:
    w, q, big = x["w"], x["q"], x["Q"]
    return (
        is_p(u, w) and is_p(u, q) and dq(u, q, big) and sf.condition_in(u, w, big)
        and _safe(lambda: sf.leq_p(u, w, sf.restrict(u, q, big)))
    )


def gen_commuting(u, rng, q_steps=None) -> Inputs | None:
    """N, Q ∈ N, p ∈ D_N ∩ D_Q and q ∈ N ∩ D_Q with q ≤ p↾N."""
    pairs = [(n, big) for n, big in nested(u) if u.um(big).cut not in u.config.s_union]
    if not pairs:
        return None
    n, big = rng.choice(pairs)
    b = Builder(u, rng)
    p = b.in_dn_dq(n, big)
    q = b.below_inside(sf.restrict(u, p, n), n, q_steps)
    q2 = sf.close_under_q(u, q, big)
    if sf.condition_in(u, q2, n):
        q = q2
    return {"N": n, "Q": big, "p": p, "q": q}


def nested_premise(u, x) -> bool:
    n, big = x["N"], x["Q"]
    return (
        u.is_countable(n) and u.is_uncountable(big) and u.is_simple(n)
        and u.is_simple(big) and u.model_in(big, n)
    )


def both_premise(u, x) -> bool:
    p = x["p"]
    return nested_premise(u, x) and is_p(u, p) and dn(u, p, x["N"]) and dq(u, p, x["Q"])


def commuting_premise(u, x) -> bool:
    q, n, big = x["q"], x["N"], x["Q"]
    return (
        both_premise(u, x) and is_p(u, q) and sf.condition_in(u, q, n) and dq(u, q, big)
        and _safe(lambda: sf.leq_p(u, q, sf.restrict(u, x["p"], n)))
    )


# product generators


def gen_qcondition(u, rng) -> Inputs | None:
    return {"p": Builder(u, rng).qcondition(rng.randint(2, 12))}


def any_simple(u, rng) -> str | None:
    cands = simple_countables(u) + simple_uncountables(u)
    return rng.choice(cands) if cands else None


def gen_qd(u, rng, model=None) -> Inputs | None:
    n = model or any_simple(u, rng)
    if n is None:
        return None
    return {"N": n, "q": Builder(u, rng).q_in_d(n)}


def gen_q_amalg(u, rng, open_ok: bool, countable_only=False) -> Inputs | None:
    if countable_only:
        ns = simple_countables(u)
        if not ns:
            return None
        x = gen_qd(u, rng, rng.choice(ns))
    else:
        x = gen_qd(u, rng)
    if x is None:
        return None
    b = Builder(u, rng)
    x["w"] = b.q_below_inside(pf.restrict_q(u, x["q"], x["N"]), x["N"], rng.randint(0, 12), open_ok)
    return x


def q_amalg_premise(u, x) -> bool:
    w, q, n = x["w"], x["q"], x["N"]
    return (
        is_q(u, w) and is_q(u, q) and q_d_class(u, q, n) and pf.q_condition_in(u, w, n)
        and _safe(lambda: pf.leq_q(u, w, pf.restrict_q(u, q, n)))
    )


def q_amalg_premise_same_dom(u, x) -> bool:
    return q_amalg_premise(u, x) and set(x["w"].F) <= set(x["q"].F)


def gen_q_commuting(u, rng) -> Inputs | None:
    def ok(n, big):
        cut = u.um(big).cut
        return all(cut not in u.config.stationary[i] for i in u.um(big).index_set)

    pairs = [(n, big) for n, big in nested(u) if ok(n, big)]
    if not pairs:
        return None
    n, big = rng.choice(pairs)
    b = Builder(u, rng)
    p = b.q_in_both(n, big)
    q = b.q_below_inside(pf.restrict_q(u, p, n), n, None, open_ok=False)
    try:
        q2 = pf.q_into_d(u, q, big)
        if pf.q_condition_in(u, q2, n) and set(q2.F) <= set(p.F):
            q = q2
    except SideCondError:
        pass
    return {"N": n, "Q": big, "p": p, "q": q}


def q_both_premise(u, x) -> bool:
    p = x["p"]
    return (
        nested_premise(u, x) and is_q(u, p)
        and q_d_class(u, p, x["N"]) and q_d_class(u, p, x["Q"])
    )


def q_commuting_premise(u, x) -> bool:
    q, p, n, big = x["q"], x["p"], x["N"], x["Q"]
    return (
        q_both_premise(u, x) and is_q(u, q) and pf.q_condition_in(u, q, n)
        and q_d_class(u, q, big) and set(q.F) <= set(p.F)
        and _safe(lambda: pf.leq_q(u, q, pf.restrict_q(u, p, n)))
    )


def true_premise(u, x) -> bool:
    return True


# ==========================================================================
# adequacy and comparison points


@prop("P-2.15", "for M ≤ N, M below the comparison point is M ∩ N, also cut at the comparison point",
      gen_pair, lambda u, x: le(u, x["M"], x["N"]))
def _(u, x):
    m, n = x["M"], x["N"]
    b = u.beta(m, n)
    tm, tn = u.cm(m).trace, u.cm(n).trace
    return tr.below(tm, b) == tm & tn == tr.below(tm & tn, b)


def _gen_216(u, rng):
    n = rng.choice(list(u.countables))
    inside = [m for m in u.countables if u.model_in(m, n)]
    return {"N": n, "A": random_adequate(u, rng, 0, 3, inside)}


@prop("P-2.16", "an adequate set that belongs to N stays adequate when N is added",
      _gen_216, lambda u, x: ad.is_adequate(u, x["A"]) and all(u.model_in(m, x["N"]) for m in x["A"]))
def _(u, x):
    return ad.is_adequate(u, x["A"] | {x["N"]})


@prop("P-2.17", "on an adequate pair, <, ∼ and ≤ follow the countable ordinals of the models",
      gen_pair, lambda u, x: ad.is_adequate(u, [x["M"], x["N"]]))
def _(u, x):
    m, n = x["M"], x["N"]
    dm, dn_ = u.delta(m), u.delta(n)
    return (
        lt(u, m, n) == (dm < dn_) and sim(u, m, n) == (dm == dn_) and le(u, m, n) == (dm <= dn_)
    )


@prop("P-2.18", "< is a strict order, ∼ an equivalence, and both respect ∼ on adequate sets",
      gen_adequate, lambda u, x: ad.is_adequate(u, x["A"]))
def _(u, x):
    a = sorted(x["A"])
    for m in a:
        if lt(u, m, m) or not sim(u, m, m):
            return False
    for m, n in itertools.product(a, a):
        if sim(u, m, n) != sim(u, n, m):
            return False
    for m, n, k in itertools.product(a, a, a):
        if lt(u, m, n) and lt(u, n, k) and not lt(u, m, k):
            return False
        if sim(u, m, n) and sim(u, n, k) and not sim(u, m, k):
            return False
        if le(u, m, n) and le(u, n, k) and not le(u, m, k):
            return False
        if sim(u, m, n):
            if lt(u, m, k) != lt(u, n, k) or lt(u, k, m) != lt(u, k, n):
                return False
            if le(u, m, k) != le(u, n, k):
                return False
    return True


def _gen_closure_plain(u, rng, uncountable):
    cands = list(u.uncountables) if uncountable else list(u.countables)
    if not cands:
        return None
    n = rng.choice(cands)
    a = random_adequate(u, rng, 0, 4)
    if not uncountable:
        a = a | {n} if ad.is_adequate(u, a | {n}) else frozenset({n})
    return {"A": a, "N": n}


@prop("P-2.24", "adding every M ∩ N with M < N keeps the set adequate and closed",
      lambda u, rng: _gen_closure_plain(u, rng, False),
      lambda u, x: ad.is_adequate(u, x["A"]) and x["N"] in x["A"])
def _(u, x):
    n = x["N"]
    b = ad.closure_under_countable(u, x["A"], n)
    return ad.is_adequate(u, b) and all(u.intersect(m, n) in b for m in b if lt(u, m, n))


@prop("P-2.27", "adding every M ∩ P keeps the set adequate and closed",
      lambda u, rng: _gen_closure_plain(u, rng, True),
      lambda u, x: ad.is_adequate(u, x["A"]))
def _(u, x):
    big = x["N"]
    b = ad.closure_under_uncountable(u, x["A"], big)
    return ad.is_adequate(u, b) and all(u.intersect(m, big) in b for m in b)


@prop("P-2.25", "A closed under a simple N together with B between A ∩ N and N is adequate",
      lambda u, rng: gen_closure_setup(u, rng, False), closure_premise)
def _(u, x):
    return ad.is_adequate(u, x["A"] | x["B"])


@prop("P-2.28", "A closed under a simple P together with B between A ∩ P and P is adequate",
      lambda u, rng: gen_closure_setup(u, rng, True), closure_premise)
def _(u, x):
    return ad.is_adequate(u, x["A"] | x["B"])


def gen_less_pair(u, rng) -> Inputs | None:
    pairs = [(m, n) for m in u.countables for n in u.countables if lt(u, m, n)]
    if not pairs:
        return gen_pair(u, rng)
    m, n = rng.choice(pairs)
    return {"M": m, "N": n}


@prop("P-2.26", "if M < N then M ∼ M ∩ N",
      gen_less_pair, lambda u, x: lt(u, x["M"], x["N"]))
def _(u, x):
    m = x["M"]
    return sim(u, m, u.intersect(m, x["N"]))


def _gen_model_and_big(u, rng):
    if not u.uncountables:
        return None
    return {"M": rng.choice(list(u.countables)), "Q": rng.choice(list(u.uncountables))}


@prop("P-2.29", "every countable M is ∼ to M ∩ P", _gen_model_and_big, true_premise)
def _(u, x):
    m = x["M"]
    return sim(u, m, u.intersect(m, x["Q"]))


def _gen_230(u, rng):
    pairs = nested(u)
    if not pairs:
        return None
    n, big = rng.choice(pairs)
    return {"N": n, "Q": big}


@prop("P-2.30", "for simple N and simple P ∈ N, every M < N ∩ P has M ∩ N ∩ P inside N ∩ P",
      _gen_230, nested_premise)
def _(u, x):
    k = u.intersect(x["N"], x["Q"])
    return all(
        u.model_in(u.intersect(m, k), k)
        for m in u.countables if lt(u, m, k)
    )


def _chain_ok(u, chain) -> bool:
    for a, b in itertools.combinations(chain, 2):
        sa, sb = tr.sup(a), tr.sup(b)
        if (a == b) != (sa == sb):
            return False
        if u.hull_set(a, b) != (sa < sb) or u.hull_set(b, a) != (sb < sa):
            return False
    return True


def chain_points(u, points) -> list[int]:
    """Points ``α`` held by two adequate models with different traces below ``α``."""
    out = []
    for a in points:
        hs = [m for m in u.countables if tr.contains(u.cm(m).trace, a)]
        if any(
            ad.is_adequate(u, [m, n]) and tr.below(u.cm(m).trace, a) != tr.below(u.cm(n).trace, a)
            for m, n in itertools.combinations(hs, 2)
        ):
            out.append(a)
    return out


def gen_chain_condition(u, rng) -> Inputs | None:
    """A condition whose chain at some α ∈ S already has two or more members."""
    s = chain_points(u, sorted(u.config.s_union)) or sorted(u.config.s_union)
    if not s:
        return gen_condition(u, rng)
    a = rng.choice(s)
    holders = [m for m in u.countables if tr.contains(u.cm(m).trace, a)]
    models = random_adequate(u, rng, 2, 4, holders)
    b = Builder(u, rng)
    p = sf.extend_ordinals(u, PCondition(), [a])
    for m in sorted(models):
        q = add_model(u, p, m)
        if q is not None and not sf.validate_p(u, q):
            p = q
    return {"p": b.walk(p, rng.randint(0, 6))}


@prop("P-2.32", "along an ∈-chain, x ∈ Sk(y) exactly when sup x < sup y",
      gen_chain_condition, lambda u, x: is_p(u, x["p"]) and any(len(c) >= 2 for c in x["p"].f.values()))
def _(u, x):
    return all(_chain_ok(u, c) for c in x["p"].f.values())


def _gen_233(u, rng):
    a = rng.choice(chain_points(u, u.lambda_sorted) or u.lambda_sorted)
    holders = [m for m in u.countables if tr.contains(u.cm(m).trace, a)]
    return {"A": random_adequate(u, rng, 2, 5, holders or None), "alpha": a}


def _chain_233(u, x):
    a = x["alpha"]
    return sorted({
        tr.below(u.cm(m).trace, a) for m in x["A"] if tr.contains(u.cm(m).trace, a)
    })


@prop("P-2.33", "the traces M ∩ α of an adequate set with α ∈ M form a chain below α",
      _gen_233, lambda u, x: ad.is_adequate(u, x["A"]) and len(_chain_233(u, x)) >= 2)
def _(u, x):
    chain = _chain_233(u, x)
    for k in chain:
        if tr.sup(k) >= x["alpha"]:
            return False
    for a, b in itertools.combinations(chain, 2):
        if not (u.hull_set(a, b) or u.hull_set(b, a)):
            return False
    return _chain_ok(u, chain)


# ==========================================================================
# remainder points


def _gen_32(u, rng):
    ids = list(u.countables)
    pairs = [(m, n) for m in ids for n in ids if m != n and ad.is_adequate(u, [m, n])]
    if not pairs:
        return None
    rng.shuffle(pairs)
    w = u.config.omega1_cut
    for m, n in pairs[:12]:
        tm, tn = u.cm(m).trace, u.cm(n).trace
        gammas = [g for g in tr.elems(tn) if g >= w] + [KAPPA]
        for a in tr.elems(tm):
            if a < w:
                continue
            for g in gammas:
                if g != a and tr.below(tm, a) == tr.below(tn, g):
                    return {"M": m, "N": n, "alpha": a, "gamma": g}
    m, n = pairs[0]
    return {"M": m, "N": n, "alpha": None, "gamma": None}


def _premise_32(u, x):
    a, g = x["alpha"], x["gamma"]
    if a is None:
        return False
    tm, tn = u.cm(x["M"]).trace, u.cm(x["N"]).trace
    w = u.config.omega1_cut
    return (
        ad.is_adequate(u, [x["M"], x["N"]]) and a >= w and tr.contains(tm, a)
        and (g is KAPPA or (g >= w and tr.contains(tn, g)))
        and a != g and tr.below(tm, a) == tr.below(tn, g)
    )


@prop("P-3.2", "M ∩ α = N ∩ γ with α ≠ γ forces M ∼ N and α the least point of M past the comparison point",
      _gen_32, _premise_32)
def _(u, x):
    m, n = x["M"], x["N"]
    return sim(u, m, n) and x["alpha"] == min_above(u, m, u.beta(m, n))


@prop("P-3.3", "for M < N the least point of M past β(M,N) is also the least past β(M, M ∩ N)",
      gen_less_pair,
      lambda u, x: lt(u, x["M"], x["N"]) and min_above(u, x["M"], u.beta(x["M"], x["N"])) is not None)
def _(u, x):
    m, n = x["M"], x["N"]
    return min_above(u, m, u.beta(m, n)) == min_above(u, m, u.beta(m, u.intersect(m, n)))


def _gen_34(u, rng):
    triples = []
    for n in u.countables:
        for m in u.countables:
            if not u.model_in(m, n):
                continue
            for k in u.countables:
                if k != m and sim(u, k, m) and ad.is_adequate(u, [k, m, n]):
                    triples.append((k, m, n))
    if not triples:
        return None
    k, m, n = rng.choice(triples)
    return {"K": k, "M": m, "N": n}


@prop("P-3.4", "K ∼ M ∈ N in an adequate triple: K < N, M ∼ K ∩ N, and the least points transfer",
      _gen_34,
      lambda u, x: ad.is_adequate(u, [x["K"], x["M"], x["N"]]) and u.model_in(x["M"], x["N"])
      and sim(u, x["K"], x["M"]))
def _(u, x):
    k, m, n = x["K"], x["M"], x["N"]
    if not lt(u, k, n):
        return False
    kn = u.intersect(k, n)
    if not sim(u, m, kn):
        return False
    a = min_above(u, m, u.beta(k, m))
    if a is not None and a != min_above(u, m, u.beta(m, kn)):
        return False
    a = min_above(u, k, u.beta(k, m))
    if a is not None:
        return a == min_above(u, kn, u.beta(kn, m)) or a == min_above(u, k, u.beta(k, kn))
    return True


@prop("P-3.5", "r* is additive over A and B when A is closed under a simple N and A ∩ N ⊆ B ⊆ N",
      lambda u, rng: gen_closure_setup(u, rng, False), closure_premise)
def _(u, x):
    a, b = x["A"], x["B"]
    return ad.r_star(u, a | b) == ad.r_star(u, a) | ad.r_star(u, b)


@prop("P-3.6", "the least point of M above P's cut is the least point past β(M ∩ P, M)",
      _gen_model_and_big,
      lambda u, x: tr.min_at_least(u.cm(x["M"]).trace, u.um(x["Q"]).cut) is not None)
def _(u, x):
    m = x["M"]
    mp = u.intersect(m, x["Q"])
    return tr.min_at_least(u.cm(m).trace, u.um(x["Q"]).cut) == min_above(u, m, u.beta(mp, m))


def _gen_37(u, rng):
    out = []
    for big in u.uncountables:
        for m in u.countables:
            if not u.model_in(m, big):
                continue
            for k in u.countables:
                if sim(u, k, m):
                    out.append((k, m, big))
    if not out:
        return None
    k, m, big = rng.choice(out)
    return {"K": k, "M": m, "Q": big}


@prop("P-3.7", "K ∼ M ∈ P: K ∩ P ∼ M and the least points transfer",
      _gen_37, lambda u, x: u.model_in(x["M"], x["Q"]) and sim(u, x["K"], x["M"]))
def _(u, x):
    k, m = x["K"], x["M"]
    kp = u.intersect(k, x["Q"])
    if not sim(u, kp, m):
        return False
    a = min_above(u, m, u.beta(k, m))
    if a is not None and a != min_above(u, m, u.beta(m, kp)):
        return False
    a = min_above(u, k, u.beta(k, m))
    if a is not None:
        return a == min_above(u, kp, u.beta(kp, m)) or a == min_above(u, k, u.beta(kp, k))
    return True


@prop("P-3.8", "r* is additive over A and B when A is closed under a simple P and A ∩ P ⊆ B ⊆ P",
      lambda u, rng: gen_closure_setup(u, rng, True), closure_premise)
def _(u, x):
    a, b = x["A"], x["B"]
    return ad.r_star(u, a | b) == ad.r_star(u, a) | ad.r_star(u, b)


@prop("P-10.13", "s* is additive under either closure hypothesis",
      lambda u, rng: gen_closure_setup(u, rng, bool(u.uncountables) and rng.random() < 0.5),
      closure_premise)
def _(u, x):
    a, b = x["A"], x["B"]
    return ad.s_star(u, a | b) == ad.s_star(u, a) | ad.s_star(u, b)


# ==========================================================================
# single-forcing conditions


def _gen_43(u, rng):
    x = gen_condition(u, rng)
    x["N"] = rng.choice(list(u.countables))
    x["Q"] = rng.choice(list(u.uncountables)) if u.uncountables else None
    return x


@prop("P-4.3", "chain members lie inside their key; sets in N below α ∈ S lie in Sk(N ∩ α); small sets lie in P",
      _gen_43, lambda u, x: is_p(u, x["p"]) and bool(x["p"].f))
def _(u, x):
    p, n, big = x["p"], x["N"], x["Q"]
    s = sf.s_of(u, p)
    for z in p.dom():
        for k in p.f[z]:
            if z.kind == 0 and tr.sup(k) >= z.value:
                return False
            if z.kind == 1 and not tr.subset(k, z.value):
                return False
        if z.kind == 1:
            if u.set_in(z.value, n):
                for a in s:
                    if tr.contains(u.cm(n).trace, a) and tr.sup(z.value) < a:
                        if not u.hull_set(z.value, tr.below(u.cm(n).trace, a)):
                            return False
            if big is not None and tr.sup(z.value) < u.um(big).cut and not u.set_in(z.value, big):
                return False
    return True


@prop("P-4.4", "inside every f(z), hull order is strict sup order",
      gen_chain_condition, lambda u, x: is_p(u, x["p"]) and any(len(c) >= 2 for c in x["p"].f.values()))
def _(u, x):
    return all(_chain_ok(u, c) for c in x["p"].f.values())


def _fresh(u, p):
    return [a for a in sorted(sf.s_of(u, p)) if OrdS(a) not in p.f]


@prop("P-4.5", "for α ∈ S outside the domain, no M ∩ α with M ∈ A is in the domain",
      gen_condition, lambda u, x: is_p(u, x["p"]) and bool(_fresh(u, x["p"])) and bool(x["p"].a))
def _(u, x):
    p = x["p"]
    for a in _fresh(u, p):
        for m in p.a:
            t = u.cm(m).trace
            if tr.contains(t, a) and SetE(tr.below(t, a)) in p.f:
                return False
    return True


@prop("P-4.6", "for distinct fresh α, β ∈ S, the domain and the traces at α and at β are pairwise disjoint",
      gen_condition, lambda u, x: is_p(u, x["p"]) and len(_fresh(u, x["p"])) >= 2)
def _(u, x):
    p = x["p"]
    dom = set(p.f)

    def traces_at(a):
        return {SetE(tr.below(u.cm(m).trace, a)) for m in p.a if tr.contains(u.cm(m).trace, a)}

    for a, b in itertools.combinations(_fresh(u, p), 2):
        ta, tb = traces_at(a), traces_at(b)
        if dom & ta or dom & tb or ta & tb:
            return False
    return True


def _gen_48(u, rng):
    x = gen_condition(u, rng)
    fresh = _fresh(u, x["p"])
    x["x"] = tuple(rng.sample(fresh, min(len(fresh), rng.randint(1, 3)))) if fresh else ()
    return x


@prop("P-4.8", "p + x is a condition below p",
      _gen_48, lambda u, x: is_p(u, x["p"]) and bool(x["x"])
      and all(OrdS(a) not in x["p"].f and a in sf.s_of(u, x["p"]) for a in x["x"]))
def _(u, x):
    p = x["p"]
    q = sf.extend_ordinals(u, p, x["x"])
    return is_p(u, q) and sf.leq_p(u, q, p) and q.a == p.a and all(OrdS(a) in q.f for a in x["x"])


@prop("P-4.9", "saturating g gives a condition below p with the same f and A and nested g values",
      gen_condition, lambda u, x: is_p(u, x["p"]))
def _(u, x):
    p = x["p"]
    q = sf.saturate_g(u, p)
    return (
        is_p(u, q) and sf.leq_p(u, q, p) and q.f == p.f and q.a == p.a
        and sf.g_coherent(q) and sf.saturate_g(u, q) == q
    )


# -- restrictions ---------------------------------------------------------


@prop("P-6.5", "for q ∈ D_Q, q↾Q is a condition in Q and q ≤ q↾Q",
      gen_dq, lambda u, x: is_p(u, x["q"]) and dq(u, x["q"], x["Q"]))
def _(u, x):
    q, big = x["q"], x["Q"]
    r = sf.restrict(u, q, big)
    return is_p(u, r) and sf.condition_in(u, r, big) and sf.leq_p(u, q, r)


@prop("P-7.6", "for r ∈ D_N, r↾N is a condition in N and r ≤ r↾N",
      gen_dn, lambda u, x: is_p(u, x["r"]) and dn(u, x["r"], x["N"]))
def _(u, x):
    r, n = x["r"], x["N"]
    s = sf.restrict(u, r, n)
    return is_p(u, s) and sf.condition_in(u, s, n) and sf.leq_p(u, r, s)


def _gen_66(u, rng):
    qs = simple_uncountables(u)
    if not qs:
        return None
    big = rng.choice(qs)
    b = Builder(u, rng)
    p_in = b.condition(rng.randint(1, 6), inside=big)
    q = sf.close_under_q(u, b.walk(p_in, rng.randint(0, 6)), big)
    r = sf.close_under_q(u, b.walk(sf.restrict(u, q, big), rng.randint(0, 6)), big)
    p2 = b.in_dq(big)
    q2 = sf.close_under_q(u, b.walk(p2, rng.randint(0, 6)), big)
    return {"Q": big, "p": p_in, "q": q, "r": r, "p2": p2, "q2": q2}


def _premise_66(u, x):
    big = x["Q"]
    p, q, r, p2, q2 = x["p"], x["q"], x["r"], x["p2"], x["q2"]
    return (
        all(is_p(u, c) for c in (p, q, r, p2, q2)) and u.is_simple(big)
        and sf.condition_in(u, p, big) and dq(u, q, big) and sf.leq_p(u, q, p)
        and dq(u, r, big) and sf.leq_p(u, r, sf.restrict(u, q, big))
        and dq(u, p2, big) and dq(u, q2, big) and sf.leq_p(u, q2, p2)
    )


@prop("P-6.6", "restriction to a simple Q is monotone in its three forms", _gen_66, _premise_66)
def _(u, x):
    big = x["Q"]
    rq = lambda c: sf.restrict(u, c, big)  # noqa: E731
    return (
        sf.leq_p(u, rq(x["q"]), x["p"])
        and sf.leq_p(u, rq(x["r"]), rq(x["q"]))
        and sf.leq_p(u, rq(x["q2"]), rq(x["p2"]))
    )


def _gen_77(u, rng):
    ns = simple_countables(u)
    if not ns:
        return None
    n = rng.choice(ns)
    b = Builder(u, rng)
    p = b.condition(rng.randint(1, 6), inside=n)
    r = sf.into_dn(u, b.walk(sf.adjoin_model(u, p, n), rng.randint(0, 6)), n)
    return {"N": n, "p": p, "r": r}


@prop("P-7.7", "for r ∈ D_N below some p ∈ N, r↾N ≤ p", _gen_77,
      lambda u, x: is_p(u, x["p"]) and is_p(u, x["r"]) and dn(u, x["r"], x["N"])
      and sf.condition_in(u, x["p"], x["N"]) and sf.leq_p(u, x["r"], x["p"]))
def _(u, x):
    return sf.leq_p(u, sf.restrict(u, x["r"], x["N"]), x["p"])


def _gen_1113(u, rng):
    n = any_simple(u, rng)
    if n is None:
        return None
    b = Builder(u, rng)
    if u.is_uncountable(n):
        p_in = b.qcondition(rng.randint(1, 6), inside=n)
        q = pf.q_into_d(u, b.qwalk(p_in, rng.randint(0, 6)), n)
        p2 = b.q_in_d(n)
        q2 = pf.q_into_d(u, b.qwalk(p2, rng.randint(0, 6)), n)
    else:
        p_in = b.qcondition(rng.randint(1, 6), inside=n)
        q = pf.q_into_d(u, b.qwalk(pf.q_adjoin_model(u, p_in, n), rng.randint(0, 6)), n)
        p2 = b.q_in_d(n)
        q2 = pf.q_into_d(u, b.qwalk(p2, rng.randint(0, 6)), n)
    return {"N": n, "p": p_in, "q": q, "p2": p2, "q2": q2}


@prop("P-11.13", "product restriction is monotone: q↾N ≤ p for p ∈ N, and q↾N ≤ p↾N for p ∈ D(N)",
      _gen_1113,
      lambda u, x: all(is_q(u, x[k]) for k in ("p", "q", "p2", "q2"))
      and pf.q_condition_in(u, x["p"], x["N"]) and q_d_class(u, x["q"], x["N"])
      and pf.leq_q(u, x["q"], x["p"]) and q_d_class(u, x["p2"], x["N"])
      and q_d_class(u, x["q2"], x["N"]) and pf.leq_q(u, x["q2"], x["p2"]))
def _(u, x):
    n = x["N"]
    return (
        pf.leq_q(u, pf.restrict_q(u, x["q"], n), x["p"])
        and pf.leq_q(u, pf.restrict_q(u, x["q2"], n), pf.restrict_q(u, x["p2"], n))
    )


@prop("P-6.7", "w ≤ q↾Q carries A, f and g of q inside Q into w",
      gen_amalg_uncountable, amalg_uncountable_premise)
def _(u, x):
    w, q, big = x["w"], x["q"], x["Q"]
    if not {m for m in q.a if u.model_in(m, big)} <= w.a:
        return False
    for z in q.dom():
        if u.elem_in(z, big):
            if z not in w.f or not set(q.f[z]) <= set(w.f[z]):
                return False
    for (k, z), vals in q.g.items():
        if u.elem_in(z, big) and u.set_in(k, big) and not vals <= w.gval(k, z):
            return False
    return True


@prop("P-7.8", "w ≤ r↾N carries A, f ∩ N and g of r inside N into w",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    w, r, n = x["w"], x["r"], x["N"]
    if not {m for m in r.a if u.model_in(m, n)} <= w.a:
        return False
    for z in r.dom():
        if u.elem_in(z, n):
            if z not in w.f or not {k for k in r.f[z] if u.set_in(k, n)} <= set(w.f[z]):
                return False
    for (k, z), vals in r.g.items():
        if u.elem_in(z, n) and u.set_in(k, n) and not vals <= w.gval(k, z):
            return False
    return True


@prop("P-11.14", "w ≤ q↾N carries A ∩ N into w and each coordinate of w is below the restricted coordinate",
      lambda u, rng: gen_q_amalg(u, rng, True), q_amalg_premise)
def _(u, x):
    w, q, n = x["w"], x["q"], x["N"]
    if not {m for m in q.a if u.model_in(m, n)} <= w.a:
        return False
    for i, c in q.F.items():
        if u.index_in(i, n):
            if i not in w.F or not sf.leq_p(u, w.F[i], sf.restrict(u, c, n)):
                return False
    return True


# -- amalgamation ---------------------------------------------------------


def _amalg_u(u, x):
    return sf.amalg_uncountable(u, x["w"], x["q"], x["Q"])


def _amalg_c(u, x):
    return sf.amalg_countable(u, x["w"], x["r"], x["N"])


@prop("P-6.9", "the uncountable amalgam keeps f_w on dom(f_w) and extends f_q on dom(f_q)",
      gen_amalg_uncountable, amalg_uncountable_premise)
def _(u, x):
    f = _amalg_u(u, x).f
    w, q = x["w"], x["q"]
    return all(f[z] == w.f[z] for z in w.f) and all(set(q.f[z]) <= set(f[z]) for z in q.f)


@prop("P-6.10", "the uncountable amalgam meets Q in dom(f_w) and adds no membership among old elements",
      gen_amalg_uncountable, amalg_uncountable_premise)
def _(u, x):
    f = _amalg_u(u, x).f
    w, q, big = x["w"], x["q"], x["Q"]
    if {z for z in f if u.elem_in(z, big)} != set(w.f):
        return False
    for z, chain in f.items():
        for k in chain:
            ke = SetE(k)
            if ke in w.f and z in w.f and k not in w.f[z]:
                return False
            if ke in q.f and z in q.f and k not in q.f[z]:
                return False
    return True


def _clauses(u, c) -> set[str]:
    return {v.clause for v in sf.validate_p(u, c)}


@prop("P-6.11", "the uncountable amalgam has provenance, chain shape and chain closure",
      gen_amalg_uncountable, amalg_uncountable_premise)
def _(u, x):
    return not _clauses(u, _amalg_u(u, x)) & {"C2", "C3"}


@prop("P-6.13", "the uncountable amalgam's g values lie in x above sup K",
      gen_amalg_uncountable, amalg_uncountable_premise)
def _(u, x):
    return "C4" not in _clauses(u, _amalg_u(u, x))


@prop("P-6.15", "w ⊕_Q q is a condition below both w and q",
      gen_amalg_uncountable, amalg_uncountable_premise)
def _(u, x):
    out = _amalg_u(u, x)
    return is_p(u, out) and sf.leq_p(u, out, x["w"]) and sf.leq_p(u, out, x["q"])


@prop("P-7.12", "the countable amalgam's domain and chains extend both inputs",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    f = _amalg_c(u, x).f
    w, r = x["w"], x["r"]
    return all(
        z in f and set(src.f[z]) <= set(f[z]) for src in (w, r) for z in src.f
    )


@prop("P-7.13", "the countable amalgam meets N in dom(f_w) and adds no membership among old elements",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    f = _amalg_c(u, x).f
    w, r, n = x["w"], x["r"], x["N"]
    if {z for z in f if u.elem_in(z, n)} != set(w.f):
        return False
    for z, chain in f.items():
        for k in chain:
            ke = SetE(k)
            if ke in w.f and z in w.f and k not in w.f[z]:
                return False
            if ke in r.f and z in r.f and k not in r.f[z]:
                return False
    return True


@prop("P-7.14", "the countable amalgam has provenance and chain shape",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    return "C2" not in _clauses(u, _amalg_c(u, x))


@prop("P-7.15", "the countable amalgam's chains are closed: f(K) = f(x) ∩ Sk(K)",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    return "C3" not in _clauses(u, _amalg_c(u, x))


@prop("P-7.17", "the countable amalgam's g values lie in x above sup K",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    return "C4" not in _clauses(u, _amalg_c(u, x))


@prop("P-7.19", "w ⊕_N r is a condition below both w and r",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    out = _amalg_c(u, x)
    return is_p(u, out) and sf.leq_p(u, out, x["w"]) and sf.leq_p(u, out, x["r"])


def extra_domain(u, w, r, n) -> set:
    s = sf.s_of(u, r)
    out = set()
    for m in r.a:
        if not le(u, n, m):
            continue
        t = u.cm(m).trace
        for a in w.ordinals():
            if a in s and tr.contains(t, a) and OrdS(a) not in r.f:
                out.add(SetE(tr.below(t, a)))
    return out


@prop("P-7.9", "the extra traces of the countable amalgam avoid N, dom(f_w) and dom(f_r)",
      gen_amalg_countable, amalg_countable_premise)
def _(u, x):
    w, r, n = x["w"], x["r"], x["N"]
    extra = extra_domain(u, w, r, n)
    return all(not u.elem_in(z, n) and z not in w.f and z not in r.f for z in extra)


def unique_alpha_ok(u, r, n) -> bool:
    s = sf.s_of(u, r)
    nt = u.cm(n).trace
    alphas = [a for a in r.ordinals() if a in s and tr.contains(nt, a)]
    for z in r.dom():
        around = set(r.f[z]) | ({z.value} if z.kind == 1 else set())
        if sum(1 for a in alphas if tr.below(nt, a) in around) > 1:
            return False
    return True


def _gen_710(u, rng):
    x = gen_condition(u, rng)
    if not x["p"].a:
        return None
    x["N"] = rng.choice(sorted(x["p"].a))
    return x


@prop("P-7.10", "for N ∈ A and x in the domain, at most one α ∈ dom ∩ S ∩ N has N ∩ α in f(x) ∪ {x}",
      _gen_710, lambda u, x: is_p(u, x["p"]) and x["N"] in x["p"].a)
def _(u, x):
    return unique_alpha_ok(u, x["p"], x["N"])


def _gen_81(u, rng):
    x = gen_amalg_countable(u, rng)
    if x is None:
        return None
    v = x.pop("w")
    x["v"] = v
    x["w"] = Builder(u, rng).below_inside(v, x["N"], rng.randint(0, 8))
    return x


@prop("P-8.1", "the countable amalgam is monotone in its first argument",
      _gen_81,
      lambda u, x: amalg_countable_premise(u, {**x, "w": x["v"]}) and is_p(u, x["w"])
      and sf.condition_in(u, x["w"], x["N"]) and sf.leq_p(u, x["w"], x["v"]))
def _(u, x):
    n, r = x["N"], x["r"]
    return sf.leq_p(u, sf.amalg_countable(u, x["w"], r, n), sf.amalg_countable(u, x["v"], r, n))


def _gen_82(u, rng):
    if not u.uncountables:
        return None
    b = Builder(u, rng)
    n = rng.choice(list(u.countables))
    p = b.condition(rng.randint(1, 6), inside=n)
    p = b.walk(sf.adjoin_model(u, p, n), rng.randint(0, 6))
    return {"N": n, "Q": rng.choice(list(u.uncountables)), "p": p}


@prop("P-8.2", "a condition with N ∈ A has an extension in both D_N and D_Q",
      _gen_82, lambda u, x: is_p(u, x["p"]) and x["N"] in x["p"].a)
def _(u, x):
    n, big, p = x["N"], x["Q"], x["p"]
    s = sf.into_dn_dq(u, p, n, big)
    return is_p(u, s) and sf.leq_p(u, s, p) and sf.in_dn(u, s, n) and sf.in_dq(u, s, big)


def _gen_both(u, rng):
    pairs = nested(u)
    if not pairs:
        return None
    n, big = rng.choice(pairs)
    return {"N": n, "Q": big, "p": Builder(u, rng).in_dn_dq(n, big)}


@prop("P-8.3", "restricting to N keeps D_Q, restricting to Q lands in D_(N∩Q)",
      _gen_both, both_premise)
def _(u, x):
    n, big, p = x["N"], x["Q"], x["p"]
    nq = u.intersect(n, big)
    return sf.in_dq(u, sf.restrict(u, p, n), big) and sf.in_dn(u, sf.restrict(u, p, big), nq)


@prop("P-8.4", "(p↾N)↾Q = (p↾Q)↾(N ∩ Q)", _gen_both, both_premise)
def _(u, x):
    n, big, p = x["N"], x["Q"], x["p"]
    nq = u.intersect(n, big)
    lhs = sf.restrict(u, sf.restrict(u, p, n), big)
    rhs = sf.restrict(u, sf.restrict(u, p, big), nq)
    return lhs == rhs


@prop("P-8.5", "q ⊕_N p lies in D_Q, and q↾Q ∈ N ∩ Q lies below (p↾Q)↾(N ∩ Q)",
      gen_commuting, commuting_premise)
def _(u, x):
    n, big, p, q = x["N"], x["Q"], x["p"], x["q"]
    nq = u.intersect(n, big)
    if not sf.in_dq(u, sf.amalg_countable(u, q, p, n), big):
        return False
    qq = sf.restrict(u, q, big)
    return (
        sf.condition_in(u, qq, n) and sf.condition_in(u, qq, big)
        and sf.leq_p(u, qq, sf.restrict(u, sf.restrict(u, p, big), nq))
    )


@prop("P-8.6", "(q ⊕_N p)↾Q = (q↾Q) ⊕_(N∩Q) (p↾Q)",
      gen_commuting,
      lambda u, x: commuting_premise(u, x) and u.um(x["Q"]).cut not in sf.s_of(u, x["p"]))
def _(u, x):
    n, big, p, q = x["N"], x["Q"], x["p"], x["q"]
    nq = u.intersect(n, big)
    lhs = sf.restrict(u, sf.amalg_countable(u, q, p, n), big)
    rhs = sf.amalg_countable(u, sf.restrict(u, q, big), sf.restrict(u, p, big), nq)
    return lhs == rhs


# ==========================================================================
# product forcing


def _gen_108(u, rng):
    b = Builder(u, rng)
    p = b.qcondition()
    fresh = [i for i in range(u.config.lambda_star) if i not in p.F]
    xs = tuple(sorted(rng.sample(fresh, min(len(fresh), rng.randint(1, 2))))) if fresh else ()
    q = b.qwalk(p, rng.randint(0, 8))
    q = pf.uplus(u, q, [i for i in xs if i not in q.F])
    q = b.qwalk(q, rng.randint(0, 4))
    return {"p": p, "x": xs, "q": q}


@prop("P-10.8", "p ⊎ x is a condition below p whose domain holds x, and is above every such q ≤ p",
      _gen_108,
      lambda u, x: is_q(u, x["p"]) and bool(x["x"]) and not set(x["x"]) & set(x["p"].F)
      and is_q(u, x["q"]) and pf.leq_q(u, x["q"], x["p"]) and set(x["x"]) <= set(x["q"].F))
def _(u, x):
    p, q = x["p"], x["q"]
    r = pf.uplus(u, p, x["x"])
    return is_q(u, r) and pf.leq_q(u, r, p) and set(x["x"]) <= set(r.F) and pf.leq_q(u, q, r)


def _gen_109(u, rng):
    b = Builder(u, rng)
    p = b.qcondition()
    if not p.F:
        return None
    idx = rng.sample(list(p.F), rng.randint(1, len(p.F)))
    repl = {i: b.walk(p.F[i], rng.randint(1, 5)) for i in idx}
    return {"p": p, "repl": repl}


@prop("P-10.9", "lowering coordinates gives a condition below p with the same A and domain",
      _gen_109,
      lambda u, x: is_q(u, x["p"]) and all(
          i in x["p"].F and is_p(u, c) and c.s_label == i and sf.leq_p(u, c, x["p"].F[i])
          for i, c in x["repl"].items()))
def _(u, x):
    p = x["p"]
    r = pf.lower_coordinates(u, p, x["repl"])
    return is_q(u, r) and pf.leq_q(u, r, p) and r.a == p.a and set(r.F) == set(p.F)


def _gen_1011(u, rng):
    b = Builder(u, rng)
    p = b.qcondition()
    if not p.F:
        return None
    i = rng.choice(list(p.F))
    q = b.qwalk(p, rng.randint(0, 8))
    v = b.walk(p.F[i], rng.randint(0, 5))
    return {"p": p, "q": q, "i": i, "v": v}


@prop("P-10.11", "coordinate projection keeps the top, preserves order and lifts extensions",
      _gen_1011,
      lambda u, x: is_q(u, x["p"]) and is_q(u, x["q"]) and pf.leq_q(u, x["q"], x["p"])
      and x["i"] in x["p"].F and is_p(u, x["v"]) and sf.leq_p(u, x["v"], x["p"].F[x["i"]]))
def _(u, x):
    p, q, i, v = x["p"], x["q"], x["i"], x["v"]
    top = pf.project_coordinate(u, QCondition(), i)
    if top != PCondition(s_label=i):
        return False
    if not sf.leq_p(u, pf.project_coordinate(u, q, i), pf.project_coordinate(u, p, i)):
        return False
    r = pf.lower_coordinates(u, p, {i: v})
    return is_q(u, r) and pf.leq_q(u, r, p) and pf.project_coordinate(u, r, i) == v


@prop("P-11.16", "w ⊕^N q is a condition below w and q when dom(F_w) ⊆ dom(F_q)",
      lambda u, rng: gen_q_amalg(u, rng, False), q_amalg_premise_same_dom)
def _(u, x):
    w, q, n = x["w"], x["q"], x["N"]
    out = pf.oplus_q_traced(u, w, q, n)
    c = out.condition
    return not out.normalized and is_q(u, c) and pf.leq_q(u, c, w) and pf.leq_q(u, c, q)


def _gen_1117(u, rng):
    x = gen_qd(u, rng)
    if x is None:
        return None
    fresh = [i for i in range(u.config.lambda_star) if i not in x["q"].F]
    x["x"] = tuple(sorted(rng.sample(fresh, min(len(fresh), rng.randint(1, 2))))) if fresh else ()
    return x


@prop("P-11.17", "(q ⊎ x)↾N = (q↾N) ⊎ (x ∩ N)", _gen_1117,
      lambda u, x: is_q(u, x["q"]) and q_d_class(u, x["q"], x["N"]) and bool(x["x"])
      and not set(x["x"]) & set(x["q"].F))
def _(u, x):
    q, n, xs = x["q"], x["N"], x["x"]
    lhs = pf.restrict_q(u, pf.uplus(u, q, xs), n)
    rhs = pf.uplus(u, pf.restrict_q(u, q, n), [i for i in xs if u.index_in(i, n)])
    return lhs == rhs


@prop("P-11.18", "w ≤ (q ⊎ x)↾N and w ⊕^N (q ⊎ x) lies below w, q ⊎ x and q",
      lambda u, rng: gen_q_amalg(u, rng, True), q_amalg_premise)
def _(u, x):
    w, q, n = x["w"], x["q"], x["N"]
    extra = [i for i in w.F if i not in q.F]
    qx = pf.uplus(u, q, extra)
    if not pf.leq_q(u, w, pf.restrict_q(u, qx, n)) or not set(w.F) <= set(qx.F):
        return False
    out = pf.oplus_q_traced(u, w, q, n)
    c = out.condition
    return (
        tuple(extra) == out.normalized and is_q(u, c)
        and pf.leq_q(u, c, w) and pf.leq_q(u, c, qx) and pf.leq_q(u, c, q)
    )


def _gen_121(u, rng):
    x = gen_q_amalg(u, rng, False, countable_only=True)
    if x is None:
        return None
    v = x.pop("w")
    x["v"] = v
    x["w"] = Builder(u, rng).q_below_inside(v, x["N"], rng.randint(0, 8), open_ok=False)
    return x


@prop("P-12.1", "the product amalgam is monotone in its first argument",
      _gen_121,
      lambda u, x: u.is_countable(x["N"]) and q_amalg_premise(u, {**x, "w": x["v"]})
      and is_q(u, x["w"]) and pf.q_condition_in(u, x["w"], x["N"])
      and pf.leq_q(u, x["w"], x["v"]) and set(x["w"].F) <= set(x["q"].F))
def _(u, x):
    n, q = x["N"], x["q"]
    return pf.leq_q(u, pf.oplus_q(u, x["w"], q, n), pf.oplus_q(u, x["v"], q, n))


def _gen_122(u, rng):
    if not u.uncountables:
        return None
    b = Builder(u, rng)
    n = rng.choice(list(u.countables))
    p = b.qcondition(rng.randint(1, 6), inside=n)
    p = b.qwalk(pf.q_adjoin_model(u, p, n), rng.randint(0, 6))
    return {"N": n, "Q": rng.choice(list(u.uncountables)), "p": p}


@prop("P-12.2", "a product condition with N ∈ A has an extension in D(N) ∩ D(P)",
      _gen_122, lambda u, x: is_q(u, x["p"]) and x["N"] in x["p"].a)
def _(u, x):
    n, big, p = x["N"], x["Q"], x["p"]
    s = pf.q_into_both(u, p, n, big)
    return is_q(u, s) and pf.leq_q(u, s, p) and pf.in_dnq(u, s, n) and pf.in_dpq(u, s, big)


def _gen_q_both(u, rng):
    pairs = nested(u)
    if not pairs:
        return None
    n, big = rng.choice(pairs)
    return {"N": n, "Q": big, "p": Builder(u, rng).q_in_both(n, big)}


@prop("P-12.3", "product restriction to N keeps D(P), restriction to P lands in D(N ∩ P)",
      _gen_q_both, q_both_premise)
def _(u, x):
    n, big, p = x["N"], x["Q"], x["p"]
    nq = u.intersect(n, big)
    return (
        pf.in_dpq(u, pf.restrict_q(u, p, n), big)
        and pf.in_dnq(u, pf.restrict_q(u, p, big), nq)
    )


@prop("P-12.4", "(p↾N)↾P = (p↾P)↾(N ∩ P) for product conditions", _gen_q_both, q_both_premise)
def _(u, x):
    n, big, p = x["N"], x["Q"], x["p"]
    nq = u.intersect(n, big)
    lhs = pf.restrict_q(u, pf.restrict_q(u, p, n), big)
    rhs = pf.restrict_q(u, pf.restrict_q(u, p, big), nq)
    return lhs == rhs


@prop("P-12.5", "q ⊕^N p lies in D(P), and q↾P ∈ N ∩ P lies below (p↾P)↾(N ∩ P)",
      gen_q_commuting, q_commuting_premise)
def _(u, x):
    n, big, p, q = x["N"], x["Q"], x["p"], x["q"]
    nq = u.intersect(n, big)
    if not pf.in_dpq(u, pf.oplus_q(u, q, p, n), big):
        return False
    qq = pf.restrict_q(u, q, big)
    return (
        pf.q_condition_in(u, qq, n) and pf.q_condition_in(u, qq, big)
        and pf.leq_q(u, qq, pf.restrict_q(u, pf.restrict_q(u, p, big), nq))
    )


@prop("P-12.6", "(q ⊕^N p)↾P = (q↾P) ⊕^(N∩P) (p↾P) for product conditions",
      gen_q_commuting,
      lambda u, x: q_commuting_premise(u, x) and all(
          u.um(x["Q"]).cut not in u.config.stationary[i] for i in u.um(x["Q"]).index_set))
def _(u, x):
    n, big, p, q = x["N"], x["Q"], x["p"], x["q"]
    nq = u.intersect(n, big)
    lhs = pf.restrict_q(u, pf.oplus_q(u, q, p, n), big)
    rhs = pf.oplus_q(u, pf.restrict_q(u, q, big), pf.restrict_q(u, p, big), nq)
    return lhs == rhs


def property_ids() -> list[str]:
    def key(pid):
        major, minor = pid[2:].split(".")
        return (int(major), int(minor))
    return sorted(CATALOG, key=key)
