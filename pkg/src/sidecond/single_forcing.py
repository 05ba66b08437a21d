"""Conditions of the single side-condition forcing and their constructions.

A condition is a triple ``(f, g, A)``:

* ``f`` maps domain elements (ordinals of the stationary set S, or trace sets
  ``M ∩ α``) to ∈-chains of trace sets, stored as tuples sorted by supremum;
* ``g`` maps pairs ``(K, x)`` with ``K`` in ``f(x)`` to finite ordinal sets;
  pairs that are absent denote the empty set, and the in-memory form keeps
  only nonempty values so structural equality is plain dict equality;
* ``A`` is a finite adequate set of countable model ids.

Every operation takes the universe explicitly and returns a new condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from . import traces as tr
from .adequacy import closure_under_countable, closure_under_uncountable, is_adequate, r_star
from .errors import (
    AmbiguousCase,
    DomainClash,
    NotClosed,
    NotInDClass,
    NotInModel,
    PreconditionFailed,
    UnknownId,
)
from .traces import KAPPA
from .universe import Elem, ModelRel, OrdS, SetE, Universe, hull

GKey = tuple[int, Elem]


class PCondition:
    """Immutable condition value.  ``s_label`` selects S (``None`` = union)."""

    __slots__ = ("s_label", "f", "g", "a", "_key")

    def __init__(
        self,
        f: Mapping[Elem, Iterable[int]] | None = None,
        g: Mapping[GKey, Iterable[int]] | None = None,
        a: Iterable[str] = (),
        s_label: int | None = None,
    ):
        self.s_label = s_label
        self.f: dict[Elem, tuple[int, ...]] = {
            x: tuple(chain) for x, chain in (f or {}).items()
        }
        self.g: dict[GKey, frozenset[int]] = {}
        for key, vals in (g or {}).items():
            vals = frozenset(vals)
            if vals:
                self.g[key] = vals
        self.a = frozenset(a)
        self._key = None

    # -- structural identity ---------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (
                self.s_label,
                tuple((x.sort_key(), self.f[x]) for x in self.dom()),
                tuple(
                    (k, x.sort_key(), tuple(sorted(v)))
                    for (k, x), v in sorted(self.g.items(), key=_gsort)
                ),
                tuple(sorted(self.a)),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, PCondition) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        fs = ", ".join(f"{x}: [{', '.join(tr.fmt(k) for k in self.f[x])}]" for x in self.dom())
        gs = ", ".join(
            f"({tr.fmt(k)}, {x}): {sorted(v)}" for (k, x), v in sorted(self.g.items(), key=_gsort)
        )
        return f"PCondition(f={{{fs}}}, g={{{gs}}}, A={sorted(self.a)}, S={self.s_label})"

    # -- accessors ---------------------------------------------------------
    def dom(self) -> list[Elem]:
        return sorted(self.f, key=Elem.sort_key)

    def ordinals(self) -> list[int]:
        return sorted(x.value for x in self.f if x.kind == 0)

    def chain(self, x: Elem) -> tuple[int, ...]:
        return self.f.get(x, ())

    def gval(self, k: int, x: Elem) -> frozenset[int]:
        return self.g.get((k, x), frozenset())

    def g_pairs(self) -> Iterator[GKey]:
        """All pairs in the domain of g, i.e. ``(K, x)`` with ``K ∈ f(x)``."""
        for x in self.dom():
            for k in self.f[x]:
                yield (k, x)

    def replace(self, **kw) -> "PCondition":
        return PCondition(
            kw.get("f", self.f), kw.get("g", self.g), kw.get("a", self.a),
            kw.get("s_label", self.s_label),
        )


def empty_condition(s_label: int | None = None) -> PCondition:
    return PCondition(s_label=s_label)


def _gsort(item):
    (k, x), _ = item
    return (tuple(tr.elems(k)), x.sort_key())


def sort_chain(members: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(members), key=lambda k: (tr.sup(k), tr.elems(k))))


def s_of(u: Universe, p: PCondition) -> frozenset[int]:
    return u.config.s_set(p.s_label)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: dict

    def to_doc(self) -> dict:
        return {"clause": self.clause, "witness": self.witness}


def _edoc(x: Elem):
    if x.kind == 0:
        return "kappa" if x.value is KAPPA else x.value
    return tr.elems(x.value)


def provenances(u: Universe, p: PCondition, x: Elem) -> list[tuple[str, object]]:
    """Pairs ``(M, α)`` with ``M ∈ A``, ``α ∈ (M ∩ dom ∩ S) ∪ {κ}``, ``x = M ∩ α``."""
    if x.kind == 0:
        return []
    s = s_of(u, p)
    cuts = [a for a in p.ordinals() if a in s]
    out = []
    for m in sorted(p.a):
        t = u.cm(m).trace
        for a in [c for c in cuts if tr.contains(t, c)] + [KAPPA]:
            if tr.below(t, a) == x.value:
                out.append((m, a))
    return out


def validate_p(u: Universe, p: PCondition) -> list[Violation]:
    """All clause violations, C1 first; an empty list means ``p`` is a condition."""
    for m in sorted(p.a):
        if not u.is_countable(m):
            raise UnknownId(f"unknown model {m!r} in A", id=m)
    out: list[Violation] = []
    s = s_of(u, p)
    dom = p.dom()
    domset = set(dom)

    # C1
    ids = sorted(p.a)
    for a, b in itertools.combinations(ids, 2):
        if u.relation(a, b) is ModelRel.INCOMPARABLE:
            out.append(Violation("C1", {"models": [a, b]}))

    # C2
    for x in dom:
        if x.kind == 0:
            if x.value is KAPPA or x.value not in s:
                out.append(Violation("C2", {"x": _edoc(x), "reason": "ordinal not in S"}))
        elif not provenances(u, p, x):
            out.append(Violation("C2", {"x": _edoc(x), "reason": "no provenance"}))
        chain = p.f[x]
        sups = [tr.sup(k) if k else -1 for k in chain]
        if any(k <= 0 for k in chain):
            out.append(Violation("C2", {"x": _edoc(x), "reason": "empty chain member"}))
            continue
        if any(a >= b for a, b in zip(sups, sups[1:])):
            out.append(Violation("C2", {"x": _edoc(x), "reason": "chain not sorted by sup"}))
            continue
        try:
            for k in chain:
                if not hull(u, k, x):
                    out.append(
                        Violation("C2", {"x": _edoc(x), "K": tr.elems(k), "reason": "not in hull"})
                    )
            for j, k in itertools.combinations(chain, 2):
                if not u.hull_set(j, k):
                    out.append(
                        Violation(
                            "C2",
                            {"x": _edoc(x), "K": tr.elems(j), "L": tr.elems(k),
                             "reason": "not a chain"},
                        )
                    )
        except Exception as exc:  # NoRepresentation on a malformed member
            if getattr(exc, "code", None) != "NoRepresentation":
                raise
            out.append(Violation("C2", {"x": _edoc(x), "reason": "member has no representation"}))

    # C3
    for x in dom:
        for k in p.f[x]:
            ke = SetE(k)
            if ke not in domset:
                out.append(Violation("C3", {"x": _edoc(x), "K": tr.elems(k), "reason": "not in dom"}))
                continue
            try:
                want = {l for l in p.f[x] if u.hull_set(l, k)}
            except Exception as exc:
                if getattr(exc, "code", None) != "NoRepresentation":
                    raise
                continue
            if set(p.f[ke]) != want:
                out.append(
                    Violation("C3", {"x": _edoc(x), "K": tr.elems(k), "reason": "chain restriction"})
                )

    # C4
    pairs = set(p.g_pairs())
    for (k, x), vals in sorted(p.g.items(), key=_gsort):
        if (k, x) not in pairs:
            out.append(Violation("C4", {"K": tr.elems(k), "x": _edoc(x), "reason": "not in dom(g)"}))
            continue
        lo = tr.sup(k)
        for xi in sorted(vals):
            if x.kind == 0:
                ok = lo <= xi and (x.value is KAPPA or xi < x.value)
            else:
                ok = lo <= xi and tr.contains(x.value, xi)
            if not ok:
                out.append(
                    Violation("C4", {"K": tr.elems(k), "x": _edoc(x), "xi": xi})
                )

    # C5
    for x in dom:
        for l in p.f[x]:
            for k in p.f.get(SetE(l), ()):
                if not p.gval(k, x) <= p.gval(k, SetE(l)):
                    out.append(
                        Violation(
                            "C5", {"K": tr.elems(k), "L": tr.elems(l), "x": _edoc(x)}
                        )
                    )

    # C6
    for a in p.ordinals():
        if a not in s:
            continue
        chain = set(p.f[OrdS(a)])
        for m in ids:
            t = u.cm(m).trace
            if tr.contains(t, a) and tr.below(t, a) not in chain:
                out.append(Violation("C6", {"alpha": a, "M": m}))

    # C7
    have = set(p.ordinals())
    for g in sorted(r_star(u, p.a, s)):
        if g not in have:
            out.append(Violation("C7", {"gamma": g}))
    return out


def is_condition(u: Universe, p: PCondition) -> bool:
    try:
        return not validate_p(u, p)
    except UnknownId:
        return False


def leq_violations(q: PCondition, p: PCondition) -> list[Violation]:
    """Clauses (a)–(d) of ``q ≤ p`` that fail."""
    out = []
    if not p.a <= q.a:
        out.append(Violation("a", {"missing": sorted(p.a - q.a)}))
    for x in p.dom():
        if x not in q.f:
            out.append(Violation("b", {"x": _edoc(x), "reason": "not in dom"}))
        elif not set(p.f[x]) <= set(q.f[x]):
            out.append(Violation("b", {"x": _edoc(x), "reason": "chain"}))
    for (k, x), vals in sorted(p.g.items(), key=_gsort):
        if not vals <= q.gval(k, x):
            out.append(Violation("c", {"K": tr.elems(k), "x": _edoc(x)}))
    for x in p.dom():
        have = set(p.f[x])
        for k in q.f.get(x, ()):
            if SetE(k) in p.f and k not in have:
                out.append(Violation("d", {"K": tr.elems(k), "x": _edoc(x)}))
    return out


def leq_p(u: Universe, q: PCondition, p: PCondition) -> bool:
    """``q ≤ p`` (``q`` is stronger).  The universe is not consulted."""
    return not leq_violations(q, p)


# --------------------------------------------------------------------------
# membership of a condition in a model


def membership_failure(u: Universe, p: PCondition, model: str) -> str | None:
    """Name of the first component of ``p`` not in ``model``, or ``None``."""
    for m in sorted(p.a):
        if not u.model_in(m, model):
            return f"model {m} of A"
    for x in p.dom():
        if not u.elem_in(x, model):
            return f"domain element {_edoc(x)}"
        for k in p.f[x]:
            if not u.set_in(k, model):
                return f"chain member {tr.fmt(k)} of f({_edoc(x)})"
    for (k, x), vals in sorted(p.g.items(), key=_gsort):
        for xi in sorted(vals):
            if not u.ordinal_in(xi, model):
                return f"ordinal {xi} of g({tr.fmt(k)}, {_edoc(x)})"
    return None


def condition_in(u: Universe, p: PCondition, model: str) -> bool:
    return membership_failure(u, p, model) is None


# --------------------------------------------------------------------------
# extensions


def extend_ordinals(u: Universe, p: PCondition, xs: Iterable[int]) -> PCondition:
    """``p + x`` for a finite set of fresh ordinals of S."""
    xs = sorted(set(xs))
    clash = [a for a in xs if OrdS(a) in p.f]
    if clash:
        raise DomainClash(f"ordinals already in the domain: {clash}", ordinals=clash)
    s = s_of(u, p)
    bad = [a for a in xs if a not in s]
    if bad:
        raise PreconditionFailed(f"ordinals not in S: {bad}", hypothesis="x ⊆ S")
    if not xs:
        return p
    f = dict(p.f)
    added: dict[Elem, tuple[int, ...]] = {}
    for a in xs:
        traces = [tr.below(u.cm(m).trace, a) for m in sorted(p.a) if tr.contains(u.cm(m).trace, a)]
        chain = sort_chain(traces)
        f[OrdS(a)] = chain
        for k in chain:
            ke = SetE(k)
            if ke in p.f or ke in added:
                continue
            added[ke] = tuple(l for l in chain if u.hull_set(l, k))
    f.update(added)
    return p.replace(f=f)


def saturate_g(u: Universe, p: PCondition) -> PCondition:
    """Push g values up chains so ``g(K, x) ⊆ g(K, y)`` whenever ``x ∈ f(y)``."""
    g: dict[GKey, frozenset[int]] = {}
    for k, y in p.g_pairs():
        vals = set(p.gval(k, y))
        for x in p.f[y]:
            xe = SetE(x)
            if k in p.f.get(xe, ()):
                vals |= p.gval(k, xe)
        if vals:
            g[(k, y)] = frozenset(vals)
    return p.replace(g=g)


def g_coherent(p: PCondition) -> bool:
    """The strengthened coherence: ``K ∈ f(x)``, ``x ∈ f(y)`` give ``g(K,x) ⊆ g(K,y)``."""
    for y in p.dom():
        for x in p.f[y]:
            xe = SetE(x)
            for k in p.f.get(xe, ()):
                if not p.gval(k, xe) <= p.gval(k, y):
                    return False
    return True


def adjoin_model(u: Universe, p: PCondition, n: str) -> PCondition:
    """Add a countable model that contains ``p``."""
    u.cm(n)
    why = membership_failure(u, p, n)
    if why is not None:
        raise NotInModel(f"p is not in {n}: {why}", model=n, part=why)
    if n in p.a:
        return p
    s = s_of(u, p)
    nt = u.cm(n).trace
    f = dict(p.f)
    g = dict(p.g)
    for a in p.ordinals():
        if a not in s:
            continue
        na = tr.below(nt, a)
        old = p.f[OrdS(a)]
        f[OrdS(a)] = sort_chain(old + (na,))
        f[SetE(na)] = old
        for k in old:
            vals = p.gval(k, OrdS(a))
            if vals:
                g[(k, SetE(na))] = vals
    return PCondition(f, g, p.a | {n}, p.s_label)


def _close(u: Universe, q: PCondition, bigger: frozenset[str]) -> PCondition:
    s = s_of(u, q)
    x0 = r_star(u, bigger, s)
    r = extend_ordinals(u, q, x0 - set(q.ordinals()))
    return r.replace(a=bigger)


def close_under_n(u: Universe, q: PCondition, n: str) -> PCondition:
    if n not in q.a:
        raise PreconditionFailed(f"{n} is not in A", hypothesis="N ∈ A_q")
    return _close(u, q, closure_under_countable(u, q.a, n))


def close_under_q(u: Universe, q: PCondition, big: str) -> PCondition:
    u.um(big)
    return _close(u, q, closure_under_uncountable(u, q.a, big))


def in_dn(u: Universe, r: PCondition, n: str) -> bool:
    if n not in r.a:
        return False
    for m in r.a:
        if u.relation(m, n) is ModelRel.LESS:
            try:
                if u.intersect(m, n) not in r.a:
                    return False
            except NotClosed:
                return False
    return g_coherent(r)


def in_dq(u: Universe, q: PCondition, big: str) -> bool:
    for m in q.a:
        try:
            if u.intersect(m, big) not in q.a:
                return False
        except NotClosed:
            return False
    return True


def into_dn(u: Universe, q: PCondition, n: str) -> PCondition:
    """A condition below ``q`` in the class D_N (``N`` must already be in ``A``)."""
    return saturate_g(u, close_under_n(u, q, n))


# --------------------------------------------------------------------------
# restrictions


def restrict_to_uncountable(u: Universe, q: PCondition, big: str) -> PCondition:
    u.um(big)
    if not u.is_simple(big):
        raise PreconditionFailed(f"{big} is not simple", hypothesis="Q simple")
    if not in_dq(u, q, big):
        raise NotInDClass(f"condition is not in D_{big}", model=big)
    f = {x: q.f[x] for x in q.dom() if u.elem_in(x, big)}
    g = {
        (k, x): v for (k, x), v in q.g.items()
        if x in f and u.set_in(k, big)
    }
    a = frozenset(m for m in q.a if u.model_in(m, big))
    return PCondition(f, g, a, q.s_label)


def restrict_to_countable(u: Universe, r: PCondition, n: str) -> PCondition:
    u.cm(n)
    if not u.is_simple(n):
        raise PreconditionFailed(f"{n} is not simple", hypothesis="N simple")
    if not in_dn(u, r, n):
        raise NotInDClass(f"condition is not in D_{n}", model=n)
    f = {
        x: tuple(k for k in r.f[x] if u.set_in(k, n))
        for x in r.dom()
        if u.elem_in(x, n)
    }
    g = {
        (k, x): v for (k, x), v in r.g.items()
        if x in f and u.set_in(k, n)
    }
    a = frozenset(m for m in r.a if u.model_in(m, n))
    return PCondition(f, g, a, r.s_label)


def restrict(u: Universe, p: PCondition, model: str) -> PCondition:
    if u.is_uncountable(model):
        return restrict_to_uncountable(u, p, model)
    return restrict_to_countable(u, p, model)


# --------------------------------------------------------------------------
# amalgamation


def _require(cond: bool, hypothesis: str) -> None:
    if not cond:
        raise PreconditionFailed(f"hypothesis fails: {hypothesis}", hypothesis=hypothesis)


def _largest(chain: Iterable[int]) -> int:
    return max(chain, key=tr.sup)


def _amalg_g(f: Mapping[Elem, tuple[int, ...]], *sources: PCondition) -> dict[GKey, frozenset[int]]:
    """``g(K,x) = ⋃ {g_w(K,y) ∪ g_q(K,y) : y = x or x ∈ f(y)}``."""
    parents: dict[int, list[Elem]] = {}
    for y, chain in f.items():
        for k in chain:
            parents.setdefault(k, []).append(y)
    g: dict[GKey, frozenset[int]] = {}
    for x in sorted(f, key=Elem.sort_key):
        ups = [x] + (parents.get(x.value, []) if x.kind == 1 else [])
        for k in f[x]:
            vals: set[int] = set()
            for y in ups:
                for src in sources:
                    vals |= src.gval(k, y)
            if vals:
                g[(k, x)] = frozenset(vals)
    return g


def _check_inputs(u: Universe, **conds: PCondition) -> None:
    for name, c in conds.items():
        bad = validate_p(u, c)
        _require(not bad, f"{name} is a condition" + (f" (fails {bad[0].clause})" if bad else ""))


def amalg_uncountable(u: Universe, w: PCondition, q: PCondition, big: str, *, check: bool = True) -> PCondition:
    """``w ⊕_Q q`` for a simple uncountable model ``Q``."""
    u.um(big)
    if check:
        _check_inputs(u, w=w, q=q)
        _require(u.is_simple(big), "Q simple")
        _require(in_dq(u, q, big), "q ∈ D_Q")
        _require(condition_in(u, w, big), "w ∈ Q")
        _require(leq_p(u, w, restrict_to_uncountable(u, q, big)), "w ≤ q↾Q")
    f: dict[Elem, tuple[int, ...]] = {}
    for x in w.dom():
        f[x] = w.f[x]
    for x in q.dom():
        if u.elem_in(x, big):
            if x not in w.f:
                raise AmbiguousCase(f"{x} lies in Q but not in dom(f_w)", x=_edoc(x))
            continue
        inside = [k for k in q.f[x] if u.set_in(k, big)]
        if not inside:
            f[x] = q.f[x]
        else:
            m = _largest(inside)
            f[x] = sort_chain(q.f[x] + w.f.get(SetE(m), ()))
    g = _amalg_g(f, w, q)
    return PCondition(f, g, w.a | q.a, q.s_label)


@dataclass(frozen=True)
class AmalgTrace:
    """Which case of the countable amalgam defined each domain element."""

    cases: dict
    case4_alpha: dict
    extra: frozenset


def amalg_countable(u: Universe, w: PCondition, r: PCondition, n: str, *, check: bool = True) -> PCondition:
    return amalg_countable_traced(u, w, r, n, check=check)[0]


def amalg_countable_traced(
    u: Universe, w: PCondition, r: PCondition, n: str, *, check: bool = True
) -> tuple[PCondition, AmalgTrace]:
    """``w ⊕_N r`` for a simple countable model ``N``, with the case map."""
    u.cm(n)
    if check:
        _check_inputs(u, w=w, r=r)
        _require(u.is_simple(n), "N simple")
        _require(in_dn(u, r, n), "r ∈ D_N")
        _require(condition_in(u, w, n), "w ∈ N")
        _require(leq_p(u, w, restrict_to_countable(u, r, n)), "w ≤ r↾N")
    s = s_of(u, r)
    w_ords = {a for a in w.ordinals() if a in s}
    r_ords = {a for a in r.ordinals() if a in s}
    upper = [m for m in sorted(r.a) if u.relation(n, m) in (ModelRel.LESS, ModelRel.EQUIV)]

    extra: dict[Elem, list[tuple[str, int]]] = {}
    for m in upper:
        t = u.cm(m).trace
        for a in sorted(w_ords - r_ords):
            if tr.contains(t, a):
                extra.setdefault(SetE(tr.below(t, a)), []).append((m, a))
    extra_alpha: dict[Elem, int] = {}
    for x, srcs in extra.items():
        alphas = {a for _, a in srcs}
        if len(alphas) != 1:
            raise AmbiguousCase(f"{x} arises from several ordinals {sorted(alphas)}", x=_edoc(x))
        extra_alpha[x] = alphas.pop()

    r_n_ords = [a for a in sorted(r_ords) if u.ordinal_in(a, n)]
    nt = u.cm(n).trace
    dom = set(w.f) | set(r.f) | set(extra)
    f: dict[Elem, tuple[int, ...]] = {}
    cases: dict[Elem, int] = {}
    case4: dict[Elem, int] = {}

    for x in sorted(dom, key=Elem.sort_key):
        matched = []
        in_w, in_r = x in w.f, x in r.f
        if in_w and x.kind == 1:
            matched.append(1)
        if in_w and x.kind == 0 and x.value in s and in_r:
            matched.append(2)
        if in_w and x.kind == 0 and x.value in s and not in_r:
            matched.append(3)
        alphas: list[int] = []
        if in_r and not u.elem_in(x, n):
            around = set(r.f[x]) | ({x.value} if x.kind == 1 else set())
            alphas = [a for a in r_n_ords if tr.below(nt, a) in around]
            if len(alphas) > 1:
                raise AmbiguousCase(f"case 4 ordinal not unique for {x}", x=_edoc(x), alphas=alphas)
            if alphas:
                matched.append(4)
            elif not any(u.set_in(k, n) for k in r.f[x]):
                matched.append(5)
            else:
                matched.append(6)
        if x in extra:
            matched.append(7)
        if len(matched) != 1:
            raise AmbiguousCase(f"{x} matches cases {matched}", x=_edoc(x), cases=matched)
        cases[x] = matched[0]
        if alphas:
            case4[x] = alphas[0]

    def case3_chain(a: int) -> tuple[int, ...]:
        more = [tr.below(u.cm(m).trace, a) for m in upper if tr.contains(u.cm(m).trace, a)]
        return sort_chain(w.f[OrdS(a)] + tuple(more))

    for x, c in cases.items():
        if c == 1:
            f[x] = w.f[x]
        elif c == 2:
            f[x] = sort_chain(w.f[x] + r.f[x])
        elif c == 3:
            f[x] = case3_chain(x.value)
        elif c == 4:
            a = case4[x]
            if OrdS(a) not in w.f:
                raise AmbiguousCase(f"case 4 ordinal {a} missing from dom(f_w)", x=_edoc(x))
            f[x] = sort_chain(w.f[OrdS(a)] + r.f[x])
        elif c == 5:
            f[x] = r.f[x]
        elif c == 6:
            m = _largest(k for k in r.f[x] if u.set_in(k, n))
            f[x] = sort_chain(r.f[x] + w.f.get(SetE(m), ()))
        else:
            a = extra_alpha[x]
            f[x] = tuple(l for l in case3_chain(a) if u.hull_set(l, x.value))
    g = _amalg_g(f, w, r)
    out = PCondition(f, g, w.a | r.a, r.s_label)
    return out, AmalgTrace(cases, case4, frozenset(extra))


def amalgamate(u: Universe, w: PCondition, q: PCondition, model: str, *, check: bool = True) -> PCondition:
    if u.is_uncountable(model):
        return amalg_uncountable(u, w, q, model, check=check)
    return amalg_countable(u, w, q, model, check=check)


def into_dn_dq(u: Universe, p: PCondition, n: str, big: str, *, rounds: int = 8) -> PCondition:
    """A condition below ``p`` lying in both D_N and D_Q (``N`` must be in ``A``).

    Closing under one model can add intersections that the other has not
    seen yet, so the two closures alternate until neither changes anything.
    """
    s = p
    for _ in range(rounds):
        s = close_under_q(u, close_under_n(u, s, n), big)
        if in_dq(u, s, big) and in_dn(u, saturate_g(u, s), n):
            return saturate_g(u, s)
    raise NotClosed(f"closures under {n} and {big} did not stabilise", model=n, other=big)
