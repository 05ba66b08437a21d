"""Finite universes of model traces and the axiom ledger they must satisfy.

A universe is a finite stand-in for the background model theory: ordinals
are naturals below ``size``, the first uncountable cardinal is the cut
``omega1_cut``, comparison points live in ``lambda_set``, countable models are
recorded through their traces (finite ordinal sets stored as bitmasks), and
uncountable models through the ordinal at which they are cut off.

Membership is explicit data: ``set_family`` lists the trace sets that belong
to a countable model and ``model_family`` the models that belong to it.
Everything else (comparison points, hulls, intersections) is derived.
"""

from __future__ import annotations

import bisect
import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from . import traces as tr
from .errors import (
    GenerationExhausted,
    NoComparisonPoint,
    NoRepresentation,
    NotClosed,
    UnknownId,
)
from .traces import KAPPA, Ordinal

AXIOM_IDS = tuple(f"A{n}" for n in range(1, 15))


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class UniverseConfig:
    size: int
    omega1_cut: int
    lambda_set: tuple[int, ...]
    stationary: tuple[frozenset[int], ...]
    lambda_star: int

    @property
    def s_union(self) -> frozenset[int]:
        return frozenset().union(*self.stationary) if self.stationary else frozenset()

    def s_set(self, label: int | None) -> frozenset[int]:
        """The stationary set a single-forcing condition is taken over.

        ``None`` selects the union of all the S_i; an integer selects S_i.
        """
        if label is None:
            return self.s_union
        return self.stationary[label]


@dataclass(frozen=True)
class CountableModel:
    id: str
    trace: int
    index_set: frozenset[int]
    set_family: frozenset[int] = frozenset()
    model_family: frozenset[str] = frozenset()
    simple: bool = False

    @property
    def key(self) -> tuple[int, frozenset[int]]:
        return (self.trace, self.index_set)


@dataclass(frozen=True)
class UncountableModel:
    id: str
    cut: int
    index_set: frozenset[int]
    model_family: frozenset[str] = frozenset()
    simple: bool = False


class Elem(NamedTuple):
    """A domain element: an ordinal (kind 0) or a trace set (kind 1)."""

    kind: int
    value: Union[int, object]

    @property
    def is_ord(self) -> bool:
        return self.kind == 0

    def sort_key(self):
        if self.kind == 0:
            return (0, (self.value,))
        return (1, tuple(tr.elems(self.value)))

    def __repr__(self) -> str:
        if self.kind == 0:
            return f"Ord({self.value!r})"
        return f"Set({tr.fmt(self.value)})"


def OrdS(alpha) -> Elem:
    return Elem(0, alpha)


def SetE(mask: int) -> Elem:
    return Elem(1, mask)


class ModelRel(str, enum.Enum):
    LESS = "less"
    EQUIV = "equiv"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def flip(self) -> "ModelRel":
        if self is ModelRel.LESS:
            return ModelRel.GREATER
        if self is ModelRel.GREATER:
            return ModelRel.LESS
        return self


class Universe:
    """Immutable after construction; derived relations are memoised."""

    def __init__(
        self,
        config: UniverseConfig,
        countables: Iterable[CountableModel],
        uncountables: Iterable[UncountableModel] = (),
    ):
        self.config = config
        self.countables: dict[str, CountableModel] = {
            m.id: m for m in sorted(countables, key=lambda m: m.id)
        }
        self.uncountables: dict[str, UncountableModel] = {
            p.id: p for p in sorted(uncountables, key=lambda p: p.id)
        }
        self._lambda = tuple(sorted(config.lambda_set))
        self._beta: dict[tuple[str, str], int] = {}
        self._rel: dict[tuple[str, str], ModelRel] = {}
        self._hull: dict[tuple[int, int], bool] = {}
        self._by_key: dict[tuple[int, frozenset[int]], list[str]] = {}
        for m in self.countables.values():
            self._by_key.setdefault(m.key, []).append(m.id)
        self._reps: dict[int, list[tuple[str, Ordinal]]] | None = None

    # -- lookup ---------------------------------------------------------
    def cm(self, mid: str) -> CountableModel:
        try:
            return self.countables[mid]
        except KeyError:
            raise UnknownId(f"unknown countable model {mid!r}", id=mid) from None

    def um(self, pid: str) -> UncountableModel:
        try:
            return self.uncountables[pid]
        except KeyError:
            raise UnknownId(f"unknown uncountable model {pid!r}", id=pid) from None

    def is_countable(self, mid: str) -> bool:
        return mid in self.countables

    def is_uncountable(self, mid: str) -> bool:
        return mid in self.uncountables

    def find(self, trace: int, index_set: frozenset[int]) -> str | None:
        ids = self._by_key.get((trace, frozenset(index_set)))
        return ids[0] if ids else None

    def delta(self, mid: str) -> int:
        """The countable ordinal ``M ∩ ω₁`` of a model."""
        return tr.delta(self.cm(mid).trace, self.config.omega1_cut)

    def delta_of(self, mask: int) -> int:
        return tr.delta(mask, self.config.omega1_cut)

    @property
    def lambda_sorted(self) -> tuple[int, ...]:
        return self._lambda

    # -- comparison points ----------------------------------------------
    def beta(self, m: str, n: str) -> int:
        key = (m, n) if m <= n else (n, m)
        b = self._beta.get(key)
        if b is None:
            common = self.cm(m).trace & self.cm(n).trace
            top = tr.sup(common) if common else -1
            i = bisect.bisect_right(self._lambda, top)
            if i == len(self._lambda):
                raise NoComparisonPoint(
                    f"no comparison point above {top} for ({m}, {n})", pair=(m, n)
                )
            b = self._lambda[i]
            self._beta[key] = b
        return b

    def mem_set(self, k: int, n: str) -> bool:
        return k in self.cm(n).set_family

    def relation(self, m: str, n: str) -> ModelRel:
        got = self._rel.get((m, n))
        if got is not None:
            return got
        if m == n:
            rel = ModelRel.EQUIV
        else:
            b = self.beta(m, n)
            mb = tr.below(self.cm(m).trace, b)
            nb = tr.below(self.cm(n).trace, b)
            if mb == nb:
                rel = ModelRel.EQUIV
            elif self.mem_set(mb, n):
                rel = ModelRel.LESS
            elif self.mem_set(nb, m):
                rel = ModelRel.GREATER
            else:
                rel = ModelRel.INCOMPARABLE
        self._rel[(m, n)] = rel
        self._rel[(n, m)] = rel.flip()
        return rel

    # -- hulls ------------------------------------------------------------
    def representations(self, t: int) -> list[tuple[str, Ordinal]]:
        """All (model, cut) pairs with ``trace(model) ∩ cut == t``."""
        if self._reps is None:
            reps: dict[int, list[tuple[str, Ordinal]]] = {}
            cuts: list[Ordinal] = list(self._lambda) + [KAPPA]
            for m in self.countables.values():
                for a in cuts:
                    reps.setdefault(tr.below(m.trace, a), []).append((m.id, a))
            self._reps = reps
        return self._reps.get(t, [])

    def hull_set(self, k: int, t: int) -> bool:
        """``k ∈ Sk(t)`` for a trace set ``t``: some representation witnesses it."""
        key = (k, t)
        got = self._hull.get(key)
        if got is None:
            reps = self.representations(t)
            if not reps:
                raise NoRepresentation(f"{tr.fmt(t)} is not M ∩ α for any model", set=t)
            got = any(
                k in self.countables[mid].set_family and tr.sup(k) < a
                for mid, a in reps
            )
            self._hull[key] = got
        return got

    # -- membership of arbitrary objects in models ------------------------
    def ordinal_in(self, alpha: int, mid: str) -> bool:
        if mid in self.countables:
            return tr.contains(self.countables[mid].trace, alpha)
        return alpha < self.um(mid).cut

    def set_in(self, k: int, mid: str) -> bool:
        if mid in self.countables:
            return k in self.countables[mid].set_family
        return tr.sup(k) < self.um(mid).cut

    def model_in(self, inner: str, mid: str) -> bool:
        if mid in self.countables:
            return inner in self.countables[mid].model_family
        return inner in self.um(mid).model_family

    def index_in(self, i: int, mid: str) -> bool:
        if mid in self.countables:
            return i in self.countables[mid].index_set
        return i in self.um(mid).index_set

    def elem_in(self, x: Elem, mid: str) -> bool:
        if x.kind == 0:
            return self.ordinal_in(x.value, mid)
        return self.set_in(x.value, mid)

    def is_simple(self, mid: str) -> bool:
        if mid in self.countables:
            return self.countables[mid].simple
        return self.um(mid).simple

    def intersect(self, m: str, other: str) -> str:
        """Id of ``m ∩ other`` for a countable ``m`` and any model ``other``."""
        if other in self.countables:
            return intersect_countable(self, m, other)
        return intersect_with_uncountable(self, m, other)

    def __repr__(self) -> str:
        return (
            f"Universe(U={self.config.size}, W={self.config.omega1_cut}, "
            f"countables={list(self.countables)}, uncountables={list(self.uncountables)})"
        )


# --------------------------------------------------------------------------
# public operations


def _mid(m) -> str:
    return m if isinstance(m, str) else m.id


def beta(u: Universe, m, n) -> int:
    return u.beta(_mid(m), _mid(n))


def mem_set(u: Universe, k: int, n) -> bool:
    return u.mem_set(k, _mid(n))


def hull(u: Universe, k: int, z: Elem) -> bool:
    """``k ∈ Sk(z)``: at an ordinal cut this is ``k ⊆ [0, α)``."""
    if z.kind == 0:
        return z.value is KAPPA or tr.sup(k) < z.value
    return u.hull_set(k, z.value)


def intersect_countable(u: Universe, m, n) -> str:
    a, b = u.cm(_mid(m)), u.cm(_mid(n))
    found = u.find(a.trace & b.trace, a.index_set & b.index_set)
    if found is None:
        raise NotClosed(f"no model for {a.id} ∩ {b.id}", pair=(a.id, b.id))
    return found


def intersect_with_uncountable(u: Universe, m, p) -> str:
    a, q = u.cm(_mid(m)), u.um(_mid(p))
    found = u.find(tr.below(a.trace, q.cut), a.index_set & q.index_set)
    if found is None:
        raise NotClosed(f"no model for {a.id} ∩ {q.id}", pair=(a.id, q.id))
    return found


# --------------------------------------------------------------------------
# axiom ledger


@dataclass
class AxiomEntry:
    axiom: str
    passed: bool
    witness: dict | None = None


@dataclass
class AxiomReport:
    entries: list[AxiomEntry]

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def failed(self) -> list[str]:
        return [e.axiom for e in self.entries if not e.passed]

    def violated(self) -> list[str]:
        """Failed axioms that were actually evaluated (not skipped after A1/A2)."""
        return [
            e.axiom for e in self.entries
            if not e.passed and not (e.witness or {}).get("skipped")
        ]

    def to_doc(self) -> dict:
        return {
            "valid": self.ok,
            "entries": [
                {"axiom": e.axiom, "passed": e.passed, "witness": e.witness}
                for e in self.entries
            ],
        }


class _Fail(Exception):
    def __init__(self, witness: dict):
        self.witness = witness


def _first(check) -> dict | None:
    try:
        check()
    except _Fail as f:
        return f.witness
    return None


def validate_universe(u: Universe) -> AxiomReport:
    """Evaluate A1–A14.  A1 failures short-circuit the others.

    Later axioms assume the structural shape checked by A1, so when A1 fails
    the remaining entries are reported as not evaluated (passed=False with a
    ``skipped`` witness) rather than crashing on malformed data.
    """
    entries: list[AxiomEntry] = []
    w = _first(lambda: _a1(u))
    entries.append(AxiomEntry("A1", w is None, w))
    if w is not None:
        for ax in AXIOM_IDS[1:]:
            entries.append(AxiomEntry(ax, False, {"skipped": "A1 failed"}))
        return AxiomReport(entries)
    a2 = _first(lambda: _a2(u))
    entries.append(AxiomEntry("A2", a2 is None, a2))
    checks = [
        ("A3", _a3), ("A4", _a4), ("A5", _a5), ("A6", _a6), ("A7", _a7),
        ("A8", _a8), ("A9", _a9), ("A10", _a10), ("A11", _a11), ("A12", _a12),
        ("A13", _a13), ("A14", _a14),
    ]
    for ax, fn in checks:
        if a2 is not None and ax not in ("A7", "A8", "A12", "A14"):
            # comparison points are missing, so these quantifiers cannot be
            # evaluated; report them against A2
            entries.append(AxiomEntry(ax, False, {"skipped": "A2 failed"}))
            continue
        wit = _first(lambda: fn(u))
        entries.append(AxiomEntry(ax, wit is None, wit))
    return AxiomReport(entries)


def _a1(u: Universe) -> None:
    c = u.config
    if c.size < 2:
        raise _Fail({"config": "size < 2"})
    if not 1 <= c.omega1_cut < c.size:
        raise _Fail({"config": "omega1Cut out of range"})
    if not c.lambda_set:
        raise _Fail({"config": "lambdaSet empty"})
    for a in c.lambda_set:
        if not c.omega1_cut <= a < c.size:
            raise _Fail({"config": "lambdaSet outside [W, U)", "ordinal": a})
    if c.lambda_star < 1 or len(c.stationary) != c.lambda_star:
        raise _Fail({"config": "stationaryFamily length differs from lambdaStar"})
    lam = set(c.lambda_set)
    for i, s in enumerate(c.stationary):
        if not s <= lam:
            raise _Fail({"config": "S_i not a subset of lambdaSet", "index": i})
    if set(u.countables) & set(u.uncountables):
        raise _Fail({"ids": "shared between countable and uncountable models"})
    limit = 1 << c.size
    for m in u.countables.values():
        if m.trace <= 0 or m.trace >= limit:
            raise _Fail({"model": m.id, "field": "trace"})
        d = tr.delta(m.trace, c.omega1_cut)
        if d < 1 or d > c.omega1_cut or tr.below(m.trace, c.omega1_cut) != (1 << d) - 1:
            raise _Fail({"model": m.id, "field": "trace", "reason": "below-cut shape"})
        if any(not 0 <= i < c.lambda_star for i in m.index_set):
            raise _Fail({"model": m.id, "field": "indexSet"})
        for k in sorted(m.set_family):
            if k <= 0 or k >= limit:
                raise _Fail({"model": m.id, "field": "setFamily", "set": tr.elems(k)})
        for x in sorted(m.model_family):
            if x not in u.countables and x not in u.uncountables:
                raise _Fail({"model": m.id, "field": "modelFamily", "unknown": x})
    for key, ids in sorted(u._by_key.items(), key=lambda kv: kv[1]):
        if len(ids) > 1:
            raise _Fail({"duplicate": sorted(ids)})
    for p in u.uncountables.values():
        if not c.omega1_cut <= p.cut < c.size:
            raise _Fail({"model": p.id, "field": "cut"})
        if any(not 0 <= i < c.lambda_star for i in p.index_set):
            raise _Fail({"model": p.id, "field": "indexSet"})
        for x in sorted(p.model_family):
            if x not in u.countables:
                raise _Fail({"model": p.id, "field": "modelFamily", "unknown": x})
            if tr.sup(u.countables[x].trace) >= p.cut:
                raise _Fail({"model": p.id, "field": "modelFamily", "member": x})


def _pairs(u: Universe):
    ids = list(u.countables)
    return itertools.product(ids, ids)


def _a2(u: Universe) -> None:
    for m, n in _pairs(u):
        try:
            b = u.beta(m, n)
        except NoComparisonPoint:
            raise _Fail({"M": m, "N": n, "reason": "no comparison point"})
        if b != u.beta(n, m) or b not in u.config.lambda_set:
            raise _Fail({"M": m, "N": n})


def _a3(u: Universe) -> None:
    for m, n in _pairs(u):
        common = u.cm(m).trace & u.cm(n).trace
        if not tr.subset(common, (1 << u.beta(m, n)) - 1):
            raise _Fail({"M": m, "N": n})


def _a4(u: Universe) -> None:
    for m, n in _pairs(u):
        b = u.beta(m, n)
        for lam in u.lambda_sorted:
            if lam >= b:
                break
            band = ((1 << b) - 1) & ~((1 << lam) - 1)
            for x in (m, n):
                if not u.cm(x).trace & band:
                    raise _Fail({"M": m, "N": n, "lambda": lam, "missing": x})


def _a5(u: Universe) -> None:
    for k, m in _pairs(u):
        if k == m or not tr.subset(u.cm(k).trace, u.cm(m).trace):
            continue
        for n in u.countables:
            if u.beta(k, n) > u.beta(m, n):
                raise _Fail({"K": k, "M": m, "N": n})


def _a6(u: Universe) -> None:
    for p in u.uncountables.values():
        for m in sorted(p.model_family):
            for k in u.countables:
                if u.beta(k, m) >= p.cut:
                    raise _Fail({"K": k, "M": m, "P": p.id})


def _a7(u: Universe) -> None:
    for n in u.countables.values():
        fam = n.set_family
        for k in sorted(fam):
            if not tr.subset(k, n.trace):
                raise _Fail({"N": n.id, "set": tr.elems(k), "reason": "not a subset"})
            if u.delta_of(k) >= u.delta(n.id):
                raise _Fail({"N": n.id, "set": tr.elems(k), "reason": "delta"})
            for seg in tr.initial_segments(k):
                if seg not in fam:
                    raise _Fail(
                        {"N": n.id, "set": tr.elems(k), "reason": "initial segment",
                         "missing": tr.elems(seg)}
                    )
            if not sup_closed(u.config, k, n.trace):
                raise _Fail({"N": n.id, "set": tr.elems(k), "reason": "sup not in N"})


def sup_closed(config: UniverseConfig, k: int, trace: int) -> bool:
    """The finite stand-in for ``sup(K) ∈ N``.

    ``N`` must have an ordinal above ``max K`` before the next comparison
    point, so that whenever ``K ⊆ N ∩ α`` for a comparison point ``α`` the
    set ``N ∩ α`` reaches strictly past ``K``.
    """
    return sup_closed_at(sorted(config.lambda_set), k, trace)


def sup_closed_at(lam: Sequence[int], k: int, trace: int) -> bool:
    top = tr.sup(k)
    nxt = tr.min_at_least(trace, top + 1)
    if nxt is None:
        return False
    i = bisect.bisect_right(lam, top)
    return i == len(lam) or nxt < lam[i]


def _a8(u: Universe) -> None:
    for n in u.countables.values():
        for x in sorted(n.model_family):
            if x in u.uncountables:
                if not tr.contains(n.trace, u.uncountables[x].cut):
                    raise _Fail({"N": n.id, "member": x, "reason": "cut not in trace"})
                continue
            m = u.countables[x]
            if not tr.subset(m.trace, n.trace):
                raise _Fail({"N": n.id, "member": x, "reason": "trace"})
            if u.delta(x) >= u.delta(n.id):
                raise _Fail({"N": n.id, "member": x, "reason": "delta"})
            if not m.index_set <= n.index_set:
                raise _Fail({"N": n.id, "member": x, "reason": "indexSet"})
            if not m.set_family <= n.set_family:
                raise _Fail({"N": n.id, "member": x, "reason": "setFamily transitivity"})
            if not m.model_family <= n.model_family:
                raise _Fail({"N": n.id, "member": x, "reason": "modelFamily transitivity"})
    for p in u.uncountables.values():
        for x in sorted(p.model_family):
            m = u.countables[x]
            if not m.index_set <= p.index_set:
                raise _Fail({"P": p.id, "member": x, "reason": "indexSet"})
            inner = {y for y in m.model_family if y in u.countables}
            if not inner <= p.model_family:
                raise _Fail({"P": p.id, "member": x, "reason": "modelFamily transitivity"})


def _a9(u: Universe) -> None:
    ids = list(u.countables)
    for m, n in itertools.combinations(ids, 2):
        if u.relation(m, n) is ModelRel.INCOMPARABLE:
            continue
        a, b = u.cm(m), u.cm(n)
        got = u.find(a.trace & b.trace, a.index_set & b.index_set)
        if got is None:
            raise _Fail({"M": m, "N": n, "reason": "missing intersection"})
        c = u.cm(got)
        if c.set_family != a.set_family & b.set_family:
            raise _Fail({"M": m, "N": n, "reason": "setFamily of intersection"})
        if c.model_family != a.model_family & b.model_family:
            raise _Fail({"M": m, "N": n, "reason": "modelFamily of intersection"})
    for m in ids:
        a = u.cm(m)
        for p in u.uncountables.values():
            got = u.find(tr.below(a.trace, p.cut), a.index_set & p.index_set)
            if got is None:
                raise _Fail({"M": m, "P": p.id, "reason": "missing intersection"})
            c = u.cm(got)
            want = frozenset(k for k in a.set_family if tr.sup(k) < p.cut)
            if c.set_family != want:
                raise _Fail({"M": m, "P": p.id, "reason": "setFamily of intersection"})
            if c.model_family != a.model_family & p.model_family:
                raise _Fail({"M": m, "P": p.id, "reason": "modelFamily of intersection"})
    for n in u.countables.values():
        members = sorted(n.model_family)
        for x, y in itertools.combinations(members, 2):
            if x in u.countables and y in u.countables:
                if u.relation(x, y) is ModelRel.INCOMPARABLE:
                    continue
                got = u.find(
                    u.cm(x).trace & u.cm(y).trace,
                    u.cm(x).index_set & u.cm(y).index_set,
                )
            else:
                if x in u.uncountables and y in u.uncountables:
                    continue
                cx, py = (x, y) if x in u.countables else (y, x)
                q = u.um(py)
                got = u.find(
                    tr.below(u.cm(cx).trace, q.cut), u.cm(cx).index_set & q.index_set
                )
            if got is None or got not in n.model_family:
                raise _Fail({"N": n.id, "members": [x, y], "reason": "intersection not a member"})
    ps = list(u.uncountables.values())
    for p, q in itertools.combinations(ps, 2):
        cut = min(p.cut, q.cut)
        idx = p.index_set & q.index_set
        if not any(r.cut == cut and r.index_set == idx for r in ps):
            raise _Fail({"P": p.id, "Q": q.id, "reason": "missing intersection"})


def _a10(u: Universe) -> None:
    for n in u.countables.values():
        if not n.simple:
            continue
        for m in u.countables:
            if u.relation(m, n.id) is ModelRel.LESS:
                a, b = u.cm(m), n
                got = u.find(a.trace & b.trace, a.index_set & b.index_set)
                if got is None or got not in n.model_family:
                    raise _Fail({"M": m, "N": n.id})
    for p in u.uncountables.values():
        if not p.simple:
            continue
        for m in u.countables.values():
            got = u.find(tr.below(m.trace, p.cut), m.index_set & p.index_set)
            if got is None or got not in p.model_family:
                raise _Fail({"M": m.id, "P": p.id})


def _a11(u: Universe) -> None:
    for m, n in _pairs(u):
        rel = u.relation(m, n)
        if rel is ModelRel.INCOMPARABLE:
            continue
        dm, dn = u.delta(m), u.delta(n)
        expect = (
            ModelRel.LESS if dm < dn else ModelRel.EQUIV if dm == dn else ModelRel.GREATER
        )
        if rel is not expect:
            raise _Fail({"M": m, "N": n, "relation": rel.value})
    for n in u.countables.values():
        for x in sorted(n.model_family):
            if x in u.countables and u.relation(x, n.id) is not ModelRel.LESS:
                raise _Fail({"M": x, "N": n.id, "reason": "member not below"})


def _a12(u: Universe) -> None:
    for m in u.countables.values():
        for a in list(u.lambda_sorted) + [KAPPA]:
            if not hull(u, tr.below(m.trace, a), OrdS(a)):
                raise _Fail({"M": m.id, "alpha": _ord_doc(a)})


def _a13(u: Universe) -> None:
    for m, n in _pairs(u):
        for a in u.lambda_sorted:
            k = tr.below(u.cm(m).trace, a)
            if u.mem_set(k, n) and not u.hull_set(k, tr.below(u.cm(n).trace, a)):
                raise _Fail({"M": m, "N": n, "alpha": a})
    for n in u.countables.values():
        cuts = [a for a in u.lambda_sorted if tr.contains(n.trace, a)] + [KAPPA]
        for x in sorted(n.model_family):
            if x not in u.countables:
                continue
            for a in cuts:
                k = tr.below(u.cm(x).trace, a)
                if k not in n.set_family:
                    raise _Fail(
                        {"M": x, "N": n.id, "alpha": _ord_doc(a), "reason": "elementarity"}
                    )
    u.representations(0)
    for t, reps in sorted(u._reps.items()):
        if len(reps) < 2:
            continue
        views = {
            frozenset(k for k in u.countables[mid].set_family if tr.sup(k) < a)
            for mid, a in reps
        }
        if len(views) > 1:
            raise _Fail(
                {"set": tr.elems(t), "reason": "representation dependence",
                 "representations": [[mid, _ord_doc(a)] for mid, a in reps]}
            )


def _a14(u: Universe) -> None:
    st = u.config.stationary
    for i, j in itertools.combinations(range(len(st)), 2):
        if st[i] & st[j]:
            raise _Fail({"i": i, "j": j, "common": sorted(st[i] & st[j])})
    for m, n in _pairs(u):
        try:
            rel = u.relation(m, n)
        except NoComparisonPoint:
            continue
        if rel not in (ModelRel.LESS, ModelRel.EQUIV):
            continue
        try:
            b = u.beta(m, n)
        except NoComparisonPoint:
            continue
        g = tr.min_at_least(u.cm(m).trace, b)
        if g is None:
            continue
        common = u.cm(m).index_set & u.cm(n).index_set
        hits = [i for i in sorted(common) if g in st[i]]
        if len(hits) > 1:
            raise _Fail({"M": m, "N": n, "gamma": g, "indices": hits})


def _ord_doc(a):
    return "kappa" if a is KAPPA else a


# --------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class GenParams:
    """Bounds for :func:`generate_universe`.

    ``omega1_cut`` and ``lambda_count`` are inclusive ranges; ``base_models``
    is the number of models drawn before intersection closure adds the rest.
    """

    omega1_cut: tuple[int, int] = (3, 5)
    lambda_count: tuple[int, int] = (4, 6)
    base_models: tuple[int, int] = (3, 5)
    density: float = 0.35
    lambda_star: int = 2
    uncountable_prob: float = 0.85
    nested_prob: float = 0.7
    remainder_prob: float = 0.9
    max_countables: int = 14
    attempts: int = 200


@dataclass
class GenStats:
    attempts: int = 0
    rejections: dict[str, int] = field(default_factory=dict)


def generate_universe(seed: int, params: GenParams | None = None) -> Universe:
    """Generate-and-filter: draw a structured candidate, keep the first valid one."""
    return generate_universe_with_stats(seed, params)[0]


def generate_universe_with_stats(
    seed: int, params: GenParams | None = None
) -> tuple[Universe, GenStats]:
    params = params or GenParams()
    rng = random.Random(seed)
    stats = GenStats()
    for _ in range(params.attempts):
        stats.attempts += 1
        u = _draw_candidate(rng, params)
        if u is None:
            stats.rejections["draw"] = stats.rejections.get("draw", 0) + 1
            continue
        report = validate_universe(u)
        if report.ok:
            return u, stats
        first = report.failed()[0]
        stats.rejections[first] = stats.rejections.get(first, 0) + 1
    raise GenerationExhausted(
        f"no valid universe after {params.attempts} attempts", seed=seed
    )


def _draw_candidate(rng: random.Random, gp: GenParams) -> Universe | None:
    w = rng.randint(*gp.omega1_cut)
    nl = rng.randint(*gp.lambda_count)
    lam = sorted(rng.sample(range(w + 2, w + 4 * nl + 2), nl))
    size = lam[-1] + rng.randint(1, 3)
    stationary: list[set[int]] = [set() for _ in range(gp.lambda_star)]
    for a in lam[:-1]:
        slot = rng.choice(list(range(gp.lambda_star)) + [None])
        if slot is not None:
            stationary[slot].add(a)

    cut = None
    forbidden = 0
    if len(lam) >= 4 and rng.random() < gp.uncountable_prob:
        # the cut sits strictly below the top Λ point so that models holding
        # the cut still have a comparison point above it
        j = rng.randint(2, len(lam) - 2)
        cut = lam[j]
        for s in stationary:
            s.discard(cut)
        forbidden = ((1 << cut) - 1) & ~((1 << lam[j - 1]) - 1)
    pool = [a for a in range(w, lam[-1]) if not (forbidden >> a) & 1]

    def rand_index() -> frozenset[int]:
        if rng.random() < 0.6:
            return frozenset(range(gp.lambda_star))
        k = rng.randint(1, gp.lambda_star)
        return frozenset(rng.sample(range(gp.lambda_star), k))

    def rand_points(lo: int = 0) -> int:
        pts = [a for a in pool if a >= lo and rng.random() < gp.density]
        return tr.from_elems(pts)

    s_all = sorted(set().union(*stationary))
    nested_cut = cut is not None and rng.random() < gp.nested_prob
    base: list[tuple[int, frozenset[int]]] = []
    containers: list[tuple[int, list[tuple[int, frozenset[int]]]]] = []
    for _ in range(rng.randint(*gp.base_models)):
        kind = rng.random()
        if base and kind < 0.35:
            # a ∼-variant of an earlier model: agree below some Λ point, then
            # continue with fresh ordinals, ideally starting in S
            y, yidx = rng.choice(base)
            split = rng.choice(lam[:-1])
            head = tr.below(y, split)
            cands = [a for a in pool if a >= split and not tr.contains(y, a)]
            if not cands:
                continue
            starts = [a for a in cands if a in s_all]
            first = rng.choice(starts) if starts and rng.random() < 0.7 else rng.choice(cands)
            tail = tr.from_elems([first]) | (rand_points(first + 1) & ~y)
            idx = yidx if rng.random() < 0.6 else rand_index()
            base.append((head | tail, idx))
        elif base and kind < 0.75:
            # a container: holds one or two earlier models as members
            picks = rng.sample(base, min(len(base), rng.randint(1, 2)))
            dmin = max(tr.delta(t, w) for t, _ in picks) + 1
            if dmin > w:
                continue
            d = rng.randint(dmin, w)
            t = (1 << d) - 1 | rand_points()
            idx = rand_index()
            for pt, pidx in picks:
                t |= pt
                idx |= pidx
            for pt, _ in picks:
                t |= _sup_witnesses(rng, lam, pool, pt, t)
            if nested_cut and rng.random() < 0.6:
                t |= 1 << cut
            base.append((t, frozenset(idx)))
            containers.append((t, picks))
        else:
            d = rng.randint(1, max(1, w - 1))
            t = (1 << d) - 1 | rand_points()
            if nested_cut and rng.random() < 0.3:
                t |= 1 << cut
            base.append((t, rand_index()))
    if containers and rng.random() < gp.remainder_prob:
        # a ∼-variant of a container's member that leaves the container at a
        # point of S: this is what makes K < N with a remainder point in S
        nt, picks = rng.choice(containers)
        mt, midx = rng.choice(picks)
        # the shared part must itself be a set of the container, so the
        # container has to reach past it before the next comparison point
        splits = [
            b for b in lam[:-1]
            if tr.below(mt, b) and all(
                sup_closed_at(lam, seg, nt) for seg in tr.initial_segments(tr.below(mt, b))
            )
        ]
        split = rng.choice(splits) if splits else lam[-1]
        cands = [a for a in pool if a >= split and a in s_all and not tr.contains(nt, a)]
        if cands:
            first = rng.choice(cands)
            tail = tr.from_elems([first]) | (rand_points(first + 1) & ~nt & ~mt)
            base.append((tr.below(mt, split) | tail, midx))
    if not base:
        return None

    p_index = rand_index() if cut is not None else frozenset()
    return _close_universe(
        UniverseConfig(
            size=size,
            omega1_cut=w,
            lambda_set=tuple(lam),
            stationary=tuple(frozenset(s) for s in stationary),
            lambda_star=gp.lambda_star,
        ),
        base,
        cut,
        p_index,
        nested_cut,
        gp.max_countables,
    )


def _sup_witnesses(rng: random.Random, lam: Sequence[int], pool: Sequence[int],
                   member: int, t: int) -> int:
    """Points to add to ``t`` so every initial segment of ``member`` is sup-closed in it."""
    extra = 0
    for e in tr.elems(member):
        i = bisect.bisect_right(lam, e)
        hi = lam[i] if i < len(lam) else lam[-1]
        cands = [a for a in pool if e < a < hi]
        if cands and not any(tr.contains(t | extra, a) for a in cands):
            extra |= 1 << rng.choice(cands)
    return extra


def _close_universe(
    config: UniverseConfig,
    base: Sequence[tuple[int, frozenset[int]]],
    cut: int | None,
    p_index: frozenset[int],
    nested: bool,
    max_countables: int,
) -> Universe | None:
    """Fill in families by the subset rule and close under intersections."""
    keys: list[tuple[int, frozenset[int]]] = []
    for k in base:
        if k not in keys:
            keys.append(k)
    while True:
        u = _with_families(config, keys, cut, p_index, nested)
        ids = list(u.countables)
        new: list[tuple[int, frozenset[int]]] = []
        try:
            for m, n in itertools.combinations(ids, 2):
                if u.relation(m, n) is ModelRel.INCOMPARABLE:
                    continue
                a, b = u.cm(m), u.cm(n)
                key = (a.trace & b.trace, a.index_set & b.index_set)
                if key not in keys and key not in new:
                    new.append(key)
        except NoComparisonPoint:
            return None
        if cut is not None:
            for m in ids:
                a = u.cm(m)
                key = (tr.below(a.trace, cut), a.index_set & p_index)
                if key not in keys and key not in new:
                    new.append(key)
        if not new:
            return u
        keys.extend(new)
        if len(keys) > max_countables:
            return None


def _with_families(config, keys, cut, p_index, nested) -> Universe:
    w = config.omega1_cut
    segs: set[int] = set()
    for t, _ in keys:
        segs.update(tr.initial_segments(t))
    models = []
    for n, (t, idx) in enumerate(keys):
        d = tr.delta(t, w)
        sets = frozenset(
            k for k in segs
            if tr.subset(k, t) and tr.delta(k, w) < d
            and all(sup_closed(config, seg, t) for seg in tr.initial_segments(k))
        )
        members = {
            f"C{j}"
            for j, (t2, idx2) in enumerate(keys)
            if j != n and t2 in sets and idx2 <= idx
        }
        if cut is not None and nested and tr.contains(t, cut):
            members.add("P")
        models.append(
            CountableModel(f"C{n}", t, frozenset(idx), sets, frozenset(members), True)
        )
    unc = []
    if cut is not None:
        fam = frozenset(
            f"C{j}" for j, (t, idx) in enumerate(keys) if tr.sup(t) < cut and idx <= p_index
        )
        unc.append(UncountableModel("P", cut, p_index, fam, True))
    return Universe(config, models, unc)
