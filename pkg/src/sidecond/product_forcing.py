"""The product of the single forcings over the stationary sets S_i.

A product condition is a pair ``(F, A)``: ``F`` maps finitely many indices
``i < λ*`` to single-forcing conditions over ``S_i`` and ``A`` is an adequate
set.  Each coordinate carries every model of ``A`` that knows about ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import single_forcing as sf
from .adequacy import closure_under_countable, closure_under_uncountable, s_star
from .errors import (
    CoordinateMissing,
    DomainClash,
    NotClosed,
    NotInDClass,
    NotInModel,
    PreconditionFailed,
    UnknownId,
)
from .single_forcing import PCondition, Violation
from .universe import ModelRel, Universe


class QCondition:
    __slots__ = ("F", "a", "_key")

    def __init__(self, F: Mapping[int, PCondition] | None = None, a: Iterable[str] = ()):
        self.F: dict[int, PCondition] = dict(sorted((F or {}).items()))
        self.a = frozenset(a)
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (
                tuple((i, c.key()) for i, c in self.F.items()),
                tuple(sorted(self.a)),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, QCondition) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"QCondition(F={self.F!r}, A={sorted(self.a)})"

    def dom(self) -> list[int]:
        return list(self.F)


def validate_q(u: Universe, p: QCondition) -> list[Violation]:
    """Clause violations Q1–Q4; coordinate failures nest the inner violation."""
    for m in sorted(p.a):
        if not u.is_countable(m):
            raise UnknownId(f"unknown model {m!r} in A", id=m)
    out: list[Violation] = []
    for a, b in itertools.combinations(sorted(p.a), 2):
        if u.relation(a, b) is ModelRel.INCOMPARABLE:
            out.append(Violation("Q1", {"models": [a, b]}))
    for i in p.F:
        if not 0 <= i < u.config.lambda_star:
            out.append(Violation("Q2", {"index": i}))
    for i, c in p.F.items():
        if not 0 <= i < u.config.lambda_star:
            continue
        if c.s_label != i:
            out.append(Violation("Q3", {"index": i, "reason": "coordinate over the wrong S"}))
            continue
        for v in sf.validate_p(u, c):
            out.append(Violation("Q3", {"index": i, "inner": v.to_doc()}))
        need = sorted(m for m in p.a if i in u.cm(m).index_set and m not in c.a)
        if need:
            out.append(Violation("Q3", {"index": i, "missing": need}))
    for i in sorted(s_star(u, p.a) - set(p.F)):
        out.append(Violation("Q4", {"index": i}))
    return out


def is_q_condition(u: Universe, p: QCondition) -> bool:
    try:
        return not validate_q(u, p)
    except UnknownId:
        return False


def leq_q(u: Universe, q: QCondition, p: QCondition) -> bool:
    if not p.a <= q.a:
        return False
    for i, c in p.F.items():
        if i not in q.F or not sf.leq_p(u, q.F[i], c):
            return False
    return True


def uplus(u: Universe, p: QCondition, xs: Iterable[int]) -> QCondition:
    """Open fresh coordinates ``i`` as ``(∅, ∅, {M ∈ A : i ∈ M})``."""
    xs = sorted(set(xs))
    clash = [i for i in xs if i in p.F]
    if clash:
        raise DomainClash(f"indices already in the domain: {clash}", indices=clash)
    F = dict(p.F)
    for i in xs:
        if not 0 <= i < u.config.lambda_star:
            raise PreconditionFailed(f"index {i} out of range", hypothesis="x ⊆ λ*")
        F[i] = PCondition(a=[m for m in p.a if i in u.cm(m).index_set], s_label=i)
    return QCondition(F, p.a)


def lower_coordinates(u: Universe, p: QCondition, repl: Mapping[int, PCondition]) -> QCondition:
    for i, c in sorted(repl.items()):
        if i not in p.F:
            raise PreconditionFailed(f"index {i} not in dom(F)", hypothesis="dom(repl) ⊆ dom(F)")
        if not sf.leq_p(u, c, p.F[i]):
            raise PreconditionFailed(f"replacement at {i} is not below F({i})", hypothesis="repl(i) ≤ F(i)")
    F = dict(p.F)
    F.update(repl)
    return QCondition(F, p.a)


def project_coordinate(u: Universe, q: QCondition, i: int) -> PCondition:
    if i in q.F:
        return q.F[i]
    if not q.F and not q.a:
        return PCondition(s_label=i)
    raise CoordinateMissing(f"index {i} not in dom(F)", index=i)


def q_membership_failure(u: Universe, p: QCondition, model: str) -> str | None:
    for m in sorted(p.a):
        if not u.model_in(m, model):
            return f"model {m} of A"
    for i, c in p.F.items():
        if not u.index_in(i, model):
            return f"index {i}"
        why = sf.membership_failure(u, c, model)
        if why is not None:
            return f"coordinate {i}: {why}"
    return None


def q_condition_in(u: Universe, p: QCondition, model: str) -> bool:
    return q_membership_failure(u, p, model) is None


def in_dnq(u: Universe, p: QCondition, n: str) -> bool:
    if n not in p.a:
        return False
    for m in p.a:
        if u.relation(m, n) is ModelRel.LESS:
            try:
                if u.intersect(m, n) not in p.a:
                    return False
            except NotClosed:
                return False
    return all(sf.in_dn(u, c, n) for i, c in p.F.items() if u.index_in(i, n))


def in_dpq(u: Universe, p: QCondition, big: str) -> bool:
    for m in p.a:
        try:
            if u.intersect(m, big) not in p.a:
                return False
        except NotClosed:
            return False
    return all(sf.in_dq(u, c, big) for i, c in p.F.items() if u.index_in(i, big))


def in_d_class(u: Universe, p: QCondition, model: str) -> bool:
    if u.is_uncountable(model):
        return in_dpq(u, p, model)
    return in_dnq(u, p, model)


def restrict_q(u: Universe, q: QCondition, model: str) -> QCondition:
    if not u.is_simple(model):
        raise PreconditionFailed(f"{model} is not simple", hypothesis="N simple")
    if not in_d_class(u, q, model):
        raise NotInDClass(f"condition is not in D({model})", model=model)
    F = {i: sf.restrict(u, c, model) for i, c in q.F.items() if u.index_in(i, model)}
    return QCondition(F, (m for m in q.a if u.model_in(m, model)))


@dataclass(frozen=True)
class OplusResult:
    condition: QCondition
    normalized: tuple[int, ...]
    """Indices opened by ``uplus`` before amalgamating (empty if none)."""


def oplus_q(u: Universe, w: QCondition, q: QCondition, model: str, *, check: bool = True) -> QCondition:
    return oplus_q_traced(u, w, q, model, check=check).condition


def oplus_q_traced(
    u: Universe, w: QCondition, q: QCondition, model: str, *, check: bool = True
) -> OplusResult:
    """``w ⊕^N q``, first opening ``dom(F_w) \\ dom(F_q)`` in ``q`` if needed."""
    if check:
        for name, c in (("w", w), ("q", q)):
            bad = validate_q(u, c)
            sf._require(not bad, f"{name} is a condition")
        sf._require(u.is_simple(model), "N simple")
        sf._require(in_d_class(u, q, model), "q ∈ D(N)")
        sf._require(q_condition_in(u, w, model), "w ∈ N")
        sf._require(leq_q(u, w, restrict_q(u, q, model)), "w ≤ q↾N")
    extra = tuple(i for i in w.F if i not in q.F)
    if extra:
        q = uplus(u, q, extra)
    F = {}
    for i, c in q.F.items():
        if i in w.F:
            F[i] = sf.amalgamate(u, w.F[i], c, model, check=False)
        else:
            F[i] = c
    return OplusResult(QCondition(F, w.a | q.a), extra)


# --------------------------------------------------------------------------
# constructions that produce conditions in the restriction classes


def q_adjoin_model(u: Universe, p: QCondition, n: str) -> QCondition:
    """Add a countable model containing ``p`` to ``A`` and to every coordinate."""
    why = q_membership_failure(u, p, n)
    if why is not None:
        raise NotInModel(f"p is not in {n}: {why}", model=n, part=why)
    F = {i: sf.adjoin_model(u, c, n) for i, c in p.F.items()}
    return QCondition(F, p.a | {n})


def q_close(u: Universe, p: QCondition, model: str) -> QCondition:
    """Close ``A`` under intersections with ``model`` and repair every coordinate.

    New ∼-pairs may oblige fresh coordinates, which are opened first; each
    coordinate that ``model`` knows about is then closed in the single forcing.
    """
    if u.is_uncountable(model):
        b = closure_under_uncountable(u, p.a, model)
        close = sf.close_under_q
    else:
        if model not in p.a:
            raise PreconditionFailed(f"{model} is not in A", hypothesis="N ∈ A_p")
        b = closure_under_countable(u, p.a, model)
        close = sf.close_under_n
    q = uplus(u, p, s_star(u, b) - set(p.F))
    F = {i: close(u, c, model) if u.index_in(i, model) else c for i, c in q.F.items()}
    return QCondition(F, b)


def q_saturate(u: Universe, p: QCondition, n: str) -> QCondition:
    F = {i: sf.saturate_g(u, c) if u.index_in(i, n) else c for i, c in p.F.items()}
    return QCondition(F, p.a)


def q_into_d(u: Universe, p: QCondition, model: str) -> QCondition:
    """A condition below ``p`` in D(N) or D(P)."""
    r = q_close(u, p, model)
    if u.is_countable(model):
        r = q_saturate(u, r, model)
    return r


def q_into_both(u: Universe, p: QCondition, n: str, big: str, *, rounds: int = 8) -> QCondition:
    """A condition below ``p`` in D(N) ∩ D(P); ``N`` must already be in ``A``."""
    s = p
    for _ in range(rounds):
        s = q_saturate(u, q_close(u, q_close(u, s, n), big), n)
        if in_dnq(u, s, n) and in_dpq(u, s, big):
            return s
    raise NotClosed(f"closures under {n} and {big} did not stabilise", model=n, other=big)
