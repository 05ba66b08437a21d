"""Random construction of conditions whose premises hold by construction.

A builder performs a random walk of strengthening moves.  Every move is
checked before it is kept: the result must be a condition, it must lie below
the previous one, and, when the walk is confined to a model, it must still
belong to that model.  Moves that fail any check are simply discarded, so
the walk never needs to know in advance which moves apply.
"""

from __future__ import annotations

import random
from typing import Callable

from .. import product_forcing as pf
from .. import single_forcing as sf
from .. import traces as tr
from ..adequacy import is_adequate, r_star, s_star
from ..errors import SideCondError
from ..product_forcing import QCondition
from ..single_forcing import PCondition
from ..universe import Elem, OrdS, SetE, Universe


def add_model(u: Universe, p: PCondition, m: str) -> PCondition | None:
    """Put ``m`` into ``A`` and patch f and g so the clauses can hold again.

    This is not a construction from the theory, just a cheap way to reach
    side conditions that no single lemma produces.  The caller validates.
    """
    if m in p.a or not is_adequate(u, p.a | {m}):
        return None
    s = sf.s_of(u, p)
    t = u.cm(m).trace
    f = dict(p.f)
    fresh: list[int] = []
    for a in p.ordinals():
        if a in s and tr.contains(t, a):
            k = tr.below(t, a)
            if k not in f[OrdS(a)]:
                f[OrdS(a)] = sf.sort_chain(f[OrdS(a)] + (k,))
            fresh.append(a)
    try:
        for a in fresh:
            chain = f[OrdS(a)]
            for k in chain:
                want = tuple(l for l in chain if u.hull_set(l, k))
                have = f.get(SetE(k), ())
                f[SetE(k)] = sf.sort_chain(have + want)
    except SideCondError:
        return None
    q = PCondition(f, p.g, p.a | {m}, p.s_label)
    missing = r_star(u, q.a, s) - set(q.ordinals())
    try:
        q = sf.extend_ordinals(u, q, missing)
    except SideCondError:
        return None
    return q


def add_g(p: PCondition, k: int, x: Elem, xi: int) -> PCondition:
    """Add ``xi`` to ``g(k, x)`` and push it down to every ``g(k, L)`` with ``L ∈ f(x)``."""
    g = dict(p.g)
    todo = [x]
    seen = set()
    while todo:
        y = todo.pop()
        if y in seen:
            continue
        seen.add(y)
        g[(k, y)] = g.get((k, y), frozenset()) | {xi}
        for l in p.f.get(y, ()):
            if k in p.f.get(SetE(l), ()):
                todo.append(SetE(l))
    return p.replace(g=g)


def _g_range(u: Universe, k: int, x: Elem) -> list[int]:
    lo = tr.sup(k)
    if x.kind == 0:
        return list(range(lo, x.value))
    return [e for e in tr.elems(x.value) if e >= lo]


class Builder:
    """Random single-forcing and product conditions over one universe."""

    def __init__(self, u: Universe, rng: random.Random, s_label: int | None = None):
        self.u = u
        self.rng = rng
        self.s_label = s_label

    # -- single forcing -------------------------------------------------
    def _s(self, label) -> list[int]:
        return sorted(self.u.config.s_set(label))

    def _models(self, inside: str | None) -> list[str]:
        ids = list(self.u.countables)
        if inside is None:
            return ids
        return [m for m in ids if self.u.model_in(m, inside)]

    def _move(self, p: PCondition, inside: str | None) -> PCondition | None:
        u, rng = self.u, self.rng
        kind = rng.choices(
            ("extend", "add", "adjoin", "close_n", "close_q", "saturate", "g"),
            weights=(3, 3, 2, 1, 1, 1, 3),
        )[0]
        if kind == "extend":
            fresh = [a for a in self._s(p.s_label) if OrdS(a) not in p.f]
            if inside is not None:
                fresh = [a for a in fresh if u.ordinal_in(a, inside)]
            if not fresh:
                return None
            return sf.extend_ordinals(u, p, rng.sample(fresh, min(len(fresh), rng.randint(1, 2))))
        if kind == "add":
            cands = [m for m in self._models(inside) if m not in p.a]
            return add_model(u, p, rng.choice(cands)) if cands else None
        if kind == "adjoin":
            cands = [
                m for m in self._models(inside)
                if m not in p.a and m != inside and sf.condition_in(u, p, m)
            ]
            return sf.adjoin_model(u, p, rng.choice(cands)) if cands else None
        if kind == "close_n":
            cands = sorted(p.a)
            return sf.close_under_n(u, p, rng.choice(cands)) if cands else None
        if kind == "close_q":
            cands = list(u.uncountables)
            return sf.close_under_q(u, p, rng.choice(cands)) if cands else None
        if kind == "saturate":
            return sf.saturate_g(u, p)
        pairs = list(p.g_pairs())
        if not pairs:
            return None
        k, x = rng.choice(pairs)
        vals = _g_range(u, k, x)
        if inside is not None:
            vals = [v for v in vals if u.ordinal_in(v, inside)]
        if not vals:
            return None
        return add_g(p, k, x, rng.choice(vals))

    def walk(self, p: PCondition, steps: int, inside: str | None = None,
             keep: Callable[[PCondition], bool] | None = None) -> PCondition:
        u = self.u
        for _ in range(steps):
            try:
                q = self._move(p, inside)
            except SideCondError:
                continue
            if q is None or q == p:
                continue
            if sf.validate_p(u, q) or not sf.leq_p(u, q, p):
                continue
            if inside is not None and not sf.condition_in(u, q, inside):
                continue
            if keep is not None and not keep(q):
                continue
            p = q
        return p

    def condition(self, steps: int | None = None, inside: str | None = None,
                  label: int | None | str = "default") -> PCondition:
        s_label = self.s_label if label == "default" else label
        steps = self.rng.randint(2, 8) if steps is None else steps
        return self.walk(PCondition(s_label=s_label), steps, inside)

    def below_inside(self, p: PCondition, model: str, steps: int | None = None) -> PCondition:
        """A condition ``≤ p`` that still belongs to ``model``."""
        steps = self.rng.randint(0, 6) if steps is None else steps
        return self.walk(p, steps, inside=model)

    def in_dn(self, n: str, core_steps: int | None = None, outer_steps: int | None = None,
              label: int | None | str = "default", extra: str | None = None) -> PCondition:
        """A condition in D_N grown around a core that lies in ``N``.

        ``extra`` names a model to try adding right after ``N``; callers use
        it to steer towards shapes a random walk rarely finds.
        """
        rng = self.rng
        core = self.condition(rng.randint(0, 5) if core_steps is None else core_steps,
                              inside=n, label=label)
        p = sf.adjoin_model(self.u, core, n)
        if extra is not None:
            q = add_model(self.u, p, extra)
            if q is not None and not sf.validate_p(self.u, q):
                p = q
        p = self.walk(p, rng.randint(0, 6) if outer_steps is None else outer_steps)
        return sf.into_dn(self.u, p, n)

    def in_dq(self, big: str, steps: int | None = None,
              label: int | None | str = "default") -> PCondition:
        return sf.close_under_q(self.u, self.condition(steps, label=label), big)

    def in_dn_dq(self, n: str, big: str, label: int | None | str = "default") -> PCondition:
        rng = self.rng
        core = self.condition(rng.randint(0, 5), inside=n, label=label)
        p = sf.adjoin_model(self.u, core, n)
        p = self.walk(p, rng.randint(0, 6))
        return sf.into_dn_dq(self.u, p, n, big)

    # -- product forcing --------------------------------------------------
    def _qmove(self, p: QCondition, inside: str | None, open_ok: bool) -> QCondition | None:
        u, rng = self.u, self.rng
        kind = rng.choices(
            ("open", "coord", "add", "adjoin", "close", "saturate"),
            weights=(2 if open_ok else 0, 5, 3, 2, 1, 1),
        )[0]
        lam = range(u.config.lambda_star)
        if kind == "open":
            fresh = [i for i in lam if i not in p.F]
            if inside is not None:
                fresh = [i for i in fresh if u.index_in(i, inside)]
            return pf.uplus(u, p, [rng.choice(fresh)]) if fresh else None
        if kind == "coord":
            if not p.F:
                return None
            i = rng.choice(list(p.F))
            c = self.walk(p.F[i], 1, inside)
            F = dict(p.F)
            F[i] = c
            return QCondition(F, p.a)
        if kind == "add":
            cands = [m for m in self._models(inside) if m not in p.a]
            if not cands:
                return None
            m = rng.choice(cands)
            a = p.a | {m}
            F = dict(p.F)
            for i, c in p.F.items():
                if u.index_in(i, m) and m not in c.a:
                    got = add_model(u, c, m)
                    if got is None:
                        return None
                    F[i] = got
            q = QCondition(F, a)
            return pf.uplus(u, q, s_star(u, a) - set(F))
        if kind == "adjoin":
            cands = [
                m for m in self._models(inside)
                if m not in p.a and m != inside and pf.q_condition_in(u, p, m)
            ]
            return pf.q_adjoin_model(u, p, rng.choice(cands)) if cands else None
        if kind == "close":
            cands = sorted(p.a) + list(u.uncountables)
            return pf.q_close(u, p, rng.choice(cands)) if cands else None
        if not p.F:
            return None
        return QCondition({i: sf.saturate_g(u, c) for i, c in p.F.items()}, p.a)

    def qwalk(self, p: QCondition, steps: int, inside: str | None = None,
              open_ok: bool = True) -> QCondition:
        u = self.u
        for _ in range(steps):
            try:
                q = self._qmove(p, inside, open_ok)
            except SideCondError:
                continue
            if q is None or q == p:
                continue
            if pf.validate_q(u, q) or not pf.leq_q(u, q, p):
                continue
            if inside is not None and not pf.q_condition_in(u, q, inside):
                continue
            p = q
        return p

    def qcondition(self, steps: int | None = None, inside: str | None = None) -> QCondition:
        steps = self.rng.randint(2, 10) if steps is None else steps
        return self.qwalk(QCondition(), steps, inside)

    def q_below_inside(self, p: QCondition, model: str, steps: int | None = None,
                       open_ok: bool = True) -> QCondition:
        steps = self.rng.randint(0, 8) if steps is None else steps
        return self.qwalk(p, steps, inside=model, open_ok=open_ok)

    def q_in_d(self, model: str) -> QCondition:
        """A condition in D(N) (countable) or D(P) (uncountable)."""
        rng = self.rng
        if self.u.is_uncountable(model):
            return pf.q_into_d(self.u, self.qcondition(), model)
        core = self.qcondition(rng.randint(0, 6), inside=model)
        p = pf.q_adjoin_model(self.u, core, model)
        p = self.qwalk(p, rng.randint(0, 6))
        return pf.q_into_d(self.u, p, model)

    def q_in_both(self, n: str, big: str) -> QCondition:
        rng = self.rng
        core = self.qcondition(rng.randint(0, 6), inside=n)
        p = pf.q_adjoin_model(self.u, core, n)
        p = self.qwalk(p, rng.randint(0, 6))
        return pf.q_into_both(self.u, p, n, big)
