"""A straight-line interpreter of the definitions, used as a reference.

Nothing here calls the optimized operators.  Traces are plain frozensets,
comparison points and hulls are computed straight from their definitions
(and memoized per oracle), and every clause is a direct loop over the
objects it quantifies over.  The only thing read
from a :class:`~sidecond.universe.Universe` is its raw data.

Conditions are handled in a neutral form (:class:`Plain`) so that the
oracle's answers can be compared with the optimized ones without trusting
the optimized data structures either.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from ..single_forcing import PCondition
from ..traces import KAPPA, elems
from ..universe import Universe

Set_ = frozenset  # a trace set
Key = tuple  # ("ord", α) or ("set", frozenset)


@dataclass(frozen=True)
class Plain:
    """A condition as three plain sets of tuples."""

    f: frozenset  # {(key, frozenset of member sets)}
    g: frozenset  # {((K, key), frozenset of ordinals)}, nonempty values only
    a: frozenset

    def fmap(self) -> dict:
        return dict(self.f)

    def gmap(self) -> dict:
        return dict(self.g)


def _key_of(x) -> Key:
    return ("ord", x.value) if x.kind == 0 else ("set", frozenset(elems(x.value)))


def plain(p: PCondition) -> Plain:
    f = frozenset(
        (_key_of(x), frozenset(frozenset(elems(k)) for k in chain)) for x, chain in p.f.items()
    )
    g = frozenset(
        ((frozenset(elems(k)), _key_of(x)), frozenset(v)) for (k, x), v in p.g.items() if v
    )
    return Plain(f, g, frozenset(p.a))


class Oracle:
    def __init__(self, u: Universe, s_label: int | None = None):
        c = u.config
        self.W = c.omega1_cut
        self.lam = sorted(c.lambda_set)
        self.S_i = [frozenset(s) for s in c.stationary]
        self.S = frozenset().union(*self.S_i) if s_label is None else self.S_i[s_label]
        self.T = {m.id: frozenset(elems(m.trace)) for m in u.countables.values()}
        self.idx = {m.id: frozenset(m.index_set) for m in u.countables.values()}
        self.SF = {
            m.id: {frozenset(elems(k)) for k in m.set_family} for m in u.countables.values()
        }
        self.MF = {m.id: set(m.model_family) for m in u.countables.values()}
        self.simple = {m.id: m.simple for m in u.countables.values()}
        self.cut = {p.id: p.cut for p in u.uncountables.values()}
        self.PMF = {p.id: set(p.model_family) for p in u.uncountables.values()}
        self.pidx = {p.id: frozenset(p.index_set) for p in u.uncountables.values()}
        self.psimple = {p.id: p.simple for p in u.uncountables.values()}

    # -- the background -----------------------------------------------------
    @staticmethod
    def below(t, a):
        return frozenset(x for x in t if a is KAPPA or x < a)

    @functools.lru_cache(maxsize=None)
    def beta(self, m, n):
        top = max(self.T[m] & self.T[n])
        for b in self.lam:
            if b > top:
                return b
        raise ValueError("no comparison point")

    @functools.lru_cache(maxsize=None)
    def relation(self, m, n) -> str:
        if m == n:
            return "~"
        b = self.beta(m, n)
        mb, nb = self.below(self.T[m], b), self.below(self.T[n], b)
        if mb == nb:
            return "~"
        if mb in self.SF[n]:
            return "<"
        if nb in self.SF[m]:
            return ">"
        return "|"

    def adequate(self, a) -> bool:
        return all(self.relation(m, n) != "|" for m in a for n in a)

    @functools.lru_cache(maxsize=None)
    def hull(self, k: Set_, z: Key) -> bool:
        if z[0] == "ord":
            return max(k) < z[1]
        found = False
        for m, t in self.T.items():
            for a in self.lam + [KAPPA]:
                if self.below(t, a) == z[1]:
                    found = True
                    if k in self.SF[m] and (a is KAPPA or max(k) < a):
                        return True
        if not found:
            raise ValueError("no representation")
        return False

    def intersect(self, m, other):
        if other in self.T:
            want = (self.T[m] & self.T[other], self.idx[m] & self.idx[other])
        else:
            want = (self.below(self.T[m], self.cut[other]), self.idx[m] & self.pidx[other])
        for n in self.T:
            if (self.T[n], self.idx[n]) == want:
                return n
        return None

    def remainders(self, a):
        """``(K, M, γ)`` for ordered ∼-pairs with ``γ = min(M \\ β)``."""
        for k in a:
            for m in a:
                if k == m or self.relation(k, m) != "~":
                    continue
                b = self.beta(k, m)
                rest = [x for x in self.T[m] if x >= b]
                if rest:
                    yield k, m, min(rest)

    def r_star(self, a, s=None):
        out = {g for _, _, g in self.remainders(a)}
        return frozenset(out if s is None else out & s)

    def s_star(self, a):
        out = set()
        for k, m, g in self.remainders(a):
            for i in self.idx[k] & self.idx[m]:
                if g in self.S_i[i]:
                    out.add(i)
        return frozenset(out)

    # -- conditions ---------------------------------------------------------
    def violated(self, p: Plain) -> set[str]:
        """The set of clause ids C1–C7 that ``p`` violates."""
        f, g, a, s = p.fmap(), p.gmap(), p.a, self.S
        bad = set()
        if not self.adequate(a):
            bad.add("C1")
        dom_ords = {x[1] for x in f if x[0] == "ord"}
        for x, chain in f.items():
            if x[0] == "ord":
                if x[1] not in s:
                    bad.add("C2")
            else:
                prov = any(
                    self.below(self.T[m], c) == x[1]
                    for m in a
                    for c in [c for c in dom_ords if c in s and c in self.T[m]] + [KAPPA]
                )
                if not prov:
                    bad.add("C2")
            sups = sorted(max(k) for k in chain if k)
            if any(not k for k in chain) or len(set(sups)) != len(chain):
                bad.add("C2")
                continue
            try:
                for k in chain:
                    if not self.hull(k, x):
                        bad.add("C2")
                for j in chain:
                    for k in chain:
                        if max(j) < max(k) and not self.hull(j, ("set", k)):
                            bad.add("C2")
            except ValueError:
                bad.add("C2")
        for x, chain in f.items():
            for k in chain:
                if ("set", k) not in f:
                    bad.add("C3")
                    continue
                try:
                    want = {l for l in chain if self.hull(l, ("set", k))}
                except ValueError:
                    continue
                if f[("set", k)] != want:
                    bad.add("C3")
        for (k, x), vals in g.items():
            if x not in f or k not in f[x]:
                bad.add("C4")
                continue
            for xi in vals:
                inside = xi < x[1] if x[0] == "ord" else xi in x[1]
                if not (inside and xi >= max(k)):
                    bad.add("C4")
        for x, chain in f.items():
            for l in chain:
                for k in f.get(("set", l), ()):
                    if not g.get((k, x), frozenset()) <= g.get((k, ("set", l)), frozenset()):
                        bad.add("C5")
        for x, chain in f.items():
            if x[0] != "ord" or x[1] not in s:
                continue
            for m in a:
                if x[1] in self.T[m] and self.below(self.T[m], x[1]) not in chain:
                    bad.add("C6")
        if not self.r_star(a, s) <= dom_ords:
            bad.add("C7")
        return bad

    @staticmethod
    def leq(q: Plain, p: Plain) -> bool:
        qf, pf, qg = q.fmap(), p.fmap(), q.gmap()
        if not p.a <= q.a:
            return False
        for x, chain in pf.items():
            if x not in qf or not chain <= qf[x]:
                return False
        for key, vals in p.g:
            if not vals <= qg.get(key, frozenset()):
                return False
        for x in pf:
            for k in qf.get(x, ()):
                if ("set", k) in pf and k not in pf[x]:
                    return False
        return True

    # -- membership and restriction -------------------------------------------
    def elem_in(self, x: Key, model) -> bool:
        if model in self.T:
            return x[1] in self.T[model] if x[0] == "ord" else x[1] in self.SF[model]
        top = x[1] if x[0] == "ord" else max(x[1])
        return top < self.cut[model]

    def set_in(self, k: Set_, model) -> bool:
        return self.elem_in(("set", k), model)

    def model_in(self, m, model) -> bool:
        return m in (self.MF[model] if model in self.T else self.PMF[model])

    def in_d(self, p: Plain, model) -> bool:
        if model in self.T:
            if model not in p.a:
                return False
            for m in p.a:
                if self.relation(m, model) == "<" and self.intersect(m, model) not in p.a:
                    return False
            f, g = p.fmap(), p.gmap()
            for y, chain in f.items():
                for x in chain:
                    for k in f.get(("set", x), ()):
                        if not g.get((k, ("set", x)), frozenset()) <= g.get((k, y), frozenset()):
                            return False
            return True
        return all(self.intersect(m, model) in p.a for m in p.a)

    def restrict(self, p: Plain, model) -> Plain:
        countable = model in self.T
        f = {}
        for x, chain in p.f:
            if self.elem_in(x, model):
                f[x] = frozenset(k for k in chain if self.set_in(k, model)) if countable else chain
        g = frozenset(
            ((k, x), v) for (k, x), v in p.g if x in f and self.set_in(k, model)
        )
        a = frozenset(m for m in p.a if self.model_in(m, model))
        return Plain(frozenset(f.items()), g, a)

    def simple_models(self) -> list[str]:
        return sorted([m for m, s in self.simple.items() if s] + [p for p, s in self.psimple.items() if s])

    def adequate_subsets(self, max_size: int):
        ids = sorted(self.T)
        for r in range(max_size + 1):
            for a in itertools.combinations(ids, r):
                if self.adequate(a):
                    yield frozenset(a)
