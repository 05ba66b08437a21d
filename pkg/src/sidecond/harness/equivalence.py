"""Exhaustive agreement between the optimized operators and the oracle."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .. import adequacy as ad
from .. import single_forcing as sf
from ..errors import SideCondError
from ..universe import Universe, generate_universe
from . import catalog
from .enumeration import candidates
from .oracle import Oracle, plain


@dataclass
class Agreement:
    queries: Counter = field(default_factory=Counter)
    mismatches: list[dict] = field(default_factory=list)
    lemma_failures: list[dict] = field(default_factory=list)
    valid: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.lemma_failures

    def _miss(self, what: str, **detail) -> None:
        if len(self.mismatches) < 20:
            self.mismatches.append({"query": what, **{k: repr(v) for k, v in detail.items()}})


def small_universes(count: int, max_countables: int = 3, seeds: int = 400) -> list[tuple[int, Universe]]:
    """The first ``count`` generated universes with few countable models."""
    out = []
    for seed in range(seeds):
        u = generate_universe(seed)
        if len(u.countables) <= max_countables:
            out.append((seed, u))
            if len(out) == count:
                break
    return out


def _restriction_ok(u, o, p, model, rep: Agreement) -> None:
    pp = plain(p)
    rep.queries["d-class"] += 1
    if u.is_uncountable(model):
        fast = sf.in_dq(u, p, model)
    else:
        fast = sf.in_dn(u, p, model)
    slow = o.in_d(pp, model)
    if fast != slow:
        rep._miss("d-class", p=p, model=model, fast=fast, slow=slow)
        return
    if not fast or not u.is_simple(model):
        return
    rep.queries["restrict"] += 1
    got = plain(sf.restrict(u, p, model))
    if got != o.restrict(pp, model):
        rep._miss("restrict", p=p, model=model)


def check_universe(u: Universe, max_a: int = 2, max_dom: int = 3, max_g: int = 1,
                   rep: Agreement | None = None) -> Agreement:
    rep = rep or Agreement()
    o = Oracle(u)
    ids = sorted(u.countables)

    for r in range(len(ids) + 1):
        for a in itertools.combinations(ids, r):
            rep.queries["r*"] += 1
            rep.queries["s*"] += 1
            if ad.r_star(u, a) != o.r_star(a):
                rep._miss("r*", a=a)
            if ad.s_star(u, a) != o.s_star(a):
                rep._miss("s*", a=a)

    valid = []
    for p in candidates(u, max_a, max_dom, max_g):
        rep.queries["validate"] += 1
        fast = {v.clause for v in sf.validate_p(u, p)}
        slow = o.violated(plain(p))
        if fast != slow:
            rep._miss("validate", p=p, fast=sorted(fast), slow=sorted(slow))
        if not slow:
            valid.append(p)
    rep.valid += len(valid)

    plains = [plain(p) for p in valid]
    for (p, pp), (q, qq) in itertools.product(zip(valid, plains), repeat=2):
        rep.queries["leq"] += 1
        if sf.leq_p(u, q, p) != o.leq(qq, pp):
            rep._miss("leq", q=q, p=p)

    models = sorted(u.countables) + sorted(u.uncountables)
    for p in valid:
        for m in models:
            _restriction_ok(u, o, p, m, rep)

    _lemmas(u, valid, rep)
    return rep


def _lemma(rep: Agreement, pid: str, u: Universe, x: dict) -> None:
    spec = catalog.CATALOG[pid]
    if not spec.premise(u, x):
        return
    rep.queries[pid] += 1
    try:
        ok = spec.conclusion(u, x)
    except SideCondError as exc:
        ok = False
        x = {**x, "error": str(exc)}
    if not ok and len(rep.lemma_failures) < 20:
        rep.lemma_failures.append({"property": pid, "inputs": repr(x)})


def _lemmas(u: Universe, valid: list, rep: Agreement) -> None:
    for p in valid:
        _lemma(rep, "P-4.5", u, {"p": p})
        _lemma(rep, "P-4.6", u, {"p": p})
        for n in sorted(p.a):
            _lemma(rep, "P-7.10", u, {"p": p, "N": n})
    for n in catalog.simple_countables(u):
        rs = [r for r in valid if sf.in_dn(u, r, n)]
        ws = [w for w in valid if sf.condition_in(u, w, n)]
        for r in rs:
            rn = sf.restrict(u, r, n)
            for w in ws:
                if sf.leq_p(u, w, rn):
                    _lemma(rep, "P-7.9", u, {"w": w, "r": r, "N": n})


def check_all(universes: list[Universe], max_a: int = 2, max_dom: int = 3,
              max_g: int = 1) -> Agreement:
    rep = Agreement()
    for u in universes:
        check_universe(u, max_a, max_dom, max_g, rep)
    return rep
