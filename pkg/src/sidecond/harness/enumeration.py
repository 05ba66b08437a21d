"""Exhaustive enumeration of small conditions.

:func:`candidates` walks a finite space that contains every condition within
the bounds together with many near misses; :func:`enumerate_conditions` keeps
the ones the reference interpreter accepts.  The near misses are what make
the equivalence check against the optimized validator meaningful in both
directions.

The space, for a fixed adequate-or-not set ``A`` of at most ``max_a``
models:

* domain: at most ``max_dom`` elements drawn from the ordinals of S and the
  traces ``M ∩ α`` (``M ∈ A``, ``α ∈ S ∪ {κ}``);
* chains: any subset of the trace-set elements of the domain;
* g: when ``(f, A)`` is valid on its own, every pair ``(K, x)`` with
  ``K ∈ f(x)`` gets ``∅`` or one ordinal; otherwise g stays empty, since no
  choice of g can repair a clause that does not mention g.
  For a set key the candidates are the elements of ``x`` from ``sup K`` on;
  for an ordinal key ``α`` they are ``sup K``, ``sup K + 1``, ``α - 1`` and
  every model ordinal in between.  Each slot also gets ``sup K - 1``, which
  is always out of range.

Ordinals of ``[sup K, α)`` that lie in no model behave identically as g
values, so the ordinal-key pool keeps only a few representatives of them.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .. import traces as tr
from ..errors import BudgetExceeded
from ..single_forcing import PCondition
from ..traces import KAPPA
from ..universe import Elem, OrdS, SetE, Universe
from .oracle import Oracle, plain

DEFAULT_BUDGET = 5_000_000


def _subsets(items, max_size):
    for r in range(min(max_size, len(items)) + 1):
        yield from itertools.combinations(items, r)


def _g_slots(x: Elem, k: int, model_ords: frozenset[int]) -> list[int | None]:
    lo = tr.sup(k)
    if x.kind == 0:
        hi = x.value
        vals = {lo, lo + 1, hi - 1} | {e for e in model_ords if lo <= e < hi}
        vals = {v for v in vals if lo <= v < hi}
    else:
        vals = {e for e in tr.elems(x.value) if e >= lo}
    if lo:
        vals.add(lo - 1)
    return [None] + sorted(vals)


def candidates(
    u: Universe,
    max_a: int,
    max_dom: int,
    max_g: int = 1,
    s_label: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[PCondition]:
    """Every point of the candidate space, in a fixed order.

    ``max_g`` is 0 (g identically empty) or 1 (values of size at most one).
    Raises :class:`BudgetExceeded` once more than ``budget`` candidates
    have been produced.
    """
    if max_g not in (0, 1):
        raise ValueError("max_g must be 0 or 1")
    s = sorted(u.config.s_set(s_label))
    count = 0
    ids = sorted(u.countables)
    model_ords = frozenset(e for m in ids for e in tr.elems(u.cm(m).trace))
    oracle = Oracle(u, s_label)
    for a in _subsets(ids, max_a):
        sets = sorted({
            tr.below(u.cm(m).trace, c)
            for m in a
            for c in [x for x in s if tr.contains(u.cm(m).trace, x)] + [KAPPA]
        })
        pool = [OrdS(x) for x in s] + [SetE(k) for k in sets]
        for dom in _subsets(pool, max_dom):
            dset = [x.value for x in dom if x.kind == 1]
            per_x = [list(_subsets(dset, len(dset))) for _ in dom]
            for chains in itertools.product(*per_x):
                f = {x: tuple(sorted(c, key=lambda k: (tr.sup(k), k))) for x, c in zip(dom, chains)}
                pairs = [(k, x) for x in dom for k in f[x]]
                skeleton_ok = not oracle.violated(plain(PCondition(f, {}, a, s_label)))
                slots = [
                    _g_slots(x, k, model_ords) if max_g and skeleton_ok else [None]
                    for k, x in pairs
                ]
                for pick in itertools.product(*slots):
                    count += 1
                    if count > budget:
                        raise BudgetExceeded(
                            f"more than {budget} candidates", budget=budget
                        )
                    g = {pr: {v} for pr, v in zip(pairs, pick) if v is not None}
                    yield PCondition(f, g, a, s_label)


def enumerate_conditions(
    u: Universe,
    max_a: int,
    max_dom: int,
    max_g: int = 1,
    s_label: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[PCondition]:
    """All valid conditions within the bounds, duplicate-free and canonically ordered."""
    oracle = Oracle(u, s_label)
    seen = {}
    for p in candidates(u, max_a, max_dom, max_g, s_label, budget):
        if not oracle.violated(plain(p)):
            seen.setdefault(p.key(), p)
    return [seen[k] for k in sorted(seen, key=repr)]
