"""Comparison of countable models, adequate sets, and remainder points."""

from __future__ import annotations

import itertools
from typing import Iterable

from . import traces as tr
from .universe import ModelRel, Universe, intersect_countable, intersect_with_uncountable

__all__ = [
    "ModelRel",
    "compare",
    "is_adequate",
    "leq",
    "closure_under_countable",
    "closure_under_uncountable",
    "min_above",
    "remainder_pairs",
    "r_star",
    "s_star",
]


def compare(u: Universe, m: str, n: str) -> ModelRel:
    return u.relation(m, n)


def leq(u: Universe, m: str, n: str) -> bool:
    """``M ≤ N``: either ``M < N`` or ``M ∼ N``."""
    return u.relation(m, n) in (ModelRel.LESS, ModelRel.EQUIV)


def is_adequate(u: Universe, models: Iterable[str]) -> bool:
    ids = sorted(set(models))
    return all(
        u.relation(a, b) is not ModelRel.INCOMPARABLE
        for a, b in itertools.combinations(ids, 2)
    )


def closure_under_countable(u: Universe, models: Iterable[str], n: str) -> frozenset[str]:
    """Add ``M ∩ N`` for every ``M < N`` in the set."""
    a = frozenset(models)
    extra = {intersect_countable(u, m, n) for m in a if u.relation(m, n) is ModelRel.LESS}
    return a | extra


def closure_under_uncountable(u: Universe, models: Iterable[str], p: str) -> frozenset[str]:
    a = frozenset(models)
    return a | {intersect_with_uncountable(u, m, p) for m in a}


def min_above(u: Universe, m: str, beta: int) -> int | None:
    """Least ordinal of ``trace(m)`` at or above ``beta``; ``None`` if there is none."""
    return tr.min_at_least(u.cm(m).trace, beta)


def remainder_pairs(u: Universe, models: Iterable[str]):
    """Yield ``(K, M, γ)`` for ordered ∼-pairs with ``γ = min(M \\ β_{K,M})`` defined.

    Diagonal pairs never contribute: a model has nothing at or above its
    comparison point with itself.
    """
    ids = sorted(set(models))
    for k, m in itertools.permutations(ids, 2):
        if u.relation(k, m) is not ModelRel.EQUIV:
            continue
        g = min_above(u, m, u.beta(k, m))
        if g is not None:
            yield k, m, g


def r_star(u: Universe, models: Iterable[str], s: Iterable[int] | None = None) -> frozenset[int]:
    out = frozenset(g for _, _, g in remainder_pairs(u, models))
    if s is not None:
        out &= frozenset(s)
    return out


def s_star(u: Universe, models: Iterable[str]) -> frozenset[int]:
    st = u.config.stationary
    out = set()
    for k, m, g in remainder_pairs(u, models):
        common = u.cm(k).index_set & u.cm(m).index_set
        out.update(i for i in common if g in st[i])
    return frozenset(out)
