"""Finite sets of ordinals stored as Python int bitmasks.

Bit ``n`` set means ordinal ``n`` belongs to the set.  Every trace set the
package handles is small (ordinals below a few hundred), so arbitrary
precision ints give constant-ish time subset tests, intersections and
min/max queries without any extension module.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Union


@total_ordering
class _KappaTop:
    """The symbolic top ordinal: larger than every natural number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("kappa")

    def __repr__(self):
        return "kappa"

    def __reduce__(self):
        return (_KappaTop, ())


KAPPA = _KappaTop()

Ordinal = Union[int, _KappaTop]


def from_elems(elems: Iterable[int]) -> int:
    mask = 0
    for e in elems:
        if e < 0:
            raise ValueError(f"negative ordinal {e}")
        mask |= 1 << e
    return mask


def elems(mask: int) -> list[int]:
    out = []
    n = 0
    while mask:
        if mask & 1:
            out.append(n)
        mask >>= 1
        n += 1
    return out


def sup(mask: int) -> int:
    """Largest element.  Trace sets are never empty."""
    if not mask:
        raise ValueError("sup of the empty set")
    return mask.bit_length() - 1


def delta(mask: int, cut: int | None = None) -> int:
    """Least ordinal missing from ``mask ∩ [0, cut)``.

    Without ``cut`` this is the length of the initial run of the whole set.
    """
    run = (~mask & (mask + 1)).bit_length() - 1
    return run if cut is None else min(run, cut)


def below(mask: int, alpha: Ordinal) -> int:
    """``mask`` intersected with ``[0, alpha)``."""
    if alpha is KAPPA:
        return mask
    return mask & ((1 << alpha) - 1)


def min_at_least(mask: int, beta: int) -> int | None:
    rest = (mask >> beta) << beta
    if not rest:
        return None
    return (rest & -rest).bit_length() - 1


def contains(mask: int, n: int) -> bool:
    return n >= 0 and (mask >> n) & 1 == 1


def subset(a: int, b: int) -> bool:
    return a & ~b == 0


def initial_segments(mask: int) -> list[int]:
    """All nonempty initial segments, shortest first."""
    out = []
    acc = 0
    for e in elems(mask):
        acc |= 1 << e
        out.append(acc)
    return out


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, elems(mask))) + "}"
