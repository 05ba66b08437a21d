"""Pinned premise-hit floors, one per property.

Each entry is ``(rate, measured)``: ``measured`` is the number of premise
hits seen in 1000 trials at seed 0 when the floor was pinned, and ``rate``
is half the measured rate, rounded down to a hundredth.  A run of ``n``
trials must reach ``max(1, ceil(rate * n))`` hits.  Re-measure with
``sidecond fuzz-all --seed 0 --trials 1000`` after changing a generator.
"""

from __future__ import annotations

import math

FLOORS: dict[str, tuple[float, int]] = {
    "P-2.15": (0.26, 533),
    "P-2.16": (0.5, 1000),
    "P-2.17": (0.3, 604),
    "P-2.18": (0.5, 1000),
    "P-2.24": (0.5, 1000),
    "P-2.25": (0.5, 1000),
    "P-2.26": (0.27, 554),
    "P-2.27": (0.45, 909),
    "P-2.28": (0.45, 903),
    "P-2.29": (0.45, 906),
    "P-2.30": (0.32, 655),
    "P-2.32": (0.04, 98),
    "P-2.33": (0.06, 132),
    "P-3.2": (0.47, 955),
    "P-3.3": (0.12, 252),
    "P-3.4": (0.26, 523),
    "P-3.5": (0.5, 1000),
    "P-3.6": (0.21, 420),
    "P-3.7": (0.45, 910),
    "P-3.8": (0.45, 901),
    "P-4.3": (0.35, 705),
    "P-4.4": (0.04, 87),
    "P-4.5": (0.19, 385),
    "P-4.6": (0.11, 226),
    "P-4.8": (0.22, 444),
    "P-4.9": (0.5, 1000),
    "P-6.5": (0.44, 896),
    "P-6.6": (0.46, 924),
    "P-6.7": (0.45, 909),
    "P-6.9": (0.45, 909),
    "P-6.10": (0.45, 903),
    "P-6.11": (0.44, 895),
    "P-6.13": (0.45, 913),
    "P-6.15": (0.45, 911),
    "P-7.6": (0.5, 1000),
    "P-7.7": (0.5, 1000),
    "P-7.8": (0.5, 1000),
    "P-7.9": (0.5, 1000),
    "P-7.10": (0.41, 834),
    "P-7.12": (0.5, 1000),
    "P-7.13": (0.5, 1000),
    "P-7.14": (0.5, 1000),
    "P-7.15": (0.5, 1000),
    "P-7.17": (0.5, 1000),
    "P-7.19": (0.5, 1000),
    "P-8.1": (0.5, 1000),
    "P-8.2": (0.44, 899),
    "P-8.3": (0.34, 693),
    "P-8.4": (0.32, 654),
    "P-8.5": (0.33, 671),
    "P-8.6": (0.32, 651),
    "P-10.8": (0.38, 776),
    "P-10.9": (0.28, 567),
    "P-10.11": (0.28, 568),
    "P-10.13": (0.5, 1000),
    "P-11.13": (0.5, 1000),
    "P-11.14": (0.5, 1000),
    "P-11.16": (0.5, 1000),
    "P-11.17": (0.4, 814),
    "P-11.18": (0.5, 1000),
    "P-12.1": (0.5, 1000),
    "P-12.2": (0.45, 908),
    "P-12.3": (0.33, 663),
    "P-12.4": (0.33, 664),
    "P-12.5": (0.33, 660),
    "P-12.6": (0.32, 649),
}


def floor_for(pid: str, trials: int) -> int:
    """The absolute number of premise hits a run of ``trials`` must reach."""
    rate = FLOORS.get(pid, (0.05, 0))[0]
    return max(1, math.ceil(rate * trials))
