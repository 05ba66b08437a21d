"""Seeded property checking with premise accounting and replayable failures."""

from __future__ import annotations

import functools
import multiprocessing
import random
import time
from dataclasses import dataclass, field
from typing import Any

from .. import __version__
from ..documents import (
    pcond_from_doc,
    pcond_to_doc,
    qcond_from_doc,
    qcond_to_doc,
    universe_from_doc,
    universe_to_doc,
)
from ..errors import SideCondError, UnknownProperty, VacuousRun
from ..fixtures import fixture_hashes, u1
from ..product_forcing import QCondition
from ..single_forcing import PCondition
from ..traces import KAPPA
from ..universe import Universe, generate_universe
from .catalog import CATALOG, PropertySpec
from .floors import floor_for

POOL = 64
"""Generated universes a trial may draw from, besides the bundled one."""


@functools.lru_cache(maxsize=None)
def pool_universe(index: int) -> Universe:
    """``-1`` is the bundled universe; other indices are generator seeds."""
    return u1() if index < 0 else generate_universe(index)


def trial_rng(seed: int, pid: str, k: int) -> random.Random:
    return random.Random(f"{seed}/{pid}/{k}")


@dataclass
class Trial:
    index: int
    universe: int
    inputs: dict | None
    hit: bool
    ok: bool
    error: str | None = None


def run_trial(spec: PropertySpec, seed: int, k: int) -> Trial:
    rng = trial_rng(seed, spec.id, k)
    uidx = rng.randrange(-1, POOL)
    u = pool_universe(uidx)
    try:
        inputs = spec.generate(u, rng)
        hit = inputs is not None and bool(spec.premise(u, inputs))
    except SideCondError:
        return Trial(k, uidx, None, False, True)
    if not hit:
        return Trial(k, uidx, inputs, False, True)
    try:
        ok = bool(spec.conclusion(u, inputs))
        err = None
    except Exception as exc:  # a crash in the conclusion is a failed trial
        ok, err = False, f"{type(exc).__name__}: {exc}"
    return Trial(k, uidx, inputs, True, ok, err)


# --------------------------------------------------------------------------
# encoding inputs


def encode_value(u: Universe, v: Any) -> dict:
    if isinstance(v, PCondition):
        return {"type": "P", "value": pcond_to_doc(u, v)}
    if isinstance(v, QCondition):
        return {"type": "Q", "value": qcond_to_doc(u, v)}
    if isinstance(v, str):
        return {"type": "model", "value": v}
    if v is None:
        return {"type": "none"}
    if v is KAPPA:
        return {"type": "kappa"}
    if isinstance(v, bool):
        return {"type": "bool", "value": v}
    if isinstance(v, int):
        return {"type": "int", "value": v}
    if isinstance(v, frozenset):
        return {"type": "models", "value": sorted(v)}
    if isinstance(v, tuple):
        return {"type": "ints", "value": list(v)}
    if isinstance(v, dict):
        return {
            "type": "coords",
            "value": [{"index": i, "condition": pcond_to_doc(u, c)} for i, c in sorted(v.items())],
        }
    raise TypeError(f"cannot encode {type(v).__name__}")


def decode_value(u: Universe, d: dict) -> Any:
    t = d["type"]
    if t == "P":
        return pcond_from_doc(d["value"], u)
    if t == "Q":
        return qcond_from_doc(d["value"], u)
    if t == "model":
        return d["value"]
    if t == "none":
        return None
    if t == "kappa":
        return KAPPA
    if t in ("int", "bool"):
        return d["value"]
    if t == "models":
        return frozenset(d["value"])
    if t == "ints":
        return tuple(d["value"])
    if t == "coords":
        return {e["index"]: pcond_from_doc(e["condition"], u) for e in d["value"]}
    raise ValueError(f"unknown input type {t!r}")


def encode_inputs(u: Universe, inputs: dict) -> dict:
    return {k: encode_value(u, v) for k, v in sorted(inputs.items())}


def decode_inputs(u: Universe, doc: dict) -> dict:
    return {k: decode_value(u, v) for k, v in doc.items()}


def counterexample_doc(spec: PropertySpec, seed: int, trial: Trial, inputs=None) -> dict:
    u = pool_universe(trial.universe)
    return {
        "property": spec.id,
        "seed": seed,
        "trial": trial.index,
        "universeSeed": None if trial.universe < 0 else trial.universe,
        "universe": universe_to_doc(u),
        "inputs": encode_inputs(u, inputs if inputs is not None else trial.inputs),
        "error": trial.error,
    }


def replay(doc: dict) -> tuple[bool, bool]:
    """Re-evaluate a counterexample: ``(premise holds, conclusion holds)``."""
    spec = get_spec(doc["property"])
    u = universe_from_doc(doc["universe"])
    inputs = decode_inputs(u, doc["inputs"])
    if not spec.premise(u, inputs):
        return False, True
    try:
        return True, bool(spec.conclusion(u, inputs))
    except Exception:
        return True, False


# --------------------------------------------------------------------------
# outcomes


@dataclass
class CheckOutcome:
    property: str
    anchor: str
    seed: int
    trials: int
    premise_hits: int
    failures: int
    floor: int
    elapsed: float
    first_counterexample: dict | None = None
    failing_trials: list[int] = field(default_factory=list)

    @property
    def hit_rate(self) -> float:
        return self.premise_hits / self.trials if self.trials else 0.0

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.premise_hits < self.floor:
            return "vacuous"
        return "pass"

    def to_doc(self, timing: bool = False) -> dict:
        doc = {
            "property": self.property,
            "anchor": self.anchor,
            "seed": self.seed,
            "trials": self.trials,
            "premiseHits": self.premise_hits,
            "failures": self.failures,
            "floor": self.floor,
            "status": self.status,
            "firstCounterexample": self.first_counterexample,
        }
        if timing:
            doc["elapsed"] = round(self.elapsed, 3)
        return doc


def get_spec(pid: str) -> PropertySpec:
    try:
        return CATALOG[pid]
    except KeyError:
        raise UnknownProperty(f"unknown property {pid!r}", property=pid) from None


def _chunk(args: tuple[str, int, int, int]) -> list[tuple[int, bool, bool]]:
    pid, seed, lo, hi = args
    spec = CATALOG[pid]
    out = []
    for k in range(lo, hi):
        t = run_trial(spec, seed, k)
        out.append((k, t.hit, t.ok))
    return out


def run_property(
    pid: str,
    seed: int = 0,
    trials: int = 500,
    floor: int | None = None,
    jobs: int = 1,
    shrink: bool = True,
    strict: bool = True,
) -> CheckOutcome:
    """Run ``trials`` seeded trials of one property.

    ``floor`` is an absolute number of premise hits; by default it is the
    pinned floor of the property scaled to ``trials``.  Trial ``k`` depends
    only on ``(seed, pid, k)``, so the outcome does not depend on ``jobs``.

    A run with failures returns normally with ``status == "fail"``.  A run
    without failures but below the floor raises :class:`VacuousRun`, which
    carries the outcome as ``exc.outcome``; pass ``strict=False`` to get the
    outcome back with ``status == "vacuous"`` instead.
    """
    spec = get_spec(pid)
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if floor is None:
        floor = floor_for(pid, trials)
    start = time.perf_counter()
    if jobs > 1 and trials > 1:
        step = max(1, -(-trials // (jobs * 4)))
        chunks = [(pid, seed, lo, min(trials, lo + step)) for lo in range(0, trials, step)]
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            rows = [r for part in pool.map(_chunk, chunks) for r in part]
    else:
        rows = _chunk((pid, seed, 0, trials))
    rows.sort()
    hits = sum(1 for _, h, _ in rows if h)
    failing = [k for k, _, ok in rows if not ok]
    first = None
    if failing:
        t = run_trial(spec, seed, failing[0])
        inputs = t.inputs
        if shrink:
            from .shrink import shrink_inputs

            inputs = shrink_inputs(spec, pool_universe(t.universe), inputs)
        first = counterexample_doc(spec, seed, t, inputs)
    outcome = CheckOutcome(
        pid, spec.anchor, seed, trials, hits, len(failing), floor,
        time.perf_counter() - start, first, failing,
    )
    if strict and outcome.status == "vacuous":
        exc = VacuousRun(
            f"{pid}: premise held in {hits}/{trials} trials, below the floor {floor}",
            property=pid, hits=hits, trials=trials,
        )
        exc.outcome = outcome
        raise exc
    return outcome


def environment(seed: int, trials: int) -> dict:
    return {
        "seed": seed,
        "trials": trials,
        "version": __version__,
        "fixtures": fixture_hashes(),
    }


def amalgam_case_coverage(seed: int, trials: int) -> dict[str, int]:
    """How many countable-amalgam trials used each case of the definition.

    Keys are ``"1"`` to ``"7"`` and ``"extra"`` (domain elements added by
    case 7); a trial counts once per case it used.
    """
    spec = CATALOG["P-7.19"]
    from ..single_forcing import amalg_countable_traced

    counts: dict[str, int] = {}
    for k in range(trials):
        rng = trial_rng(seed, spec.id, k)
        u = pool_universe(rng.randrange(-1, POOL))
        x = spec.generate(u, rng)
        if not x or not spec.premise(u, x):
            continue
        _, tr = amalg_countable_traced(u, x["w"], x["r"], x["N"])
        for c in {str(c) for c in tr.cases.values()} | ({"extra"} if tr.extra else set()):
            counts[c] = counts.get(c, 0) + 1
    return dict(sorted(counts.items()))
