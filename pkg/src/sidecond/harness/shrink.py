"""Greedy single-deletion shrinking of failing property inputs.

A failing input is repeatedly replaced by the first single-element deletion
that still fails, until no deletion does.  The result is therefore
1-minimal, and shrinking it again returns it unchanged.

An element is deleted from every input at once before it is tried one input
at a time, because property inputs are usually linked (``w ≤ r↾N`` keeps
``w`` and ``r`` in step).  Deleting a model or an ordinal also drops the
trace sets that lose their last provenance, which is what keeps the smaller
condition well-formed.
"""

from __future__ import annotations

from typing import Any, Iterator

from ..errors import SideCondError
from ..product_forcing import QCondition
from ..single_forcing import PCondition, provenances
from ..universe import Elem, Universe
from .catalog import PropertySpec


def still_fails(spec: PropertySpec, u: Universe, inputs: dict) -> bool:
    """Premise holds and the conclusion is false or raises."""
    try:
        if not spec.premise(u, inputs):
            return False
    except SideCondError:
        return False
    try:
        return not spec.conclusion(u, inputs)
    except Exception:
        return True


# --------------------------------------------------------------------------
# deleting one element from one condition


def _drop_sets(p: PCondition, gone: set[int]) -> PCondition:
    f = {
        x: tuple(k for k in chain if k not in gone)
        for x, chain in p.f.items()
        if not (x.kind == 1 and x.value in gone)
    }
    g = {
        (k, x): v for (k, x), v in p.g.items()
        if k not in gone and not (x.kind == 1 and x.value in gone)
    }
    return PCondition(f, g, p.a, p.s_label)


def _tidy(u: Universe, p: PCondition) -> PCondition:
    """Drop trace-set elements that no longer have a provenance."""
    while True:
        orphans = {
            x.value for x in p.f
            if x.kind == 1 and not _safe_provenances(u, p, x)
        }
        if not orphans:
            return p
        p = _drop_sets(p, orphans)


def _safe_provenances(u: Universe, p: PCondition, x: Elem) -> list:
    try:
        return provenances(u, p, x)
    except SideCondError:
        return []


def drop_model(u: Universe, p: PCondition, m: str) -> PCondition:
    if m not in p.a:
        return p
    return _tidy(u, PCondition(p.f, p.g, p.a - {m}, p.s_label))


def drop_elem(u: Universe, p: PCondition, x: Elem) -> PCondition:
    if x not in p.f:
        return p
    if x.kind == 1:
        return _tidy(u, _drop_sets(p, {x.value}))
    f = {y: c for y, c in p.f.items() if y != x}
    g = {key: v for key, v in p.g.items() if key[1] != x}
    return _tidy(u, PCondition(f, g, p.a, p.s_label))


def drop_member(p: PCondition, x: Elem, k: int) -> PCondition:
    if k not in p.f.get(x, ()):
        return p
    f = {**p.f, x: tuple(c for c in p.f[x] if c != k)}
    g = {key: v for key, v in p.g.items() if key != (k, x)}
    return PCondition(f, g, p.a, p.s_label)


def drop_g(p: PCondition, key, v: int) -> PCondition:
    if v not in p.g.get(key, ()):
        return p
    return PCondition(p.f, {**p.g, key: p.g[key] - {v}}, p.a, p.s_label)


def _p_atoms(p: PCondition) -> Iterator[tuple]:
    for m in sorted(p.a):
        yield ("model", m)
    for x in p.dom():
        yield ("elem", x)
    for x in p.dom():
        for k in p.f[x]:
            yield ("member", x, k)
    for key, vals in p.g.items():
        for v in sorted(vals):
            yield ("g", key, v)


def _apply_p(u: Universe, p: PCondition, atom: tuple) -> PCondition:
    kind = atom[0]
    if kind == "model":
        return drop_model(u, p, atom[1])
    if kind == "elem":
        return drop_elem(u, p, atom[1])
    if kind == "member":
        return drop_member(p, atom[1], atom[2])
    if kind == "g":
        return drop_g(p, atom[1], atom[2])
    return p


def _apply(u: Universe, v: Any, atom: tuple) -> Any:
    """``v`` with ``atom`` deleted wherever it occurs (``v`` itself if nowhere)."""
    if isinstance(v, PCondition):
        return _apply_p(u, v, atom)
    if isinstance(v, QCondition):
        if atom[0] == "index":
            return QCondition({i: c for i, c in v.F.items() if i != atom[1]}, v.a)
        a = v.a - {atom[1]} if atom[0] == "model" else v.a
        return QCondition({i: _apply_p(u, c, atom) for i, c in v.F.items()}, a)
    if isinstance(v, frozenset) and atom[0] == "model":
        return v - {atom[1]}
    if isinstance(v, dict):
        if atom[0] == "index":
            return {i: c for i, c in v.items() if i != atom[1]}
        return {i: _apply(u, c, atom) for i, c in v.items()}
    return v


def atoms(v: Any) -> Iterator[tuple]:
    """The deletable elements of one input value, in a fixed order."""
    if isinstance(v, PCondition):
        yield from _p_atoms(v)
    elif isinstance(v, QCondition):
        for m in sorted(v.a):
            yield ("model", m)
        for i in v.F:
            yield ("index", i)
        for c in v.F.values():
            yield from _p_atoms(c)
    elif isinstance(v, frozenset):
        for m in sorted(v):
            yield ("model", m)
    elif isinstance(v, dict):
        for i in v:
            yield ("index", i)
        for c in v.values():
            yield from atoms(c)


def _unique(items):
    seen = set()
    for it in items:
        key = repr(it)
        if key not in seen:
            seen.add(key)
            yield it


def deletions(u: Universe, inputs: dict) -> Iterator[dict]:
    """Inputs with one element deleted: everywhere at once, then per input."""
    names = sorted(inputs)
    every = list(_unique(a for n in names for a in atoms(inputs[n])))
    for atom in every:
        out = {n: _apply(u, inputs[n], atom) for n in names}
        if out != inputs:
            yield out
    for n in names:
        for atom in _unique(atoms(inputs[n])):
            smaller = _apply(u, inputs[n], atom)
            if smaller != inputs[n]:
                yield {**inputs, n: smaller}


def size(inputs: dict) -> int:
    return sum(1 for v in inputs.values() for _ in atoms(v))


def shrink_inputs(spec: PropertySpec, u: Universe, inputs: dict, max_steps: int = 10_000) -> dict:
    """A 1-minimal failing input no larger than ``inputs``.

    Inputs that do not fail are returned unchanged.
    """
    if not still_fails(spec, u, inputs):
        return inputs
    current = dict(inputs)
    for _ in range(max_steps):
        for smaller in deletions(u, current):
            if still_fails(spec, u, smaller):
                current = smaller
                break
        else:
            break
    return current
