"""The bundled running example and its documented mutants.

``U1`` is a hand-built universe with three countable models and one
uncountable model.  The conditions ``p1``, ``w`` and the amalgam of the two
are written out literally here, so they double as golden values: nothing in
this module calls the operators that produce them.
"""

from __future__ import annotations

import dataclasses
import hashlib
from importlib import resources

from . import traces as tr
from .product_forcing import QCondition
from .single_forcing import PCondition
from .universe import CountableModel, OrdS, SetE, UncountableModel, Universe, UniverseConfig

M0_TRACE = tr.from_elems([0, 1, 2, 13, 20, 21])
M2_TRACE = tr.from_elems([0, 1, 2, 13, 20, 21, 28, 29])
N_TRACE = tr.from_elems([0, 1, 2, 3, 4, 5, 6, 13, 14, 20, 21, 22, 28, 29, 30])
X_TRACE = tr.from_elems([0, 1, 2, 3, 16])

N20 = tr.from_elems([0, 1, 2, 3, 4, 5, 6, 13, 14])
M0_20 = tr.from_elems([0, 1, 2, 13])

BOTH = frozenset({0, 1})


def u1_config() -> UniverseConfig:
    return UniverseConfig(
        size=40,
        omega1_cut=10,
        lambda_set=(12, 20, 28, 32, 36),
        stationary=(frozenset({20}), frozenset({28})),
        lambda_star=2,
    )


def u1_models() -> tuple[list[CountableModel], list[UncountableModel]]:
    countables = [
        CountableModel("M0", M0_TRACE, BOTH),
        CountableModel("M2", M2_TRACE, BOTH),
        CountableModel(
            "N", N_TRACE, BOTH,
            set_family=frozenset(tr.initial_segments(M2_TRACE)),
            model_family=frozenset({"M0", "M2"}),
            simple=True,
        ),
    ]
    uncountables = [
        UncountableModel("P", 36, BOTH, frozenset({"M0", "M2", "N"}), simple=True),
    ]
    return countables, uncountables


def u1() -> Universe:
    cs, us = u1_models()
    return Universe(u1_config(), cs, us)


def u1_with_stranger() -> Universe:
    """U1 plus a model ``X`` that is incomparable with ``N`` (and with ``M0``)."""
    cs, us = u1_models()
    big = dataclasses.replace(us[0], model_family=us[0].model_family | {"X"})
    return Universe(u1_config(), cs + [CountableModel("X", X_TRACE, BOTH)], [big])


def p1() -> PCondition:
    return PCondition(
        f={OrdS(20): (N20,), SetE(N20): ()},
        g={(N20, OrdS(20)): {15}},
        a={"N"},
    )


def w_example() -> PCondition:
    return PCondition(f={OrdS(20): (M0_20,), SetE(M0_20): ()}, a={"M0"})


def golden_amalgam() -> PCondition:
    """``w ⊕_N p1`` computed by hand, case by case."""
    return PCondition(
        f={
            OrdS(20): (M0_20, N20),
            SetE(M0_20): (),
            SetE(N20): (M0_20,),
        },
        g={(N20, OrdS(20)): {15}},
        a={"M0", "N"},
    )


def q1() -> QCondition:
    return QCondition({0: _relabel(p1(), 0)}, {"N"})


def _relabel(p: PCondition, label: int | None) -> PCondition:
    return p.replace(s_label=label)


def golden_q_amalgam() -> QCondition:
    return QCondition({0: _relabel(golden_amalgam(), 0)}, {"M0", "N"})


def w_q_example() -> QCondition:
    return QCondition({0: _relabel(w_example(), 0)}, {"M0"})


# --------------------------------------------------------------------------
# documented mutants


def _replace_model(u: Universe, mid: str, **changes) -> Universe:
    cs = [dataclasses.replace(m, **changes) if m.id == mid else m for m in u.countables.values()]
    us = [dataclasses.replace(p, **changes) if p.id == mid else p for p in u.uncountables.values()]
    return Universe(u.config, cs, us)


def _replace_config(u: Universe, **changes) -> Universe:
    return Universe(
        dataclasses.replace(u.config, **changes),
        u.countables.values(),
        u.uncountables.values(),
    )


def universe_mutants() -> list[tuple[str, Universe, frozenset[str]]]:
    """Single-field edits of U1 with the axioms each one must break."""
    base = u1()
    cs, us = u1_models()
    twin = CountableModel("M0b", M0_TRACE, BOTH)
    return [
        ("drop 32 from the comparison points",
         _replace_config(base, lambda_set=(12, 20, 28, 36)), frozenset({"A6"})),
        ("clear the set family of N",
         _replace_model(base, "N", set_family=frozenset()), frozenset({"A11", "A13"})),
        ("drop 32 and 36 from the comparison points",
         _replace_config(base, lambda_set=(12, 20, 28)), frozenset({"A2"})),
        ("put 5 into the trace of M0",
         _replace_model(base, "M0", trace=M0_TRACE | (1 << 5)), frozenset({"A1"})),
        ("make the two stationary sets overlap",
         _replace_config(base, stationary=(frozenset({20, 28}), frozenset({28}))),
         frozenset({"A14"})),
        ("lower the cut of P to 22",
         _replace_model(base, "P", cut=22), frozenset({"A1"})),
        ("shrink the index set of P to {0}",
         _replace_model(base, "P", index_set=frozenset({0})),
         frozenset({"A8", "A9", "A10"})),
        ("remove M0 from the model family of N",
         _replace_model(base, "N", model_family=frozenset({"M2"})), frozenset({"A10"})),
        ("add a second id for the trace of M0",
         Universe(base.config, cs + [twin], us), frozenset({"A1"})),
        ("let N contain {0,1,2,14,21} without its initial segment {0,1,2,14}",
         _replace_model(base, "N", set_family=frozenset(tr.initial_segments(M2_TRACE))
                        | {tr.from_elems([0, 1, 2, 14, 21])}),
         frozenset({"A7"})),
    ]


def condition_mutants() -> list[tuple[str, Universe, PCondition, str]]:
    """Edits of p1 (or of the golden amalgam) that break exactly one clause."""
    u = u1()
    p = p1()
    amalg = golden_amalgam()
    return [
        ("add the incomparable model X to A",
         u1_with_stranger(), p.replace(a={"N", "X"}), "C1"),
        ("add the ordinal 12, which is not in S",
         u, p.replace(f={**p.f, OrdS(12): ()}), "C2"),
        ("drop N∩20 from the domain but keep it in f(20)",
         u, p.replace(f={OrdS(20): (N20,)}), "C3"),
        ("set g(N∩20, 20) to {13}, below sup(N∩20)",
         u, p.replace(g={(N20, OrdS(20)): {13}}), "C4"),
        ("put 15 into g(M0∩20, 20) but not into g(M0∩20, N∩20)",
         u, amalg.replace(g={**amalg.g, (M0_20, OrdS(20)): {15}}), "C5"),
        ("add M0 to A without its trace in f(20)",
         u, p.replace(a={"N", "M0"}), "C6"),
        ("take A = {M0, M2} with nothing in the domain",
         u, PCondition(a={"M0", "M2"}), "C7"),
    ]


# --------------------------------------------------------------------------
# bundled documents


DATA_FILES = ("U1.json", "p1.json", "w.json", "amalgam.json", "q1.json")


def data_text(name: str) -> str:
    return resources.files("sidecond").joinpath("data", name).read_text(encoding="utf-8")


def data_path(name: str) -> str:
    return str(resources.files("sidecond").joinpath("data", name))


def fixture_hashes() -> dict[str, str]:
    return {
        name: hashlib.sha256(data_text(name).encode("utf-8")).hexdigest()
        for name in DATA_FILES
    }
