import json

import pytest

from sidecond import single_forcing as sf
from sidecond.documents import dumps
from sidecond.errors import BudgetExceeded, UnknownProperty, VacuousRun
from sidecond.fixtures import golden_amalgam, p1, u1
from sidecond.harness import catalog
from sidecond.harness.catalog import CATALOG, PropertySpec, property_ids
from sidecond.harness.enumeration import candidates, enumerate_conditions
from sidecond.harness.equivalence import check_universe
from sidecond.harness.floors import FLOORS, floor_for
from sidecond.harness.oracle import Oracle, plain
from sidecond.harness.runner import (
    amalgam_case_coverage,
    counterexample_doc,
    replay,
    run_property,
    run_trial,
)
from sidecond.harness.shrink import shrink_inputs, size, still_fails
from sidecond.single_forcing import PCondition

U = u1()


# --------------------------------------------------------------------------
# catalog and floors


def test_catalog_covers_every_property_with_a_floor():
    ids = property_ids()
    assert len(ids) == 66
    assert set(ids) == set(FLOORS)
    for pid in ids:
        spec = CATALOG[pid]
        assert spec.anchor and callable(spec.generate) and callable(spec.premise)


def test_property_ids_sort_numerically():
    ids = property_ids()
    assert ids.index("P-2.33") < ids.index("P-3.2") < ids.index("P-10.8")
    assert ids.index("P-7.9") < ids.index("P-7.10")


def test_floors_are_absolute_and_scale_with_trials():
    assert floor_for("P-6.15", 0) == 1
    assert floor_for("P-6.15", 1000) == 450
    assert all(rate * 1000 <= measured for rate, measured in FLOORS.values())


# --------------------------------------------------------------------------
# runner


def test_runs_are_deterministic_and_independent_of_jobs():
    a = run_property("P-8.6", seed=7, trials=120)
    b = run_property("P-8.6", seed=7, trials=120, jobs=3)
    assert dumps(a.to_doc()) == dumps(b.to_doc())
    assert a.status == "pass" and a.premise_hits >= a.floor


def test_trial_depends_only_on_seed_property_and_index():
    spec = CATALOG["P-7.19"]
    assert run_trial(spec, 3, 17) == run_trial(spec, 3, 17)


def test_zero_trials_is_vacuous():
    with pytest.raises(VacuousRun) as info:
        run_property("P-6.15", seed=0, trials=0)
    assert info.value.outcome.trials == 0
    assert run_property("P-6.15", 0, 0, strict=False).status == "vacuous"


def test_explicit_floor_is_absolute():
    out = run_property("P-6.15", seed=1, trials=100, floor=50)
    assert out.floor == 50 and out.status == "pass"
    with pytest.raises(VacuousRun):
        run_property("P-6.15", seed=1, trials=100, floor=101)


def test_unknown_property():
    with pytest.raises(UnknownProperty):
        run_property("P-99.1")


def test_timing_is_opt_in():
    out = run_property("P-2.16", seed=0, trials=20)
    assert "elapsed" not in out.to_doc()
    assert "elapsed" in out.to_doc(timing=True)


# --------------------------------------------------------------------------
# a deliberately broken operator, to exercise failures, replay and shrinking


def broken_amalgam_is_below_r(u, x):
    out = sf.amalg_countable(u, x["w"], x["r"], x["N"]).replace(g={})
    return sf.leq_p(u, out, x["r"])


BROKEN = PropertySpec(
    "P-7.19", "broken build", catalog.gen_amalg_countable,
    catalog.amalg_countable_premise, broken_amalgam_is_below_r,
)


@pytest.fixture
def broken_catalog(monkeypatch):
    monkeypatch.setitem(CATALOG, "P-7.19", BROKEN)


def padded_counterexample():
    r = sf.extend_ordinals(U, golden_amalgam(), [28])
    return {"r": r, "w": sf.restrict(U, r, "N"), "N": "N"}


def test_shrinking_a_padded_counterexample():
    x = padded_counterexample()
    assert still_fails(BROKEN, U, x)
    small = shrink_inputs(BROKEN, U, x)
    assert still_fails(BROKEN, U, small)
    assert size(small) < size(x)
    assert small["r"] == p1()
    assert small["w"] == sf.restrict(U, p1(), "N")


def test_shrinking_is_idempotent_and_keeps_minimal_inputs():
    small = shrink_inputs(BROKEN, U, padded_counterexample())
    assert shrink_inputs(BROKEN, U, small) == small


def test_passing_inputs_are_not_shrunk():
    good = CATALOG["P-7.19"]
    x = padded_counterexample()
    assert shrink_inputs(good, U, x) is x


def test_broken_build_is_caught_and_replays(broken_catalog):
    out = run_property("P-7.19", seed=2, trials=60)
    assert out.status == "fail" and out.failures > 0
    ce = out.first_counterexample
    assert ce["property"] == "P-7.19" and ce["trial"] == out.failing_trials[0]
    assert replay(json.loads(dumps(ce))) == (True, False)


def test_counterexample_documents_roundtrip(broken_catalog):
    spec = CATALOG["P-7.19"]
    t = next(t for k in range(60) if not (t := run_trial(spec, 2, k)).ok)
    doc = counterexample_doc(spec, 2, t)
    assert dumps(json.loads(dumps(doc))) == dumps(doc)
    assert replay(doc) == (True, False)


# --------------------------------------------------------------------------
# enumeration and the oracle


def test_zero_bounds_give_only_the_empty_condition():
    assert enumerate_conditions(U, 0, 0, 0) == [PCondition()]


def test_enumeration_count_is_frozen():
    conds = enumerate_conditions(U, 1, 2, 1)
    assert len(conds) == 36
    assert p1() in conds
    assert len({c.key() for c in conds}) == len(conds)
    assert all(sf.validate_p(U, c) == [] for c in conds)
    assert enumerate_conditions(U, 1, 2, 1) == conds


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        list(candidates(U, 2, 3, 1, budget=1000))


def test_oracle_agrees_on_the_fixtures():
    o = Oracle(U)
    assert o.violated(plain(p1())) == set()
    assert o.relation("M0", "M2") == "~" and o.relation("M0", "N") == "<"
    assert o.r_star(frozenset({"M0", "M2", "N"})) == {28}
    assert o.s_star(frozenset({"M0", "M2", "N"})) == {1}
    assert o.restrict(plain(p1()), "N") == plain(sf.restrict(U, p1(), "N"))


def test_oracle_agreement_on_small_bounds():
    rep = check_universe(U, 1, 2, 1)
    assert rep.ok, rep.mismatches[:3] or rep.lemma_failures[:3]
    assert rep.valid == 36 and rep.queries["leq"] == 36 * 36


def test_amalgam_cases_are_total_on_enumerated_triples():
    conds = enumerate_conditions(U, 2, 2, 1)
    seen = set()
    for r in conds:
        if not sf.in_dn(U, r, "N"):
            continue
        rn = sf.restrict(U, r, "N")
        for w in conds:
            if sf.condition_in(U, w, "N") and sf.leq_p(U, w, rn):
                out, trace = sf.amalg_countable_traced(U, w, r, "N")
                assert set(trace.cases) == set(out.f)
                assert all(1 <= c <= 7 for c in trace.cases.values())
                seen |= set(trace.cases.values())
    assert len(seen) >= 3


def test_generated_amalgams_reach_every_case():
    cov = amalgam_case_coverage(seed=1, trials=600)
    assert set("1234567") <= set(cov), cov
    assert min(cov[c] for c in "1234567") >= 10
