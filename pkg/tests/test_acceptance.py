"""Acceptance criteria AC1–AC10, each at its stated threshold.

Every test stores a one-line verdict that is printed in the terminal
summary, so ``pytest tests/test_acceptance.py`` ends with one PASS or FAIL
line per criterion.
"""

import os
import random
import time

from sidecond import documents as docs
from sidecond import single_forcing as sf
from sidecond.cli import main
from sidecond.fixtures import (
    condition_mutants,
    data_text,
    golden_amalgam,
    p1,
    q1,
    u1,
    universe_mutants,
    w_example,
)
from sidecond.harness.catalog import gen_condition, gen_qcondition
from sidecond.harness.equivalence import check_all, small_universes
from sidecond.harness.runner import run_property
from sidecond.universe import generate_universe, validate_universe

JOBS = max(2, min(8, os.cpu_count() or 2))


def runs(pids, trials, seed=0):
    return {pid: run_property(pid, seed=seed, trials=trials, jobs=JOBS, strict=False) for pid in pids}


def summary(outs):
    return ", ".join(f"{p} {o.premise_hits}/{o.trials} hits {o.failures} fail" for p, o in outs.items())


def test_ac1_fixture_validation(record):
    start = time.perf_counter()
    ok_u1 = validate_universe(u1()).ok
    muts = universe_mutants()
    wrong = [n for n, u, want in muts if set(validate_universe(u).violated()) != want]
    elapsed = time.perf_counter() - start
    ok = ok_u1 and not wrong and len(muts) >= 8 and elapsed < 1
    assert record("AC1", ok, f"U1 valid={ok_u1}, {len(muts) - len(wrong)}/{len(muts)} mutants as predicted, {elapsed:.2f}s")


def test_ac2_condition_validation(record):
    start = time.perf_counter()
    ok_p1 = sf.validate_p(u1(), p1()) == []
    muts = condition_mutants()
    wrong = [n for n, u, p, c in muts if {v.clause for v in sf.validate_p(u, p)} != {c}]
    clauses = {c for *_, c in muts}
    elapsed = time.perf_counter() - start
    ok = ok_p1 and not wrong and clauses == {f"C{i}" for i in range(1, 8)} and elapsed < 1
    assert record("AC2", ok, f"p1 valid={ok_p1}, {len(muts) - len(wrong)}/7 mutants exact, {elapsed:.2f}s")


def test_ac3_golden_amalgam(record):
    u = u1()
    out = sf.amalg_countable(u, w_example(), p1(), "N")
    same = docs.dumps(docs.pcond_to_doc(u, out)) == data_text("amalgam.json")
    same = same and out == golden_amalgam()
    below = sf.is_condition(u, out) and sf.leq_p(u, out, p1()) and sf.leq_p(u, out, w_example())
    assert record("AC3", same and below, f"document equal={same}, valid and below both={below}")


def test_ac4_amalgamation_soundness(record):
    start = time.perf_counter()
    outs = runs(["P-6.15", "P-7.19", "P-11.16", "P-11.18"], 1000)
    elapsed = time.perf_counter() - start
    ok = all(o.failures == 0 and o.premise_hits >= 300 for o in outs.values()) and elapsed < 120
    assert record("AC4", ok, f"{summary(outs)}; {elapsed:.1f}s")


def test_ac5_commuting_identities(record):
    outs = runs(["P-8.6", "P-12.6"], 500)
    ok = all(o.failures == 0 and o.premise_hits >= 100 for o in outs.values())
    assert record("AC5", ok, summary(outs))


def test_ac6_remainder_additivity(record):
    outs = runs(["P-3.5", "P-3.8", "P-10.13"], 1000)
    ok = all(o.failures == 0 and o.premise_hits > 0 for o in outs.values())
    assert record("AC6", ok, summary(outs))


def test_ac7_monotonicity_and_exchange(record):
    outs = runs(["P-8.1", "P-12.1", "P-8.4", "P-11.17", "P-12.4"], 500)
    ok = all(o.failures == 0 and o.premise_hits > 0 for o in outs.values())
    assert record("AC7", ok, summary(outs))


def test_ac8_oracle_equivalence(record):
    start = time.perf_counter()
    small = small_universes(6)
    universes = [u1()] + [u for _, u in small]
    assert all(len(u.countables) <= 3 for u in universes)
    rep = check_all(universes, max_a=2, max_dom=3, max_g=1)
    elapsed = time.perf_counter() - start
    q = rep.queries
    detail = (
        f"{len(universes)} universes, {q['validate']} candidates, {rep.valid} valid, "
        f"{q['leq']} order pairs, {q['restrict']} restrictions, "
        f"{len(rep.mismatches)} mismatches, {len(rep.lemma_failures)} lemma failures, {elapsed:.0f}s"
    )
    ok = rep.ok and elapsed < 600 and all(q[p] > 0 for p in ("P-4.5", "P-4.6", "P-7.9", "P-7.10"))
    assert record("AC8", ok, detail), rep.mismatches[:3] or rep.lemma_failures[:3]


def test_ac9_serialization(record):
    u = u1()
    texts = {
        "U1": (data_text("U1.json"), lambda t: docs.dumps(docs.universe_to_doc(docs.universe_from_doc(docs.loads(t))))),
        "p1": (data_text("p1.json"), lambda t: docs.dumps(docs.pcond_to_doc(u, docs.pcond_from_doc(docs.loads(t), u)))),
        "q1": (data_text("q1.json"), lambda t: docs.dumps(docs.qcond_to_doc(u, docs.qcond_from_doc(docs.loads(t), u)))),
    }
    bad = [name for name, (t, rt) in texts.items() if rt(t) != t]
    generated = 0
    for seed in range(34):
        g = generate_universe(seed)
        rng = random.Random(seed)
        items = [
            (docs.dumps(docs.universe_to_doc(g)), lambda t: docs.dumps(docs.universe_to_doc(docs.universe_from_doc(docs.loads(t))))),
            (docs.dumps(docs.pcond_to_doc(g, gen_condition(g, rng)["p"])),
             lambda t: docs.dumps(docs.pcond_to_doc(g, docs.pcond_from_doc(docs.loads(t), g)))),
            (docs.dumps(docs.qcond_to_doc(g, gen_qcondition(g, rng)["p"])),
             lambda t: docs.dumps(docs.qcond_to_doc(g, docs.qcond_from_doc(docs.loads(t), g)))),
        ]
        for t, rt in items:
            generated += 1
            if rt(t) != t:
                bad.append(f"seed {seed}")
    ok = not bad and generated >= 100
    assert record("AC9", ok, f"fixtures U1, p1, q1 and {generated} generated artifacts; {len(bad)} differ")


def _check_output(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_ac10_determinism(capsys, record):
    cases = [("P-8.6", "7", "200"), ("P-12.6", "3", "200"), ("P-7.19", "11", "150")]
    ok = True
    for pid, seed, trials in cases:
        base = ["check", pid, "--seed", seed, "--trials", trials]
        outs = {_check_output(capsys, *base, "--jobs", j) for j in ("1", "1", "2", "5")}
        ok = ok and len(outs) == 1
    assert record("AC10", ok, f"{len(cases)} check invocations, byte-identical across repeats and --jobs 1/2/5")
