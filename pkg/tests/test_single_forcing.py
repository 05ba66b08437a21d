import pytest

from sidecond import single_forcing as sf
from sidecond.errors import DomainClash, NotInDClass, NotInModel, PreconditionFailed
from sidecond.fixtures import M0_20, N20, condition_mutants, golden_amalgam, p1, u1, w_example
from sidecond.harness.enumeration import enumerate_conditions
from sidecond.single_forcing import PCondition, empty_condition
from sidecond.universe import OrdS, SetE

U = u1()
P1 = p1()
EMPTY = empty_condition()


def clauses(u, p):
    return {v.clause for v in sf.validate_p(u, p)}


def test_p1_and_the_empty_condition_are_valid():
    assert sf.validate_p(U, P1) == []
    assert sf.validate_p(U, EMPTY) == []


@pytest.mark.parametrize("name,u,p,clause", condition_mutants(), ids=lambda x: x if isinstance(x, str) else "")
def test_mutants_fail_exactly_one_clause(name, u, p, clause):
    assert clauses(u, p) == {clause}


def test_violations_are_ordered_and_carry_witnesses():
    bad = P1.replace(g={(N20, OrdS(20)): {13}}, a={"N", "M0"})
    vs = sf.validate_p(U, bad)
    assert [v.clause for v in vs] == sorted(v.clause for v in vs)
    assert all(v.witness for v in vs)


def test_order_basics():
    assert sf.leq_p(U, P1, P1)
    assert sf.leq_p(U, P1, EMPTY)
    weaker = P1.replace(g={})
    assert sf.leq_p(U, P1, weaker)
    assert not sf.leq_p(U, weaker, P1)


def test_extend_ordinals():
    base = PCondition(a={"N"})
    out = sf.extend_ordinals(U, base, [20])
    assert out == PCondition(f={OrdS(20): (N20,), SetE(N20): ()}, a={"N"})
    assert sf.is_condition(U, out) and sf.leq_p(U, out, base)
    assert sf.extend_ordinals(U, P1, []) == P1
    with pytest.raises(DomainClash):
        sf.extend_ordinals(U, P1, [20])


def test_saturation_fixes_coherent_conditions():
    assert sf.saturate_g(U, P1) == P1
    amalg = golden_amalgam()
    assert sf.saturate_g(U, amalg).g == amalg.g


def test_saturation_is_idempotent_on_enumerated_conditions():
    for p in enumerate_conditions(U, 1, 2, 1):
        once = sf.saturate_g(U, p)
        assert sf.saturate_g(U, once) == once
        assert sf.is_condition(U, once) and sf.leq_p(U, once, p)
        assert once.f == p.f and once.a == p.a


def test_adjoin_model():
    out = sf.adjoin_model(U, w_example(), "N")
    assert out.a == {"M0", "N"}
    assert out.f[OrdS(20)] == (M0_20, N20)
    assert out.f[SetE(N20)] == (M0_20,)
    assert out.gval(N20, OrdS(20)) == frozenset()
    assert sf.is_condition(U, out) and sf.leq_p(U, out, w_example())
    assert sf.adjoin_model(U, EMPTY, "N") == PCondition(a={"N"})
    with pytest.raises(NotInModel):
        sf.adjoin_model(U, P1, "M2")


def test_closing_under_models():
    assert sf.close_under_q(U, P1, "P") == P1
    out = sf.close_under_n(U, P1, "N")
    assert sf.is_condition(U, out) and sf.leq_p(U, out, P1)


def test_restriction_classes():
    assert sf.in_dn(U, P1, "N")
    assert not sf.in_dn(U, EMPTY, "N")
    assert sf.in_dq(U, P1, "P")
    assert sf.in_dq(U, w_example(), "P")


def test_restrictions():
    assert sf.restrict_to_uncountable(U, P1, "P") == P1
    assert sf.restrict_to_uncountable(U, EMPTY, "P") == EMPTY
    assert sf.restrict_to_countable(U, P1, "N") == PCondition(f={OrdS(20): ()})
    with pytest.raises(NotInDClass):
        sf.restrict_to_countable(U, EMPTY, "N")


def test_worked_amalgam():
    out = sf.amalg_countable(U, w_example(), P1, "N")
    assert out == golden_amalgam()
    assert sf.is_condition(U, out)
    assert sf.leq_p(U, out, P1) and sf.leq_p(U, out, w_example())


def test_worked_amalgam_cases():
    _, trace = sf.amalg_countable_traced(U, w_example(), P1, "N")
    assert trace.cases[OrdS(20)] == 2
    assert trace.cases[SetE(M0_20)] == 1
    assert trace.cases[SetE(N20)] == 4
    assert trace.case4_alpha[SetE(N20)] == 20


def test_amalgam_with_the_restriction_itself():
    r = sf.restrict_to_countable(U, P1, "N")
    out = sf.amalg_countable(U, r, P1, "N")
    assert sf.leq_p(U, out, P1)
    assert all(set(c) <= set(out.f[x]) for x, c in P1.f.items())


def test_uncountable_amalgam():
    w = sf.restrict_to_uncountable(U, P1, "P")
    out = sf.amalg_uncountable(U, w, P1, "P")
    assert out.a == w.a | P1.a
    assert sf.is_condition(U, out) and sf.leq_p(U, out, P1)


def test_amalgam_names_the_failing_hypothesis():
    with pytest.raises(PreconditionFailed, match="r ∈ D_N"):
        sf.amalg_countable(U, EMPTY, EMPTY, "N")
    with pytest.raises(PreconditionFailed, match="w ≤ r↾N"):
        sf.amalg_countable(U, PCondition(f={OrdS(28): ()}, a=set()), P1, "N")
