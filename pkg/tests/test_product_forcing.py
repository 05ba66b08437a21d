import pytest

from sidecond import product_forcing as pf
from sidecond import single_forcing as sf
from sidecond.errors import CoordinateMissing, DomainClash, NotInDClass, PreconditionFailed
from sidecond.fixtures import golden_q_amalgam, p1, q1, u1, w_q_example
from sidecond.product_forcing import QCondition
from sidecond.single_forcing import PCondition
from sidecond.universe import OrdS

U = u1()
Q1 = q1()
P1_0 = p1().replace(s_label=0)
TOP = QCondition()


def test_validation():
    assert pf.validate_q(U, Q1) == []
    assert pf.validate_q(U, TOP) == []
    bad = pf.validate_q(U, QCondition(a={"M0", "M2"}))
    assert [v.clause for v in bad] == ["Q4"]
    assert bad[0].witness["index"] == 1


def test_wrong_stationary_label_is_a_coordinate_violation():
    wrong = QCondition({0: p1()}, {"N"})
    assert "Q3" in {v.clause for v in pf.validate_q(U, wrong)}


def test_order():
    assert pf.leq_q(U, Q1, Q1)
    assert pf.leq_q(U, Q1, TOP)
    weaker = QCondition({0: P1_0.replace(g={})}, {"N"})
    assert pf.leq_q(U, Q1, weaker) and not pf.leq_q(U, weaker, Q1)


def test_uplus():
    out = pf.uplus(U, Q1, [1])
    assert out.F[1] == PCondition(a={"N"}, s_label=1)
    assert out.F[0] == Q1.F[0] and out.a == Q1.a
    assert pf.leq_q(U, out, Q1)
    assert pf.uplus(U, Q1, []) == Q1
    with pytest.raises(DomainClash):
        pf.uplus(U, Q1, [0])


def test_lower_coordinates():
    assert pf.lower_coordinates(U, Q1, {}) == Q1
    sat = sf.saturate_g(U, P1_0)
    out = pf.lower_coordinates(U, Q1, {0: sat})
    assert pf.is_q_condition(U, out) and pf.leq_q(U, out, Q1) and out.a == Q1.a
    with pytest.raises(PreconditionFailed):
        pf.lower_coordinates(U, Q1, {0: PCondition(s_label=0)})


def test_restriction_classes():
    assert pf.in_dnq(U, Q1, "N")
    assert pf.in_dpq(U, TOP, "P")
    assert pf.in_dnq(U, pf.uplus(U, Q1, [1]), "N")


def test_restrictions():
    assert pf.restrict_q(U, Q1, "P") == Q1
    assert pf.restrict_q(U, Q1, "N") == QCondition({0: PCondition(f={OrdS(20): ()}, s_label=0)})
    assert pf.restrict_q(U, TOP, "P") == TOP
    with pytest.raises(NotInDClass):
        pf.restrict_q(U, QCondition({0: PCondition(s_label=0)}), "N")


def test_worked_product_amalgam():
    w = pf.lower_coordinates(U, pf.restrict_q(U, Q1, "N"), {0: w_q_example().F[0]})
    w = QCondition(w.F, w.a | {"M0"})
    res = pf.oplus_q_traced(U, w, Q1, "N")
    assert res.condition == golden_q_amalgam()
    assert res.normalized == ()
    assert pf.leq_q(U, res.condition, Q1) and pf.leq_q(U, res.condition, w)


def test_product_amalgam_opens_missing_coordinates():
    w = pf.uplus(U, pf.restrict_q(U, Q1, "N"), [1])
    res = pf.oplus_q_traced(U, w, Q1, "N")
    assert res.normalized == (1,)
    assert sorted(res.condition.F) == [0, 1]
    assert pf.leq_q(U, res.condition, Q1) and pf.leq_q(U, res.condition, w)


def test_projection():
    assert pf.project_coordinate(U, TOP, 3) == PCondition(s_label=3)
    assert pf.project_coordinate(U, Q1, 0) == P1_0
    with pytest.raises(CoordinateMissing):
        pf.project_coordinate(U, Q1, 1)
