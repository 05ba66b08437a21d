import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from sidecond import adequacy as ad
from sidecond.fixtures import _replace_model, u1, u1_with_stranger
from sidecond.universe import ModelRel, generate_universe

U = u1()


def test_relations_in_u1():
    assert ad.compare(U, "M0", "M2") is ModelRel.EQUIV
    assert ad.compare(U, "M0", "N") is ModelRel.LESS
    assert ad.compare(U, "N", "M0") is ModelRel.GREATER
    assert ad.compare(U, "M2", "N") is ModelRel.LESS
    for m in U.countables:
        assert ad.compare(U, m, m) is ModelRel.EQUIV
    assert ad.compare(u1_with_stranger(), "X", "N") is ModelRel.INCOMPARABLE


def test_adequacy():
    assert ad.is_adequate(U, {"M0", "M2", "N"})
    assert ad.is_adequate(U, set())
    assert all(ad.is_adequate(U, {m}) for m in U.countables)
    assert not ad.is_adequate(u1_with_stranger(), {"X", "N"})


def test_clearing_the_set_family_breaks_adequacy():
    bare = _replace_model(U, "N", set_family=frozenset())
    assert not ad.is_adequate(bare, {"M0", "N"})


def test_closures():
    assert ad.closure_under_countable(U, {"M0", "N"}, "N") == {"M0", "N"}
    assert ad.closure_under_countable(U, {"N"}, "N") == {"N"}
    assert ad.closure_under_uncountable(U, {"M0", "M2", "N"}, "P") == {"M0", "M2", "N"}
    assert ad.closure_under_uncountable(U, set(), "P") == frozenset()


def test_min_above():
    assert ad.min_above(U, "M2", 28) == 28
    assert ad.min_above(U, "M0", 28) is None
    assert ad.min_above(U, "N", 0) == 0


def test_remainders_in_u1():
    assert ad.r_star(U, {"M0", "M2", "N"}) == {28}
    assert ad.r_star(U, {"M0", "M2", "N"}, {20}) == frozenset()
    assert ad.r_star(U, {"N"}) == frozenset()
    assert ad.r_star(U, {"M0", "M2"}) <= ad.r_star(U, {"M0", "M2", "N"})
    assert ad.s_star(U, {"M0", "M2", "N"}) == {1}
    assert ad.s_star(U, set()) == frozenset()


def test_leq_is_less_or_equivalent():
    assert ad.leq(U, "M0", "N") and ad.leq(U, "M0", "M2") and ad.leq(U, "M2", "M0")
    assert not ad.leq(U, "N", "M0")


UNIVERSES = [generate_universe(s) for s in range(12)]


@st.composite
def adequate_split(draw):
    u = draw(st.sampled_from(UNIVERSES))
    ids = sorted(u.countables)
    a = draw(st.sets(st.sampled_from(ids), max_size=4))
    b = draw(st.sets(st.sampled_from(ids), max_size=4))
    return u, frozenset(a), frozenset(b)


@settings(max_examples=150, deadline=None)
@given(adequate_split())
def test_remainder_functions_are_monotone(case):
    u, a, b = case
    if not ad.is_adequate(u, a | b):
        return
    assert ad.r_star(u, a) | ad.r_star(u, b) <= ad.r_star(u, a | b)
    assert ad.s_star(u, a) | ad.s_star(u, b) <= ad.s_star(u, a | b)


def test_trichotomy_matches_delta_on_generated_universes():
    for u in UNIVERSES:
        for m, n in itertools.combinations(sorted(u.countables), 2):
            rel = ad.compare(u, m, n)
            if rel is ModelRel.INCOMPARABLE:
                continue
            want = {-1: ModelRel.LESS, 0: ModelRel.EQUIV, 1: ModelRel.GREATER}[
                (u.delta(m) > u.delta(n)) - (u.delta(m) < u.delta(n))
            ]
            assert rel is want
