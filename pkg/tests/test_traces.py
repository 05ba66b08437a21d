from hypothesis import given
from hypothesis import strategies as st

from sidecond import traces as tr
from sidecond.traces import KAPPA

sets = st.sets(st.integers(0, 80), min_size=1, max_size=12)


@given(sets)
def test_bitmask_roundtrip(s):
    m = tr.from_elems(s)
    assert tr.elems(m) == sorted(s)
    assert tr.sup(m) == max(s)


@given(sets, st.integers(0, 90))
def test_below_and_min_at_least(s, a):
    m = tr.from_elems(s)
    assert tr.elems(tr.below(m, a)) == sorted(x for x in s if x < a)
    rest = [x for x in s if x >= a]
    assert tr.min_at_least(m, a) == (min(rest) if rest else None)
    assert tr.below(m, KAPPA) == m


@given(sets)
def test_initial_segments(s):
    segs = tr.initial_segments(tr.from_elems(s))
    ordered = sorted(s)
    assert [tr.elems(k) for k in segs] == [ordered[: i + 1] for i in range(len(ordered))]


def test_delta_is_the_initial_run():
    assert tr.delta(tr.from_elems([0, 1, 2, 13])) == 3
    assert tr.delta(tr.from_elems([0, 1, 2, 13]), cut=2) == 2
    assert tr.delta(tr.from_elems([1, 2])) == 0
