"""Every catalog property, at a seed other than the one its floor was pinned on."""

import pytest

from sidecond.harness.catalog import property_ids
from sidecond.harness.runner import run_property


@pytest.mark.parametrize("pid", property_ids())
def test_property_holds_above_its_floor(pid):
    out = run_property(pid, seed=1, trials=200)
    assert out.failures == 0, out.first_counterexample
    assert out.status == "pass"
