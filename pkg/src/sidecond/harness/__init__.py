"""Property checking over random universes and conditions."""
