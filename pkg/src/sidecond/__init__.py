"""Finite side-condition forcing: universes, conditions, amalgams and a lemma harness."""

__version__ = "0.1.0"
