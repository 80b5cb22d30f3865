"""Desk-scale laboratory for cardinal arithmetic over atom universes
with finite supports: symmetry groups presented locally, finitely
supported subsets, explicit injections between derived domains,
oracle-driven refutation engines, and a deduction engine over
cardinal-relation facts."""

__version__ = "0.1.0"
