"""Symbolic calculator for p-torsion Brauer classes of mixed-characteristic
complete discretely valued fields, with replayable proof traces, plus a
combinatorial planner for splitting ramification on arithmetic surfaces."""

from .residue import ResidueElement, DifferentialForm

__all__ = ["ResidueElement", "DifferentialForm"]
