"""Orbital schemes of transitive permutation groups and the feasibility
engine for primitive groups on 3p points."""

from .exactalg import QuadraticNumber, format_quadratic, parse_quadratic
from .permcore import GroupData, Permutation, compose, enumerate_group, orbital_decomposition
from .scheme import EigenvalueTable, eigentable, intersection_tensor

__all__ = [
    "EigenvalueTable",
    "GroupData",
    "Permutation",
    "QuadraticNumber",
    "compose",
    "eigentable",
    "enumerate_group",
    "format_quadratic",
    "intersection_tensor",
    "orbital_decomposition",
    "parse_quadratic",
]
