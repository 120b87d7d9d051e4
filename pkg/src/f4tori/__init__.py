"""Normalizers of maximal tori in the finite groups F4(q).

The package rebuilds the F4 root system, its structure constants and the
Tits group, computes the tori fixed by twisted Frobenius maps and checks
minimal supplements and minimal lifts of their normalizers.
"""
from .rootsys import enumerate_roots, extraspecial_pairs, precede, structure_constants
from .weylgrp import weyl_group
from .extweyl import tits_group
from .symtorus import power_formula
from .fixedtori import fixed_torus, normalizer_order
from .supplement import analyze_supplement, oracle_min_supplement

__version__ = "0.1.0"

__all__ = [
    "enumerate_roots",
    "extraspecial_pairs",
    "precede",
    "structure_constants",
    "weyl_group",
    "tits_group",
    "power_formula",
    "fixed_torus",
    "normalizer_order",
    "analyze_supplement",
    "oracle_min_supplement",
]
