"""
Algebra layer: finite groups, homology, coefficient rings, group rings and the SK1 engine.

Nothing in this package prints; results are returned as values and
failures are raised as ``sk1_lab.errors`` exceptions.
"""

from .abelian import AbelianGroupPresentation
from .groups import FiniteGroup, build_group, named_group
from .homology import CoefficientModule, h2_ab, h2_bar, homology
from .rings import RingDescriptor, build_ring, coinvariants, compare_coinvariants, compare_pair
from .group_ring import GroupRing
from .engine import certify, covariants_direct, psi_orbits, sk1, theta_target_pgroup
from .lab import SUITES, run_suite

__all__ = [
    'AbelianGroupPresentation',
    'FiniteGroup',
    'build_group',
    'named_group',
    'CoefficientModule',
    'h2_ab',
    'h2_bar',
    'homology',
    'RingDescriptor',
    'build_ring',
    'coinvariants',
    'compare_coinvariants',
    'compare_pair',
    'GroupRing',
    'certify',
    'covariants_direct',
    'psi_orbits',
    'sk1',
    'theta_target_pgroup',
    'SUITES',
    'run_suite',
]
