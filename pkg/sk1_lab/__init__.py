"""
sk1-lab

Computes SK1(R[G]) for p-adic group rings from the orbit formula and
checks the group logarithm, commutator factorization and homology maps
it rests on.
"""

__version__ = "0.1.0"
__author__ = "Starforge Worker"
__email__ = "star.forge.worker@gmail.com"
