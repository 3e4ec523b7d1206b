r"""Bipartite planar maps by degree distribution, with hard particles and Ising spins.

The package computes, in exact arithmetic over Q(u):

* the degree generating function of bipartite planar maps rooted at a
  black vertex of degree 2, through the blossom-tree equations,
* the hard-particle partition function on maps rooted at a vacant edge,
* the Ising partition function on maps with degree constraints, both
  through the general degree-2-root reduction and through closed
  algebraic parametrizations,

and certifies every formula against constructive bijections
(closure/opening of blossom trees, the chain bijection on unbalanced
trees) and two independent brute-force map enumerators.
"""

__version__ = "0.1.0"

from .ratfun import Q, RatFunc
from .series import Grading, Series, var

__all__ = ["Q", "RatFunc", "Grading", "Series", "var", "__version__"]
