"""Exact rational toolkit for the 3-SAT relaxation polytope family.

Everything here computes with arbitrary-precision rationals; there is no
floating point anywhere on a result path.  The package covers:

* an exact two-phase simplex LP maximizer with rational linear algebra,
* builders for the five constraint systems (SATP_LP, SATP^2_LP, BQP_LP,
  BQP in standard form, MET),
* integral-vertex machinery and 1-skeleton analysis, fractional-vertex
  construction, and exhaustive LP-vertex enumeration at desk scale,
* MAX-3SAT / X3SAT / NAE-3SAT objective constructions,
* polynomial integer recognition for column-balanced objectives with
  witness extraction,
* the 2-3 edge-constrained bipartite graph coloring solver built on it.
"""

from satpoly.rational import Rational, parse_rational, format_rational
from satpoly.linsys import (
    LinearSystem,
    LpResult,
    lp_maximize,
    rank,
    unique_solution,
)
from satpoly.blockpoint import BlockPoint, ObjectiveVector
from satpoly import builders, ecbgc, recognition, reductions, vertices

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "LinearSystem",
    "LpResult",
    "lp_maximize",
    "rank",
    "unique_solution",
    "BlockPoint",
    "ObjectiveVector",
    "builders",
    "ecbgc",
    "recognition",
    "reductions",
    "vertices",
]
