"""Exact and numerical checks for the graded nonlinear Schrodinger hierarchy.

The package is organized around a small stack of exact scalar rings
(Gaussian rationals, multivariate Laurent polynomials, rational
functions, Grassmann algebra) on top of which the physics layers are
built: graded tensor operators and R-matrices, the explicit series
solution of the classical equations of motion, Poisson-bracket and
Lax-pair machinery, the quantum exchange relations, a graded Fock
representation of the creation/annihilation algebra, and the nonlocal
charges that extend the symmetry algebra.  Every check is either exact
(residual is the zero of its ring) or carries an explicit numerical
tolerance and convergence order.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import GradingError, PoleError, RingMismatchError

__all__ = [
    "GradingError",
    "PoleError",
    "RingMismatchError",
    "__version__",
]
