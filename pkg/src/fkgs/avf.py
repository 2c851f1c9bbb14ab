"""Closed forms of the averaged-gradient integrals used by the schemes.

Every nonlinearity of the system is a polynomial of degree at most two in the
line segment ``eps -> (1 - eps) a + eps b``, so the integrals over ``eps`` in
``[0, 1]`` reduce to the small formulas below. All functions act elementwise
and accept scalars or arrays.
"""

import numpy as np

__all__ = ["linear_midpoint", "quadratic_mean", "bilinear_mean", "segment_average"]


def linear_midpoint(a, b):
    return (a + b) / 2


def quadratic_mean(a, b):
    """Average of ``z**2`` along the segment from ``a`` to ``b``: ``(a^2 + ab + b^2)/3``."""
    return (a * a + a * b + b * b) / 3


def bilinear_mean(u0, u1, q0, q1):
    """Average of ``u*q`` when both move linearly from ``(u0, q0)`` to ``(u1, q1)``."""
    return (2 * u1 * q1 + u1 * q0 + u0 * q1 + 2 * u0 * q0) / 6


def segment_average(func, *endpoints, points=64):
    """Gauss-Legendre average of ``func`` along straight segments.

    ``endpoints`` come in ``(start, end)`` pairs, one pair per argument of
    ``func``. Exact for polynomial integrands of degree below ``2*points``.
    """
    if len(endpoints) % 2:
        raise ValueError("endpoints must come in (start, end) pairs")
    nodes, weights = np.polynomial.legendre.leggauss(points)
    eps = (nodes + 1) / 2
    total = 0.0
    for e, w in zip(eps, weights):
        args = [(1 - e) * a + e * b for a, b in zip(endpoints[::2], endpoints[1::2])]
        total = total + w * func(*args)
    return total / 2
