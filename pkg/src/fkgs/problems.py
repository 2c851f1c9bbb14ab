"""Benchmark problems: the 1D soliton, the 2D plane wave and the 2D Gaussian.

Closed forms are only available for the classical case ``alpha = beta = 2``
(soliton) and for plane waves (any order, since they are Fourier modes).
"""

from __future__ import annotations

import numpy as np

from .model import InitialData, InputError, State
from .spectral import GridSpec

__all__ = [
    "U0_VARIANTS",
    "example_41_initial",
    "exact_solution_alpha2_1d",
    "plane_wave_frequency",
    "plane_wave_solution_2d",
    "exact_solution_alpha2_2d",
    "example_42_initial",
    "example_43_initial",
    "state_from_solution",
]

U0_VARIANTS = ("exact", "printed")


def _soliton_constants(r):
    if not abs(r) < 1:
        raise InputError(f"soliton velocity must satisfy |r| < 1, got {r}")
    c = 1.0 - r * r
    return c, 1.0 / (2.0 * np.sqrt(c))


def _sech(z):
    return 1.0 / np.cosh(z)


def example_41_initial(r: float = -0.8, x0: float = 0.0, u0_variant: str = "exact") -> InitialData:
    """Initial data of the 1D soliton problem.

    ``u0_variant="exact"`` samples the travelling-wave solution at ``t = 0``:
    amplitude ``3/(4(1-r^2))`` for ``u`` and ``3r/(4(1-r^2)^{3/2})`` for
    ``u_t``. ``"printed"`` moves the factor ``r`` from ``u_t`` to ``u``, which
    is the commonly quoted form; it is not consistent with the soliton.
    """
    c, k = _soliton_constants(r)
    if u0_variant not in U0_VARIANTS:
        raise InputError(f"u0_variant must be one of {U0_VARIANTS}, got {u0_variant!r}")
    amp_phi = 3 * np.sqrt(2) / (4 * np.sqrt(c))
    if u0_variant == "exact":
        amp_u, amp_ut = 3 / (4 * c), 3 * r / (4 * c**1.5)
    else:
        amp_u, amp_ut = 3 * r / (4 * c), 3 / (4 * c**1.5)

    def phi0(x):
        return amp_phi * _sech(k * (x - x0)) ** 2 * np.exp(1j * r * x)

    def u0(x):
        return amp_u * _sech(k * (x - x0)) ** 2

    def ut0(x):
        z = k * (x - x0)
        return amp_ut * _sech(z) ** 2 * np.tanh(z)

    return InitialData(phi0, u0, ut0)


def exact_solution_alpha2_1d(grid: GridSpec, r: float, x0: float, t: float):
    """Soliton of the classical system sampled on ``grid`` at time ``t``.

    Returns ``(phi, u)``; the solution is not periodic, so it is only a valid
    reference while the tails are negligible at the box edges.
    """
    c, k = _soliton_constants(r)
    (x,) = grid.nodes()
    envelope = _sech(k * (x - r * t - x0)) ** 2
    omega = (1 - r * r + r**4) / (2 * c)
    phi = 3 * np.sqrt(2) / (4 * np.sqrt(c)) * envelope * np.exp(1j * (r * x + omega * t))
    u = 3 / (4 * c) * envelope
    return phi, u


def plane_wave_frequency(alpha: float, amplitude: float = 1.0, omega: float = 1.0) -> float:
    """Frequency ``theta`` making ``A exp(i(omega(x+y) - theta t))`` with ``u = A^2`` exact.

    The mode ``(omega, omega)`` has ``|xi|^2 = 2 omega^2``, so
    ``theta = (2 omega^2)^{alpha/2} / 2 - A^2``. For ``A = omega = 1`` and
    ``alpha = 2`` this vanishes and the wave is stationary.
    """
    return 0.5 * (2 * omega * omega) ** (alpha / 2) - amplitude * amplitude


def plane_wave_solution_2d(grid: GridSpec, t: float, alpha: float = 2.0, amplitude: float = 1.0,
                           omega: float = 1.0, theta: float | None = None):
    """Plane-wave solution ``(phi, u)`` on a 2D grid.

    ``theta`` defaults to :func:`plane_wave_frequency`; passing another value
    evaluates the formula anyway (it then no longer solves the system).
    """
    if grid.dim != 2:
        raise InputError("plane wave is defined on 2D grids")
    if theta is None:
        theta = plane_wave_frequency(alpha, amplitude, omega)
    x, y = grid.nodes()
    phi = amplitude * np.exp(1j * (omega * (x + y) - theta * t))
    u = np.full(grid.shape, amplitude * amplitude)
    return phi, u


def exact_solution_alpha2_2d(grid: GridSpec, t: float, theta: float | None = None):
    return plane_wave_solution_2d(grid, t, alpha=2.0, theta=theta)


def example_42_initial(amplitude: float = 1.0, omega: float = 1.0) -> InitialData:
    return InitialData(
        lambda x, y: amplitude * np.exp(1j * omega * (x + y)),
        lambda x, y: np.full(np.broadcast(x, y).shape, amplitude * amplitude),
        lambda x, y: np.zeros(np.broadcast(x, y).shape),
    )


def example_43_initial() -> InitialData:
    """Gaussian pulse with a ``sech`` background: no closed form."""
    return InitialData(
        lambda x, y: (1 + 1j) * np.exp(-(x * x + y * y)),
        lambda x, y: _sech(x * x + y * y),
        lambda x, y: np.sin(x + y) * _sech(-2 * (x * x + y * y)),
    )


def state_from_solution(grid: GridSpec, phi: np.ndarray, u: np.ndarray, ut: np.ndarray, t: float = 0.0) -> State:
    """Pack a sampled ``(phi, u, u_t)`` into a :class:`State`."""
    return State(grid, np.array(u, float), np.array(ut, float) / 2, np.array(phi.imag), np.array(phi.real), t)
