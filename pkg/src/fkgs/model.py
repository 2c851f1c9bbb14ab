"""Discrete phase-space state, parameters and conserved functionals.

The complex Schrodinger field is split as ``phi = q + i p`` and the wave
velocity rescaled to ``v = u_t / 2``, giving four real unknowns ``(u, v, p, q)``
per grid node.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .spectral import GridSpec, OrderDomainError, ShapeError, SpectralMultiplier

__all__ = ["InputError", "Params", "State", "InitialData", "initialize", "mass", "energy", "phi_magnitude"]


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    alpha: float
    beta: float
    tau: float
    t_final: float
    tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        for name in ("alpha", "beta"):
            val = getattr(self, name)
            if not (1.0 < val <= 2.0):
                raise OrderDomainError(f"{name} must lie in (1, 2], got {val}")
        if not self.tau > 0:
            raise InputError(f"tau must be positive, got {self.tau}")
        if not self.t_final > 0:
            raise InputError(f"t_final must be positive, got {self.t_final}")
        if not self.tol > 0:
            raise InputError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise InputError(f"max_iter must be >= 1, got {self.max_iter}")

    def with_tau(self, tau: float) -> "Params":
        return replace(self, tau=tau)


@dataclass(frozen=True, eq=False)
class State:
    """Nodal values of ``(u, v, p, q)`` at time ``t``."""

    grid: GridSpec
    u: np.ndarray
    v: np.ndarray
    p: np.ndarray
    q: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        for name in ("u", "v", "p", "q"):
            arr = getattr(self, name)
            if arr.shape != self.grid.shape:
                raise ShapeError(f"{name} has shape {arr.shape}, grid is {self.grid.shape}")

    @property
    def phi(self) -> np.ndarray:
        return self.q + 1j * self.p

    def fields(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.u, self.v, self.p, self.q

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(f)) for f in self.fields())

    def max_abs(self) -> float:
        return max(float(np.abs(f).max()) for f in self.fields())

    def shifted(self, offset: int, axis: int = 0) -> "State":
        """Periodic index rotation of all four fields."""
        roll = lambda f: np.roll(f, offset, axis=axis)
        return replace(self, u=roll(self.u), v=roll(self.v), p=roll(self.p), q=roll(self.q))

    @classmethod
    def zeros(cls, grid: GridSpec, t: float = 0.0) -> "State":
        z = lambda: np.zeros(grid.shape)
        return cls(grid, z(), z(), z(), z(), t)


@dataclass(frozen=True)
class InitialData:
    """Callables of the node coordinates (one array per axis)."""

    phi0: Callable[..., np.ndarray]
    u0: Callable[..., np.ndarray]
    ut0: Callable[..., np.ndarray]


def _sample(func, coords, grid) -> np.ndarray:
    vals = np.broadcast_to(np.asarray(func(*coords)), grid.shape)
    if not np.all(np.isfinite(vals)):
        raise InputError("initial data produced non-finite samples")
    return vals


def initialize(grid: GridSpec, data: InitialData) -> State:
    coords = grid.nodes()
    phi = _sample(data.phi0, coords, grid).astype(complex)
    u = _sample(data.u0, coords, grid).real.astype(float)
    ut = _sample(data.ut0, coords, grid).real.astype(float)
    return State(grid, u.copy(), ut / 2, phi.imag.copy(), phi.real.copy(), 0.0)


def mass(state: State) -> float:
    return state.grid.weight * float(np.sum(state.p**2 + state.q**2))


def _check_multiplier(m: SpectralMultiplier, order: float, grid: GridSpec, label: str):
    if m.grid != grid:
        raise ShapeError(f"{label}-multiplier built on a different grid")
    if not np.isclose(m.s, order):
        raise ShapeError(f"{label}-multiplier has order {m.s}, expected {order}")


def energy(state: State, m_alpha: SpectralMultiplier, m_beta: SpectralMultiplier,
           alpha: float | None = None, beta: float | None = None) -> float:
    """Discrete Hamiltonian, weighted by the cell size.

    ``H = (w/4) (-P.D^a P - Q.D^a Q - U.D^b U + U.U + 4 V.V - 2 U.(P^2 + Q^2))``
    """
    grid = state.grid
    _check_multiplier(m_alpha, m_alpha.s if alpha is None else alpha, grid, "alpha")
    _check_multiplier(m_beta, m_beta.s if beta is None else beta, grid, "beta")
    u, v, p, q = state.fields()
    # Parseval: -f.D^s f = sum_k lambda_k |f_k|^2 / size. The symbol is even in k,
    # so packing p + iq into one transform adds no cross terms.
    size = grid.size
    w_hat = np.fft.fftn(q + 1j * p)
    u_hat = np.fft.fftn(u)
    terms = (
        np.sum(m_alpha.values * np.abs(w_hat) ** 2) / size
        + np.sum(m_beta.values * np.abs(u_hat) ** 2) / size
        + np.sum(u * u)
        + 4 * np.sum(v * v)
        - 2 * np.sum(u * (p * p + q * q))
    )
    return grid.weight * float(terms) / 4


def phi_magnitude(state: State) -> np.ndarray:
    return np.hypot(state.p, state.q)
