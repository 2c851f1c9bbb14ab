"""Periodic grids and Fourier multipliers for the fractional Laplacian.

The operator ``D^s = -(-Delta)^{s/2}`` acts diagonally in Fourier space with
symbol ``-|xi|^s``. On a tensor grid of even size the modes follow the standard
FFT ordering ``k = 0, 1, ..., N/2 - 1, -N/2, ..., -1`` and the single Nyquist
mode ``-N/2`` carries the full weight ``|N mu / 2|^s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ConfigurationError",
    "OrderDomainError",
    "ShapeError",
    "SingularOperatorError",
    "UnsupportedDimensionError",
    "GridSpec",
    "SpectralMultiplier",
    "make_grid",
    "make_multiplier",
    "apply_neg_frac_laplacian",
    "dense_matrix",
    "solve_shifted",
    "inner",
]

IMAG_RESIDUE_TOL = 1e-12


class ConfigurationError(ValueError):
    """Invalid grid configuration (odd or tiny N, degenerate box)."""


class OrderDomainError(ValueError):
    """Fractional order outside ``(1, 2]``."""


class ShapeError(ValueError):
    """Field and operator live on different grids."""


class SingularOperatorError(ZeroDivisionError):
    """A shifted operator has a vanishing Fourier symbol."""


class UnsupportedDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic tensor grid.

    ``box`` holds one ``(x_a, x_b)`` interval per axis and ``n`` the number of
    nodes per axis. The right endpoint is identified with the left one, so
    node ``j`` sits at ``x_a + j*h``.
    """

    box: tuple[tuple[float, float], ...]
    n: tuple[int, ...]
    h: tuple[float, ...] = field(init=False)
    mu: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "h", tuple((b - a) / m for (a, b), m in zip(self.box, self.n)))
        object.__setattr__(self, "mu", tuple(2 * np.pi / (b - a) for a, b in self.box))

    @property
    def dim(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def size(self) -> int:
        return int(np.prod(self.n))

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in self.box)

    @property
    def weight(self) -> float:
        """Quadrature weight of one cell (``h`` in 1D, ``h_x h_y`` in 2D)."""
        return float(np.prod(self.h))

    def axes(self) -> list[np.ndarray]:
        """1D node coordinates per axis."""
        return [a + np.arange(m) * hh for (a, _), m, hh in zip(self.box, self.n, self.h)]

    def nodes(self) -> tuple[np.ndarray, ...]:
        """Meshgrid of node coordinates, ``ij`` indexing."""
        return tuple(np.meshgrid(*self.axes(), indexing="ij"))

    def wavenumbers(self) -> list[np.ndarray]:
        """Integer mode indices per axis in FFT ordering."""
        return [np.fft.fftfreq(m, d=1.0 / m) for m in self.n]

    def refine(self, factor: int = 2) -> "GridSpec":
        return make_grid(self.box, tuple(m * factor for m in self.n))


def make_grid(box, n) -> GridSpec:
    """Build a :class:`GridSpec`.

    ``box`` may be a single ``(x_a, x_b)`` pair (1D) or a sequence of pairs;
    ``n`` an int or a per-axis sequence. A scalar ``n`` with a 2D box is
    broadcast to both axes.
    """
    box_arr = np.asarray(box, dtype=float)
    if box_arr.ndim == 1:
        box_arr = box_arr[None, :]
    if box_arr.ndim != 2 or box_arr.shape[1] != 2:
        raise ConfigurationError(f"box must be (x_a, x_b) pairs, got {box!r}")
    dim = box_arr.shape[0]
    if dim not in (1, 2):
        raise ConfigurationError(f"only 1D and 2D grids are supported, got dim={dim}")

    n_tuple = (int(n),) * dim if np.ndim(n) == 0 else tuple(int(m) for m in n)
    if len(n_tuple) != dim:
        raise ConfigurationError(f"n has {len(n_tuple)} entries for a {dim}D box")
    for m in n_tuple:
        if m < 4 or m % 2:
            raise ConfigurationError(f"points per axis must be even and >= 4, got {m}")
    for a, b in box_arr:
        if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
            raise ConfigurationError(f"degenerate interval ({a}, {b})")
    return GridSpec(tuple((float(a), float(b)) for a, b in box_arr), n_tuple)


@dataclass(frozen=True, eq=False)
class SpectralMultiplier:
    """Table of ``|k mu|^s`` values (radial in 2D) in FFT ordering."""

    grid: GridSpec
    s: float
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)


def _check_order(s: float) -> float:
    s = float(s)
    if not (1.0 < s <= 2.0):
        raise OrderDomainError(f"fractional order must lie in (1, 2], got {s}")
    return s


def _symbol(grid: GridSpec, s: float) -> np.ndarray:
    ks = [mu * k for mu, k in zip(grid.mu, grid.wavenumbers())]
    mesh = np.meshgrid(*ks, indexing="ij")
    xi2 = sum(k * k for k in mesh)
    return xi2 ** (s / 2)


def make_multiplier(grid: GridSpec, s: float) -> SpectralMultiplier:
    s = _check_order(s)
    return SpectralMultiplier(grid, s, _symbol(grid, s))


def half_multiplier(m: SpectralMultiplier) -> SpectralMultiplier:
    """Symbol ``|xi|^{s/2}``, i.e. the square root of ``m``.

    Not range-checked: ``s/2`` falls outside the operator's admissible orders.
    """
    return SpectralMultiplier(m.grid, m.s / 2, _symbol(m.grid, m.s / 2))


def _fftn(f):
    return np.fft.fftn(f) if f.ndim > 1 else np.fft.fft(f)


def _ifftn(f):
    return np.fft.ifftn(f) if f.ndim > 1 else np.fft.ifft(f)


def _check_shape(f: np.ndarray, grid: GridSpec):
    if f.shape != grid.shape:
        raise ShapeError(f"field shape {f.shape} does not match grid {grid.shape}")


def _real(z: np.ndarray, scale: float) -> np.ndarray:
    residue = np.max(np.abs(z.imag), initial=0.0)
    if residue > IMAG_RESIDUE_TOL * max(1.0, scale):
        raise ArithmeticError(f"real-symbol operator left imaginary residue {residue:.3e}")
    return np.ascontiguousarray(z.real)


def apply_multiplier(f: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Multiply the Fourier coefficients of ``f`` by ``values``.

    Real input gives real output; complex input stays complex.
    """
    out = _ifftn(values * _fftn(f))
    if np.iscomplexobj(f):
        return out
    return _real(out, float(np.max(np.abs(out), initial=0.0)))


def apply_neg_frac_laplacian(f: np.ndarray, m: SpectralMultiplier) -> np.ndarray:
    """Return ``D^s f = -(-Delta)^{s/2} f`` computed through the FFT."""
    f = np.asarray(f)
    _check_shape(f, m.grid)
    return apply_multiplier(f, -m.values)


def dense_matrix(grid: GridSpec, s: float) -> np.ndarray:
    """Explicit ``N x N`` matrix of ``D^s`` on a 1D grid.

    Built straight from the element formula with the split Nyquist weight
    ``c_{+-N/2} = 2``; used as an oracle for the transform route.
    """
    if grid.dim != 1:
        raise UnsupportedDimensionError("dense_matrix is only defined on 1D grids")
    s = _check_order(s)
    (n,) = grid.n
    if n > 256:
        raise ConfigurationError("dense_matrix is an oracle; N must be <= 256")
    (mu,) = grid.mu
    x = grid.axes()[0]
    k = np.arange(-n // 2, n // 2 + 1)
    c = np.where(np.abs(k) == n // 2, 2.0, 1.0)
    weight = np.abs(k * mu) ** s / (n * c)
    diff = x[:, None] - x[None, :]
    phase = np.exp(-1j * mu * k[None, None, :] * diff[:, :, None])
    mat = -(phase * weight).sum(axis=2)
    return mat.real


def solve_shifted(a, b, m: SpectralMultiplier, rhs: np.ndarray) -> np.ndarray:
    """Solve ``(a I - b D^s) x = rhs`` mode by mode.

    ``a`` and ``b`` may be complex (Cayley-type solves); ``rhs`` may be real or
    complex. The Fourier symbol of the operator is ``a + b*|xi|^s``.
    """
    rhs = np.asarray(rhs)
    _check_shape(rhs, m.grid)
    denom = a + b * m.values
    if np.any(np.abs(denom) == 0.0):
        raise SingularOperatorError(f"a + b*lambda vanishes for a={a}, b={b}")
    out = _ifftn(_fftn(rhs) / denom)
    if np.iscomplexobj(rhs) or np.iscomplexobj(denom):
        return out
    return _real(out, float(np.max(np.abs(out), initial=0.0)))


def inner(f: np.ndarray, g: np.ndarray, grid: GridSpec) -> float:
    """Discrete ``L^2`` inner product ``w * sum(f g)``."""
    return grid.weight * float(np.sum(f * g))
