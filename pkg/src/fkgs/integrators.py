"""Fully discrete conservative time steppers.

Each scheme advances ``(U, V, P, Q)`` by one step of size ``tau``. Two linear
blocks appear in all of them and both are diagonal in Fourier space:

* the wave block, written for the midpoint ``V_h = (V^0 + V^1)/2``::

      (1 + tau^2/4 (lambda_b + 1)) V_h = V^0 - tau/4 (lambda_b + 1) U^0 + tau/4 g

  with ``U^1 = U^0 + 2 tau V_h`` and a scheme-dependent source ``g``;

* the Schrodinger block for ``w = P + iQ`` and its midpoint ``z``::

      (1 - i tau lambda_a / 4) z = w^0 + tau/2 R(z)

  where ``R`` collects the pointwise coupling with ``U``. ``w^1 = 2 z - w^0``.
  When ``R = -i c z`` for a real field ``c`` the exact solution is a Cayley
  transform, an isometry of the discrete ``L^2`` norm.

Pointwise couplings are lagged and iterated to tolerance; the stiff spectral
part is always implicit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .avf import bilinear_mean, quadratic_mean
from .model import Params, State
from .spectral import ShapeError, SpectralMultiplier, apply_neg_frac_laplacian, make_multiplier

__all__ = [
    "SchemeKind",
    "StepReport",
    "StepFailure",
    "step_fpavf",
    "step_fpavf_adjoint",
    "step_fpavf_c",
    "step_fpavf_p",
    "step_favf",
    "step",
    "evolve",
    "count_steps",
    "semi_discrete_rhs",
]


class SchemeKind(str, enum.Enum):
    FAVF = "favf"
    FPAVF = "fpavf"
    FPAVF_ADJ = "fpavf-adj"
    FPAVF_C = "fpavf-c"
    FPAVF_P = "fpavf-p"

    @classmethod
    def parse(cls, name) -> "SchemeKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for kind in cls:
            if kind.value == key or kind.name.lower().replace("_", "-") == key:
                return kind
        raise ValueError(f"unknown scheme {name!r}; choose from {[k.value for k in cls]}")


@dataclass(frozen=True)
class StepReport:
    iterations: int
    residual: float
    converged: bool

    def __add__(self, other: "StepReport") -> "StepReport":
        return StepReport(
            self.iterations + other.iterations,
            max(self.residual, other.residual),
            self.converged and other.converged,
        )


class StepFailure(RuntimeError):
    """Fixed-point iteration did not reach the tolerance."""

    def __init__(self, message, residual, iterations, step_index=None, t=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.step_index = step_index
        self.t = t


class _Operators:
    """Symbol tables in the layouts the solvers need.

    Transforms act on the trailing grid axes, so several fields can be stacked
    into one call.
    """

    def __init__(self, m_alpha: SpectralMultiplier, m_beta: SpectralMultiplier, grid):
        if m_alpha.grid != grid or m_beta.grid != grid:
            raise ShapeError("multipliers and state live on different grids")
        self.shape = grid.shape
        self.axes = tuple(range(-grid.dim, 0))
        self.lam_a = m_alpha.values
        # rfftn keeps the non-negative half of the last axis; the symbol is even.
        self.lam_b = m_beta.values[..., : grid.shape[-1] // 2 + 1]

        if grid.dim == 1:
            # The 1D entry points skip numpy's n-dimensional argument handling.
            n = grid.shape[0]
            self.rfft = np.fft.rfft
            self.irfft = lambda f_hat: np.fft.irfft(f_hat, n)
            self.fft = np.fft.fft
            self.ifft = np.fft.ifft
        else:
            axes = self.axes
            self.rfft = lambda f: np.fft.rfftn(f, axes=axes)
            self.irfft = lambda f_hat: np.fft.irfftn(f_hat, s=self.shape, axes=axes)
            self.fft = lambda f: np.fft.fftn(f, axes=axes)
            self.ifft = lambda f_hat: np.fft.ifftn(f_hat, axes=axes)


def _wave_block(ops: _Operators, u0, v0, g, tau):
    """Exact solve of the linear (U, V) block for a given source ``g``."""
    shift = ops.lam_b + 1.0
    u_hat, r_hat = ops.rfft(np.stack((u0, v0 + (tau / 4) * g)))
    v_mid = ops.irfft((r_hat - (tau / 4) * shift * u_hat) / (1.0 + (tau * tau / 4) * shift))
    return u0 + 2 * tau * v_mid, 2 * v_mid - v0


def _schrodinger_sweep(ops: _Operators, w0_hat, coupling, tau, denom):
    """One fixed-point sweep ``z <- (w0 + tau/2 R) / (1 - i tau lambda_a/4)``."""
    return ops.ifft((w0_hat + (tau / 2) * ops.fft(coupling)) / denom)


def _scale(state: State) -> float:
    return 1.0 + state.max_abs()


def _norm(*arrays) -> float:
    return max(float(np.abs(a).max()) for a in arrays)


def _fail(name, residual, iterations, tol):
    raise StepFailure(
        f"{name}: no convergence after {iterations} sweeps (update {residual:.3e} > tol {tol:.1e})",
        residual,
        iterations,
    )


def _cayley(ops: _Operators, w0, c, tau, tol, max_iter, scale, name, w0_hat=None, guess=None):
    """Solve ``z - w0 = -i tau/2 (D^a/2 + diag(c)) z`` and return ``2z - w0``.

    Also returns the transform of the result, which a following solve can
    reuse. ``guess`` only changes how many sweeps are needed.
    """
    if w0_hat is None:
        w0_hat = ops.fft(w0)
    denom = 1.0 - 0.25j * tau * ops.lam_a
    w1 = w0 if guess is None else guess
    residual = math.inf
    for it in range(1, max_iter + 1):
        z_hat = (w0_hat + (tau / 2) * ops.fft(-1j * c * (w0 + w1) / 2)) / denom
        w_new = 2 * ops.ifft(z_hat) - w0
        residual = _norm(w_new - w1) / scale
        w1 = w_new
        if residual <= tol:
            return w1, 2 * z_hat - w0_hat, StepReport(it, residual, True)
    _fail(name, residual, max_iter, tol)


def _from_w(w):
    return np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag)


def _fpavf(state, tau, ops, tol, max_iter):
    u0, v0, p0, q0 = state.fields()
    u1, v1 = _wave_block(ops, u0, v0, p0 * p0 + q0 * q0, tau)
    w1, _, report = _cayley(ops, p0 + 1j * q0, u1, tau, tol, max_iter, _scale(state), "FPAVF")
    p1, q1 = _from_w(w1)
    return replace(state, u=u1, v=v1, p=p1, q=q1, t=state.t + tau), report


def _fpavf_adjoint(state, tau, ops, tol, max_iter):
    u0, v0, p0, q0 = state.fields()
    w1, _, report = _cayley(ops, p0 + 1j * q0, u0, tau, tol, max_iter, _scale(state), "FPAVF adjoint")
    p1, q1 = _from_w(w1)
    u1, v1 = _wave_block(ops, u0, v0, p1 * p1 + q1 * q1, tau)
    return replace(state, u=u1, v=v1, p=p1, q=q1, t=state.t + tau), report


def _fpavf_c(state, tau, ops, tol, max_iter):
    # FPAVF at tau/2 then its adjoint at tau/2. Both Cayley solves use the
    # same coupling U*, so the second starts from the linear extrapolation
    # 2 w* - w0 and reuses the transform of w*.
    half = tau / 2
    u0, v0, p0, q0 = state.fields()
    scale = _scale(state)
    u_s, v_s = _wave_block(ops, u0, v0, p0 * p0 + q0 * q0, half)
    w0 = p0 + 1j * q0
    w_s, w_s_hat, r1 = _cayley(ops, w0, u_s, half, tol, max_iter, scale, "FPAVF-C first half")
    scale = max(scale, 1.0 + max(float(np.abs(u_s).max()), float(np.abs(v_s).max()), float(np.abs(w_s).max())))
    w1, _, r2 = _cayley(ops, w_s, u_s, half, tol, max_iter, scale, "FPAVF-C second half",
                        w0_hat=w_s_hat, guess=2 * w_s - w0)
    p1, q1 = _from_w(w1)
    u1, v1 = _wave_block(ops, u_s, v_s, p1 * p1 + q1 * q1, half)
    return replace(state, u=u1, v=v1, p=p1, q=q1, t=state.t + tau), r1 + r2


def _fpavf_p(state, tau, ops, tol, max_iter):
    u0, v0, p0, q0 = state.fields()
    g0 = p0 * p0 + q0 * q0
    w0 = p0 + 1j * q0
    w0_hat = ops.fft(w0)
    denom = 1.0 - 0.25j * tau * ops.lam_a
    scale = _scale(state)
    u1, v1, p1, q1, w1 = u0, v0, p0, q0, w0
    residual = math.inf
    for it in range(1, max_iter + 1):
        u_new, v_new = _wave_block(ops, u0, v0, (g0 + p1 * p1 + q1 * q1) / 2, tau)
        u_mid = (u0 + u_new) / 2
        z = _schrodinger_sweep(ops, w0_hat, -1j * u_mid * (w0 + w1) / 2, tau, denom)
        w_new = 2 * z - w0
        residual = _norm(u_new - u1, v_new - v1, w_new - w1) / scale
        u1, v1, w1 = u_new, v_new, w_new
        p1, q1 = _from_w(w1)
        if residual <= tol:
            return replace(state, u=u1, v=v1, p=p1, q=q1, t=state.t + tau), StepReport(it, residual, True)
    _fail("FPAVF-P", residual, max_iter, tol)


def _favf(state, tau, ops, tol, max_iter):
    u0, v0, p0, q0 = state.fields()
    w0_hat = ops.fft(p0 + 1j * q0)
    denom = 1.0 - 0.25j * tau * ops.lam_a
    scale = _scale(state)
    u1, v1, p1, q1 = u0, v0, p0, q0
    residual = math.inf
    for it in range(1, max_iter + 1):
        g = quadratic_mean(p0, p1) + quadratic_mean(q0, q1)
        u_new, v_new = _wave_block(ops, u0, v0, g, tau)
        coupling = bilinear_mean(u0, u_new, q0, q1) - 1j * bilinear_mean(u0, u_new, p0, p1)
        z = _schrodinger_sweep(ops, w0_hat, coupling, tau, denom)
        p_new, q_new = _from_w(2 * z - (p0 + 1j * q0))
        residual = _norm(u_new - u1, v_new - v1, p_new - p1, q_new - q1) / scale
        u1, v1, p1, q1 = u_new, v_new, p_new, q_new
        if residual <= tol:
            return replace(state, u=u1, v=v1, p=p1, q=q1, t=state.t + tau), StepReport(it, residual, True)
    _fail("FAVF", residual, max_iter, tol)


_KERNELS = {
    SchemeKind.FAVF: _favf,
    SchemeKind.FPAVF: _fpavf,
    SchemeKind.FPAVF_ADJ: _fpavf_adjoint,
    SchemeKind.FPAVF_C: _fpavf_c,
    SchemeKind.FPAVF_P: _fpavf_p,
}


def step(scheme, state: State, params: Params, m_alpha: SpectralMultiplier, m_beta: SpectralMultiplier,
         tau: Optional[float] = None):
    """Advance ``state`` by one step of ``scheme``.

    ``tau`` overrides ``params.tau``; negative values step backwards, which
    is how the adjoint and symmetry relations are checked.
    """
    kernel = _KERNELS[SchemeKind.parse(scheme)]
    tau = params.tau if tau is None else float(tau)
    if tau == 0:
        raise ValueError("time step must be nonzero")
    ops = _Operators(m_alpha, m_beta, state.grid)
    return kernel(state, tau, ops, params.tol, params.max_iter)


def step_fpavf(state, params, m_alpha, m_beta, tau=None):
    """First-order partitioned step: wave block with old ``|phi|^2``, then Cayley with ``U^1``."""
    return step(SchemeKind.FPAVF, state, params, m_alpha, m_beta, tau)


def step_fpavf_adjoint(state, params, m_alpha, m_beta, tau=None):
    """Adjoint of :func:`step_fpavf`: Cayley with ``U^0`` first, then the wave block with new ``|phi|^2``."""
    return step(SchemeKind.FPAVF_ADJ, state, params, m_alpha, m_beta, tau)


def step_fpavf_c(state, params, m_alpha, m_beta, tau=None):
    """Symmetric composition: half step of FPAVF followed by a half step of its adjoint."""
    return step(SchemeKind.FPAVF_C, state, params, m_alpha, m_beta, tau)


def step_fpavf_p(state, params, m_alpha, m_beta, tau=None):
    return step(SchemeKind.FPAVF_P, state, params, m_alpha, m_beta, tau)


def step_favf(state, params, m_alpha, m_beta, tau=None):
    """Fully implicit averaged vector field step. Conserves energy, not mass."""
    return step(SchemeKind.FAVF, state, params, m_alpha, m_beta, tau)


def count_steps(t_final: float, tau: float) -> int:
    """Number of steps taken to reach ``t_final``.

    Exact multiples give ``t_final / tau``; otherwise the last time level is
    the largest multiple of ``tau`` not beyond ``t_final``.
    """
    ratio = t_final / tau
    return max(0, int(math.floor(ratio + 1e-9 * max(1.0, ratio))))


Observer = Callable[[int, State, StepReport], None]


def evolve(state: State, params: Params, scheme, observer: Optional[Observer] = None,
           m_alpha: Optional[SpectralMultiplier] = None, m_beta: Optional[SpectralMultiplier] = None) -> State:
    """Apply ``scheme`` repeatedly up to ``params.t_final``.

    ``observer(step_index, state, report)`` runs after every step, with
    ``step_index`` counted from 1.
    """
    kind = SchemeKind.parse(scheme)
    m_alpha = m_alpha or make_multiplier(state.grid, params.alpha)
    m_beta = m_beta or make_multiplier(state.grid, params.beta)
    ops = _Operators(m_alpha, m_beta, state.grid)
    kernel = _KERNELS[kind]
    tau = params.tau
    n_steps = count_steps(params.t_final, tau)
    t0 = state.t
    t_end = t0 + params.t_final
    for m in range(1, n_steps + 1):
        try:
            state, report = kernel(state, tau, ops, params.tol, params.max_iter)
        except StepFailure as exc:
            exc.step_index = m
            exc.t = t0 + (m - 1) * tau
            exc.args = (f"step {m} (t={exc.t:.6g}): {exc.args[0]}",)
            raise
        # Accumulating t += tau drifts; pin it to the step count.
        t = t0 + m * tau
        if m == n_steps and abs(t - t_end) <= 1e-9 * abs(tau):
            t = t_end
        state = replace(state, t=t)
        if observer is not None:
            observer(m, state, report)
    return state


def semi_discrete_rhs(state: State, m_alpha: SpectralMultiplier, m_beta: SpectralMultiplier):
    """Right-hand side ``(U_t, V_t, P_t, Q_t)`` of the spatially discrete system."""
    u, v, p, q = state.fields()
    g = p * p + q * q
    du = 2 * v
    dv = (apply_neg_frac_laplacian(u, m_beta) - u + g) / 2
    dp = apply_neg_frac_laplacian(q, m_alpha) / 2 + u * q
    dq = -apply_neg_frac_laplacian(p, m_alpha) / 2 - u * p
    return du, dv, dp, dq
