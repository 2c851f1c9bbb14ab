"""Experiment drivers: refinement studies, invariant tracking and timing."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .integrators import SchemeKind, StepReport, count_steps, evolve
from .model import InitialData, InputError, Params, State, energy, initialize, mass
from .problems import (
    U0_VARIANTS,
    example_41_initial,
    example_42_initial,
    example_43_initial,
    exact_solution_alpha2_1d,
    plane_wave_solution_2d,
)
from .spectral import ConfigurationError, GridSpec, make_grid, make_multiplier

__all__ = [
    "EXAMPLES",
    "RunConfig",
    "ErrorRow",
    "ErrorTable",
    "DiagnosticsRow",
    "BenchRow",
    "build_grid",
    "initial_state",
    "run",
    "sup_error",
    "temporal_error_table",
    "spatial_error_table",
    "invariant_series",
    "run_with_diagnostics",
    "closed_form_error",
    "bench",
]

EXAMPLES = {
    "ex41": {"box": ((-20.0, 20.0),), "n": 128, "alpha": 2.0, "beta": 2.0},
    "ex42": {"box": ((0.0, 2 * math.pi), (0.0, 2 * math.pi)), "n": 16, "alpha": 2.0, "beta": 2.0},
    "ex43": {"box": ((-10.0, 10.0), (-10.0, 10.0)), "n": 256, "alpha": 2.0, "beta": 2.0},
}


@dataclass(frozen=True)
class RunConfig:
    """One simulation setup. Fields left as ``None`` take the example preset."""

    example: str = "ex41"
    scheme: str = "fpavf-c"
    alpha: Optional[float] = None
    beta: Optional[float] = None
    tau: float = 1e-3
    t_final: float = 1.0
    n: Optional[int | tuple[int, ...]] = None
    box: Optional[tuple[tuple[float, float], ...]] = None
    tol: float = 1e-12
    max_iter: int = 200
    sample_every: int = 1
    output_dir: str = "out"
    r: float = -0.8
    x0: float = 0.0
    u0_variant: str = "exact"
    initial_data: Optional[InitialData] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.example not in (*EXAMPLES, "custom"):
            raise ConfigurationError(f"unknown example {self.example!r}")
        if self.example == "custom" and (self.initial_data is None or self.box is None or self.n is None):
            raise ConfigurationError("custom example needs initial_data, box and n")
        SchemeKind.parse(self.scheme)
        if self.sample_every < 1:
            raise ConfigurationError("sample_every must be >= 1")
        if self.u0_variant not in U0_VARIANTS:
            raise ConfigurationError(f"u0_variant must be one of {U0_VARIANTS}")
        # Validates orders, tau, t_final, tol, max_iter.
        self.params()

    def _preset(self, key):
        return EXAMPLES.get(self.example, {}).get(key)

    @property
    def alpha_value(self) -> float:
        return float(self.alpha if self.alpha is not None else self._preset("alpha"))

    @property
    def beta_value(self) -> float:
        return float(self.beta if self.beta is not None else self._preset("beta"))

    @property
    def scheme_kind(self) -> SchemeKind:
        return SchemeKind.parse(self.scheme)

    def params(self) -> Params:
        return Params(self.alpha_value, self.beta_value, self.tau, self.t_final, self.tol, self.max_iter)

    def with_(self, **changes) -> "RunConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("initial_data")
        out["alpha"], out["beta"] = self.alpha_value, self.beta_value
        grid = build_grid(self)
        out["box"] = [list(b) for b in grid.box]
        out["n"] = list(grid.n)
        return out


def build_grid(config: RunConfig, n=None) -> GridSpec:
    box = config.box if config.box is not None else config._preset("box")
    n = n if n is not None else (config.n if config.n is not None else config._preset("n"))
    return make_grid(box, n)


def _initial_data(config: RunConfig) -> InitialData:
    if config.example == "ex41":
        return example_41_initial(config.r, config.x0, config.u0_variant)
    if config.example == "ex42":
        return example_42_initial()
    if config.example == "ex43":
        return example_43_initial()
    return config.initial_data


def initial_state(config: RunConfig, n=None) -> State:
    return initialize(build_grid(config, n), _initial_data(config))


def run(config: RunConfig, n=None, observer=None) -> State:
    """Evolve the configured problem to ``t_final`` and return the final state."""
    state = initial_state(config, n)
    return evolve(state, config.params(), config.scheme_kind, observer)


def sup_error(a: State, b: State) -> float:
    """``|U_a - U_b|_inf + |P_a - P_b|_inf + |Q_a - Q_b|_inf``.

    ``b`` may live on a grid refined by an integer factor; it is restricted to
    the nodes of ``a`` first.
    """
    if a.grid.box != b.grid.box:
        raise ConfigurationError("states live on different boxes")
    slices = []
    for na, nb in zip(a.grid.n, b.grid.n):
        if nb % na:
            raise ConfigurationError(f"grid with {nb} nodes does not nest one with {na}")
        slices.append(slice(None, None, nb // na))
    sl = tuple(slices)
    return sum(float(np.max(np.abs(fa - fb[sl]))) for fa, fb in ((a.u, b.u), (a.p, b.p), (a.q, b.q)))


@dataclass(frozen=True)
class ErrorRow:
    param: float
    error: float
    order: Optional[float]


@dataclass
class ErrorTable:
    """Errors between successive refinements and the observed orders."""

    param_name: str
    rows: list[ErrorRow]

    @property
    def errors(self) -> np.ndarray:
        return np.array([r.error for r in self.rows])

    @property
    def orders(self) -> np.ndarray:
        return np.array([r.order for r in self.rows[1:]], dtype=float)


def _orders(params: Sequence[float], errors: Sequence[float]) -> list[Optional[float]]:
    out: list[Optional[float]] = [None]
    for i in range(1, len(errors)):
        ratio = params[i - 1] / params[i]
        if errors[i] > 0 and errors[i - 1] > 0:
            out.append(math.log(errors[i - 1] / errors[i]) / math.log(abs(ratio)))
        else:
            out.append(float("nan"))
    return out


def _check_dyadic(values, descending: bool, name: str):
    if len(values) < 2:
        raise ConfigurationError(f"need at least two {name} values")
    for a, b in zip(values, values[1:]):
        ratio = a / b if descending else b / a
        if not math.isclose(ratio, 2.0, rel_tol=1e-9):
            order = "halve" if descending else "double"
            raise ConfigurationError(f"{name} values must {order} at each refinement: {values}")


def temporal_error_table(config: RunConfig, tau_list: Sequence[float]) -> ErrorTable:
    """``E(tau)`` between runs at ``tau`` and ``tau/2`` on a fixed grid.

    ``tau_list`` must halve at every entry; the table has one row fewer than
    the list.
    """
    taus = [float(t) for t in tau_list]
    _check_dyadic(taus, True, "tau")
    finals = []
    for tau in taus:
        try:
            finals.append(run(config.with_(tau=tau)))
        except Exception as exc:
            raise RuntimeError(f"temporal refinement run with tau={tau} failed: {exc}") from exc
    errors = [sup_error(a, b) for a, b in zip(finals, finals[1:])]
    orders = _orders(taus[:-1], errors)
    return ErrorTable("tau", [ErrorRow(t, e, o) for t, e, o in zip(taus, errors, orders)])


def spatial_error_table(config: RunConfig, n_list: Sequence[int]) -> ErrorTable:
    """``E(N)`` between runs on ``N`` and ``2N`` nodes per axis, fixed ``tau``."""
    ns = [int(n) for n in n_list]
    _check_dyadic(ns, False, "N")
    finals = []
    for n in ns:
        try:
            finals.append(run(config, n=n))
        except Exception as exc:
            raise RuntimeError(f"spatial refinement run with N={n} failed: {exc}") from exc
    errors = [sup_error(a, b) for a, b in zip(finals, finals[1:])]
    # Order in space: log2(E(N)/E(2N)), i.e. the parameter ratio is N_{i}/N_{i-1}.
    orders = _orders([1.0 / n for n in ns[:-1]], errors)
    return ErrorTable("n", [ErrorRow(n, e, o) for n, e, o in zip(ns, errors, orders)])


@dataclass(frozen=True)
class DiagnosticsRow:
    step: int
    t: float
    mass: float
    energy: float
    rm: float
    rh: float
    iters: int


def _relative(value: float, ref: float) -> float:
    return abs((value - ref) / ref) if ref != 0 else abs(value - ref)


def invariant_series(config: RunConfig, keep_final: bool = False) -> list[DiagnosticsRow]:
    """Mass, energy and their relative drifts every ``sample_every`` steps.

    ``iters`` is the number of solver sweeps spent since the previous row.
    With ``keep_final`` the last step is recorded even off the stride.
    """
    return run_with_diagnostics(config, keep_final)[0]


def run_with_diagnostics(config: RunConfig, keep_final: bool = True) -> tuple[list[DiagnosticsRow], State]:
    """Like :func:`invariant_series` but also returns the final state."""
    state = initial_state(config)
    params = config.params()
    m_alpha = make_multiplier(state.grid, params.alpha)
    m_beta = make_multiplier(state.grid, params.beta)
    m0 = mass(state)
    h0 = energy(state, m_alpha, m_beta)
    rows = [DiagnosticsRow(0, state.t, m0, h0, 0.0, 0.0, 0)]
    stride = config.sample_every
    pending = 0
    last_step = count_steps(config.t_final, config.tau) if keep_final else -1

    def observe(m: int, st: State, report: StepReport):
        nonlocal pending
        pending += report.iterations
        if m % stride == 0 or m == last_step:
            mm = mass(st)
            hh = energy(st, m_alpha, m_beta)
            rows.append(DiagnosticsRow(m, st.t, mm, hh, _relative(mm, m0), _relative(hh, h0), pending))
            pending = 0

    final = evolve(state, params, config.scheme_kind, observe, m_alpha, m_beta)
    return rows, final


def closed_form_error(config: RunConfig, state: Optional[State] = None) -> float:
    """Sup-norm error of the final state against the available closed form.

    ex41 needs ``alpha = beta = 2``; ex42 uses the plane wave for the
    configured ``alpha``. Sums the ``U``, ``P``, ``Q`` errors like ``E``.
    """
    if state is None:
        state = run(config)
    t = state.t
    if config.example == "ex41":
        if config.alpha_value != 2 or config.beta_value != 2:
            raise InputError("the soliton is exact only for alpha = beta = 2")
        phi, u = exact_solution_alpha2_1d(state.grid, config.r, config.x0, t)
    elif config.example == "ex42":
        phi, u = plane_wave_solution_2d(state.grid, t, config.alpha_value)
    else:
        raise InputError(f"no closed form for {config.example}")
    return float(
        np.max(np.abs(state.u - u)) + np.max(np.abs(state.p - phi.imag)) + np.max(np.abs(state.q - phi.real))
    )


@dataclass(frozen=True)
class BenchRow:
    scheme: str
    wall_time: float
    iterations: int
    steps: int


def bench(config: RunConfig, schemes: Sequence[str], repeats: int = 1) -> list[BenchRow]:
    """Wall time (best of ``repeats``) and total solver sweeps per scheme."""
    rows = []
    for name in schemes:
        kind = SchemeKind.parse(name)
        cfg = config.with_(scheme=kind.value)
        best = math.inf
        for _ in range(repeats):
            counter = {"iters": 0, "steps": 0}

            def observe(m, st, report, counter=counter):
                counter["iters"] += report.iterations
                counter["steps"] = m

            start = time.perf_counter()
            run(cfg, observer=observe)
            best = min(best, time.perf_counter() - start)
        rows.append(BenchRow(kind.value, best, counter["iters"], counter["steps"]))
    return rows
