"""
Searches for polynomials that make the inequalities nearly tight.

Each objective is a ratio whose theoretical ceiling is π:

thm1
    ``max_η ∫_T |f(ζη) − f(ζ̄η)| / |1 − ζ| dm(ζ) / ||f'||_{H^1}``
hardy
    ``Σ_{k>=1} |a_k| / ||f'||_{H^1}``
toeplitz
    ``(lower bound of ||T_f|| − ||f||_∞) / ||f'||_{H^1}``

`search` maximizes one of them over a `CoefficientFamily` with scipy's
Nelder-Mead simplex method and seeded restarts. A value above the ceiling
is a numerical fault, never a counterexample; such points are rejected and
flagged.
"""
import dataclasses
import functools
import logging
import math
import typing as t
from collections import abc

import numpy as np
from scipy import optimize

from tlab_hardy import abstract, analytic_fn, errors, hardy_norms, quadrature
from tlab_hardy import singular_quad, toeplitz, utils

logger = logging.getLogger(__name__)

CEILING = math.pi
CEILING_RTOL = 1e-6
OBJECTIVES = ("thm1", "hardy", "toeplitz")


@dataclasses.dataclass(frozen=True)
class MonomialFamily(abstract.CoefficientFamily):
    """
    ``base + Σ_i s_i z^{p_i}`` with real ``s_i``, starting from ``base``.

    >>> MonomialFamily(analytic_fn.TaylorPoly((0, 1)), (2,)).polynomial([0.5]).coeffs
    (0j, (1+0j), (0.5+0j))
    """

    base: analytic_fn.TaylorPoly = analytic_fn.TaylorPoly((0, 1))
    powers: tuple[int, ...] = (2,)

    def __post_init__(self) -> None:
        if not self.powers or min(self.powers) < 0:
            raise ValueError(f"invalid powers {self.powers}")

    @property
    def name(self) -> str:
        return "monomial:" + ",".join(str(p) for p in self.powers)

    @property
    def dimension(self) -> int:
        return len(self.powers)

    def start(self) -> abstract.Params:
        return np.zeros(self.dimension)

    def coefficients(self, params: abstract.Params) -> tuple[complex, ...]:
        size = max(len(self.base.coeffs), max(self.powers) + 1)
        coeffs = self.base.padded(size)
        for power, s in zip(self.powers, params):
            coeffs[power] += s
        return tuple(complex(c) for c in coeffs)


@dataclasses.dataclass(frozen=True)
class LogSpanFamily(abstract.CoefficientFamily):
    """
    ``Σ_{k=1}^N c_k z^k / k``; the start ``c = 1`` is the log family.
    """

    degree: int = 8

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")

    @property
    def name(self) -> str:
        return f"logspan:{self.degree}"

    @property
    def dimension(self) -> int:
        return self.degree

    def start(self) -> abstract.Params:
        return np.ones(self.dimension)

    def coefficients(self, params: abstract.Params) -> tuple[complex, ...]:
        return (0j,) + tuple(complex(c / k) for k, c in enumerate(params, start=1))


@dataclasses.dataclass(frozen=True)
class FreeCoefficientFamily(abstract.CoefficientFamily):
    """
    ``a_1, ..., a_d`` free complex, from ``2d`` reals ``(Re a_1, Im a_1, ...)``.
    """

    degree: int = 3

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")

    @property
    def name(self) -> str:
        return f"free:{self.degree}"

    @property
    def dimension(self) -> int:
        return 2 * self.degree

    def start(self) -> abstract.Params:
        params = np.zeros(self.dimension)
        params[0] = 1.0
        return params

    def coefficients(self, params: abstract.Params) -> tuple[complex, ...]:
        pairs = params.reshape(self.degree, 2)
        return (0j,) + tuple(complex(re, im) for re, im in pairs)


def family_from_name(name: str) -> abstract.CoefficientFamily:
    """
    Builds a family from ``monomial:p1,p2,...``, ``logspan:N`` or ``free:d``.

    A monomial family starts from ``z``.

    Raises
    ------
    ValueError
        If the name is not understood.
    """
    kind, _, body = name.partition(":")
    try:
        match kind:
            case "monomial":
                powers = tuple(int(p) for p in body.split(",")) if body else (2,)
                return MonomialFamily(powers=powers)
            case "logspan":
                return LogSpanFamily(int(body) if body else 8)
            case "free":
                return FreeCoefficientFamily(int(body) if body else 3)
    except ValueError as e:
        raise ValueError(f"invalid family {name!r}: {e}") from e
    raise ValueError(f"unknown family {name!r}")


@functools.lru_cache(maxsize=4096)
def _h1_derivative(f: analytic_fn.TaylorPoly, quad: quadrature.QuadConfig) -> float:
    return float(hardy_norms.h1_norm_boundary(analytic_fn.derivative(f), quad).value)


@functools.lru_cache(maxsize=4096)
def _hinf(f: analytic_fn.TaylorPoly) -> float:
    return hardy_norms.hinf_norm(f)


def _derivative_norm(f: analytic_fn.TaylorPoly, quad: quadrature.QuadConfig) -> float:
    if f.degree is None or f.degree < 1:
        raise errors.DomainError(f"{f.spec} is constant; the ratio is undefined")
    return _h1_derivative(f, quad)


def ratio_theorem1(
    f: analytic_fn.TaylorPoly,
    eta_grid: abc.Sequence[analytic_fn.UnitComplex],
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> float:
    """
    The largest left-hand side over ``eta_grid`` divided by ``||f'||_{H^1}``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``f`` is constant or the grid is empty.
    tlab_hardy.errors.QuadratureError
        If any integral does not converge.
    """
    norm = _derivative_norm(f, quad)
    if not eta_grid:
        raise errors.DomainError("the η grid must not be empty")
    lhs = max(float(singular_quad.theorem1_lhs(f, eta, quad).value) for eta in eta_grid)
    return lhs / norm


def ratio_hardy(
    f: analytic_fn.TaylorPoly, quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG
) -> float:
    """
    ``Σ_{k>=1} |a_k| / ||f'||_{H^1}``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``f`` is constant.
    """
    return hardy_norms.hardy_sum(f) / _derivative_norm(f, quad)


def ratio_toeplitz(
    f: analytic_fn.TaylorPoly,
    h_corpus: abc.Sequence[analytic_fn.TaylorPoly],
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> float:
    """
    ``(empirical ||T_f|| − ||f||_∞) / ||f'||_{H^1}``; negative when the
    corpus finds nothing above ``||f||_∞``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``f`` is constant.
    """
    norm = _derivative_norm(f, quad)
    return (toeplitz.empirical_norm_lb(f, h_corpus) - _hinf(f)) / norm


@dataclasses.dataclass(frozen=True)
class SearchConfig:
    """
    Settings of `search`.
    """

    budget: int = 500
    """Total number of objective evaluations, shared by all runs."""
    restarts: int = 3
    seed: int = 0
    step: float = 0.1
    """Edge length of the initial simplex and scale of restart perturbations."""
    eta_grid: int = 16
    """Number of η values for the thm1 objective."""
    xatol: float = 1e-8
    fatol: float = 1e-10

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError(f"budget must be positive, got {self.budget}")
        if self.restarts < 0:
            raise ValueError(f"restarts must be nonnegative, got {self.restarts}")
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.eta_grid < 1:
            raise ValueError(f"eta_grid must be positive, got {self.eta_grid}")


@dataclasses.dataclass(frozen=True)
class SearchState:
    """
    The outcome of a search: best point, its ratio and the trace.
    """

    family: str
    objective_name: str
    params: tuple[float, ...]
    objective: float
    """Best accepted ratio; ``-inf`` if no point was accepted."""
    iterations: int
    trace: tuple[tuple[tuple[float, ...], float], ...]
    """Every improvement of the best value, in order."""
    converged: bool
    evaluations: int
    fault: bool = False
    """True if some point exceeded the ceiling and was rejected."""

    @property
    def ceiling(self) -> float:
        return CEILING

    def to_dict(self) -> dict[str, t.Any]:
        return {
            "family": self.family,
            "objective_name": self.objective_name,
            "best_params": list(self.params),
            "objective": utils.finite_or_none(self.objective),
            "ceiling": self.ceiling,
            "converged": self.converged,
            "trace_len": len(self.trace),
            "evaluations": self.evaluations,
            "iterations": self.iterations,
            "fault": self.fault,
        }


def objective_function(
    objective: str,
    cfg: SearchConfig,
    h_corpus: abc.Sequence[analytic_fn.TaylorPoly] | None = None,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> abc.Callable[[analytic_fn.TaylorPoly], float]:
    """
    The ratio named ``objective`` as a function of the polynomial.

    Raises
    ------
    ValueError
        If the name is not one of `OBJECTIVES`.
    """
    match objective:
        case "thm1":
            grid = analytic_fn.eta_grid(cfg.eta_grid)
            return lambda f: ratio_theorem1(f, grid, quad)
        case "hardy":
            return lambda f: ratio_hardy(f, quad)
        case "toeplitz":
            corpus = (
                list(h_corpus)
                if h_corpus is not None
                else toeplitz.default_h_corpus(cfg.seed)
            )
            return lambda f: ratio_toeplitz(f, corpus, quad)
        case _:
            raise ValueError(f"unknown objective {objective!r}")


def _simplex(center: abstract.Params, step: float) -> abstract.Params:
    return np.vstack([center, center + step * np.eye(len(center))])


def search(
    family: abstract.CoefficientFamily,
    objective: str,
    cfg: SearchConfig = SearchConfig(),
    *,
    h_corpus: abc.Sequence[analytic_fn.TaylorPoly] | None = None,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> SearchState:
    """
    Maximizes a ratio over a coefficient family.

    The first Nelder-Mead run starts from ``family.start()`` with an axis
    simplex of edge ``cfg.step``. Each restart ``i`` starts from the best
    point so far with a simplex perturbed by ``default_rng(cfg.seed + i)``.
    Each run gets ``cfg.budget // runs`` evaluations, the remainder going one
    apiece to the last runs. ``cfg.budget`` is a hard ceiling on the number
    of ratio evaluations.

    Parameters
    ----------
    family : tlab_hardy.abstract.CoefficientFamily
        The family to search.
    objective : str
        One of ``"thm1"``, ``"hardy"`` and ``"toeplitz"``.
    cfg : tlab_hardy.extremal.SearchConfig
        Budget, restarts and seed.
    h_corpus : Sequence[tlab_hardy.analytic_fn.TaylorPoly] | None
        Corpus of the toeplitz objective; `toeplitz.default_h_corpus` if None.
    quad : tlab_hardy.quadrature.QuadConfig
        Tolerances of the norm computations.

    Returns
    -------
    tlab_hardy.extremal.SearchState
        The best accepted point. ``converged`` is False if any run ran out
        of budget.

    Raises
    ------
    ValueError
        If the objective is unknown or the family has no parameters.
    """
    if family.dimension < 1:
        raise ValueError(f"{family.name} has no parameters")
    ratio = objective_function(objective, cfg, h_corpus, quad)
    limit = CEILING * (1 + CEILING_RTOL)
    trace: list[tuple[tuple[float, ...], float]] = []
    counters = {"evaluations": 0, "iterations": 0}
    fault = False

    def negative_ratio(x: abstract.Params) -> float:
        nonlocal fault
        if counters["evaluations"] >= cfg.budget:
            return math.inf
        counters["evaluations"] += 1
        point = tuple(float(v) for v in x)
        try:
            value = ratio(family.polynomial(x))
        except errors.HardyError as e:
            logger.warning("rejected %s at %s: %s", family.name, point, e)
            return math.inf
        if not math.isfinite(value):
            logger.warning("rejected %s at %s: non-finite ratio", family.name, point)
            return math.inf
        if value > limit:
            fault = True
            logger.error(
                "numerics fault: %s ratio %.12g exceeds the ceiling at %s",
                objective,
                value,
                point,
            )
            return math.inf
        if not trace or value > trace[-1][1]:
            trace.append((point, value))
        return -value

    runs = cfg.restarts + 1
    base, extra = divmod(cfg.budget, runs)
    converged = True
    center = family.start()
    for run in range(runs):
        allotment = base + (1 if run >= runs - extra else 0)
        allotment = min(allotment, cfg.budget - counters["evaluations"])
        if allotment < 1:
            converged = False
            logger.info(
                "%s/%s run %d skipped: budget spent", family.name, objective, run
            )
            continue
        if run == 0:
            simplex = _simplex(center, cfg.step)
        else:
            rng = np.random.default_rng(cfg.seed + run)
            best = np.asarray(trace[-1][0]) if trace else center
            simplex = _simplex(best, cfg.step) + rng.normal(
                scale=cfg.step, size=(family.dimension + 1, family.dimension)
            )
        result = optimize.minimize(
            negative_ratio,
            simplex[0],
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "maxfev": allotment,
                "xatol": cfg.xatol,
                "fatol": cfg.fatol,
            },
        )
        counters["iterations"] += int(result.nit)
        converged = converged and bool(result.success)
        logger.info(
            "%s/%s run %d: best %s after %d evaluations",
            family.name,
            objective,
            run,
            trace[-1][1] if trace else None,
            counters["evaluations"],
        )
    if trace:
        params, value = trace[-1]
    else:
        params, value = tuple(float(v) for v in center), -math.inf
        converged = False
    return SearchState(
        family.name,
        objective,
        params,
        value,
        counters["iterations"],
        tuple(trace),
        converged,
        counters["evaluations"],
        fault,
    )
