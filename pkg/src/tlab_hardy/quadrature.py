"""
Error-controlled quadrature on intervals and on the circle.

The workhorse is `integrate`, a composite Gauss-Legendre rule whose panels
are refined level by level. Breakpoints come in two flavours:

points
    ``(location, scale)`` pairs marking corners or near-corners of the
    integrand, typically zeros of a polynomial on or near T. Panels are
    graded geometrically toward the location down to ``scale``; a scale
    below ``CORNER_SCALE`` is an exact corner and only splits the interval.
singular
    Locations of integrable logarithmic singularities. Panels are graded
    dyadically toward them and the grading depth grows with the level.

A result is accepted once two consecutive levels differ by at most
``atol + rtol * |value|``. The last difference is the error estimate.
"""
from __future__ import annotations

import dataclasses
import logging
import math
import typing as t
from collections import abc

import numpy as np
import numpy.typing as npt

from tlab_hardy import errors

logger = logging.getLogger(__name__)

Integrand = abc.Callable[[npt.NDArray[np.float64]], npt.NDArray[t.Any]]

GAUSS_ORDER = 16
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)

CORNER_SCALE = 1e-8
LOG_DEPTH_START = 16
LOG_DEPTH_STEP = 8
MAX_DEPTH = 40
"""Most dyadic halvings toward a singularity; deeper panels underflow."""
REQUIRED_PASSES = 2


@dataclasses.dataclass(frozen=True)
class QuadConfig:
    """
    Convergence settings shared by every quadrature.
    """

    atol: float = 1e-12
    """Absolute tolerance on the difference between levels."""
    rtol: float = 1e-10
    """Relative tolerance on the difference between levels."""
    max_nodes: int = 2**20
    """Largest rule tried before giving up."""
    max_level: int = 24

    def __post_init__(self) -> None:
        if not (self.atol > 0 and self.rtol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_nodes < 1 or self.max_level < 1:
            raise ValueError("node budget and level count must be positive")

    def accepts(self, delta: float, value: complex) -> bool:
        return delta <= self.atol + self.rtol * abs(value)


DEFAULT_CONFIG = QuadConfig()


@dataclasses.dataclass(frozen=True)
class QuadResult:
    """
    Value of an integral with its error estimate.
    """

    value: t.Any
    """Real or complex value."""
    err_est: float
    """Absolute error estimate, nonnegative."""
    nodes: int
    """Number of integrand evaluations in the accepted rule."""
    converged: bool = True

    def __post_init__(self) -> None:
        if not self.err_est >= 0:
            raise ValueError(f"error estimate must be nonnegative, got {self.err_est}")
        if self.nodes < 1:
            raise ValueError(f"node count must be positive, got {self.nodes}")

    @classmethod
    def exact(cls, value: complex | float) -> QuadResult:
        return cls(value, 0.0, 1)

    def scaled(self, factor: float) -> QuadResult:
        return dataclasses.replace(
            self, value=self.value * factor, err_est=self.err_est * abs(factor)
        )


def _gauss_panels(
    edges: npt.NDArray[np.float64],
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    left, right = edges[:-1], edges[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = (mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]).ravel()
    weights = (half[:, None] * _GAUSS_WEIGHTS[None, :]).ravel()
    return nodes, weights


def _subdivide(
    offsets: npt.NDArray[np.float64], width: float
) -> npt.NDArray[np.float64]:
    """Splits every panel wider than ``width`` into equal parts."""
    pieces = [offsets[:1]]
    for left, right in zip(offsets[:-1], offsets[1:]):
        count = max(1, math.ceil((right - left) / width - 1e-9))
        pieces.append(np.linspace(left, right, count + 1)[1:])
    return np.concatenate(pieces)


def _graded_offsets(length: float, depth: int) -> npt.NDArray[np.float64]:
    if depth <= 0:
        return np.array([0.0, length])
    return np.concatenate(([0.0], length * 0.5 ** np.arange(depth, -1, -1)))


_Kind = tuple[str, float]  # ("log", 0.0) or ("near", scale)


def _depth(kind: _Kind | None, length: float, level: int) -> int:
    if kind is None:
        return 0
    name, scale = kind
    if name == "log":
        return min(MAX_DEPTH, LOG_DEPTH_START + LOG_DEPTH_STEP * level)
    if scale < CORNER_SCALE:
        return 0
    return min(MAX_DEPTH, max(0, math.ceil(math.log2(length / scale)) + 4))


def _piece_edges(
    left: float,
    right: float,
    left_kind: _Kind | None,
    right_kind: _Kind | None,
    level: int,
    width: float,
) -> npt.NDArray[np.float64]:
    length = right - left
    left_depth = _depth(left_kind, length, level)
    right_depth = _depth(right_kind, length, level)
    if left_depth and right_depth:
        half = 0.5 * length
        lower = left + _subdivide(_graded_offsets(half, left_depth), width)
        upper = right - _subdivide(_graded_offsets(half, right_depth), width)[::-1]
        return np.concatenate((lower, upper[1:]))
    if right_depth:
        return right - _subdivide(_graded_offsets(length, right_depth), width)[::-1]
    offsets = _graded_offsets(length, left_depth)
    return left + _subdivide(offsets, width)


def composite_rule(
    a: float,
    b: float,
    level: int,
    points: abc.Sequence[tuple[float, float]] = (),
    singular: abc.Sequence[float] = (),
    min_panels: int = 2,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    Nodes and weights of the composite rule on ``[a, b]`` at a given level.

    Parameters
    ----------
    a, b : float
        Interval, ``a < b``.
    level : int
        Refinement level. Uniform panels are at most
        ``(b - a) / (min_panels * 2**level)`` wide.
    points : Sequence[tuple[float, float]]
        Near-corners as ``(location, scale)``.
    singular : Sequence[float]
        Logarithmic singularities.
    min_panels : int
        Number of uniform panels at level 0.

    Returns
    -------
    tuple[numpy.ndarray, numpy.ndarray]
        Nodes and weights.
    """
    kinds: dict[float, _Kind] = {}
    for location, scale in points:
        if a <= location <= b:
            previous = kinds.get(location)
            if previous is None or (previous[0] == "near" and scale < previous[1]):
                kinds[location] = ("near", scale)
    for location in singular:
        if a <= location <= b:
            kinds[location] = ("log", 0.0)
    edges = sorted({a, b, *kinds})
    width = (b - a) / (max(1, min_panels) * 2**level)
    all_edges = []
    for left, right in zip(edges[:-1], edges[1:]):
        if right - left <= 0:
            continue
        piece = _piece_edges(
            left, right, kinds.get(left), kinds.get(right), level, width
        )
        all_edges.append(piece if not all_edges else piece[1:])
    return _gauss_panels(np.concatenate(all_edges))


def _refine(
    rule: abc.Callable[[int], tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]],
    func: Integrand,
    config: QuadConfig,
    what: str,
) -> QuadResult:
    previous: t.Any = None
    delta = math.inf
    passes = 0
    nodes = 1
    for level in range(config.max_level + 1):
        x, w = rule(level)
        if x.size > config.max_nodes:
            break
        nodes = x.size
        value = np.sum(w * func(x)).item()
        if previous is not None:
            delta = abs(value - previous)
            passes = passes + 1 if config.accepts(delta, value) else 0
            if passes >= REQUIRED_PASSES:
                logger.debug("%s converged: %d nodes, err %.3g", what, nodes, delta)
                return QuadResult(value, delta, nodes)
        previous = value
    best = QuadResult(
        previous if previous is not None else math.nan,
        delta if math.isfinite(delta) else math.inf,
        nodes,
        converged=False,
    )
    logger.warning("%s did not converge within %d nodes", what, config.max_nodes)
    raise errors.QuadratureError(
        f"{what} did not converge within {config.max_nodes} nodes "
        f"(best {best.value}, last difference {best.err_est})",
        best,
    )


def integrate(
    func: Integrand,
    a: float,
    b: float,
    config: QuadConfig = DEFAULT_CONFIG,
    *,
    points: abc.Sequence[tuple[float, float]] = (),
    singular: abc.Sequence[float] = (),
    min_panels: int = 2,
    what: str = "integral",
) -> QuadResult:
    """
    Integrates ``func`` over ``[a, b]`` to the configured tolerance.

    Parameters
    ----------
    func : Callable[[numpy.ndarray], numpy.ndarray]
        Vectorized integrand, real or complex.
    a, b : float
        Interval, ``a < b``.
    config : tlab_hardy.quadrature.QuadConfig
        Tolerances and node budget.
    points, singular, min_panels
        See `composite_rule`.
    what : str
        Name used in log messages and errors.

    Returns
    -------
    tlab_hardy.quadrature.QuadResult
        The converged value.

    Raises
    ------
    tlab_hardy.errors.QuadratureError
        If the rule exceeds the node budget before converging.
    """
    if not a < b:
        raise errors.DomainError(f"empty interval [{a}, {b}]")
    return _refine(
        lambda level: composite_rule(a, b, level, points, singular, min_panels),
        func,
        config,
        what,
    )


def integrate_circle(
    func: Integrand,
    config: QuadConfig = DEFAULT_CONFIG,
    *,
    points: abc.Sequence[tuple[float, float]] = (),
    singular: abc.Sequence[float] = (),
    min_panels: int = 4,
    what: str = "circle integral",
) -> QuadResult:
    """
    Integrates a 2*pi-periodic ``func`` over one period.

    The window starts at the first singularity (or, failing that, the first
    point) so that no feature sits next to the seam without a breakpoint.
    """
    two_pi = 2.0 * math.pi
    starts = sorted(s % two_pi for s in singular)
    starts = starts or sorted(p[0] % two_pi for p in points)
    start = starts[0] if starts else 0.0
    end = start + two_pi

    def wrap(location: float) -> float:
        return start + (location - start) % two_pi

    # a feature on the seam is graded from both sides
    wrapped_points = [(wrap(loc), scale) for loc, scale in points]
    wrapped_points += [(end, scale) for loc, scale in wrapped_points if loc == start]
    wrapped_singular = [wrap(loc) for loc in singular]
    wrapped_singular += [end for loc in wrapped_singular if loc == start]
    return integrate(
        func,
        start,
        end,
        config,
        points=wrapped_points,
        singular=wrapped_singular,
        min_panels=min_panels,
        what=what,
    )


def integrate_periodic(
    func: Integrand,
    config: QuadConfig = DEFAULT_CONFIG,
    *,
    min_nodes: int = 16,
    what: str = "periodic integral",
) -> QuadResult:
    """
    Mean value of a smooth 2*pi-periodic ``func`` by the trapezoidal rule.

    The node count doubles from ``min_nodes`` until two consecutive
    doublings agree; for analytic integrands the rule converges
    geometrically.
    """

    def rule(level: int) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        n = min_nodes * 2**level
        return 2.0 * math.pi * np.arange(n) / n, np.full(n, 1.0 / n)

    return _refine(rule, func, config, what)
