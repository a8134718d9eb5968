"""
Singular boundary integrals behind the integrated Hardy inequality.

For ``f`` analytic with ``f'`` in H^1 and ``η = e^{iθ}`` on T,

    ∫_T |f(ζη) − f(ζ̄η)| / |1 − ζ| dm(ζ)
        = (1/π) ∫_0^π |f(e^{i(θ+t)}) − f(e^{i(θ−t)})| / (2 sin(t/2)) dt
        <= π ||f'||_{H^1}.

The argument goes through the log-kernel representation

    f(z) = f(0) − (1/2πi) ∫_T f'(ξ) ln|1 − ξ z̄|² dξ,

an r-free majorant of ``|f(rζη) − f(rζ̄η)|``, and the kernel integral

    I(e^{iθ}) = (1/π) ∫_0^π |ln|sin((θ+t)/2) / sin((θ−t)/2)|| dt / sin(t/2),

which the substitution ``y = tan(t/2)`` bounds by
``(4/π) ∫_0^1 ln((1+x)/(1−x)) dx/x = π``. Each of these pieces can be
computed here.
"""
import cmath
import logging
import math
import typing as t
from collections import abc

import numpy as np
import numpy.typing as npt
from scipy import special

from tlab_hardy import analytic_fn, errors, hardy_norms, quadrature
from tlab_hardy.quadrature import QuadResult as QuadResult
from tlab_hardy.records import VerifyRecord as VerifyRecord

logger = logging.getLogger(__name__)

DEFAULT_ETA_GRID = 64
RECONSTRUCT_MAX_RADIUS = 0.99
_LIMIT_THRESHOLD = 1e-12
_ENDPOINT = 1e-9

FloatArray = npt.NDArray[np.float64]


def _sine_coefficients(
    f: analytic_fn.TaylorPoly, eta: analytic_fn.UnitComplex
) -> t.Any:
    return analytic_fn.rotate(f, eta).array[1:]


def _difference_zeros(b: t.Any) -> list[tuple[float, float]]:
    """
    Near-zeros in (0, π) of ``S(t) = Σ_k b_k sin(kt)``.

    ``S(t) = 0`` iff ``w = e^{it}`` solves ``Σ_k b_k (w^{N+k} − w^{N−k}) = 0``.
    """
    n = len(b)
    coeffs = np.zeros(2 * n + 1, dtype=np.complex128)
    coeffs[n + 1 :] += b
    coeffs[n - 1 :: -1] -= b
    zeros = analytic_fn.boundary_zeros(analytic_fn.TaylorPoly.from_array(coeffs))
    return [(a, d) for a, d in zeros if _ENDPOINT < a < math.pi - _ENDPOINT]


def theorem1_lhs(
    f: analytic_fn.TaylorPoly,
    eta: analytic_fn.UnitComplex,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> QuadResult:
    """
    Computes ``∫_T |f(ζη) − f(ζ̄η)| / |1 − ζ| dm(ζ)``.

    With ``g = rotate(f, η) = Σ b_k z^k`` the numerator is
    ``|g(e^{it}) − g(e^{−it})| = 2 |Σ_k b_k sin(kt)|``, so the integral is
    ``(1/π) ∫_0^π |Σ_k b_k sin(kt)| / sin(t/2) dt``. At ``t = 0`` the
    integrand takes its limit ``2|f'(η)|``. Zeros of the sine sum in
    ``(0, π)`` are breakpoints.

    Parameters
    ----------
    f : tlab_hardy.analytic_fn.TaylorPoly
        The function. Constants (and the zero polynomial) give 0.
    eta : tlab_hardy.analytic_fn.UnitComplex
        The rotation η.
    quad : tlab_hardy.quadrature.QuadConfig
        Tolerances and node budget.

    Returns
    -------
    tlab_hardy.quadrature.QuadResult
        The value with its error estimate.

    Raises
    ------
    tlab_hardy.errors.QuadratureError
        If the quadrature does not converge.
    """
    if f.is_constant():
        return QuadResult.exact(0.0)
    b = _sine_coefficients(f, eta)
    k = np.arange(1, len(b) + 1)
    limit = 2.0 * abs(np.sum(k * b))

    def integrand(angles: FloatArray) -> FloatArray:
        sines = np.sin(np.outer(angles, k)) @ b
        half = np.sin(0.5 * angles)
        safe = np.where(half < _LIMIT_THRESHOLD, 1.0, half)
        values = np.where(half < _LIMIT_THRESHOLD, limit, np.abs(sines) / safe)
        return t.cast(FloatArray, values / math.pi)

    return quadrature.integrate(
        integrand,
        0.0,
        math.pi,
        quad,
        points=_difference_zeros(b),
        min_panels=max(2, len(b) // 2),
        what="rotation difference integral",
    )


def verify_theorem1(
    f: analytic_fn.TaylorPoly,
    eta_grid: abc.Sequence[analytic_fn.UnitComplex],
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> list[VerifyRecord]:
    """
    Checks the integrated Hardy inequality at every η of a grid.

    Returns
    -------
    list[tlab_hardy.records.VerifyRecord]
        One record per η with ``rhs = π ||f'||_{H^1}``. The zero
        polynomial gives a single trivially passing record. A quadrature
        failure at one η yields a failed, non-converged record for that η
        and the sweep continues.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If the grid is empty.
    tlab_hardy.errors.QuadratureError
        If the right-hand side itself does not converge.
    """
    if not eta_grid:
        raise errors.DomainError("the η grid must not be empty")
    if f.degree is None:
        return [VerifyRecord(f.spec, eta_grid[0].angle, 0.0, 0.0)]
    norm = hardy_norms.h1_norm_boundary(analytic_fn.derivative(f), quad)
    rhs = math.pi * norm.value
    rhs_err = math.pi * norm.err_est
    out = []
    for eta in eta_grid:
        try:
            lhs = theorem1_lhs(f, eta, quad)
        except errors.QuadratureError as e:
            logger.error(
                "rotation difference integral failed for %s at η=%s", f.spec, eta.angle
            )
            out.append(VerifyRecord.failed(f.spec, eta.angle, e, rhs))
            continue
        err = lhs.err_est + rhs_err
        out.append(VerifyRecord(f.spec, eta.angle, lhs.value, rhs, err))
    logger.info(
        "rotation sweep %s: %d/%d passed",
        f.spec,
        sum(r.passed for r in out),
        len(out),
    )
    return out


def _fold_angle(theta: float) -> float:
    """Maps an angle to [0, π] using I(e^{-iθ}) = I(e^{iθ})."""
    theta = theta % (2.0 * math.pi)
    return 2.0 * math.pi - theta if theta > math.pi else theta


def kernel_integral(
    theta: float, quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG
) -> QuadResult:
    """
    Computes the kernel integral ``I(e^{iθ})``.

    The integrand has a logarithmic singularity at ``t = θ``; the interval
    is split there and graded toward it from both sides. At ``t = 0`` the
    integrand is bounded (the log ratio vanishes linearly).

    Parameters
    ----------
    theta : float
        Angle of ξ. It is reduced to ``[0, π]`` by symmetry.
    quad : tlab_hardy.quadrature.QuadConfig
        Tolerances and node budget.

    Returns
    -------
    tlab_hardy.quadrature.QuadResult
        ``I(e^{iθ})``. At ``θ = 0`` and ``θ = π`` the log ratio vanishes
        identically and the value is exactly 0; note that ``I`` tends to
        ``π`` as ``θ -> 0+``, so it is discontinuous at ``ξ = 1``.
    """
    theta = _fold_angle(theta)
    if theta <= 0.0 or theta >= math.pi:
        return QuadResult.exact(0.0)

    def integrand(angles: FloatArray) -> FloatArray:
        with np.errstate(divide="ignore"):
            ratio = np.log(np.abs(np.sin(0.5 * (theta + angles)))) - np.log(
                np.abs(np.sin(0.5 * (theta - angles)))
            )
        return t.cast(FloatArray, np.abs(ratio) / np.sin(0.5 * angles) / math.pi)

    return quadrature.integrate(
        integrand, 0.0, math.pi, quad, singular=[theta], what="kernel integral"
    )


def _log_ratio(x: FloatArray) -> FloatArray:
    """``|ln|(1+x)/(1−x)||`` for ``x >= 0``, accurate near 0 and near 1."""
    with np.errstate(invalid="ignore", divide="ignore"):
        below = np.log1p(x) - np.log1p(-x)
        above = np.log1p(x) - np.log(x - 1.0)
    return t.cast(FloatArray, np.abs(np.where(x < 1.0, below, above)))


def kernel_integral_tangent(
    theta: float, quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG
) -> QuadResult:
    """
    Computes ``I(e^{iθ})`` after the substitution ``y = tan(t/2)``.

    With ``τ = tan(θ/2)``,
    ``I = (2/π) ∫_0^∞ |ln|(τ+y)/(τ−y)|| dy / (y sqrt(1+y²))``.
    Splitting at ``y = τ`` and substituting ``y = τx`` below and
    ``y = τ/x`` above gives

        I = (2/π) ∫_0^1 ln((1+x)/(1−x)) [1/(x sqrt(1+τ²x²)) + 1/sqrt(x²+τ²)] dx,

    in which both weights are at most ``1/x``; hence ``I <= π``. This is an
    independent second method for `kernel_integral`.
    """
    theta = _fold_angle(theta)
    if theta <= 0.0 or theta >= math.pi:
        return QuadResult.exact(0.0)
    tau = math.tan(0.5 * theta)

    def integrand(x: FloatArray) -> FloatArray:
        weight = 1.0 / (x * np.sqrt(1.0 + (tau * x) ** 2)) + 1.0 / np.hypot(x, tau)
        return t.cast(FloatArray, _log_ratio(x) * weight * (2.0 / math.pi))

    return quadrature.integrate(
        integrand,
        0.0,
        1.0,
        quad,
        points=[(0.0, tau)],
        singular=[1.0],
        what="kernel integral (tangent form)",
    )


def log_ratio_integral(
    lower: float,
    upper: float,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> QuadResult:
    """
    Computes ``∫ |ln|(1+x)/(1−x)|| dx/x`` over ``[lower, upper] ⊂ [0, ∞)``.

    The integrand tends to 2 at ``x = 0`` and has a logarithmic singularity
    at ``x = 1``. The substitution ``x -> 1/x`` maps ``[1, X]`` onto
    ``[1/X, 1]`` and preserves the integrand, which is how the half-line
    folds onto the unit interval.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If the interval is empty or not in ``[0, ∞)``.
    """
    if not 0.0 <= lower < upper:
        raise errors.DomainError(f"invalid interval [{lower}, {upper}]")

    def integrand(x: FloatArray) -> FloatArray:
        return t.cast(FloatArray, _log_ratio(x) / x)

    return quadrature.integrate(
        integrand,
        lower,
        upper,
        quad,
        singular=[1.0] if lower <= 1.0 <= upper else [],
        what="log ratio integral",
    )


def log_ratio_series(terms: int = 64) -> QuadResult:
    """
    Series value of ``∫_0^1 ln((1+x)/(1−x)) dx/x = 2 Σ_{k>=0} (2k+1)^{-2}``.

    The first ``terms`` terms are summed directly and the tail in closed
    form, ``Σ_{k>=K} (2k+1)^{-2} = ζ(2, K + 1/2) / 4`` with the Hurwitz zeta
    function. The result is ``π²/4``.

    >>> import math
    >>> abs(log_ratio_series().value - math.pi**2 / 4) < 1e-14
    True
    """
    if terms < 1:
        raise errors.DomainError(f"need at least one term, got {terms}")
    head = math.fsum(1.0 / (2 * k + 1) ** 2 for k in range(terms))
    tail = float(special.zeta(2.0, terms + 0.5)) / 4.0
    value = 2.0 * (head + tail)
    err = 4.0 * np.finfo(float).eps * value * math.log2(terms + 1)
    return QuadResult(value, err, terms)


def reference_constant(
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> QuadResult:
    """
    Computes ``(2/π) ∫_0^∞ |ln|(1+x)/(1−x)|| dx/x``, which equals π.

    The part over ``(1, ∞)`` folds onto ``(0, 1)`` by ``x -> 1/x``, so the
    value is ``(4/π) ∫_0^1 ln((1+x)/(1−x)) dx/x``.
    """
    return log_ratio_integral(0.0, 1.0, quad).scaled(4.0 / math.pi)


def reconstruct(
    f: analytic_fn.TaylorPoly,
    z: complex,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> complex:
    """
    Evaluates ``f(z)`` through the log-kernel representation
    ``f(0) − (1/2πi) ∫_T f'(ξ) ln|1 − ξ z̄|² dξ``.

    With ``ξ = e^{is}`` the integral term is the mean of
    ``f'(e^{is}) e^{is} ln|1 − e^{is} z̄|²`` over ``[0, 2π)``, smooth and
    periodic for ``|z| < 1``, and is computed by the trapezoidal rule.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``|z| > 0.99``; the kernel's singularity then comes too close
        to T for the periodic rule.
    tlab_hardy.errors.QuadratureError
        If the rule does not converge.
    """
    z = complex(z)
    if abs(z) > RECONSTRUCT_MAX_RADIUS:
        raise errors.DomainError(f"|z| = {abs(z)} exceeds {RECONSTRUCT_MAX_RADIUS}")
    f0 = f.coeffs[0] if f.coeffs else 0j
    if f.is_constant():
        return f0
    df = analytic_fn.derivative(f)
    zbar = z.conjugate()

    def integrand(angles: FloatArray) -> t.Any:
        xi = np.exp(1j * angles)
        kernel = np.log(np.abs(1.0 - xi * zbar) ** 2)
        return analytic_fn.eval_many(df, xi) * xi * kernel

    result = quadrature.integrate_periodic(
        integrand,
        quad,
        min_nodes=max(16, 4 * len(f.coeffs)),
        what="log-kernel integral",
    )
    return f0 - complex(result.value)


def log_ratio_majorant(r: float, xi: complex, zeta: complex) -> tuple[float, float]:
    """
    The log ratio of the majorant step at radius ``r`` and at ``r = 1``.

    Uses ``|1 − rw|² = (1−r)² + r|1 − w|²`` for ``|w| = 1``.

    Returns
    -------
    tuple[float, float]
        ``|ln(((1−r)² + r|1−ξζ|²) / ((1−r)² + r|1−ξζ̄|²))|`` and the same
        expression at ``r = 1``, ``|ln(|1−ξζ|² / |1−ξζ̄|²)|``.
    """
    num = abs(1 - xi * zeta) ** 2
    den = abs(1 - xi * zeta.conjugate()) ** 2
    at_r = abs(math.log(((1 - r) ** 2 + r * num) / ((1 - r) ** 2 + r * den)))
    at_one = abs(math.log(num / den))
    return at_r, at_one


def intermediate_bound_check(
    f: analytic_fn.TaylorPoly,
    eta: analytic_fn.UnitComplex,
    zeta: analytic_fn.UnitComplex,
    r: float,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> VerifyRecord:
    """
    Checks ``|f(rζη) − f(rζ̄η)| <= ∫_T |f'(ξη)| |ln|(1−ξζ)/(1−ξζ̄)|²| dm(ξ)``.

    The right-hand side is the r-free majorant of the proof. With
    ``ζ = e^{iφ}`` and ``ξ = e^{is}`` its kernel is
    ``2 |ln|sin((s+φ)/2)| − ln|sin((s−φ)/2)||``, singular at ``s = ±φ``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``r`` is not in ``(0, 1)``.
    tlab_hardy.errors.QuadratureError
        If the majorant does not converge.
    """
    if not 0.0 < r < 1.0:
        raise errors.DomainError(f"r must lie in (0, 1), got {r}")
    point = r * zeta.value * eta.value
    mirror = r * zeta.value.conjugate() * eta.value
    lhs = abs(analytic_fn.eval(f, point) - analytic_fn.eval(f, mirror))
    phi = abs(cmath.phase(zeta.value))
    if f.is_constant() or phi == 0.0 or phi == math.pi:
        return VerifyRecord(f.spec, eta.angle, lhs, 0.0)
    df = analytic_fn.derivative(f)
    rotated = analytic_fn.rotate(df, eta)

    def integrand(angles: FloatArray) -> FloatArray:
        with np.errstate(divide="ignore"):
            kernel = np.log(np.abs(np.sin(0.5 * (angles + phi)))) - np.log(
                np.abs(np.sin(0.5 * (angles - phi)))
            )
        values = np.abs(analytic_fn.eval_many(rotated, np.exp(1j * angles)))
        return t.cast(FloatArray, values * 2.0 * np.abs(kernel) / (2.0 * math.pi))

    rhs = quadrature.integrate_circle(
        integrand,
        quad,
        points=analytic_fn.boundary_zeros(rotated),
        singular=[phi, 2.0 * math.pi - phi],
        min_panels=max(4, len(f.coeffs)),
        what="majorant integral",
    )
    return VerifyRecord(f.spec, eta.angle, lhs, float(rhs.value), rhs.err_est)
