"""
Boundary norms of polynomials and the Hardy inequality.

For a polynomial ``p`` the integral means ``r -> ∫_T |p(rζ)| dm(ζ)`` are
nondecreasing (``|p|`` is subharmonic), so the supremum over ``r < 1`` in
the definition of the H^1 norm is the boundary integral at ``r = 1``. By
the maximum principle the H^∞ norm is the maximum modulus on T.
"""
import cmath
import dataclasses
import logging
import math
import typing as t

import numpy as np
from scipy import optimize

from tlab_hardy import analytic_fn, quadrature, records

logger = logging.getLogger(__name__)

HINF_GRID = 4096
"""Default size of the coarse boundary grid of `hinf_norm`."""
HINF_CANDIDATES = 5
HINF_XATOL = 1e-10


@dataclasses.dataclass(frozen=True)
class NormReport:
    """
    The three numbers entering the Hardy inequality for one function.
    """

    hinf: float
    """Supremum norm of f."""
    h1_deriv: float
    """H^1 norm of f'."""
    hardy_sum: float
    """Sum of |a_k| over k >= 1."""
    quad_error: float = 0.0
    """Quadrature error estimate of ``h1_deriv``."""

    @property
    def passed(self) -> bool:
        bound = math.pi * self.h1_deriv
        slack = math.pi * self.quad_error
        return self.hardy_sum <= bound * (1 + records.PASS_RTOL) + slack

    def to_dict(self) -> dict[str, t.Any]:
        return {
            "hinf": self.hinf,
            "h1_deriv": self.h1_deriv,
            "hardy_sum": self.hardy_sum,
            "quad_error": self.quad_error,
        }


def h1_norm_boundary(
    p: analytic_fn.TaylorPoly,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> quadrature.QuadResult:
    """
    Computes the H^1 norm ``(1/2π) ∫_0^{2π} |p(e^{it})| dt``.

    Zeros of ``p`` on or near T become breakpoints of the composite rule:
    ``|p|`` has a corner at every zero on T.

    Parameters
    ----------
    p : tlab_hardy.analytic_fn.TaylorPoly
        The polynomial.
    quad : tlab_hardy.quadrature.QuadConfig
        Tolerances and node budget.

    Returns
    -------
    tlab_hardy.quadrature.QuadResult
        The norm with its error estimate.

    Raises
    ------
    tlab_hardy.errors.QuadratureError
        If the quadrature does not converge.
    """
    if p.degree is None:
        return quadrature.QuadResult.exact(0.0)
    if p.degree == 0:
        return quadrature.QuadResult.exact(abs(p.coeffs[0]))

    def integrand(angles: t.Any) -> t.Any:
        return np.abs(analytic_fn.eval_many(p, np.exp(1j * angles)))

    result = quadrature.integrate_circle(
        integrand,
        quad,
        points=analytic_fn.boundary_zeros(p),
        min_panels=max(4, p.degree),
        what="H1 norm",
    )
    return result.scaled(1.0 / (2.0 * math.pi))


def hinf_norm(p: analytic_fn.TaylorPoly, grid: int = HINF_GRID) -> float:
    """
    Computes the H^∞ norm as the maximum modulus on T.

    A coarse grid of ``max(grid, 16 * (deg + 1))`` points locates the
    candidates; the best ``HINF_CANDIDATES`` local maxima (ties broken by
    the lowest angle) are refined by a bounded golden-section/Brent search
    over their neighbouring cells.

    Returns
    -------
    float
        ``max_{|z| <= 1} |p(z)|``, never below the largest grid sample.
    """
    if p.degree is None:
        return 0.0
    if p.degree == 0:
        return abs(p.coeffs[0])
    n = max(grid, 16 * (p.degree + 1))
    angles = analytic_fn.equispaced_angles(n)
    moduli = np.abs(analytic_fn.eval_many(p, np.exp(1j * angles)))
    is_peak = (moduli >= np.roll(moduli, 1)) & (moduli >= np.roll(moduli, -1))
    peaks = sorted(np.flatnonzero(is_peak), key=lambda j: (-moduli[j], j))
    step = 2.0 * math.pi / n
    best = float(moduli.max())

    def negative_modulus(angle: float) -> float:
        return -abs(analytic_fn.eval(p, cmath.exp(1j * angle)))

    for j in peaks[:HINF_CANDIDATES]:
        center = float(angles[j])
        found = optimize.minimize_scalar(
            negative_modulus,
            bounds=(center - step, center + step),
            method="bounded",
            options={"xatol": HINF_XATOL},
        )
        best = max(best, -float(found.fun))
    return best


def hardy_sum(p: analytic_fn.TaylorPoly) -> float:
    """
    The coefficient sum ``Σ_{k>=1} |a_k|``, correctly rounded.

    >>> hardy_sum(analytic_fn.make_log_family(4)) == 25 / 12
    True
    """
    return math.fsum(abs(a) for a in p.coeffs[1:])


def verify_hardy(
    p: analytic_fn.TaylorPoly,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> records.VerifyRecord:
    """
    Checks the Hardy inequality ``Σ_{k>=1} |a_k| <= π ||p'||_{H^1}``.

    Parameters
    ----------
    p : tlab_hardy.analytic_fn.TaylorPoly
        The polynomial. The zero polynomial passes trivially with both
        sides 0.
    quad : tlab_hardy.quadrature.QuadConfig
        Tolerances for the H^1 norm.

    Returns
    -------
    tlab_hardy.records.VerifyRecord
        The check, without a rotation angle.

    Raises
    ------
    tlab_hardy.errors.QuadratureError
        If the H^1 norm does not converge.
    """
    if p.degree is None:
        return records.VerifyRecord(p.spec, None, 0.0, 0.0)
    lhs = hardy_sum(p)
    norm = h1_norm_boundary(analytic_fn.derivative(p), quad)
    record = records.VerifyRecord(
        p.spec, None, lhs, math.pi * norm.value, math.pi * norm.err_est
    )
    logger.debug("Hardy check %s: %.6g <= %.6g", p.spec, record.lhs, record.rhs)
    return record


def norm_report(
    p: analytic_fn.TaylorPoly,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> NormReport:
    norm = h1_norm_boundary(analytic_fn.derivative(p), quad)
    return NormReport(hinf_norm(p), float(norm.value), hardy_sum(p), norm.err_est)
