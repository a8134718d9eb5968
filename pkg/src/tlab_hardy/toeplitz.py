"""
The Toeplitz operator ``T_f h = P(f̄ h)`` with analytic symbol.

For polynomials the Cauchy integral

    T_f h(z) = ∫_T f̄(ζ) h(ζ) / (1 − ζ̄ z) dm(ζ)

reduces to a finite upper triangular Toeplitz matrix acting on the Taylor
coefficients of ``h``; that is what `apply` computes. `apply_bruteforce`
and `cauchy_integral` evaluate the definition directly and serve as
oracles. The norm bound checked here is

    ||T_f||_{H^∞} <= ||f||_{H^∞} + π ||f'||_{H^1}.
"""
import cmath
import dataclasses
import logging
import math
import typing as t
from collections import abc

import numpy as np
from scipy import linalg

from tlab_hardy import analytic_fn, errors, hardy_norms, quadrature, records

logger = logging.getLogger(__name__)

MONOMIAL_DEGREE = 16
MOBIUS_RADIUS = 0.6
MOBIUS_COUNT = 8
RANDOM_DEGREES = (1, 2, 4, 8, 16)
CAUCHY_MAX_RADIUS = 0.99
OPERATOR_BOUND_RTOL = 1e-8
"""Relative slack of the operator bound check."""


@dataclasses.dataclass(frozen=True)
class ToeplitzApplication:
    """
    The result of applying a Toeplitz operator to one function.
    """

    result: analytic_fn.TaylorPoly
    """Coefficients of ``T_f h``; the degree never exceeds that of h."""
    sup_norm_lb: float
    """Maximum modulus of ``T_f h`` found on T."""


def toeplitz_matrix(f: analytic_fn.TaylorPoly, size: int) -> t.Any:
    """
    The ``size x size`` matrix with entries ``conj(a_{k-n})`` for ``k >= n``.

    >>> matrix = toeplitz_matrix(analytic_fn.TaylorPoly((1, 2j)), 2)
    >>> (matrix == [[1, -2j], [0, 1]]).all()
    True
    """
    if size < 1:
        raise errors.DomainError(f"matrix size must be positive, got {size}")
    row = np.conj(f.padded(size))
    column = np.zeros(size, dtype=np.complex128)
    column[0] = row[0]
    return linalg.toeplitz(column, row)


def apply(
    f: analytic_fn.TaylorPoly, h: analytic_fn.TaylorPoly
) -> analytic_fn.TaylorPoly:
    """
    Applies ``T_f`` to ``h`` in the coefficient domain.

    Expanding the Cauchy kernel as ``Σ_n ζ̄^n z^n`` gives
    ``c_n = Σ_{k>=n} conj(a_{k-n}) b_k`` for ``0 <= n <= deg h``.

    >>> f = analytic_fn.TaylorPoly((1, 1))
    >>> apply(f, analytic_fn.TaylorPoly((0, 1, 1))).coeffs == (1, 2, 1)
    True
    """
    if h.degree is None or f.degree is None:
        return analytic_fn.ZERO
    size = h.degree + 1
    return analytic_fn.TaylorPoly.from_array(toeplitz_matrix(f, size) @ h.array)


def apply_bruteforce(
    f: analytic_fn.TaylorPoly, h: analytic_fn.TaylorPoly, n: int
) -> analytic_fn.TaylorPoly:
    """
    Applies ``T_f`` by sampling ``f̄ h`` on T and taking its DFT.

    Parameters
    ----------
    f, h : tlab_hardy.analytic_fn.TaylorPoly
        Symbol and argument.
    n : int
        Number of boundary samples. The frequencies of ``f̄ h`` range over
        ``-deg f .. deg h``, so ``n > deg f + deg h`` avoids aliasing.

    Returns
    -------
    tlab_hardy.analytic_fn.TaylorPoly
        The DFT coefficients at frequencies ``0 .. deg h``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``n`` is too small for an alias-free transform.
    """
    deg_f = f.degree or 0
    deg_h = h.degree or 0
    if n <= deg_f + deg_h:
        raise errors.DomainError(
            f"{n} samples alias a product of degrees {deg_f} and {deg_h}"
        )
    if h.degree is None or f.degree is None:
        return analytic_fn.ZERO
    samples = np.conj(analytic_fn.boundary_samples(f, n))
    samples = samples * analytic_fn.boundary_samples(h, n)
    spectrum = np.fft.fft(samples) / n
    return analytic_fn.TaylorPoly.from_array(spectrum[: deg_h + 1])


def application(
    f: analytic_fn.TaylorPoly,
    h: analytic_fn.TaylorPoly,
    grid: int = hardy_norms.HINF_GRID,
) -> ToeplitzApplication:
    result = apply(f, h)
    return ToeplitzApplication(result, hardy_norms.hinf_norm(result, grid))


def operator_bound(
    f: analytic_fn.TaylorPoly,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> float:
    """
    The upper bound ``||f||_{H^∞} + π ||f'||_{H^1}`` for ``||T_f||``.

    Raises
    ------
    tlab_hardy.errors.QuadratureError
        If the H^1 norm does not converge.
    """
    return _operator_bound(f, quad)[0]


def _operator_bound(
    f: analytic_fn.TaylorPoly, quad: quadrature.QuadConfig
) -> tuple[float, float]:
    norm = hardy_norms.h1_norm_boundary(analytic_fn.derivative(f), quad)
    bound = hardy_norms.hinf_norm(f) + math.pi * float(norm.value)
    return bound, math.pi * float(norm.err_est)


def norm_witness(
    f: analytic_fn.TaylorPoly, h_corpus: abc.Sequence[analytic_fn.TaylorPoly]
) -> tuple[float, analytic_fn.TaylorPoly]:
    """
    The corpus member maximizing ``||T_f h||_∞ / ||h||_∞``.

    Zero members are skipped; ties go to the first member.

    Returns
    -------
    tuple[float, tlab_hardy.analytic_fn.TaylorPoly]
        The lower bound on ``||T_f||`` and the member attaining it.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If the corpus has no nonzero member.
    """
    best: tuple[float, analytic_fn.TaylorPoly] | None = None
    for h in h_corpus:
        size = hardy_norms.hinf_norm(h)
        if size == 0.0:
            continue
        value = hardy_norms.hinf_norm(apply(f, h * (1.0 / size)))
        if best is None or value > best[0]:
            best = (value, h)
    if best is None:
        raise errors.DomainError("the h corpus has no nonzero member")
    return best


def empirical_norm_lb(
    f: analytic_fn.TaylorPoly, h_corpus: abc.Sequence[analytic_fn.TaylorPoly]
) -> float:
    """
    A certified lower bound on ``||T_f||_{H^∞}`` over a finite corpus.

    Each member is normalized to ``||h||_∞ = 1`` before applying ``T_f``.
    """
    return norm_witness(f, h_corpus)[0]


def reflected_conjugate_boundary(
    f: analytic_fn.TaylorPoly, eta: analytic_fn.UnitComplex, n: int
) -> t.Any:
    """
    Samples ``g(ζ) = conj(f(ζ̄ η))`` on the uniform grid of T.

    On T this ``g`` is the analytic polynomial with coefficients
    ``conj(a_k η^k)``, so ``|g|`` and ``|f|`` share their maximum.

    >>> samples = reflected_conjugate_boundary(
    ...     analytic_fn.TaylorPoly((0, 1)), analytic_fn.UnitComplex.one(), 4
    ... )
    >>> np.allclose(samples, [1, 1j, -1, -1j])
    True
    """
    reflected = np.conj(analytic_fn.boundary_grid(n)) * eta.value
    return np.conj(analytic_fn.eval_many(f, reflected))


def _check_interior(z: complex) -> None:
    if abs(z) > CAUCHY_MAX_RADIUS:
        raise errors.DomainError(f"|z| = {abs(z)} exceeds {CAUCHY_MAX_RADIUS}")


def cauchy_integral(
    f: analytic_fn.TaylorPoly,
    h: analytic_fn.TaylorPoly,
    z: complex,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> quadrature.QuadResult:
    """
    Evaluates ``T_f h(z)`` from its defining Cauchy integral.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``|z| > 0.99``.
    tlab_hardy.errors.QuadratureError
        If the periodic rule does not converge.
    """
    z = complex(z)
    _check_interior(z)

    def integrand(angles: t.Any) -> t.Any:
        zeta = np.exp(1j * angles)
        product = np.conj(analytic_fn.eval_many(f, zeta))
        product = product * analytic_fn.eval_many(h, zeta)
        return product / (1.0 - np.conj(zeta) * z)

    nodes = max(16, 2 * (len(f.coeffs) + len(h.coeffs)))
    return quadrature.integrate_periodic(
        integrand, quad, min_nodes=nodes, what="Cauchy integral"
    )


def split_piece_integral(
    f: analytic_fn.TaylorPoly,
    h: analytic_fn.TaylorPoly,
    eta: analytic_fn.UnitComplex,
    r: float,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> quadrature.QuadResult:
    """
    Computes ``∫_T conj(f(ζ̄η)) h(ζη) / (1 − rζ̄) dm(ζ)``.

    On T the numerator is the analytic ``g(ζ) h(ζη)`` with
    ``g(z) = Σ conj(a_k η^k) z^k``, so the integral equals ``g(r) h(rη)``.

    Raises
    ------
    tlab_hardy.errors.DomainError
        If ``r`` is not in ``[0, 0.99]``.
    """
    if not 0.0 <= r <= CAUCHY_MAX_RADIUS:
        raise errors.DomainError(f"r must lie in [0, {CAUCHY_MAX_RADIUS}], got {r}")

    def integrand(angles: t.Any) -> t.Any:
        zeta = np.exp(1j * angles)
        reflected = np.conj(analytic_fn.eval_many(f, np.conj(zeta) * eta.value))
        shifted = analytic_fn.eval_many(h, zeta * eta.value)
        return reflected * shifted / (1.0 - r * np.conj(zeta))

    nodes = max(16, 2 * (len(f.coeffs) + len(h.coeffs)))
    return quadrature.integrate_periodic(
        integrand, quad, min_nodes=nodes, what="split piece"
    )


def split_piece_check(
    f: analytic_fn.TaylorPoly,
    h: analytic_fn.TaylorPoly,
    eta: analytic_fn.UnitComplex,
    r: float,
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> records.VerifyRecord:
    """
    Checks that the bounded piece of the operator split stays below
    ``||f||_∞ ||h||_∞``.
    """
    piece = split_piece_integral(f, h, eta, r, quad)
    bound = hardy_norms.hinf_norm(f) * hardy_norms.hinf_norm(h)
    lhs = abs(piece.value)
    return records.VerifyRecord(f.spec, eta.angle, lhs, bound, piece.err_est)


def default_h_corpus(seed: int = 0, size: int = 50) -> list[analytic_fn.TaylorPoly]:
    """
    The deterministic corpus used for operator-norm lower bounds.

    It holds the monomials ``z^0 .. z^16``, eight truncated disc
    automorphisms with ``|a| = 0.6`` at equispaced angles, and seeded
    random polynomials with degrees cycling through 1, 2, 4, 8 and 16,
    in that order, cut to ``size`` members.
    """
    if size < 1:
        raise errors.DomainError(f"corpus size must be positive, got {size}")
    members = [
        analytic_fn.TaylorPoly((0,) * k + (1,), f"poly:{'0,' * k}1")
        for k in range(MONOMIAL_DEGREE + 1)
    ]
    for j in range(MOBIUS_COUNT):
        a = MOBIUS_RADIUS * cmath.exp(2j * math.pi * j / MOBIUS_COUNT)
        members.append(analytic_fn.make_mobius(a, MONOMIAL_DEGREE))
    index = 0
    while len(members) < size:
        degree = RANDOM_DEGREES[index % len(RANDOM_DEGREES)]
        members.append(analytic_fn.random_poly(degree, seed + index))
        index += 1
    return members[:size]


def verify_theorem2(
    f: analytic_fn.TaylorPoly,
    h_corpus: abc.Sequence[analytic_fn.TaylorPoly],
    quad: quadrature.QuadConfig = quadrature.DEFAULT_CONFIG,
) -> list[records.VerifyRecord]:
    """
    Checks ``||T_f h||_∞ <= (||f||_∞ + π||f'||_{H^1}) ||h||_∞`` per member.

    The H^1 error estimate, scaled by ``π ||h||_∞``, is the record's
    ``quad_err``.

    Returns
    -------
    list[tlab_hardy.records.VerifyRecord]
        One record per corpus member, labelled ``"<f>|<h>"``.
    """
    bound, bound_err = _operator_bound(f, quad)
    out = []
    for h in h_corpus:
        lhs = hardy_norms.hinf_norm(apply(f, h))
        h_norm = hardy_norms.hinf_norm(h)
        out.append(
            records.VerifyRecord(
                f"{f.spec}|{h.spec}",
                None,
                lhs,
                bound * h_norm,
                bound_err * h_norm,
                rtol=OPERATOR_BOUND_RTOL,
            )
        )
    logger.info(
        "operator bound sweep %s: %d/%d passed",
        f.spec,
        sum(r.passed for r in out),
        len(out),
    )
    return out
