import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import integrate

from tests import polys, scalars, units
from tlab_hardy import analytic_fn, errors, quadrature, singular_quad


def _lhs_oracle(f: analytic_fn.TaylorPoly, eta: analytic_fn.UnitComplex) -> float:
    """The left-hand side by scipy, straight from the definition on T."""

    def integrand(t: float) -> float:
        zeta = cmath.exp(1j * t)
        upper = analytic_fn.eval(f, zeta * eta.value)
        lower = analytic_fn.eval(f, zeta.conjugate() * eta.value)
        return abs(upper - lower) / abs(1 - zeta)

    value, _ = integrate.quad(
        integrand, 1e-12, 2 * math.pi - 1e-12, limit=500, epsabs=1e-11, epsrel=1e-11
    )
    return value / (2 * math.pi)


def describe_theorem1_lhs() -> None:
    def test_identity_is_four_over_pi(eta: analytic_fn.UnitComplex) -> None:
        result = singular_quad.theorem1_lhs(analytic_fn.TaylorPoly((0, 1)), eta)
        assert result.value == pytest.approx(4 / math.pi, abs=1e-10)

    @pytest.mark.parametrize("coeffs", [(), (5,), (2 - 1j,)])
    def test_constants(coeffs: tuple[complex, ...]) -> None:
        eta = analytic_fn.UnitComplex.from_angle(0.7)
        result = singular_quad.theorem1_lhs(analytic_fn.TaylorPoly(coeffs), eta)
        assert result.value == 0.0

    def test_scipy_oracle(random_f: analytic_fn.TaylorPoly) -> None:
        eta = analytic_fn.UnitComplex.from_angle(1.1)
        result = singular_quad.theorem1_lhs(random_f, eta)
        assert result.value == pytest.approx(_lhs_oracle(random_f, eta), rel=1e-7)

    def test_real_coefficients_with_corners() -> None:
        f = analytic_fn.TaylorPoly((0, 1, -1, 0.5, 0.25))
        eta = analytic_fn.UnitComplex.one()
        result = singular_quad.theorem1_lhs(f, eta)
        assert result.value == pytest.approx(_lhs_oracle(f, eta), rel=1e-7)

    @given(polys, units, units)
    @settings(max_examples=15, deadline=None)
    def test_substitution_invariance(
        f: analytic_fn.TaylorPoly,
        rho: analytic_fn.UnitComplex,
        eta: analytic_fn.UnitComplex,
    ) -> None:
        rotated = singular_quad.theorem1_lhs(analytic_fn.rotate(f, rho), eta)
        direct = singular_quad.theorem1_lhs(f, rho * eta)
        assert rotated.value == pytest.approx(direct.value, rel=1e-8, abs=1e-12)

    @given(polys, units, scalars)
    @settings(max_examples=15, deadline=None)
    def test_constant_shift_and_scaling(
        f: analytic_fn.TaylorPoly, eta: analytic_fn.UnitComplex, c: complex
    ) -> None:
        base = singular_quad.theorem1_lhs(f, eta).value
        assert singular_quad.theorem1_lhs(f + c, eta).value == pytest.approx(
            base, rel=1e-12
        )
        assert singular_quad.theorem1_lhs(c * f, eta).value == pytest.approx(
            abs(c) * base, rel=1e-8
        )


def describe_verify_theorem1() -> None:
    def test_identity() -> None:
        f = analytic_fn.from_spec("poly:0,1")
        out = singular_quad.verify_theorem1(f, analytic_fn.eta_grid(8))
        assert len(out) == 8
        for record in out:
            assert record.passed
            assert record.lhs == pytest.approx(4 / math.pi, abs=1e-10)
            assert record.rhs == pytest.approx(math.pi)
            assert record.function_id == "poly:0,1"

    def test_angles_follow_grid() -> None:
        grid = analytic_fn.eta_grid(4)
        out = singular_quad.verify_theorem1(analytic_fn.TaylorPoly((1, 1)), grid)
        assert [r.eta_angle for r in out] == [eta.angle for eta in grid]

    def test_passes(f: analytic_fn.TaylorPoly) -> None:
        out = singular_quad.verify_theorem1(f, analytic_fn.eta_grid(6))
        assert all(r.passed for r in out)

    @pytest.mark.slow
    def test_random_degree_16_margin() -> None:
        f = analytic_fn.random_poly(16, 7)
        out = singular_quad.verify_theorem1(f, analytic_fn.eta_grid(64))
        assert len(out) == 64
        assert all(r.passed for r in out)
        assert min(r.margin for r in out) == pytest.approx(86.6177, abs=1e-3)

    def test_zero_polynomial() -> None:
        out = singular_quad.verify_theorem1(analytic_fn.ZERO, analytic_fn.eta_grid(3))
        assert len(out) == 1
        assert out[0].passed

    def test_empty_grid() -> None:
        with pytest.raises(errors.DomainError):
            singular_quad.verify_theorem1(analytic_fn.TaylorPoly((0, 1)), [])

    def test_failure_becomes_record(monkeypatch: pytest.MonkeyPatch) -> None:
        best = quadrature.QuadResult(1.0, 0.5, 10, converged=False)

        def failing(*args: object) -> quadrature.QuadResult:
            raise errors.QuadratureError("no luck", best)

        monkeypatch.setattr(singular_quad, "theorem1_lhs", failing)
        out = singular_quad.verify_theorem1(
            analytic_fn.TaylorPoly((0, 1)), analytic_fn.eta_grid(2)
        )
        assert len(out) == 2
        assert not any(r.converged or r.passed for r in out)


def describe_kernel_integral() -> None:
    @pytest.mark.parametrize("theta", [0.05, 0.5, 1.0, math.pi / 2, 2.0, 3.0])
    def test_scipy_oracle(theta: float) -> None:
        def integrand(t: float) -> float:
            ratio = math.log(abs(math.sin((theta + t) / 2))) - math.log(
                abs(math.sin((theta - t) / 2))
            )
            return abs(ratio) / math.sin(t / 2) / math.pi

        left, _ = integrate.quad(integrand, 0, theta, limit=200)
        right, _ = integrate.quad(integrand, theta, math.pi, limit=200)
        result = singular_quad.kernel_integral(theta)
        assert result.value == pytest.approx(left + right, rel=1e-7)

    @pytest.mark.parametrize("theta", [0.01, 0.3, 1.3, 2.2, 3.1])
    def test_tangent_form_agrees(theta: float) -> None:
        direct = singular_quad.kernel_integral(theta).value
        tangent = singular_quad.kernel_integral_tangent(theta).value
        assert direct == pytest.approx(tangent, rel=1e-9)

    @pytest.mark.parametrize("theta", [math.pi, 0.0, 2 * math.pi])
    def test_vanishes_where_the_ratio_does(theta: float) -> None:
        assert singular_quad.kernel_integral(theta).value == 0.0
        assert singular_quad.kernel_integral_tangent(theta).value == 0.0

    def test_symmetry() -> None:
        value = singular_quad.kernel_integral(1.2).value
        assert singular_quad.kernel_integral(-1.2).value == pytest.approx(value)
        assert singular_quad.kernel_integral(2 * math.pi - 1.2).value == pytest.approx(
            value
        )

    def test_approaches_pi_near_one() -> None:
        value = singular_quad.kernel_integral(0.01).value
        assert 3.1 < value <= math.pi

    @given(st.floats(1e-3, math.pi, exclude_max=True))
    @settings(max_examples=20, deadline=None)
    def test_bounded_by_pi(theta: float) -> None:
        value = singular_quad.kernel_integral(theta).value
        assert 0 <= value <= math.pi + 1e-6


def describe_log_ratio() -> None:
    def test_unit_interval() -> None:
        result = singular_quad.log_ratio_integral(0.0, 1.0)
        assert result.value == pytest.approx(math.pi**2 / 4, abs=1e-9)

    def test_series() -> None:
        assert singular_quad.log_ratio_series().value == pytest.approx(
            math.pi**2 / 4, rel=1e-14
        )
        assert singular_quad.log_ratio_series(1).value == pytest.approx(
            math.pi**2 / 4, rel=1e-14
        )

    def test_series_domain() -> None:
        with pytest.raises(errors.DomainError):
            singular_quad.log_ratio_series(0)

    def test_fold() -> None:
        outer = singular_quad.log_ratio_integral(1.0, 10.0).value
        inner = singular_quad.log_ratio_integral(0.1, 1.0).value
        assert outer == pytest.approx(inner, rel=1e-9)

    def test_interval_across_one() -> None:
        whole = singular_quad.log_ratio_integral(0.5, 2.0).value
        below = singular_quad.log_ratio_integral(0.5, 1.0).value
        above = singular_quad.log_ratio_integral(1.0, 2.0).value
        assert whole == pytest.approx(below + above, rel=1e-9)

    @pytest.mark.parametrize("bounds", [(1.0, 1.0), (-1.0, 0.5), (2.0, 1.0)])
    def test_invalid(bounds: tuple[float, float]) -> None:
        with pytest.raises(errors.DomainError):
            singular_quad.log_ratio_integral(*bounds)

    def test_reference_constant() -> None:
        result = singular_quad.reference_constant()
        assert result.value == pytest.approx(math.pi, abs=1e-8)


def describe_reconstruct() -> None:
    def test_at_origin(random_f: analytic_fn.TaylorPoly) -> None:
        assert singular_quad.reconstruct(random_f, 0) == random_f.coeffs[0]

    def test_matches_eval(random_f: analytic_fn.TaylorPoly) -> None:
        rng = np.random.default_rng(3)
        for _ in range(10):
            z = 0.9 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
            value = singular_quad.reconstruct(random_f, z)
            assert value == pytest.approx(analytic_fn.eval(random_f, z), abs=1e-8)

    def test_near_boundary() -> None:
        f = analytic_fn.TaylorPoly((1, -2, 0.5j))
        z = 0.98j
        assert singular_quad.reconstruct(f, z) == pytest.approx(
            analytic_fn.eval(f, z), abs=1e-8
        )

    def test_constant() -> None:
        assert singular_quad.reconstruct(analytic_fn.TaylorPoly((4j,)), 0.5) == 4j

    def test_too_close_to_the_circle() -> None:
        with pytest.raises(errors.DomainError):
            singular_quad.reconstruct(analytic_fn.TaylorPoly((0, 1)), 0.995)


def describe_intermediate_bound() -> None:
    def test_passes(random_f: analytic_fn.TaylorPoly) -> None:
        rng = np.random.default_rng(11)
        for _ in range(4):
            eta = analytic_fn.UnitComplex.from_angle(2 * math.pi * rng.random())
            zeta = analytic_fn.UnitComplex.from_angle(2 * math.pi * rng.random())
            r = float(rng.uniform(0.05, 0.95))
            record = singular_quad.intermediate_bound_check(random_f, eta, zeta, r)
            assert record.passed
            assert record.lhs > 0

    def test_real_axis_is_trivial() -> None:
        f = analytic_fn.TaylorPoly((0, 1, 1))
        eta = analytic_fn.UnitComplex.from_angle(0.4)
        record = singular_quad.intermediate_bound_check(
            f, eta, analytic_fn.UnitComplex.one(), 0.5
        )
        assert (record.lhs, record.rhs) == (0.0, 0.0)

    @pytest.mark.parametrize("r", [0.0, 1.0, -0.2])
    def test_radius_domain(r: float) -> None:
        one = analytic_fn.UnitComplex.one()
        f = analytic_fn.TaylorPoly((0, 1))
        with pytest.raises(errors.DomainError):
            singular_quad.intermediate_bound_check(f, one, one, r)

    def test_majorant_with_scipy() -> None:
        f = analytic_fn.TaylorPoly((0, 1))
        phi = 1.0
        zeta = analytic_fn.UnitComplex.from_angle(phi)
        record = singular_quad.intermediate_bound_check(
            f, analytic_fn.UnitComplex.one(), zeta, 0.5
        )

        def kernel(s: float) -> float:
            ratio = math.log(abs(math.sin((s + phi) / 2))) - math.log(
                abs(math.sin((s - phi) / 2))
            )
            return 2 * abs(ratio) / (2 * math.pi)

        pieces = [0.0, phi, 2 * math.pi - phi, 2 * math.pi]
        oracle = sum(
            integrate.quad(kernel, a, b, limit=200)[0]
            for a, b in zip(pieces, pieces[1:])
        )
        assert record.rhs == pytest.approx(oracle, rel=1e-7)


def describe_log_ratio_majorant() -> None:
    @given(st.floats(0.0, 0.999), units, units)
    def test_monotone_in_r(
        r: float, xi: analytic_fn.UnitComplex, zeta: analytic_fn.UnitComplex
    ) -> None:
        assume(abs(1 - xi.value * zeta.value) > 1e-6)
        assume(abs(1 - xi.value * zeta.value.conjugate()) > 1e-6)
        at_r, at_one = singular_quad.log_ratio_majorant(r, xi.value, zeta.value)
        assert at_r <= at_one * (1 + 1e-12) + 1e-12

    @given(st.floats(0.01, 0.99), units, units)
    def test_matches_direct_form(
        r: float, xi: analytic_fn.UnitComplex, zeta: analytic_fn.UnitComplex
    ) -> None:
        at_r, _ = singular_quad.log_ratio_majorant(r, xi.value, zeta.value)
        w = xi.value * zeta.value
        v = xi.value * zeta.value.conjugate()
        direct = abs(math.log(abs(1 - r * w) ** 2 / abs(1 - r * v) ** 2))
        assert at_r == pytest.approx(direct, rel=1e-9, abs=1e-12)

    def test_at_one() -> None:
        at_r, at_one = singular_quad.log_ratio_majorant(1.0, 0.6 + 0.8j, 1j)
        assert at_r == pytest.approx(at_one)
        assert at_one == pytest.approx(math.log(9.0), rel=1e-12)
