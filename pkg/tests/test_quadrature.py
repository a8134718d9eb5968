import math

import numpy as np
import pytest
from scipy import integrate

from tlab_hardy import errors, quadrature


def describe_quad_config() -> None:
    def test_defaults() -> None:
        config = quadrature.QuadConfig()
        assert config.atol == 1e-12
        assert config.rtol == 1e-10
        assert config.max_nodes == 2**20

    @pytest.mark.parametrize(
        "kwargs",
        [{"atol": 0.0}, {"rtol": -1.0}, {"max_nodes": 0}, {"max_level": 0}],
    )
    def test_validation(kwargs: dict[str, float]) -> None:
        with pytest.raises(ValueError):
            quadrature.QuadConfig(**kwargs)  # type: ignore[arg-type]

    def test_accepts() -> None:
        config = quadrature.QuadConfig(atol=1e-3, rtol=1e-2)
        assert config.accepts(0.01, 1.0)
        assert not config.accepts(0.1, 1.0)


def describe_quad_result() -> None:
    def test_exact() -> None:
        result = quadrature.QuadResult.exact(2.0)
        assert (result.value, result.err_est, result.converged) == (2.0, 0.0, True)

    def test_scaled() -> None:
        result = quadrature.QuadResult(2.0, 0.5, 10).scaled(-2.0)
        assert (result.value, result.err_est, result.nodes) == (-4.0, 1.0, 10)

    def test_negative_error() -> None:
        with pytest.raises(ValueError):
            quadrature.QuadResult(1.0, -1.0, 1)


def describe_composite_rule() -> None:
    def test_integrates_polynomials_exactly() -> None:
        x, w = quadrature.composite_rule(0.0, 2.0, 0)
        assert np.sum(w * x**5) == pytest.approx(2.0**6 / 6, rel=1e-14)

    def test_nodes_stay_inside() -> None:
        x, w = quadrature.composite_rule(
            -1.0, 1.0, 2, points=[(0.3, 1e-4)], singular=[0.5]
        )
        assert x.min() > -1.0 and x.max() < 1.0
        assert np.all(w > 0)
        assert np.sum(w) == pytest.approx(2.0, rel=1e-13)

    def test_grading_reaches_singularity() -> None:
        x, _ = quadrature.composite_rule(0.0, 1.0, 0, singular=[0.5])
        assert np.min(np.abs(x - 0.5)) < 1e-5

    def test_points_outside_are_ignored() -> None:
        plain = quadrature.composite_rule(0.0, 1.0, 1)
        shifted = quadrature.composite_rule(
            0.0, 1.0, 1, points=[(2.0, 0.1)], singular=[-1.0]
        )
        np.testing.assert_array_equal(plain[0], shifted[0])

    def test_level_refines() -> None:
        coarse, _ = quadrature.composite_rule(0.0, 1.0, 0)
        fine, _ = quadrature.composite_rule(0.0, 1.0, 3)
        assert fine.size == 8 * coarse.size


def describe_integrate() -> None:
    def test_smooth() -> None:
        result = quadrature.integrate(np.exp, 0.0, 1.0)
        assert result.value == pytest.approx(math.e - 1, rel=1e-13)
        assert result.converged

    def test_log_endpoint() -> None:
        result = quadrature.integrate(np.log, 0.0, 1.0, singular=[0.0])
        assert result.value == pytest.approx(-1.0, abs=1e-10)

    def test_interior_log() -> None:
        def func(x: np.ndarray) -> np.ndarray:
            return np.log(np.abs(x - 0.3))

        result = quadrature.integrate(func, 0.0, 1.0, singular=[0.3])
        exact = 0.3 * math.log(0.3) + 0.7 * math.log(0.7) - 1.0
        assert result.value == pytest.approx(exact, abs=1e-10)

    def test_near_corner() -> None:
        def func(x: np.ndarray) -> np.ndarray:
            return np.sqrt((x - 0.4) ** 2 + 1e-12)

        result = quadrature.integrate(func, 0.0, 1.0, points=[(0.4, 1e-6)])
        oracle, _ = integrate.quad(
            func, 0.0, 1.0, points=[0.4], epsabs=1e-13, limit=200
        )
        assert result.value == pytest.approx(oracle, abs=1e-10)

    def test_complex_integrand() -> None:
        def func(x: np.ndarray) -> np.ndarray:
            return np.exp(1j * x)

        result = quadrature.integrate(func, 0.0, math.pi)
        assert result.value == pytest.approx(2j, abs=1e-13)

    def test_empty_interval() -> None:
        with pytest.raises(errors.DomainError):
            quadrature.integrate(np.exp, 1.0, 1.0)

    def test_non_convergence() -> None:
        config = quadrature.QuadConfig(max_nodes=100, max_level=3)

        def func(x: np.ndarray) -> np.ndarray:
            return np.sin(1000.0 * x)

        with pytest.raises(errors.QuadratureError) as info:
            quadrature.integrate(func, 0.0, 1.0, config)
        assert not info.value.result.converged
        assert isinstance(info.value, ArithmeticError)


def describe_integrate_circle() -> None:
    def test_abs_cos() -> None:
        def func(t: np.ndarray) -> np.ndarray:
            return np.abs(np.cos(t))

        points = [(math.pi / 2, 0.0), (3 * math.pi / 2, 0.0)]
        result = quadrature.integrate_circle(func, points=points)
        assert result.value == pytest.approx(4.0, rel=1e-12)

    def test_feature_on_seam() -> None:
        def func(t: np.ndarray) -> np.ndarray:
            return np.log(np.abs(np.sin(0.5 * t)))

        result = quadrature.integrate_circle(func, singular=[0.0])
        assert result.value == pytest.approx(-2 * math.pi * math.log(2), abs=1e-9)

    def test_shifted_window() -> None:
        def func(t: np.ndarray) -> np.ndarray:
            return np.abs(np.sin(t - 1.0))

        points = [(1.0, 0.0), (1.0 + math.pi, 0.0)]
        result = quadrature.integrate_circle(func, points=points)
        assert result.value == pytest.approx(4.0, rel=1e-12)


def describe_integrate_periodic() -> None:
    def test_mean_of_analytic_function() -> None:
        def func(t: np.ndarray) -> np.ndarray:
            return 1.0 / (2.0 + np.cos(t))

        result = quadrature.integrate_periodic(func)
        assert result.value == pytest.approx(1 / math.sqrt(3), rel=1e-13)

    def test_trigonometric_polynomial() -> None:
        def func(t: np.ndarray) -> np.ndarray:
            return np.exp(3j * t) + 0.5

        result = quadrature.integrate_periodic(func)
        assert result.value == pytest.approx(0.5, abs=1e-14)
