import math

import numpy as np
import pytest

from harmonic_disc.boundary import BoundarySpec, eval_boundary
from harmonic_disc.checks import fd_laplacian, max_principle_check, mean_value_residual, solution_field
from harmonic_disc.errors import BoundarySpecError, DomainError
from harmonic_disc.polar import PolarPoint
from harmonic_disc.spectral import (
    DiscSolution,
    eval_solution,
    evaluate,
    radial_derivative,
    solve_spectral,
)

from conftest import analytic_sin2


def test_sin2_unit_disc(sin2):
    sol = solve_spectral(sin2, 1.0, 8)
    assert sol.c0 == 0.0
    assert sol.B[1] == 1.0
    assert np.count_nonzero(sol.A) == 0 and np.count_nonzero(sol.B) == 1


def test_constant_solution():
    sol = solve_spectral(BoundarySpec.closed("7"), 3.0, 4)
    assert sol.c0 == 7.0
    assert not sol.A.any() and not sol.B.any()


def test_coefficients_scale_with_radius(sin2):
    assert solve_spectral(sin2, 2.0, 8).B[1] == 0.25


def test_boundary_reproduction(sin2):
    sol = solve_spectral(sin2, 1.0, 8)
    for theta in np.linspace(0, 2 * np.pi, 13):
        assert eval_solution(sol, PolarPoint(1.0, theta)) == pytest.approx(math.sin(2 * theta), abs=1e-15)


def test_boundary_reproduction_general_radius():
    spec = BoundarySpec.closed("0.5 + cos(t) - 2*sin(3*t) + cos(6*t)")
    sol = solve_spectral(spec, 2.5, 16)
    theta = np.linspace(0, 2 * np.pi, 41)
    np.testing.assert_allclose(evaluate(sol, 2.5, theta), eval_boundary(spec, theta), atol=1e-12)


def test_origin_returns_c0_exactly():
    sol = solve_spectral(BoundarySpec.closed("0.1 + cos(t) + sin(5*t)"), 1.3, 8)
    assert eval_solution(sol, PolarPoint(0.0, 1.234)) == sol.c0 == 0.1


def test_scaled_sin2_interior_value():
    sol = solve_spectral(BoundarySpec.closed("100*sin(2*t)"), 1.0, 8)
    assert eval_solution(sol, (0.5, math.pi / 4)) == pytest.approx(25.0, abs=1e-12)


def test_matches_closed_form_on_grid(sin2):
    sol = solve_spectral(sin2, 1.0)
    r, t = np.meshgrid(np.linspace(0, 1, 10), np.linspace(0, 2 * np.pi, 10))
    np.testing.assert_allclose(evaluate(sol, r, t), analytic_sin2(r, t), atol=1e-10)


def test_outside_disc_is_domain_error(sin2):
    sol = solve_spectral(sin2, 1.0, 8)
    with pytest.raises(DomainError):
        eval_solution(sol, PolarPoint(1.5, 0.0))
    with pytest.raises(DomainError):
        evaluate(sol, np.array([0.5, 1.01]), 0.0)


def test_roundoff_above_radius_is_clamped(sin2):
    sol = solve_spectral(sin2, 1.0, 8)
    assert eval_solution(sol, PolarPoint(1.0 + 1e-13, math.pi / 4)) == pytest.approx(1.0, abs=1e-15)


def test_coefficient_decay_bound():
    spec = BoundarySpec.closed("3*cos(2*t) - 5*sin(4*t) + cos(9*t)")
    R, r = 2.0, 1.2
    sol = solve_spectral(spec, R, 12)
    bc = sol.boundary_coefficients()
    for n in range(1, 13):
        term = r**n * math.hypot(sol.A[n - 1], sol.B[n - 1])
        assert term <= (r / R) ** n * math.hypot(bc.a[n - 1], bc.b[n - 1]) * (1 + 1e-12) + 1e-300


def test_overflow_names_mode():
    spec = BoundarySpec.closed("cos(400*t)")
    with pytest.raises(BoundarySpecError, match="n=400"):
        solve_spectral(spec, 1e200, 400)


def test_json_round_trip():
    sol = solve_spectral(BoundarySpec.closed("0.1 + cos(t) + 0.3333333333333333*sin(2*t)"), 1.7, 6)
    again = DiscSolution.from_json(sol.to_json())
    assert again.radius == sol.radius and again.c0 == sol.c0
    np.testing.assert_array_equal(again.A, sol.A)
    np.testing.assert_array_equal(again.B, sol.B)


def test_radial_derivative_of_r2_sin2():
    sol = solve_spectral(BoundarySpec.closed("sin(2*t)"), 1.0, 8)
    t = np.linspace(0, 2 * np.pi, 9)
    np.testing.assert_allclose(radial_derivative(sol, t), 2 * np.sin(2 * t), atol=1e-14)
    np.testing.assert_allclose(radial_derivative(sol, t, r=0.5), np.sin(2 * t), atol=1e-14)


# -- harmonic properties of the series -----------------------------------


def _solutions():
    for text in ("sin(2*t)", "cos(t) + 3*sin(3*t)", "7", "0.2 - cos(5*t) + 0.5*sin(8*t)"):
        yield solve_spectral(BoundarySpec.closed(text), 1.0)


@pytest.mark.parametrize("sol", list(_solutions())[:3])
def test_finite_difference_laplacian_vanishes(sol):
    field = solution_field(sol)
    for r in (0.0, 0.3, 0.6, 0.9):
        for t in np.linspace(0, 2 * np.pi, 7, endpoint=False):
            assert abs(fd_laplacian(field, r * math.cos(t), r * math.sin(t), 1e-3)) <= 1e-4


@pytest.mark.parametrize("sol", list(_solutions()))
def test_mean_value_property(sol):
    field = solution_field(sol)
    for cx, cy, rho in [(0.2, 0.1, 0.3), (-0.5, 0.4, 0.2), (0.0, 0.0, 0.95)]:
        assert abs(mean_value_residual(field, cx, cy, rho, 256)) <= 1e-10


@pytest.mark.parametrize("sol", list(_solutions()))
def test_maximum_principle(sol):
    assert max_principle_check(solution_field(sol), 1.0, interior_grid=81, boundary_samples=1024).passed


def test_linearity_in_boundary_data():
    f = BoundarySpec.closed("cos(t) + 2*sin(4*t)")
    g = BoundarySpec.closed("1 - sin(2*t)")
    h = BoundarySpec.closed("2*(cos(t) + 2*sin(4*t)) - 3*(1 - sin(2*t))")
    sf, sg, sh = (solve_spectral(s, 1.4, 8) for s in (f, g, h))
    r, t = np.meshgrid(np.linspace(0, 1.4, 6), np.linspace(0, 6, 6))
    np.testing.assert_allclose(evaluate(sh, r, t), 2 * evaluate(sf, r, t) - 3 * evaluate(sg, r, t), atol=1e-12)
