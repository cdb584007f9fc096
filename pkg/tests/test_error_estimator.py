# MIT License
#
# Copyright (C) 2026 The Little Hackers.  All rights reserved.
#
# Permission is hereby granted, free of charge, to any person obtaining
# a copy of this software and associated documentation files (the
# "Software"), to deal in the Software without restriction, including
# without limitation the rights to use, copy, modify, merge, publish,
# distribute, sublicense, and/or sell copies of the Software, and to
# permit persons to whom the Software is furnished to do so, subject to
# the following conditions:
#
# The above copyright notice and this permission notice shall be
# included in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
# MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
# IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY
# CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT,
# TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE
# SOFTWARE OR THE USE OR OTHER DEALINGS IN THE SOFTWARE.

from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.polynomial import legendre
from pydantic import ValidationError

from thelittlehackers.rkdg.error_estimator import accumulate
from thelittlehackers.rkdg.error_estimator import derive_constants
from thelittlehackers.rkdg.error_estimator import gronwall_constant
from thelittlehackers.rkdg.error_estimator import initial_error
from thelittlehackers.rkdg.error_estimator import inverse_inequality_constant
from thelittlehackers.rkdg.error_estimator import spatial_F
from thelittlehackers.rkdg.error_estimator import surrogate_n_p1
from thelittlehackers.rkdg.error_estimator import temporal_G
from thelittlehackers.rkdg.error_estimator import temporal_growth_constants
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.experiments import example_2
from thelittlehackers.rkdg.mesh_basis import evaluate
from thelittlehackers.rkdg.mesh_basis import l1_distance
from thelittlehackers.rkdg.mesh_basis import project_l2
from thelittlehackers.rkdg.model.basis import get_basis
from thelittlehackers.rkdg.model.estimator import ErrorBudget
from thelittlehackers.rkdg.model.estimator import EstimatorConstants
from thelittlehackers.rkdg.model.estimator import EstimatorPolicy
from thelittlehackers.rkdg.model.mesh import Mesh
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.smoothness_indicators import spatial_indicator
from thelittlehackers.rkdg.smoothness_indicators import temporal_indicator
from thelittlehackers.rkdg.time_stepper import step_tvd_rk

from tests.conftest import exact_propagation
from tests.conftest import round_off_bound
from tests.conftest import sine_wave


def _indicators(u, cfg, flux, bc):
    return spatial_indicator(u, cfg, bc, 0.0, flux), temporal_indicator(u, cfg.k, flux, bc, 0.0)


def test_constants_of_piecewise_constants():
    consts = derive_constants(0, 1)
    assert consts.C1 == pytest.approx(0.5)
    assert consts.C2 == pytest.approx(1.0 / math.sqrt(3.0))
    assert consts.C3 == pytest.approx(1.0)
    assert consts.C_inv == 0.0
    assert consts.C_tr == pytest.approx(1.0 / math.sqrt(2.0))
    assert consts.C_rk == pytest.approx(0.5)
    assert consts.N_p1 == 0.0


def test_constants_of_piecewise_linears():
    consts = derive_constants(1, 3)
    assert consts.C1 == pytest.approx(8.0 / (9.0 * math.sqrt(3.0)) / 4.0, rel=1e-12)
    assert consts.C2 == pytest.approx(1.0 / math.sqrt(45.0), rel=1e-12)
    assert consts.C3 == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert consts.C_inv == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert consts.C_rk == pytest.approx((1.0 + math.sqrt(3.0)) ** 3 / 24.0, rel=1e-12)


def test_inverse_inequality_constants():
    assert inverse_inequality_constant(0) == 0.0
    assert inverse_inequality_constant(1) == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert inverse_inequality_constant(2) == pytest.approx(math.sqrt(15.0), rel=1e-12)


@pytest.mark.parametrize('p', range(11))
def test_constants_satisfy_the_l1_l2_embedding(p):
    consts = derive_constants(p, 3)
    assert consts.C1 <= math.sqrt(2.0) * consts.C2
    assert consts.C_inv >= 0.0


def test_constants_reject_unsupported_degrees():
    with pytest.raises(InvalidInputError):
        derive_constants(11, 3)


def test_projection_constants_match_a_direct_projection():
    p = 3
    consts = derive_constants(p, 1)
    n = p + 1

    def monomial(x):
        return x ** n / math.factorial(n)

    u = project_l2(monomial, Mesh(a=-1.0, b=1.0, m=1), get_basis(p))
    xi, weights = legendre.leggauss(20)
    residual = monomial(xi) - evaluate(u, xi)

    assert math.sqrt(np.sum(weights * residual ** 2) / 2.0) == pytest.approx(consts.C2, rel=1e-10)
    assert l1_distance(u, monomial, points_per_cell=200) / 2.0 == pytest.approx(consts.C1, rel=1e-3)
    assert abs(residual[np.argmax(xi)]) <= consts.C3


def test_estimator_constants_reject_an_inconsistent_embedding():
    consts = derive_constants(1, 1)
    with pytest.raises(ValidationError):
        EstimatorConstants(**{**consts.model_dump(), 'C1': 2.0 * consts.C2})
    with pytest.raises(ValidationError):
        EstimatorConstants(**{**consts.model_dump(), 'C_inv': math.inf})


def test_estimator_policy_version():
    assert EstimatorPolicy().version == EstimatorPolicy.CURRENT_VERSION
    assert EstimatorPolicy(version='1.1.0-rc.1').version == '1.1.0-rc.1'
    for version in ('1.0', 'v1.0.0', '01.0.0'):
        with pytest.raises(ValidationError):
            EstimatorPolicy(version=version)


def test_estimates_of_a_constant_state(burgers, periodic_bc):
    cfg = RunConfig(p=2, k=3, h=0.5, gamma=0.1, T_final=1.0)
    mesh = Mesh(a=0.0, b=10.0, m=20)
    u = project_l2(lambda x: np.full_like(x, 1.2), mesh, get_basis(2))
    S, T = _indicators(u, cfg, burgers, periodic_bc)
    consts = derive_constants(2, 3).with_n_p1(surrogate_n_p1(S, burgers))

    assert consts.N_p1 == pytest.approx(0.0, abs=1e-20)
    assert spatial_F(S, consts, cfg, burgers, mesh) == pytest.approx(0.0, abs=1e-10)
    # With d_max[k+1] at round-off level, G stays at the matching level.
    c, d = temporal_growth_constants(4, T, consts, cfg, burgers)
    scale = S.h ** cfg.alpha
    G_bound = consts.C_rk * ((1.0 + c * scale) * round_off_bound(u, 4, burgers) + d * scale) * S.domain_length
    assert 0.0 <= temporal_G(T, S, consts, cfg, burgers) <= G_bound


def test_spatial_F_sums_transport_and_growth_terms(sine_solution, advection, periodic_bc):
    cfg = RunConfig(p=2, k=3, h=sine_solution.mesh.h, gamma=0.5, T_final=1.0)
    S, _ = _indicators(sine_solution, cfg, advection, periodic_bc)
    consts = derive_constants(2, 3)

    F = spatial_F(S, consts, cfg, advection, sine_solution.mesh)
    transport_term = advection.beta * S.D_tilde * math.exp(advection.beta * cfg.gamma) * 10.0
    assert F - gronwall_constant(S, consts, cfg, advection) == pytest.approx(transport_term, rel=1e-12)


def test_spatial_F_is_homogeneous_in_the_jumps(sine_solution, advection, periodic_bc):
    cfg = RunConfig(p=2, k=3, h=sine_solution.mesh.h, gamma=0.5, T_final=1.0)
    consts = derive_constants(2, 3)
    doubled = sine_solution.evolve(2.0 * sine_solution.coeffs, 0.0)

    F = spatial_F(spatial_indicator(sine_solution, cfg, periodic_bc, 0.0), consts, cfg, advection, sine_solution.mesh)
    F_doubled = spatial_F(spatial_indicator(doubled, cfg, periodic_bc, 0.0), consts, cfg, advection, doubled.mesh)
    assert F_doubled == pytest.approx(2.0 * F, rel=1e-12)


def test_spatial_F_increases_with_the_surrogate(sine_solution, advection, periodic_bc):
    cfg = RunConfig(p=2, k=3, h=sine_solution.mesh.h, gamma=0.5, T_final=1.0)
    S = spatial_indicator(sine_solution, cfg, periodic_bc, 0.0)
    consts = derive_constants(2, 3)
    F_values = [spatial_F(S, consts.with_n_p1(n_p1), cfg, advection, sine_solution.mesh) for n_p1 in (0.0, 0.5, 1.0)]
    assert F_values[0] < F_values[1] < F_values[2]


def test_surrogate_vanishes_for_a_linear_flux(sine_solution, advection, periodic_bc, burgers):
    cfg = RunConfig(p=2, k=3, h=sine_solution.mesh.h, gamma=0.5, T_final=1.0)
    S = spatial_indicator(sine_solution, cfg, periodic_bc, 0.0)
    assert surrogate_n_p1(S, advection) == 0.0
    assert surrogate_n_p1(S, burgers, kappa=4.0) == pytest.approx(2.0 * surrogate_n_p1(S, burgers, kappa=2.0))
    assert surrogate_n_p1(S, burgers) > 0.0


def test_temporal_estimate_bounds_the_euler_error(advection, periodic_bc):
    cfg = RunConfig(p=2, k=1, h=0.1, gamma=0.01, T_final=1.0)
    mesh = Mesh.from_cell_size(0.0, 10.0, 0.1)
    u = project_l2(sine_wave, mesh, get_basis(2))
    S, T = _indicators(u, cfg, advection, periodic_bc)
    consts = derive_constants(2, 1).with_n_p1(surrogate_n_p1(S, advection))
    G = temporal_G(T, S, consts, cfg, advection)

    taus = np.array([2e-4, 1e-4, 5e-5])
    local_times = []
    for tau in taus:
        exact = exact_propagation(u, tau, advection, periodic_bc)
        numerical = step_tvd_rk(u, tau, 1, advection, periodic_bc)
        true_error = l1_distance(numerical, lambda x: evaluate(exact, x))

        budget = accumulate(ErrorBudget.start(0.0), 0.0, G, tau, cfg)
        local_time = budget.steps[0].local_time
        assert 1.0 <= local_time / true_error <= 50.0
        local_times.append(local_time)

    slope = np.polyfit(np.log(taus), np.log(local_times), 1)[0]
    assert slope == pytest.approx(cfg.k + 1, abs=1e-9)


@pytest.mark.parametrize('k', [2, 3])
def test_temporal_estimate_of_higher_order_runge_kutta(k, advection, periodic_bc):
    cfg = RunConfig(p=2, k=k, h=0.1, gamma=0.01, T_final=1.0)
    mesh = Mesh.from_cell_size(0.0, 10.0, 0.1)
    u = project_l2(sine_wave, mesh, get_basis(2))
    S, T = _indicators(u, cfg, advection, periodic_bc)
    consts = derive_constants(2, k).with_n_p1(surrogate_n_p1(S, advection))
    G = temporal_G(T, S, consts, cfg, advection)

    taus = np.array([2e-3, 1e-3, 5e-4])
    local_times = []
    for tau in taus:
        exact = exact_propagation(u, tau, advection, periodic_bc)
        numerical = step_tvd_rk(u, tau, k, advection, periodic_bc)
        true_error = l1_distance(numerical, lambda x: evaluate(exact, x))

        local_time = accumulate(ErrorBudget.start(0.0), 0.0, G, tau, cfg).steps[0].local_time
        assert local_time >= true_error
        local_times.append(local_time)

    slope = np.polyfit(np.log(taus), np.log(local_times), 1)[0]
    assert slope == pytest.approx(k + 1, abs=1e-9)


def test_accumulate_adds_the_local_estimates():
    cfg = RunConfig(p=1, k=1, h=0.1, mu=1.0, gamma=1.0, T_final=1.0)
    budget = accumulate(ErrorBudget.start(1e-6), 0.02, 1e-4, 0.01, cfg)

    step = budget.steps[0]
    assert step.local_space == pytest.approx(2e-6, rel=1e-12)
    assert step.local_time == pytest.approx(1e-8, rel=1e-12)
    assert budget.E_global == pytest.approx(3.01e-6, rel=1e-12)
    assert step.E_global == budget.E_global
    assert step.n == 1 and step.t == pytest.approx(0.01)
    assert budget.trusted and step.trusted

    budget = accumulate(budget, 0.02, 1e-4, 0.01, cfg)
    assert budget.step_count == 2
    assert budget.steps[1].t == pytest.approx(0.02)
    assert budget.E_global == pytest.approx(5.02e-6, rel=1e-12)


def test_accumulate_flags_untrusted_estimates():
    cfg = RunConfig(p=1, k=1, h=0.1, mu=1.0, gamma=1.0, T_final=1.0)
    start = ErrorBudget.start(1e-6)

    budget = accumulate(start, None, 1e-4, 0.01, cfg)
    assert not budget.trusted and not budget.steps[0].trusted
    assert budget.steps[0].local_space == 0.0
    assert budget.E_global == pytest.approx(1.01e-6, rel=1e-12)

    budget = accumulate(start, 0.02, math.inf, 0.01, cfg)
    assert not budget.trusted
    assert budget.E_global == pytest.approx(3e-6, rel=1e-12)

    budget = accumulate(start, 0.02, 1e-4, 0.01, cfg, indicator_magnitude=1e5)
    assert not budget.trusted
    assert budget.E_global == pytest.approx(3.01e-6, rel=1e-12)

    # A later trusted step doesn't restore the trust of the budget.
    assert not accumulate(budget, 0.02, 1e-4, 0.01, cfg).trusted


def test_initial_error_of_a_member_of_the_space():
    mesh = Mesh(a=0.0, b=2.0, m=5)
    u = project_l2(lambda x: 1.0 - x + x ** 2, mesh, get_basis(2))
    assert initial_error(u, lambda x: 1.0 - x + x ** 2) <= 1e-14


def test_initial_error_is_stable_under_quadrature_refinement(sine_solution):
    coarse = initial_error(sine_solution, sine_wave)
    fine = l1_distance(sine_solution, sine_wave, points_per_cell=64)
    assert coarse > 0.0
    assert coarse == pytest.approx(fine, rel=1e-2)


def test_initial_error_of_example_2():
    problem = example_2()
    u = project_l2(problem.initial, Mesh.from_cell_size(0.0, 10.0, 0.05), get_basis(4))
    assert initial_error(u, problem.initial) <= 1e-9 * problem.length
