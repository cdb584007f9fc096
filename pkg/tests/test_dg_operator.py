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

import numpy as np
import pytest
from pydantic import ValidationError

from thelittlehackers.rkdg.dg_operator import apply_H
from thelittlehackers.rkdg.dg_operator import godunov_flux
from thelittlehackers.rkdg.dg_operator import interface_traces
from thelittlehackers.rkdg.dg_operator import mass_multiply
from thelittlehackers.rkdg.dg_operator import mass_solve
from thelittlehackers.rkdg.dg_operator import time_derivative
from thelittlehackers.rkdg.exception import FluxDomainError
from thelittlehackers.rkdg.mesh_basis import cell_edge_values
from thelittlehackers.rkdg.mesh_basis import project_l2
from thelittlehackers.rkdg.model.basis import get_basis
from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.mesh import Mesh

from tests.conftest import exact_propagation
from tests.conftest import sine_wave


def test_godunov_flux_of_burgers(burgers):
    assert godunov_flux(1.0, 1.0, burgers) == pytest.approx(0.5)
    assert godunov_flux(0.8, 1.2, burgers) == pytest.approx(0.32)
    assert godunov_flux(1.2, 0.8, burgers) == pytest.approx(0.72)
    assert isinstance(godunov_flux(1.0, 1.0, burgers), float)


def test_godunov_flux_of_linear_advection():
    flux = FluxModel.linear_advection(2.0, -1.0, 1.0)
    assert godunov_flux(0.3, -0.5, flux) == pytest.approx(0.6)
    assert godunov_flux(-0.5, 0.3, flux) == pytest.approx(-1.0)


def test_godunov_flux_is_the_upwind_flux(burgers, rng):
    u_left = rng.uniform(burgers.u_min, burgers.u_max, size=1000)
    u_right = rng.uniform(burgers.u_min, burgers.u_max, size=1000)
    np.testing.assert_allclose(godunov_flux(u_left, u_right, burgers), 0.5 * u_left ** 2, rtol=1e-14)


def test_godunov_flux_rejects_states_outside_the_admissible_interval(burgers):
    with pytest.raises(FluxDomainError):
        godunov_flux(0.1, 1.0, burgers)
    with pytest.raises(FluxDomainError):
        godunov_flux(1.0, np.array([1.0, 2.0]), burgers)
    with pytest.raises(FluxDomainError):
        godunov_flux(np.nan, 1.0, burgers)


def test_godunov_flux_rejects_a_flux_that_isnt_upwind():
    # The declared f' satisfies the west-wind check but f decreases.
    flux = FluxModel(
        name='inconsistent',
        derivatives=(lambda u: -u, lambda u: np.ones_like(u), lambda u: np.zeros_like(u)),
        exhaustive=True,
        u_min=-1.0,
        u_max=1.0
    )
    assert godunov_flux(0.5, 0.5, flux) == pytest.approx(-0.5)
    with pytest.raises(FluxDomainError, match="upwind"):
        godunov_flux(0.2, 0.6, flux)


def test_flux_model_rejects_a_west_wind_violation():
    with pytest.raises(ValidationError):
        FluxModel.burgers(-1.0, 1.0)


def test_flux_model_bounds(burgers):
    assert burgers.beta == pytest.approx(1.75)
    assert burgers.delta == pytest.approx(1.0)
    assert burgers.derivative_bound(3) == 0.0
    assert burgers.U == 1.75


def test_interface_traces_under_periodicity(sine_solution, periodic_bc):
    left_traces, right_traces = interface_traces(sine_solution, periodic_bc, 0.0)
    at_left_edges, at_right_edges = cell_edge_values(sine_solution)
    assert left_traces[0] == at_right_edges[-1]
    assert right_traces[-1] == at_left_edges[0]
    np.testing.assert_array_equal(left_traces[1:], at_right_edges)
    np.testing.assert_array_equal(right_traces[:-1], at_left_edges)


def test_interface_traces_with_inflow():
    mesh = Mesh(a=0.0, b=1.0, m=5)
    u = project_l2(lambda x: 1.0 + 0.1 * x, mesh, get_basis(1))
    bc = BoundaryModel.constant_inflow(0.9)
    left_traces, right_traces = interface_traces(u, bc, 0.0)
    assert left_traces[0] == 0.9
    assert right_traces[-1] == left_traces[-1]
    assert right_traces[-1] == pytest.approx(1.1)

    left_traces, _ = interface_traces(u, bc, 0.0, inflow_value=0.5)
    assert left_traces[0] == 0.5


def test_apply_H_of_a_constant_periodic_state(burgers, periodic_bc):
    mesh = Mesh(a=0.0, b=10.0, m=20)
    u = project_l2(lambda x: np.ones_like(x), mesh, get_basis(3))
    np.testing.assert_allclose(apply_H(u, burgers, periodic_bc, 0.0), 0.0, atol=1e-13)


def test_inflow_steady_state_is_preserved(burgers):
    mesh = Mesh(a=0.0, b=10.0, m=20)
    u = project_l2(lambda x: np.ones_like(x), mesh, get_basis(2))
    derivative = time_derivative(u, burgers, BoundaryModel.constant_inflow(1.0), 0.0)
    np.testing.assert_allclose(derivative, 0.0, atol=1e-11)


def test_apply_H_conserves_the_total_mass(burgers, periodic_bc):
    mesh = Mesh(a=0.0, b=10.0, m=40)
    u = project_l2(lambda x: 1.0 + 0.5 * sine_wave(x), mesh, get_basis(3))
    H = apply_H(u, burgers, periodic_bc, 0.0)
    # Only φ_0 has a non-zero mean.
    assert abs(np.sum(H[:, 0])) <= 1e-12 * mesh.length


def test_mass_solve():
    mesh = Mesh.from_cell_size(0.0, 10.0, 0.05)
    np.testing.assert_array_equal(mass_solve(np.zeros((4, 3)), mesh), np.zeros((4, 3)))
    np.testing.assert_allclose(mass_solve(np.ones((4, 3)), mesh), 40.0, rtol=1e-14)


def test_mass_multiply_inverts_mass_solve(rng):
    mesh = Mesh(a=0.0, b=3.0, m=7)
    rhs = rng.normal(size=(7, 4))
    np.testing.assert_allclose(mass_multiply(mass_solve(rhs, mesh), mesh), rhs, rtol=1e-14)


def _cell_mean_error(h: float, advection: FluxModel, periodic_bc: BoundaryModel) -> float:
    T = 1.0
    mesh = Mesh.from_cell_size(0.0, 10.0, h)
    u = exact_propagation(project_l2(sine_wave, mesh, get_basis(2)), T, advection, periodic_bc)

    interfaces = mesh.interfaces
    exact_means = 5.0 / (np.pi * h) * (
        np.cos(np.pi * (interfaces[:-1] - T) / 5.0) - np.cos(np.pi * (interfaces[1:] - T) / 5.0)
    )
    return float(np.max(np.abs(u.cell_means() - exact_means)))


def test_cell_means_of_linear_advection_converge(advection, periodic_bc):
    coarse_error = _cell_mean_error(0.2, advection, periodic_bc)
    fine_error = _cell_mean_error(0.1, advection, periodic_bc)
    assert fine_error < coarse_error
    assert coarse_error / fine_error > 5.0
