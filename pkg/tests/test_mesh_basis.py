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
from numpy.polynomial import polynomial
from pydantic import ValidationError

from thelittlehackers.rkdg.constant.boundary import TraceSide
from thelittlehackers.rkdg.exception import BoundaryModelError
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.mesh_basis import cell_edge_values
from thelittlehackers.rkdg.mesh_basis import evaluate
from thelittlehackers.rkdg.mesh_basis import evaluate_side
from thelittlehackers.rkdg.mesh_basis import l1_distance
from thelittlehackers.rkdg.mesh_basis import mass_matrix
from thelittlehackers.rkdg.mesh_basis import project_l2
from thelittlehackers.rkdg.mesh_basis import total_variation
from thelittlehackers.rkdg.model.basis import Basis
from thelittlehackers.rkdg.model.basis import get_basis
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.mesh import Mesh


def test_mesh_from_cell_size():
    mesh = Mesh.from_cell_size(0.0, 10.0, 0.05)
    assert mesh.m == 200
    assert mesh.h == pytest.approx(0.05)
    assert mesh.interfaces[0] == 0.0
    assert mesh.interfaces[-1] == pytest.approx(10.0)


def test_mesh_rejects_cell_size_not_dividing_domain():
    with pytest.raises(InvalidInputError):
        Mesh.from_cell_size(0.0, 10.0, 0.3)
    with pytest.raises(InvalidInputError):
        Mesh.from_cell_size(0.0, 10.0, -0.1)


def test_mesh_rejects_empty_domain():
    with pytest.raises(ValidationError):
        Mesh(a=1.0, b=1.0, m=4)


def test_mesh_locate_assigns_interfaces_to_the_right_cell():
    mesh = Mesh(a=0.0, b=1.0, m=4)
    assert list(mesh.locate(np.array([0.0, 0.25, 0.3, 1.0]))) == [0, 1, 1, 3]


@pytest.mark.parametrize('p', [0, 1, 3, 6])
def test_mass_matrix_is_diagonal(p):
    mesh = Mesh(a=0.0, b=1.0, m=5)
    np.testing.assert_allclose(mass_matrix(mesh, get_basis(p)), 0.5 * mesh.h * np.eye(p + 1), atol=1e-14)


@pytest.mark.parametrize('p', [0, 2, 5])
def test_quadrature_is_exact_up_to_degree_2p_plus_1(p, rng):
    basis = get_basis(p)
    coefficients = rng.normal(size=2 * p + 2)
    antiderivative = polynomial.polyint(coefficients)
    expected = polynomial.polyval(1.0, antiderivative) - polynomial.polyval(-1.0, antiderivative)
    assert np.sum(basis.weights * polynomial.polyval(basis.nodes, coefficients)) == pytest.approx(expected, abs=1e-13)


def test_basis_rejects_unsupported_degree():
    with pytest.raises(ValidationError):
        Basis(p=11)


@pytest.mark.parametrize('p', [0, 1, 3])
def test_projection_reproduces_members_of_the_space(p, rng):
    mesh = Mesh(a=-1.0, b=2.0, m=6)
    coefficients = rng.normal(size=p + 1)
    u = project_l2(lambda x: polynomial.polyval(x, coefficients), mesh, get_basis(p))

    x = rng.uniform(-1.0, 2.0, size=50)
    np.testing.assert_allclose(evaluate(u, x), polynomial.polyval(x, coefficients), atol=1e-12)
    for order in range(1, p + 1):
        derivative = polynomial.polyder(coefficients, order)
        np.testing.assert_allclose(evaluate(u, x, order), polynomial.polyval(x, derivative), atol=1e-10)


def test_projection_rejects_non_finite_data():
    mesh = Mesh(a=0.0, b=1.0, m=4)
    with pytest.raises(InvalidInputError):
        project_l2(lambda x: np.where(x > 0.5, np.nan, 0.0), mesh, get_basis(1))


def test_evaluate_rejects_points_outside_the_domain(sine_solution):
    with pytest.raises(InvalidInputError):
        evaluate(sine_solution, 10.5)
    with pytest.raises(InvalidInputError):
        evaluate(sine_solution, 1.0, order=-1)


def test_evaluate_returns_floats_for_scalars(sine_solution):
    assert isinstance(evaluate(sine_solution, 2.5), float)
    assert evaluate(sine_solution, 2.5, order=3) == 0.0


def test_evaluate_side(sine_solution):
    u = sine_solution
    x = u.mesh.interfaces[3]
    _, at_right_edges = cell_edge_values(u)
    assert evaluate_side(u, 3, TraceSide.LEFT) == pytest.approx(at_right_edges[2], abs=1e-15)
    assert evaluate_side(u, 3, TraceSide.RIGHT) == pytest.approx(evaluate(u, x), abs=1e-15)
    assert evaluate_side(u, 3, TraceSide.RIGHT, order=5) == 0.0

    with pytest.raises(BoundaryModelError, match="inflow trace requires boundary model"):
        evaluate_side(u, 0, TraceSide.LEFT)
    with pytest.raises(InvalidInputError):
        evaluate_side(u, u.m, TraceSide.RIGHT)


def test_solution_coefficients_are_read_only(sine_solution):
    with pytest.raises(ValueError):
        sine_solution.coeffs[0, 0] = 1.0


def test_solution_rejects_mismatched_shape():
    mesh = Mesh(a=0.0, b=1.0, m=4)
    with pytest.raises(ValidationError):
        DGSolution(mesh=mesh, basis=get_basis(2), coeffs=np.zeros((4, 2)))


def test_l1_distance_of_a_member_is_zero():
    mesh = Mesh(a=0.0, b=1.0, m=8)
    u = project_l2(lambda x: 3.0 * x ** 2 - x, mesh, get_basis(2))
    assert l1_distance(u, lambda x: 3.0 * x ** 2 - x) <= 1e-14


def test_total_variation_of_monotone_data():
    mesh = Mesh(a=0.0, b=1.0, m=10)
    u = project_l2(lambda x: x ** 3, mesh, get_basis(2))
    means = u.cell_means()
    assert total_variation(u) == pytest.approx(means[-1] - means[0], rel=1e-12)
