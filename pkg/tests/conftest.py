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
import scipy.linalg

from thelittlehackers.rkdg.dg_operator import time_derivative
from thelittlehackers.rkdg.mesh_basis import project_l2
from thelittlehackers.rkdg.model.basis import get_basis
from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.mesh import Mesh


def sine_wave(x):
    return np.sin(np.pi * np.asarray(x) / 5.0)


def semi_discrete_matrix(u: DGSolution, flux: FluxModel, bc: BoundaryModel) -> np.ndarray:
    """
    Return the matrix of the semi-discrete operator of a linear flux, acting
    on the flattened coefficients.
    """
    size = u.coeffs.size
    columns = []
    for index in range(size):
        unit = np.zeros(size)
        unit[index] = 1.0
        columns.append(time_derivative(u.evolve(unit.reshape(u.coeffs.shape), u.t), flux, bc, u.t).ravel())
    return np.stack(columns, axis=1)


def exact_propagation(u: DGSolution, tau: float, flux: FluxModel, bc: BoundaryModel) -> DGSolution:
    """
    Return the semi-discrete solution of a linear flux after the time
    ``tau``, computed with the matrix exponential.
    """
    matrix = semi_discrete_matrix(u, flux, bc)
    coeffs = scipy.linalg.expm(tau * matrix) @ u.coeffs.ravel()
    return u.evolve(coeffs.reshape(u.coeffs.shape), u.t + tau)


def round_off_bound(u: DGSolution, order: int, flux: FluxModel) -> float:
    """
    Return a bound of the round-off error of the ``order``-th time
    derivative of a solution.

    Every derivative applies the semi-discrete operator once, whose norm
    grows like ``β·(p + 1)²·2/h``.
    """
    growth = flux.beta * (u.basis.p + 1) ** 2 * 2.0 / u.mesh.h
    return 100.0 * np.finfo(float).eps * float(np.max(np.abs(u.coeffs))) * growth ** order


@pytest.fixture
def periodic_bc() -> BoundaryModel:
    return BoundaryModel.periodic()


@pytest.fixture
def burgers() -> FluxModel:
    return FluxModel.burgers(0.25, 1.75)


@pytest.fixture
def advection() -> FluxModel:
    return FluxModel.linear_advection(1.0, -2.0, 2.0)


@pytest.fixture
def sine_solution() -> DGSolution:
    mesh = Mesh(a=0.0, b=10.0, m=20)
    return project_l2(sine_wave, mesh, get_basis(2))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260117)
