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

"""
Projection onto ``V_h`` and evaluation of piecewise polynomials.

Every function of this module is a pure function of immutable inputs.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from numpy.polynomial import legendre

from thelittlehackers.rkdg.constant.boundary import TraceSide
from thelittlehackers.rkdg.exception import BoundaryModelError
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.model.basis import Basis
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.mesh import Mesh


def quadrature_points(mesh: Mesh, basis: Basis) -> np.ndarray:
    """
    Return the physical Gauss points of every cell, as an array of shape
    ``(m, node_count)``.
    """
    return mesh.to_physical(basis.nodes)


def project_l2(g: Callable[[np.ndarray], np.ndarray], mesh: Mesh, basis: Basis) -> DGSolution:
    """
    Return the cell-by-cell ``L_2``-projection of a function onto ``V_h``.

    Since the mass matrix is ``(h/2)·I``, the coefficient of ``φ_{j,i}``
    is the reference-cell quadrature ``Σ_q w_q·g(x_{j,q})·φ_i(ξ_q)``.  The
    projection reproduces any member of ``V_h`` exactly.


    :param g: A vectorized function, evaluated on an array of points.

    :param mesh: The mesh.

    :param basis: The basis.


    :return: The projection, at time ``0``.


    :raise InvalidInputError: If ``g`` is not finite at a quadrature node.
    """
    values = np.broadcast_to(
        np.asarray(g(quadrature_points(mesh, basis)), dtype=float),
        (mesh.m, basis.node_count)
    )
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("The projected function is not finite at every quadrature node")

    coeffs = values @ (basis.weights[:, None] * basis.node_table)
    return DGSolution(mesh=mesh, basis=basis, coeffs=coeffs, t=0.0)


def evaluate(u: DGSolution, x: float | np.ndarray, order: int = 0) -> float | np.ndarray:
    """
    Evaluate the ``order``-th spatial derivative of a piecewise polynomial.

    A point on an interior interface is read from the cell on its right;
    use ``evaluate_side`` to choose the side explicitly.


    :param u: The piecewise polynomial.

    :param x: A point or an array of points of ``[a, b]``.

    :param order: The derivative order.  Derivatives of order greater than
        ``p`` are exactly ``0``.


    :return: The value(s), with the same shape as ``x``.


    :raise InvalidInputError: If a point is outside ``[a, b]``, or if the
        order is negative.
    """
    if order < 0:
        raise InvalidInputError(f"The derivative order must be non-negative (got {order})")

    points = np.asarray(x, dtype=float)
    if not u.mesh.contains(points):
        raise InvalidInputError(f"Points outside the domain [{u.mesh.a}, {u.mesh.b}]")

    flat_points = np.atleast_1d(points).ravel()
    cells = u.mesh.locate(flat_points)
    xi = u.mesh.to_reference(flat_points, cells)
    values = np.sum(u.basis.values(xi, order) * u.coeffs[cells], axis=1) * (2.0 / u.mesh.h) ** order

    return float(values[0]) if points.ndim == 0 else values.reshape(points.shape)


def cell_edge_values(u: DGSolution, order: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """
    Return the ``order``-th derivative of every cell polynomial at both
    edges of its cell.


    :return: A tuple ``(at_left_edges, at_right_edges)`` of arrays of
        length ``m``: ``at_left_edges[j]`` is the trace at ``x_{j-1/2}^+``
        and ``at_right_edges[j]`` the trace at ``x_{j+1/2}^-``.
    """
    if order > u.p:
        zeros = np.zeros(u.m)
        return zeros, zeros.copy()

    scale = (2.0 / u.mesh.h) ** order
    edges = u.coeffs @ u.basis.edge_table[order].T * scale
    return edges[:, 0], edges[:, 1]


def evaluate_side(u: DGSolution, j: int, side: TraceSide, order: int = 0) -> float:
    """
    Return a one-sided trace of the ``order``-th derivative at the interface
    ``x_{j-1/2}``.

    The left trace reads the polynomial of cell ``j - 1``; the right trace
    reads the polynomial of cell ``j``.


    :param u: The piecewise polynomial.

    :param j: The interface index, ``0 ≤ j ≤ m``.

    :param side: The side of the interface to read from.

    :param order: The derivative order.


    :return: The trace.


    :raise BoundaryModelError: If the left trace at the inflow interface
        ``j = 0`` is requested; it belongs to the boundary model.

    :raise InvalidInputError: If the interface index is out of range, or
        if the right trace at the outflow interface ``j = m`` is requested.
    """
    if not 0 <= j <= u.m:
        raise InvalidInputError(f"The interface index {j} is outside [0, {u.m}]")

    if side == TraceSide.LEFT:
        if j == 0:
            raise BoundaryModelError("inflow trace requires boundary model")
        cell, edge = j - 1, 1
    else:
        if j == u.m:
            raise InvalidInputError(f"No cell on the right of the interface {j}")
        cell, edge = j, 0

    if order > u.p:
        return 0.0

    return float(u.coeffs[cell] @ u.basis.edge_table[order, edge] * (2.0 / u.mesh.h) ** order)


def node_values(u: DGSolution, coeffs: np.ndarray | None = None) -> np.ndarray:
    """
    Return the values of a piecewise polynomial at the quadrature nodes of
    every cell, as an array of shape ``(m, node_count)``.


    :param u: The solution that provides the mesh and basis.

    :param coeffs: Optional coefficient field, on the same mesh and basis,
        to evaluate instead of ``u.coeffs``.
    """
    return (u.coeffs if coeffs is None else coeffs) @ u.basis.node_table.T


def mass_matrix(mesh: Mesh, basis: Basis) -> np.ndarray:
    """
    Assemble the local mass matrix ``(φ_{j,i}, φ_{j,k})_{Ω_j}`` by
    quadrature.  It equals ``(h/2)·I`` to round-off.
    """
    table = basis.node_table
    return 0.5 * mesh.h * (table.T * basis.weights) @ table


def l1_distance(
        u: DGSolution,
        g: Callable[[np.ndarray], np.ndarray],
        points_per_cell: int | None = None
) -> float:
    """
    Return ``‖g - u‖_{L_1(Ω)}`` computed with a composite Gauss rule.

    The absolute value has kinks inside cells, so the rule uses
    ``4·(p + 2)`` points per cell unless stated otherwise.


    :param u: The piecewise polynomial.

    :param g: A vectorized function of ``x``.

    :param points_per_cell: The number of Gauss points per cell.


    :return: The ``L_1`` distance.
    """
    point_count = points_per_cell or 4 * (u.p + 2)
    xi, weights = legendre.leggauss(point_count)
    x = u.mesh.to_physical(xi)
    u_values = u.coeffs @ u.basis.values(xi).T
    g_values = np.broadcast_to(np.asarray(g(x), dtype=float), x.shape)
    return float(0.5 * u.mesh.h * np.sum(np.abs(g_values - u_values) @ weights))


def total_variation(u: DGSolution) -> float:
    """
    Return the total variation of the sequence of cell means.
    """
    return float(np.sum(np.abs(np.diff(u.cell_means()))))
