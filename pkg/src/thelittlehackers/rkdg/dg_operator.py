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
The spatially discrete weak operator ``H_j(u, v)`` of the DG scheme.

For every cell ``Ω_j`` and basis function ``φ_{j,i}``::

    H_j(u, φ_{j,i}) = (f(u), ∂_x φ_{j,i})_{Ω_j}
                      - F̂_{j+1/2}·φ_{j,i}(x_{j+1/2}^-)
                      + F̂_{j-1/2}·φ_{j,i}(x_{j-1/2}^+)

where ``F̂`` is the Godunov flux of the two interface traces.  The left
trace at ``x = a`` is the inflow datum ``u_L(t)``, or the trace of the last
cell under periodicity; the right boundary ``x = b`` is a pure outflow.
"""

from __future__ import annotations

import numpy as np

from thelittlehackers.rkdg.mesh_basis import cell_edge_values
from thelittlehackers.rkdg.mesh_basis import node_values
from thelittlehackers.rkdg.model.basis import Basis
from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.mesh import Mesh


# Number of states sampled in the interval between the two traces when
# solving the Riemann problem.
RIEMANN_SAMPLE_COUNT = 9


def godunov_flux(
        u_left: float | np.ndarray,
        u_right: float | np.ndarray,
        flux: FluxModel
) -> float | np.ndarray:
    """
    Return the Godunov flux of the Riemann problem ``(u_left, u_right)``.

    The general scalar formula is used, ``min f`` over ``[u_left,
    u_right]`` when ``u_left ≤ u_right`` and ``max f`` over ``[u_right,
    u_left]`` otherwise.  The result is then checked to be the upwind value
    ``f(u_left)``, as the west-wind assumption implies.


    :param u_left: The trace(s) on the left of the interface(s).

    :param u_right: The trace(s) on the right of the interface(s).

    :param flux: The flux model.


    :return: The numerical flux, a float for scalar arguments.


    :raise FluxDomainError: If a trace is outside the admissible interval
        of the flux, or if the flux isn't increasing between the traces.
    """
    u_left_array = np.asarray(u_left, dtype=float)
    u_right_array = np.asarray(u_right, dtype=float)
    flux.check_states(u_left_array)
    flux.check_states(u_right_array)

    upwind_values = np.asarray(flux.f(u_left_array), dtype=float)

    fan = np.linspace(u_left_array, u_right_array, RIEMANN_SAMPLE_COUNT, axis=-1)
    fan_values = np.asarray(flux.f(fan), dtype=float)
    godunov_values = np.where(
        u_left_array <= u_right_array,
        np.min(fan_values, axis=-1),
        np.max(fan_values, axis=-1)
    )

    tolerance = 1e-12 * np.maximum(1.0, np.abs(upwind_values))
    if not np.all(np.abs(godunov_values - upwind_values) <= tolerance):
        raise FluxDomainError(f"The Godunov flux of \"{flux.name}\" doesn't reduce to the upwind flux")

    return float(upwind_values) if upwind_values.ndim == 0 else upwind_values


def assemble_weak_form(
        volume_values: np.ndarray,
        interface_fluxes: np.ndarray,
        basis: Basis
) -> np.ndarray:
    """
    Assemble ``(g, ∂_x φ_{j,i})_{Ω_j} - ĝ_{j+1/2}·φ_{j,i}(x_{j+1/2}^-) +
    ĝ_{j-1/2}·φ_{j,i}(x_{j-1/2}^+)`` for every cell and basis function.

    The factors ``h/2`` of the quadrature and ``2/h`` of the derivative of
    the mapped basis cancel, so the volume term is computed on the
    reference cell.


    :param volume_values: The values of ``g`` at the quadrature nodes, of
        shape ``(m, node_count)``.

    :param interface_fluxes: The interface values ``ĝ_{j-1/2}`` for
        ``j = 0..m``.

    :param basis: The basis.


    :return: The assembled field of shape ``(m, p + 1)``.
    """
    volume_term = volume_values @ (basis.weights[:, None] * basis.node_derivative_table)
    return (
        volume_term
        - interface_fluxes[1:, None] * basis.edge_table[0, 1][None, :]
        + interface_fluxes[:-1, None] * basis.edge_table[0, 0][None, :]
    )


def interface_traces(
        u: DGSolution,
        bc: BoundaryModel,
        t: float,
        coeffs: np.ndarray | None = None,
        inflow_value: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """
    Gather the left and right traces at the ``m + 1`` interfaces.


    :param u: The solution that provides the mesh and basis.

    :param bc: The boundary model.

    :param t: The time at which the inflow datum is read.

    :param coeffs: Optional coefficient field to read the traces of,
        instead of ``u.coeffs``.

    :param inflow_value: Optional value of the left trace at ``x = a``,
        instead of ``u_L(t)``.  It is ignored under periodicity.


    :return: A tuple ``(left_traces, right_traces)``.  The right trace at
        the outflow interface equals the left one.
    """
    field = u if coeffs is None else u.evolve(coeffs, u.t)
    at_left_edges, at_right_edges = cell_edge_values(field)

    left_traces = np.empty(u.m + 1)
    right_traces = np.empty(u.m + 1)
    left_traces[1:] = at_right_edges
    right_traces[:-1] = at_left_edges

    if bc.is_periodic:
        left_traces[0] = at_right_edges[-1]
        right_traces[-1] = at_left_edges[0]
    else:
        left_traces[0] = bc.inflow_value(t) if inflow_value is None else inflow_value
        right_traces[-1] = left_traces[-1]

    return left_traces, right_traces


def apply_H(u: DGSolution, flux: FluxModel, bc: BoundaryModel, t: float) -> np.ndarray:
    """
    Return ``H_j(u, φ_{j,i})`` for every cell ``j`` and basis function
    ``φ_{j,i}``.


    :param u: The solution.

    :param flux: The flux model.

    :param bc: The boundary model.

    :param t: The time at which the inflow datum is read.


    :return: A field of shape ``(m, p + 1)``.


    :raise FluxDomainError: If an interface trace is outside the admissible
        interval of the flux.
    """
    left_traces, right_traces = interface_traces(u, bc, t)
    interface_fluxes = godunov_flux(left_traces, right_traces, flux)
    volume_values = np.asarray(flux.f(node_values(u)), dtype=float)
    return assemble_weak_form(volume_values, interface_fluxes, u.basis)


def mass_solve(rhs: np.ndarray, mesh: Mesh) -> np.ndarray:
    return np.asarray(rhs, dtype=float) * (2.0 / mesh.h)


def mass_multiply(coeffs: np.ndarray, mesh: Mesh) -> np.ndarray:
    return np.asarray(coeffs, dtype=float) * (0.5 * mesh.h)


def time_derivative(u: DGSolution, flux: FluxModel, bc: BoundaryModel, t: float) -> np.ndarray:
    """
    Return the coefficients of ``∂_t u^h`` given by the semi-discrete
    scheme, ``M⁻¹·H(u)``.
    """
    return mass_solve(apply_H(u, flux, bc, t), u.mesh)
