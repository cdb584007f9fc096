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

import logging
from math import factorial

import numpy as np

from thelittlehackers.rkdg.dg_operator import assemble_weak_form
from thelittlehackers.rkdg.dg_operator import interface_traces
from thelittlehackers.rkdg.dg_operator import mass_solve
from thelittlehackers.rkdg.dg_operator import time_derivative
from thelittlehackers.rkdg.exception import BoundaryModelError
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.mesh_basis import cell_edge_values
from thelittlehackers.rkdg.mesh_basis import node_values
from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.indicator import SpatialIndicator
from thelittlehackers.rkdg.model.indicator import TemporalIndicator
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.utils import series_utils


# Highest order of the time derivatives of the semi-discrete solution.
MAXIMUM_TIME_DERIVATIVE_ORDER = 4


def jump_exponents(p: int, mu: float, alpha: float) -> np.ndarray:
    """
    Return the exponents ``p + 1 + μ - l·(1 + α)`` that scale the jumps of
    the derivatives of order ``l = 0..p``.
    """
    return p + 1 + mu - np.arange(p + 1) * (1.0 + alpha)


def boundary_derivatives(
        bc: BoundaryModel,
        flux: FluxModel,
        t: float,
        max_order: int
) -> list[float]:
    """
    Return the spatial derivatives ``L^l = ∂_x^l u(t, a)`` of the exact
    solution at the inflow boundary, for ``l = 0..max_order``.

    The derivatives follow from ``u(t, a) = u_L(t)`` and the conservation
    law ``u_t + f'(u)·u_x = 0``.  Both sides are expanded as truncated
    Taylor series in ``(t - t_0, x - a)``, and the spatial coefficients
    are solved for column by column from the time coefficients given by
    the derivatives of ``u_L``.  The first orders agree with::

        L^0 = u_L
        L^1 = -u_L' / f'(u_L)
        L^2 = -[2·f''(u_L)·(u_L')² - f'(u_L)·u_L''] / f'(u_L)³


    :param bc: The inflow boundary model.

    :param flux: The flux model.

    :param t: The time.

    :param max_order: The highest derivative order.


    :return: The list ``[L^0, L^1, ..., L^max_order]``.


    :raise BoundaryModelError: If the boundary model is periodic, if it
        doesn't supply a time derivative of ``u_L`` of an order up to
        ``max_order``, or if ``f'(u_L(t)) ≤ 0``.
    """
    if bc.is_periodic:
        raise BoundaryModelError("Boundary derivatives require an inflow boundary model")

    order = max_order
    inflow_derivatives = [bc.inflow_value(t, i) for i in range(order + 1)]
    u_0 = inflow_derivatives[0]

    wave_speed = float(flux.f_prime(u_0))
    if not wave_speed > 0:
        raise BoundaryModelError(
            f"Singular inflow at t={t}: f'(u_L)={wave_speed} violates the west-wind assumption"
        )

    # Derivatives of f' at u_L(t), i.e., f', f'', ..., f^(order).
    wave_speed_derivatives = [wave_speed] + [float(flux.derivative(r)(u_0)) for r in range(2, order + 1)]

    # U[i, j] is the coefficient of (t - t_0)^i·(x - a)^j.
    U = np.zeros((order + 1, order + 1))
    U[:, 0] = [value / factorial(i) for i, value in enumerate(inflow_derivatives)]

    for j in range(order):
        A = series_utils.compose(wave_speed_derivatives, U, order)
        for i in range(order - j):
            residual = (i + 1) * U[i + 1, j]
            for i1 in range(i + 1):
                for j1 in range(j + 1):
                    if i1 == 0 and j1 == 0:
                        continue
                    i2, j2 = i - i1, j - j1
                    residual += A[i1, j1] * (j2 + 1) * U[i2, j2 + 1]
            U[i, j + 1] = -residual / (A[0, 0] * (j + 1))

    return [factorial(l) * U[0, l] for l in range(order + 1)]


def spatial_indicator(
        u: DGSolution,
        cfg: RunConfig,
        bc: BoundaryModel,
        t: float,
        flux: FluxModel | None = None
) -> SpatialIndicator:
    """
    Compute the spatial smoothness indicator of a solution.


    :param u: The solution.

    :param cfg: The run configuration, which provides ``μ`` and ``α``.

    :param bc: The boundary model.  At the inflow interface the left traces
        are the boundary derivatives ``L^l``; under periodicity they are
        the traces of the last cell.

    :param t: The time at which the boundary derivatives are read.

    :param flux: The flux model, required by an inflow boundary.


    :return: The indicator.


    :raise BoundaryModelError: If the inflow boundary derivatives can't be
        computed.

    :raise InvalidInputError: If the degree of the solution differs from the
        configured one.
    """
    if u.p != cfg.p:
        raise InvalidInputError(f"The solution has the degree {u.p}; the configuration expects {cfg.p}")

    p = u.p
    M = np.empty((u.m, p + 1))
    L = np.empty((u.m, p + 1))
    for order in range(p + 1):
        at_left_edges, at_right_edges = cell_edge_values(u, order)
        M[:, order] = at_left_edges
        L[1:, order] = at_right_edges[:-1]
        L[0, order] = at_right_edges[-1]

    if not bc.is_periodic:
        if flux is None:
            raise BoundaryModelError("The inflow boundary derivatives require the flux model")
        L[0, :] = boundary_derivatives(bc, flux, t, p)

    exponents = jump_exponents(p, cfg.mu, cfg.alpha)
    J = M - L
    D = J / u.mesh.h ** exponents[None, :]

    return SpatialIndicator(
        t=t,
        h=u.mesh.h,
        domain_length=u.mesh.length,
        M=M,
        L=L,
        J=J,
        D=D,
        exponents=exponents
    )


def sup_norm(u: DGSolution, coeffs: np.ndarray | None = None) -> float:
    """
    Return the largest magnitude of a piecewise polynomial over the
    quadrature nodes and both edges of every cell.
    """
    field = u if coeffs is None else u.evolve(coeffs, u.t)
    at_left_edges, at_right_edges = cell_edge_values(field)
    return float(max(
        np.max(np.abs(node_values(field))),
        np.max(np.abs(at_left_edges)),
        np.max(np.abs(at_right_edges))
    ))


def temporal_indicator(
        u: DGSolution,
        k: int,
        flux: FluxModel,
        bc: BoundaryModel,
        t: float
) -> TemporalIndicator:
    """
    Compute the time derivatives ``∂_t^l u^h(t)``, ``l = 1..k+1``, of the
    semi-discrete solution restarted from ``u``.

    ``∂_t u^h`` is given by the scheme itself.  Differentiating the scheme
    ``l`` times in time gives the weak form::

        (∂_t^{l+1} u^h, v)_{Ω_j} = (∂_t^l f(u^h), v_x)_{Ω_j}
                                   - ∂_t^l f(u^h(x_{j+1/2}^-))·v(x_{j+1/2}^-)
                                   + ∂_t^l f(u^h(x_{j-1/2}^-))·v(x_{j-1/2}^+)

    where ``∂_t^l f(u^h)`` is expanded with Faà di Bruno's formula from
    the lower time derivatives.  At the inflow interface the traces of
    ``∂_t^l u^h`` are the derivatives ``u_L^{(l)}(t)``.


    :param u: The solution ``u^c_n``.

    :param k: The order of the Runge-Kutta scheme.

    :param flux: The flux model, with its derivatives up to the order
        ``k + 1``.

    :param bc: The boundary model, with the derivatives of ``u_L`` up to
        the order ``k``.

    :param t: The time.


    :return: The indicator.


    :raise InvalidInputError: If ``k + 1`` exceeds the highest supported
        derivative order, or if a flux derivative is missing.
    """
    if k < 1 or k + 1 > MAXIMUM_TIME_DERIVATIVE_ORDER:
        raise InvalidInputError(
            f"Time derivatives up to the order {MAXIMUM_TIME_DERIVATIVE_ORDER} are supported "
            f"(requested {k + 1})"
        )

    def upwind_traces(coeffs: np.ndarray | None, order: int) -> np.ndarray:
        inflow_value = None if bc.is_periodic else bc.inflow_value(t, order)
        left_traces, _ = interface_traces(u, bc, t, coeffs=coeffs, inflow_value=inflow_value)
        return left_traces

    u_nodes = node_values(u)
    u_traces = upwind_traces(None, 0)
    f_at_nodes = [np.asarray(flux.derivative(r)(u_nodes), dtype=float) for r in range(1, k + 2)]
    f_at_traces = [np.asarray(flux.derivative(r)(u_traces), dtype=float) for r in range(1, k + 2)]

    derivatives = [time_derivative(u, flux, bc, t)]
    node_derivatives = [node_values(u, derivatives[0])]
    trace_derivatives = [upwind_traces(derivatives[0], 1)]

    for order in range(1, k + 1):
        volume_values = series_utils.faa_di_bruno(f_at_nodes, node_derivatives, order)
        interface_fluxes = series_utils.faa_di_bruno(f_at_traces, trace_derivatives, order)
        field = mass_solve(assemble_weak_form(volume_values, interface_fluxes, u.basis), u.mesh)
        derivatives.append(field)

        # The traces of the last field are never needed, nor is u_L^(k+1).
        if order < k:
            node_derivatives.append(node_values(u, field))
            trace_derivatives.append(upwind_traces(field, order + 1))

    d_max = (sup_norm(u),) + tuple(sup_norm(u, field) for field in derivatives)
    logging.debug(f"Temporal indicator at t={t}: d_max={d_max}")

    return TemporalIndicator(t=t, k=k, derivatives=tuple(derivatives), d_max=d_max)
