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
A posteriori ``L1`` error estimates of the RKDG solution.

Every step adds a spatial estimate ``τ·h^{p+μ}·F(S)`` and a temporal
estimate ``τ^{k+1}·G(T, S)`` to the running bound.  The exact solution
operator is an ``L1``-contraction, so the propagated errors of the previous
steps never grow and the global bound is the plain sum of the local ones
plus the error of the initial projection.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.linalg
from numpy.polynomial import legendre

from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.mesh_basis import l1_distance
from thelittlehackers.rkdg.model.basis import MAXIMUM_DEGREE
from thelittlehackers.rkdg.model.basis import get_basis
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.estimator import EstimatorConstants
from thelittlehackers.rkdg.model.estimator import ErrorBudget
from thelittlehackers.rkdg.model.estimator import StepEstimate
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.indicator import SpatialIndicator
from thelittlehackers.rkdg.model.indicator import TemporalIndicator
from thelittlehackers.rkdg.model.mesh import Mesh
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.utils import series_utils


def monic_legendre(n: int) -> legendre.Legendre:
    """
    Return the Legendre polynomial ``P_n`` scaled to a unit leading
    coefficient.
    """
    leading_coefficient = math.factorial(2 * n) / (2 ** n * math.factorial(n) ** 2)
    return legendre.Legendre.basis(n) / leading_coefficient


def _l1_norm_on_reference_cell(polynomial: legendre.Legendre) -> float:
    # Integrate between consecutive roots, where the sign is constant.
    roots = np.sort(np.real(polynomial.roots()))
    breakpoints = np.concatenate(([-1.0], roots[(roots > -1.0) & (roots < 1.0)], [1.0]))
    xi, weights = legendre.leggauss(polynomial.degree() + 1)
    total = 0.0
    for left, right in zip(breakpoints[:-1], breakpoints[1:]):
        x = 0.5 * (right - left) * (xi + 1.0) + left
        total += 0.5 * (right - left) * abs(float(np.sum(weights * polynomial(x))))
    return total


def inverse_inequality_constant(p: int) -> float:
    """
    Return the smallest ``C`` such that ``‖v'‖_{L2} ≤ C·‖v‖_{L2}`` for every
    polynomial ``v`` of degree ``p`` on the reference cell.

    It is the square root of the largest eigenvalue of the stiffness matrix
    of the orthonormal Legendre basis.
    """
    if p == 0:
        return 0.0

    basis = get_basis(p, p + 1)
    derivatives = basis.node_derivative_table
    stiffness = (derivatives.T * basis.weights) @ derivatives
    return float(math.sqrt(scipy.linalg.eigh(stiffness, eigvals_only=True)[-1]))


@lru_cache(maxsize=None)
def derive_constants(p: int, k: int) -> EstimatorConstants:
    """
    Compute the constants of the estimator for the degree ``p`` and the
    Runge-Kutta order ``k``.

    The projection error of a polynomial ``q`` of degree ``p + 1`` onto
    ``Π_p`` is ``q^{(p+1)}/(p+1)!`` times the monic Legendre polynomial
    ``P̃_{p+1}``, so the extremal projection constants have the closed
    forms::

        C1 = ‖P̃_{p+1}‖_{L1} / (2·(p+1)!)
        C2 = ‖P̃_{p+1}‖_{L2} / (√2·(p+1)!)
        C3 = ‖P̃_{p+1}‖_{L∞} / (p+1)!

    ``C_inv`` is the exact inverse-inequality constant of degree ``p``,
    ``C_tr = (p + 1)/√2`` bounds the traces of normalized polynomials, and
    ``C_rk = (1 + C_inv)^k / (k+1)!``.


    :param p: The polynomial degree.

    :param k: The Runge-Kutta order.


    :return: The constants, with ``N_p1 = 0``.


    :raise InvalidInputError: If ``p`` exceeds the highest validated
        degree.
    """
    if not 0 <= p <= MAXIMUM_DEGREE:
        raise InvalidInputError(f"Estimator constants are available for 0 ≤ p ≤ {MAXIMUM_DEGREE} (got {p})")

    n = p + 1
    error_mode = monic_legendre(n)
    n_factorial = math.factorial(n)
    squared_mode = (error_mode * error_mode).integ()
    l2_norm = math.sqrt(float(squared_mode(1.0) - squared_mode(-1.0)))

    C_inv = inverse_inequality_constant(p)
    return EstimatorConstants(
        p=p,
        k=k,
        C1=_l1_norm_on_reference_cell(error_mode) / (2.0 * n_factorial),
        C2=l2_norm / (math.sqrt(2.0) * n_factorial),
        C3=float(abs(error_mode(1.0))) / n_factorial,
        C_inv=C_inv,
        C_tr=(p + 1) / math.sqrt(2.0),
        C_rk=(1.0 + C_inv) ** k / math.factorial(k + 1)
    )


def surrogate_n_p1(S: SpatialIndicator, flux: FluxModel, kappa: float = 2.0) -> float:
    """
    Return the surrogate of ``N^{p+1}``, the bound of the ``(p+1)``-th
    derivative of the local exact solutions over a step.

    Those derivatives start from ``0`` and are driven by the nonlinear part
    of ``∂_x^{p+2} f(w)``, expanded with Faà di Bruno's formula.  The
    surrogate evaluates that part with the one-sided traces ``|M^l|``,
    ``l = 1..p``, of every cell and the sampled bounds of ``|f^{(r)}|``,
    ``r ≥ 2``, and scales its maximum over the cells by ``κ``.
    """
    p = S.p
    traces = [np.abs(S.M[:, l]) for l in range(1, p + 1)]
    if not traces:
        return 0.0

    order = p + 2
    source = sum(
        flux.derivative_bound(r) * series_utils.bell_polynomial(order, r, traces)
        for r in range(2, order + 1)
    )
    return float(kappa * np.max(source))


def gronwall_constant(
        S: SpatialIndicator,
        consts: EstimatorConstants,
        cfg: RunConfig,
        flux: FluxModel
) -> float:
    """
    Return the constant ``Q_n`` that bounds the growth of the ``L2`` error
    between the DG solution and the projected local exact solution over a
    step of length ``τ ≤ γ·h^{1+α}``.
    """
    beta = flux.beta
    gamma = cfg.gamma
    h = S.h
    root_length = math.sqrt(S.domain_length)
    scaled_gamma = gamma * h ** cfg.alpha

    C4 = beta * (1.0 + consts.C_inv + consts.C_tr ** 2)
    C5 = beta * S.D_tilde * math.exp(beta * gamma) * (1.0 + consts.C_tr * consts.C3 * root_length) \
        + beta * consts.C2 * root_length * consts.N_p1 * h ** (1.0 - cfg.mu)
    C6 = beta * consts.C2 * root_length * consts.N_p1

    return root_length * math.expm1(C4 * scaled_gamma) / C4 * (C5 + C6 * scaled_gamma) / scaled_gamma


def spatial_F(
        S: SpatialIndicator,
        consts: EstimatorConstants,
        cfg: RunConfig,
        flux: FluxModel,
        mesh: Mesh
) -> float | None:
    """
    Return the function ``F`` of the spatial estimate ``τ·h^{p+μ}·F``.

    It sums a transport term ``β·D̃·e^{βγ}·|Ω|``, a projection term
    ``C1·|Ω|·N^{p+1}·h^{1-μ}`` and the Gronwall term ``Q_n``.


    :return: ``F``, or ``None`` if the indicator is not finite, in which
        case the step can't be trusted.
    """
    if not S.is_finite() or not math.isfinite(consts.N_p1):
        logging.warning(f"Non-finite spatial indicator at t={S.t}; the spatial estimate is untrusted")
        return None

    beta = flux.beta
    domain_length = mesh.length

    transport_term = beta * S.D_tilde * math.exp(beta * cfg.gamma) * domain_length
    projection_term = consts.C1 * domain_length * consts.N_p1 * mesh.h ** (1.0 - cfg.mu)
    return transport_term + projection_term + gronwall_constant(S, consts, cfg, flux)


def temporal_growth_constants(
        order: int,
        T: TemporalIndicator,
        consts: EstimatorConstants,
        cfg: RunConfig,
        flux: FluxModel
) -> tuple[float, float]:
    """
    Return the pair ``(c_l, d_l)`` for ``l = order`` such that
    ``‖∂_t^l u^h‖_{L∞}`` stays below ``(1 + c_l·h^α)·‖∂_t^l u^h(t_n)‖_{L∞}
    + d_l·h^α`` over the step.

    ``c_l = √2·B̃·Ã·γ`` with ``B̃ = (p + 1)·√((2p + 1)/2)`` and ``Ã =
    (2p + 2)·β·(1 + C_inv + C_tr²)``.  ``d_l`` collects the nonlinear
    terms of ``∂_t^l f(u^h)``, evaluated with the lower-order sup norms and
    the bounds of the flux derivatives.
    """
    p = consts.p
    B_tilde = (p + 1) * math.sqrt((2 * p + 1) / 2.0)
    stiffness_bound = (2 * p + 2) * (1.0 + consts.C_inv + consts.C_tr ** 2)
    A_tilde = stiffness_bound * flux.beta

    c_l = math.sqrt(2.0) * B_tilde * A_tilde * cfg.gamma

    lower_order_norms = list(T.d_max[1:order])
    nonlinear_source = sum(
        flux.derivative_bound(r) * series_utils.bell_polynomial(order, r, lower_order_norms)
        for r in range(2, order + 1)
    )
    d_l = math.sqrt(2.0) * B_tilde * stiffness_bound * cfg.gamma * float(nonlinear_source)

    return c_l, d_l


def temporal_G(
        T: TemporalIndicator,
        S: SpatialIndicator,
        consts: EstimatorConstants,
        cfg: RunConfig,
        flux: FluxModel
) -> float | None:
    """
    Return the function ``G`` of the temporal estimate ``τ^{k+1}·G``::

        G = C_rk·[(1 + c_{k+1}·h^α)·‖∂_t^{k+1} u^h(t_n)‖_{L∞} + d_{k+1}·h^α]·|Ω|


    :return: ``G``, or ``None`` if the indicator is not finite.
    """
    if not T.is_finite():
        logging.warning(f"Non-finite temporal indicator at t={T.t}; the temporal estimate is untrusted")
        return None

    order = T.k + 1
    c_l, d_l = temporal_growth_constants(order, T, consts, cfg, flux)
    scale = S.h ** cfg.alpha
    return consts.C_rk * ((1.0 + c_l * scale) * T.d_max[order] + d_l * scale) * S.domain_length


def accumulate(
        budget: ErrorBudget,
        F_n: float | None,
        G_n: float | None,
        tau_n: float,
        cfg: RunConfig,
        t: float | None = None,
        indicator_magnitude: float = 0.0
) -> ErrorBudget:
    """
    Add the local estimates of a step to the error budget.


    :param budget: The budget before the step.

    :param F_n: The spatial function ``F``, ``None`` when untrusted.

    :param G_n: The temporal function ``G``, ``None`` when untrusted.

    :param tau_n: The time step.

    :param cfg: The run configuration.

    :param t: The time at the end of the step; defaults to the sum of the
        time steps.

    :param indicator_magnitude: The largest indicator component of the
        step.  Above the configured ceiling the step is flagged untrusted.


    :return: The budget after the step.  A non-finite local estimate adds
        nothing and flags the step untrusted.
    """
    local_space = tau_n * cfg.h ** (cfg.p + cfg.mu) * F_n if F_n is not None else math.nan
    local_time = tau_n ** (cfg.k + 1) * G_n if G_n is not None else math.nan

    trusted = True
    increment = 0.0
    for local_estimate in (local_space, local_time):
        if math.isfinite(local_estimate):
            increment += local_estimate
        else:
            trusted = False

    if indicator_magnitude > cfg.indicator_ceiling:
        trusted = False

    n = budget.step_count + 1
    if not trusted:
        logging.warning(f"The estimate of the step {n} is untrusted")

    E_global = budget.E_global + increment
    step_time = t if t is not None else sum(step.tau for step in budget.steps) + tau_n
    step = StepEstimate(
        n=n,
        t=step_time,
        tau=tau_n,
        F=F_n,
        G=G_n,
        local_space=local_space if math.isfinite(local_space) else 0.0,
        local_time=local_time if math.isfinite(local_time) else 0.0,
        E_global=E_global,
        trusted=trusted
    )
    return budget.model_copy(update={
        'E_global': E_global,
        'steps': budget.steps + (step,),
        'trusted': budget.trusted and trusted
    })


def initial_error(u0: DGSolution, g: Callable[[np.ndarray], np.ndarray]) -> float:
    """
    Return ``‖g - u_0‖_{L1(Ω)}`` by a composite Gauss rule of ``4·(p + 2)``
    points per cell.
    """
    return l1_distance(u0, g)
