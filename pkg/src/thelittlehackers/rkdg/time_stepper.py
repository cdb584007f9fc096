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
from fractions import Fraction

import numpy as np

from thelittlehackers.rkdg.constant.time_step import CflMode
from thelittlehackers.rkdg.dg_operator import time_derivative
from thelittlehackers.rkdg.exception import BlowUpError
from thelittlehackers.rkdg.exception import FluxDomainError
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.mesh_basis import cell_edge_values
from thelittlehackers.rkdg.mesh_basis import node_values
from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.mesh import Mesh
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.model.run_config import TimeStepSelection


# Convex weights (previous solution, Euler step of the last stage) of the
# second stage of the third-order scheme.
RK3_STAGE_2_WEIGHTS = (Fraction(3, 4), Fraction(1, 4))

# Convex weights of the third stage of the third-order scheme.
RK3_STAGE_3_WEIGHTS = (Fraction(1, 3), Fraction(2, 3))

# Convex weights of the second stage of the second-order scheme.
RK2_STAGE_2_WEIGHTS = (Fraction(1, 2), Fraction(1, 2))

# Stage abscissae, as fractions of τ, at which the inflow datum is read.
STAGE_TIMES = {
    1: (Fraction(0),),
    2: (Fraction(0), Fraction(1)),
    3: (Fraction(0), Fraction(1), Fraction(1, 2)),
}

assert all(sum(weights) == 1 for weights in (RK3_STAGE_2_WEIGHTS, RK3_STAGE_3_WEIGHTS, RK2_STAGE_2_WEIGHTS))

# Relative tolerance of the comparisons of a time step with the CFL bounds
# and with the output times.
TIME_TOLERANCE = 1e-12


def _euler_stage(
        stage: DGSolution,
        tau: float,
        flux: FluxModel,
        bc: BoundaryModel,
        t: float
) -> np.ndarray:
    return stage.coeffs + tau * time_derivative(stage, flux, bc, t)


def _check_stage(u: DGSolution, coeffs: np.ndarray, stage: int, flux: FluxModel) -> None:
    """
    Check that a stage can feed the next flux evaluation: its coefficients
    are finite, and its traces and node values lie in the admissible
    interval of the flux.


    :raise BlowUpError: If the stage fails one of these checks.
    """
    t = u.t
    if not np.all(np.isfinite(coeffs)):
        logging.error(f"Non-finite coefficients at the Runge-Kutta stage {stage} of the step from t={t}")
        raise BlowUpError(stage, t)

    stage_solution = u.evolve(coeffs, t)
    try:
        flux.check_states(node_values(stage_solution))
        for values in cell_edge_values(stage_solution):
            flux.check_states(values)
    except FluxDomainError as error:
        logging.error(f"The Runge-Kutta stage {stage} of the step from t={t} left the admissible interval")
        raise BlowUpError(stage, t, str(error)) from error


def step_tvd_rk(
        u: DGSolution,
        tau: float,
        order: int,
        flux: FluxModel,
        bc: BoundaryModel
) -> DGSolution:
    """
    Advance a solution by one step of the TVD Runge-Kutta scheme of the
    given order.

    Every stage is a convex combination of forward Euler steps.  The
    inflow datum of a stage is read at the stage time ``t_n``, ``t_n + τ``
    or ``t_n + τ/2``.


    :param u: The solution at the time ``t_n``.

    :param tau: The time step.

    :param order: The order of the scheme, ``1``, ``2`` or ``3``.

    :param flux: The flux model.

    :param bc: The boundary model.


    :return: The solution at the time ``t_n + τ``.


    :raise InvalidInputError: If the time step is not positive, or if the
        order is not supported.

    :raise BlowUpError: If a stage produces non-finite coefficients, or
        leaves the admissible interval of the flux.

    :raise FluxDomainError: If ``u`` itself has traces outside the
        admissible interval of the flux.
    """
    if not tau > 0:
        raise InvalidInputError(f"The time step must be positive (got {tau})")
    if order not in STAGE_TIMES:
        raise InvalidInputError(f"Unsupported Runge-Kutta order {order}")

    t = u.t
    stage_times = [t + float(offset) * tau for offset in STAGE_TIMES[order]]

    stage_1 = _euler_stage(u, tau, flux, bc, stage_times[0])
    _check_stage(u, stage_1, 1, flux)
    if order == 1:
        return u.evolve(stage_1, t + tau)

    euler_2 = _euler_stage(u.evolve(stage_1, stage_times[1]), tau, flux, bc, stage_times[1])
    if order == 2:
        previous_weight, stage_weight = RK2_STAGE_2_WEIGHTS
        stage_2 = float(previous_weight) * u.coeffs + float(stage_weight) * euler_2
        _check_stage(u, stage_2, 2, flux)
        return u.evolve(stage_2, t + tau)

    previous_weight, stage_weight = RK3_STAGE_2_WEIGHTS
    stage_2 = float(previous_weight) * u.coeffs + float(stage_weight) * euler_2
    _check_stage(u, stage_2, 2, flux)

    euler_3 = _euler_stage(u.evolve(stage_2, stage_times[2]), tau, flux, bc, stage_times[2])
    previous_weight, stage_weight = RK3_STAGE_3_WEIGHTS
    stage_3 = float(previous_weight) * u.coeffs + float(stage_weight) * euler_3
    _check_stage(u, stage_3, 3, flux)

    return u.evolve(stage_3, t + tau)


def _scheduled_tau(cfg: RunConfig, step: int) -> float | None:
    remaining = step
    for steps, tau in cfg.tau_schedule:
        if remaining < steps:
            return tau
        remaining -= steps
    return None


def select_tau(
        cfg: RunConfig,
        flux: FluxModel,
        mesh: Mesh,
        t: float = 0.0,
        step: int = 0
) -> TimeStepSelection:
    """
    Select the time step of the step ``step`` starting at the time ``t``.

    The time step comes from the schedule of the configuration while it
    lasts, then from ``tau_fixed`` in the fixed mode, or from ``min(h/β,
    γ·h^{1+α})`` in the automatic mode.  It is clipped so that the step
    lands exactly on the next output time, ``T_final`` included.


    :param cfg: The run configuration.

    :param flux: The flux model, which provides ``β``.

    :param mesh: The mesh, which provides ``h``.

    :param t: The time at the start of the step.

    :param step: The index of the step, starting at ``0``.


    :return: The time step with the CFL bounds it violates.  A violation
        is also logged as a warning.


    :raise InvalidInputError: If the run is already at its final time.
    """
    h = mesh.h
    standard_bound = h / flux.beta
    strengthened_bound = cfg.gamma * h ** (1.0 + cfg.alpha)

    tau = _scheduled_tau(cfg, step)
    if tau is None:
        tau = cfg.tau_fixed if cfg.cfl_mode == CflMode.FIXED else min(standard_bound, strengthened_bound)

    standard_cfl_violated = tau > standard_bound * (1.0 + TIME_TOLERANCE)
    strengthened_cfl_violated = tau > strengthened_bound * (1.0 + TIME_TOLERANCE)
    if standard_cfl_violated:
        logging.warning(f"The time step {tau} violates the standard CFL bound h/β = {standard_bound}")
    if strengthened_cfl_violated:
        logging.warning(
            f"The time step {tau} violates the strengthened CFL bound "
            f"γ·h^(1+α) = {strengthened_bound}"
        )

    next_time = next(
        (output_time for output_time in cfg.snapshot_times
         if output_time > t + TIME_TOLERANCE * max(1.0, cfg.T_final)),
        None
    )
    if next_time is None:
        raise InvalidInputError(f"The run has already reached its final time {cfg.T_final}")

    if t + tau >= next_time - TIME_TOLERANCE * max(1.0, next_time):
        tau = next_time - t

    return TimeStepSelection(
        tau=tau,
        standard_cfl_violated=standard_cfl_violated,
        strengthened_cfl_violated=strengthened_cfl_violated
    )
