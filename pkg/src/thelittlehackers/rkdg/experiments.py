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
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any
from typing import Callable
from typing import Sequence

import numpy as np
from normality import slugify
from pydantic import ValidationError
from scipy import optimize

from thelittlehackers.rkdg.constant.time_step import CflMode
from thelittlehackers.rkdg.error_estimator import accumulate
from thelittlehackers.rkdg.error_estimator import derive_constants
from thelittlehackers.rkdg.error_estimator import initial_error
from thelittlehackers.rkdg.error_estimator import spatial_F
from thelittlehackers.rkdg.error_estimator import surrogate_n_p1
from thelittlehackers.rkdg.error_estimator import temporal_G
from thelittlehackers.rkdg.exception import BlowUpError
from thelittlehackers.rkdg.exception import ConfigError
from thelittlehackers.rkdg.exception import FluxDomainError
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.exception import OracleInvalidError
from thelittlehackers.rkdg.mesh_basis import l1_distance
from thelittlehackers.rkdg.mesh_basis import node_values
from thelittlehackers.rkdg.mesh_basis import project_l2
from thelittlehackers.rkdg.model.basis import get_basis
from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.estimator import ErrorBudget
from thelittlehackers.rkdg.model.estimator import EstimatorPolicy
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.flux import constant_function
from thelittlehackers.rkdg.model.mesh import Mesh
from thelittlehackers.rkdg.model.problem import ConvergenceRow
from thelittlehackers.rkdg.model.problem import ConvergenceTable
from thelittlehackers.rkdg.model.problem import ExactOracle
from thelittlehackers.rkdg.model.problem import ProblemSpec
from thelittlehackers.rkdg.model.problem import RunArtifact
from thelittlehackers.rkdg.model.problem import RunComparison
from thelittlehackers.rkdg.model.problem import Snapshot
from thelittlehackers.rkdg.model.problem import StepRecord
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.smoothness_indicators import spatial_indicator
from thelittlehackers.rkdg.smoothness_indicators import temporal_indicator
from thelittlehackers.rkdg.time_stepper import TIME_TOLERANCE
from thelittlehackers.rkdg.time_stepper import select_tau
from thelittlehackers.rkdg.time_stepper import step_tvd_rk


# Fraction of the crossing time up to which convergence studies may run.
CROSSING_TIME_SAFETY_FACTOR = 0.9

# Largest residual accepted from the characteristics equation.
CHARACTERISTIC_RESIDUAL_TOLERANCE = 1e-12


def _example_1_initial(x):
    x = np.asarray(x, dtype=float)
    return 1.0 - (x / 11.0) ** 3 * np.sin(x)


def _example_1_initial_derivative(x):
    x = np.asarray(x, dtype=float)
    return -3.0 * x ** 2 / 11.0 ** 3 * np.sin(x) - (x / 11.0) ** 3 * np.cos(x)


def example_1() -> ProblemSpec:
    """
    Return Burgers' equation on ``[0, 10]`` with ``u_I(x) = 1 - (x/11)³·sin
    x`` and the constant inflow ``u_L ≡ 1``.

    The admissible interval of the flux is ``[0.25, 1.75]``, which holds
    every value ``1 ± (10/11)³`` the datum can take.  The wave speed bound
    is therefore ``β = 1.75``, the maximum of ``f'`` over that interval,
    rather than ``1.25``, a bound that assumes the amplitude ``|u| ≤ 1.25``.
    The larger bound only makes the estimates more conservative.
    """
    return ProblemSpec(
        name='example_1',
        description="Burgers' equation with a cubic-weighted sine datum and a constant inflow",
        flux=FluxModel.burgers(0.25, 1.75),
        domain=(0.0, 10.0),
        initial=_example_1_initial,
        initial_derivative=_example_1_initial_derivative,
        boundary=BoundaryModel.constant_inflow(1.0),
        T_final=2.0,
        defaults={
            'p': 3,
            'k': 3,
            'h': 0.05,
            'mu': 1.0,
            'gamma': 0.005 / 0.05 ** (4.0 / 3.0),
            'tau_fixed': 0.005,
            'cfl_mode': CflMode.FIXED,
            'T_final': 2.0,
            'output_times': (0.05, 1.05, 2.0),
        }
    )


def example_2() -> ProblemSpec:
    """
    Return Burgers' equation on ``[0, 10]`` with ``u_I(x) = 1/2 + 1/4·sin(πx/5)``
    and periodic boundaries.
    """
    return ProblemSpec(
        name='example_2',
        description="Burgers' equation with a sine datum and periodic boundaries",
        flux=FluxModel.burgers(0.1, 0.9),
        domain=(0.0, 10.0),
        initial=lambda x: 0.5 + 0.25 * np.sin(np.pi * np.asarray(x) / 5.0),
        initial_derivative=lambda x: 0.05 * np.pi * np.cos(np.pi * np.asarray(x) / 5.0),
        boundary=BoundaryModel.periodic(),
        T_final=1.0,
        shock_time_estimate=20.0 / np.pi,
        defaults={
            'p': 4,
            'k': 3,
            'h': 0.05,
            'mu': 1.0,
            'gamma': 0.005 / 0.05 ** 1.25,
            'tau_fixed': 0.005,
            'cfl_mode': CflMode.FIXED,
            'T_final': 1.0,
            'output_times': (0.5, 1.0),
        }
    )


def linear_advection() -> ProblemSpec:
    """
    Return the linear advection ``u_t + u_x = 0`` of a sine wave on
    ``[0, 10]`` with periodic boundaries.
    """
    return ProblemSpec(
        name='linear_advection',
        description="Linear advection of a sine wave with periodic boundaries",
        flux=FluxModel.linear_advection(1.0, -2.0, 2.0),
        domain=(0.0, 10.0),
        initial=lambda x: np.sin(np.pi * np.asarray(x) / 5.0),
        initial_derivative=lambda x: np.pi / 5.0 * np.cos(np.pi * np.asarray(x) / 5.0),
        boundary=BoundaryModel.periodic(),
        T_final=1.0,
        defaults={'p': 2, 'k': 3, 'h': 0.1, 'mu': 1.0, 'gamma': 1.0, 'T_final': 1.0}
    )


def _sine_inflow_derivatives(amplitude: float, count: int) -> list[Callable[[Any], Any]]:
    # Derivatives of t ↦ -amplitude·sin t, the constant 1 aside.
    cycle = (
        lambda t: -amplitude * np.sin(t),
        lambda t: -amplitude * np.cos(t),
        lambda t: amplitude * np.sin(t),
        lambda t: amplitude * np.cos(t),
    )
    derivatives = [lambda t: 1.0 - amplitude * np.sin(t)]
    derivatives += [cycle[order % 4] for order in range(1, count)]
    return derivatives


def manufactured_inflow() -> ProblemSpec:
    """
    Return Burgers' equation on ``[0, 10]`` with the constant datum ``u_I ≡
    1`` and the time-dependent inflow ``u_L(t) = 1 - sin(t)/4``.
    """
    return ProblemSpec(
        name='manufactured_inflow',
        description="Burgers' equation driven by a sine inflow",
        flux=FluxModel.burgers(0.5, 1.5),
        domain=(0.0, 10.0),
        initial=constant_function(1.0),
        initial_derivative=constant_function(0.0),
        boundary=BoundaryModel.inflow(_sine_inflow_derivatives(0.25, 12)),
        T_final=1.0,
        defaults={'p': 2, 'k': 3, 'h': 0.1, 'mu': 1.0, 'gamma': 1.0, 'T_final': 1.0}
    )


PROBLEMS: dict[str, Callable[[], ProblemSpec]] = {
    'example_1': example_1,
    'example_2': example_2,
    'linear_advection': linear_advection,
    'manufactured_inflow': manufactured_inflow,
}


def normalize_problem_name(name: str) -> str:
    return slugify(name, sep='_') or ''


def resolve_problem(name: str) -> ProblemSpec:
    """
    Return the problem registered under a name, compared after
    normalization (``"Example 1"`` and ``"example-1"`` both name
    ``example_1``).


    :raise ConfigError: If no problem is registered under this name.
    """
    factory = PROBLEMS.get(normalize_problem_name(name))
    if factory is None:
        raise ConfigError(f"Unknown problem \"{name}\"; expected one of {', '.join(PROBLEMS)}")
    return factory()


def build_config(problem: ProblemSpec, **overrides: Any) -> RunConfig:
    """
    Return the run configuration of a problem, its reference values
    overridden by the given ones.


    :raise ConfigError: If the resulting configuration is invalid.
    """
    overrides = {key: value for key, value in overrides.items() if value is not None}
    values = {**problem.defaults, **overrides}

    # A given time step selects the fixed mode, unless a mode is given too.
    if 'tau_fixed' in overrides and 'cfl_mode' not in overrides:
        values['cfl_mode'] = CflMode.FIXED

    # Reference output times beyond a shortened final time are dropped.
    if 'T_final' in overrides and 'output_times' not in overrides:
        values['output_times'] = tuple(t for t in values.get('output_times', ()) if t <= overrides['T_final'])
    try:
        return RunConfig(**values)
    except ValidationError as error:
        raise ConfigError(f"Invalid run configuration: {error}") from error


def _solve_characteristic(
        residual: Callable[[float], float],
        derivative: Callable[[float], float],
        guess: float,
        bracket: tuple[float, float],
        oracle: ExactOracle
) -> float:
    try:
        result = optimize.root_scalar(
            residual,
            x0=guess,
            fprime=derivative,
            method='newton',
            xtol=oracle.newton_tol,
            maxiter=oracle.max_iter
        )
        if result.converged and abs(residual(result.root)) <= CHARACTERISTIC_RESIDUAL_TOLERANCE \
                and bracket[0] <= result.root <= bracket[1]:
            return result.root
    except (ArithmeticError, RuntimeError, ValueError):
        pass

    logging.debug(f"Newton's method failed from {guess}; falling back to bisection on {bracket}")
    return optimize.brentq(residual, *bracket, xtol=oracle.newton_tol, maxiter=oracle.max_iter)


def exact_solution(oracle: ExactOracle, t: float, x: float) -> float:
    """
    Return the exact solution ``u(t, x)`` by the method of characteristics.

    The foot ``x_0`` of the characteristic through ``(t, x)`` solves ``x =
    x_0 + t·f'(u_I(x_0))``, with the periodic extension of ``u_I`` when the
    boundaries are periodic.  Under an inflow boundary, a point on the left
    of the characteristic issued from ``(0, a)`` is reached by the
    characteristic issued from ``(t_0, a)``, with ``x = a + (t -
    t_0)·f'(u_L(t_0))``, and the solution is ``u_L(t_0)``.


    :param oracle: The oracle.

    :param t: The time, before the crossing time.

    :param x: A point of the domain.


    :return: The value of the exact solution.


    :raise InvalidInputError: If ``t`` is negative or ``x`` is outside the
        domain.

    :raise OracleInvalidError: If characteristics cross before ``t``.
    """
    problem = oracle.problem
    flux = problem.flux

    if t < 0:
        raise InvalidInputError(f"Negative time {t}")
    if not problem.a <= x <= problem.b:
        raise InvalidInputError(f"The point {x} is outside the domain [{problem.a}, {problem.b}]")
    if t >= problem.crossing_time:
        raise OracleInvalidError(t, problem.crossing_time)

    if t == 0:
        return float(problem.initial(x))

    bc = problem.boundary
    if not bc.is_periodic:
        separating_point = problem.a + t * float(flux.f_prime(problem.initial(problem.a)))
        if x < separating_point:
            return _trace_to_boundary(oracle, t, x)

    def foot(x0: float) -> float:
        return problem.a + (x0 - problem.a) % problem.length if bc.is_periodic else x0

    def residual(x0: float) -> float:
        return x0 + t * float(flux.f_prime(problem.initial(foot(x0)))) - x

    def derivative(x0: float) -> float:
        x0 = foot(x0)
        return 1.0 + t * float(flux.f_double_prime(problem.initial(x0))) * float(problem.initial_derivative(x0))

    speeds = np.asarray(flux.f_prime(flux.samples), dtype=float)
    lower, upper = x - t * float(np.max(speeds)), x - t * float(np.min(speeds))
    if not bc.is_periodic:
        lower = max(lower, problem.a)
        upper = min(upper, x)

    guess = x - t * float(flux.f_prime(problem.initial(x)))
    x0 = _solve_characteristic(residual, derivative, guess, (lower, upper), oracle)
    return float(problem.initial(foot(x0)))


def _trace_to_boundary(oracle: ExactOracle, t: float, x: float) -> float:
    problem = oracle.problem
    flux = problem.flux
    bc = problem.boundary
    if x == problem.a:
        return bc.inflow_value(t)

    def residual(t0: float) -> float:
        return problem.a + (t - t0) * float(flux.f_prime(bc.inflow_value(t0))) - x

    def derivative(t0: float) -> float:
        u_L = bc.inflow_value(t0)
        return -float(flux.f_prime(u_L)) + (t - t0) * float(flux.f_double_prime(u_L)) * bc.inflow_value(t0, 1)

    guess = t - (x - problem.a) / float(flux.f_prime(bc.inflow_value(t)))
    t0 = _solve_characteristic(residual, derivative, min(max(guess, 0.0), t), (0.0, t), oracle)
    return bc.inflow_value(t0)


def exact_profile(oracle: ExactOracle, t: float, x: np.ndarray) -> np.ndarray:
    """
    Return the exact solution at the time ``t`` on an array of points.
    """
    points = np.asarray(x, dtype=float)
    values = np.array([exact_solution(oracle, t, float(point)) for point in points.ravel()])
    return values.reshape(points.shape)


def run_simulation(
        problem: ProblemSpec,
        cfg: RunConfig,
        raise_on_abort: bool = False
) -> RunArtifact:
    """
    Run the RKDG solver on a problem up to ``cfg.T_final``.

    Every step computes both smoothness indicators of the current solution,
    selects the time step, adds the local error estimates to the budget,
    and advances the solution.  A snapshot is taken at every output time.


    :param problem: The problem.

    :param cfg: The run configuration.

    :param raise_on_abort: Whether to re-raise the error that aborts the
        run instead of returning the artifact with its last good snapshot.


    :return: The run artifact.  When the solution blows up or leaves the
        admissible interval of the flux, the run is aborted and the last
        good state is kept as the last snapshot.
    """
    started_at = time.perf_counter()
    flux, bc = problem.flux, problem.boundary
    mesh = Mesh.from_cell_size(problem.a, problem.b, cfg.h)
    u = project_l2(problem.initial, mesh, get_basis(cfg.p))
    budget = ErrorBudget.start(initial_error(u, problem.initial))
    constants = derive_constants(cfg.p, cfg.k)
    policy = EstimatorPolicy(kappa=cfg.kappa, indicator_ceiling=cfg.indicator_ceiling)

    logging.info(
        f"Running {problem.name} with p={cfg.p}, k={cfg.k}, h={cfg.h} on {mesh.m} cells "
        f"up to t={cfg.T_final}"
    )

    pending_times = list(cfg.snapshot_times)
    snapshots: list[Snapshot] = []
    records: list[StepRecord] = []
    last_good: Snapshot | None = None
    pending_step: dict[str, Any] | None = None
    abort_reason = None
    n = 0
    try:
        while True:
            flux.check_states(node_values(u))
            S = spatial_indicator(u, cfg, bc, u.t, flux)
            T = temporal_indicator(u, cfg.k, flux, bc, u.t)

            # The estimates of a step enter the budget once the state it
            # produced has passed the checks above.
            if pending_step is not None:
                budget = accumulate(budget, cfg=cfg, t=u.t, **pending_step)
                pending_step = None

            records.append(StepRecord.from_indicators(n, S, T))
            last_good = Snapshot(t=u.t, solution=u, spatial=S, temporal=T)
            logging.debug(f"Step {n} at t={u.t}: D̃={S.D_tilde}, d_max={T.d_max}")

            while pending_times and u.t >= pending_times[0] - TIME_TOLERANCE * max(1.0, pending_times[0]):
                pending_times.pop(0)
                snapshots.append(last_good)
                logging.info(f"Snapshot at t={u.t} (step {n})")

            if u.t >= cfg.T_final - TIME_TOLERANCE * max(1.0, cfg.T_final):
                break

            selection = select_tau(cfg, flux, mesh, u.t, n)
            step_constants = constants.with_n_p1(surrogate_n_p1(S, flux, cfg.kappa))
            F = spatial_F(S, step_constants, cfg, flux, mesh)
            G = temporal_G(T, S, step_constants, cfg, flux)

            u = step_tvd_rk(u, selection.tau, cfg.k, flux, bc)
            n += 1
            pending_step = {
                'F_n': F,
                'G_n': G,
                'tau_n': selection.tau,
                'indicator_magnitude': max(S.magnitude(), T.magnitude()),
            }
    except (BlowUpError, FluxDomainError) as error:
        logging.error(f"The run of {problem.name} is aborted at step {n}: {error}")
        if raise_on_abort or last_good is None:
            raise
        abort_reason = str(error)
        if snapshots and snapshots[-1] is last_good:
            snapshots.pop()
        snapshots.append(last_good.model_copy(update={'last_good': True}))

    elapsed_seconds = time.perf_counter() - started_at
    logging.info(
        f"Run of {problem.name} completed {budget.step_count} steps in {elapsed_seconds:.2f}s; "
        f"global L1 bound {budget.E_global}"
    )

    return RunArtifact(
        problem_name=problem.name,
        config=cfg,
        policy=policy,
        snapshots=tuple(snapshots),
        records=tuple(records),
        budget=budget,
        abort_reason=abort_reason,
        elapsed_seconds=elapsed_seconds
    )


def measure_error(oracle: ExactOracle, artifact: RunArtifact) -> float:
    """
    Return the ``L1`` distance between the final solution of a run and the
    exact solution.
    """
    u = artifact.final_snapshot.solution
    return l1_distance(u, lambda x: exact_profile(oracle, u.t, x))


def convergence_study(
        problem: ProblemSpec,
        cfg_base: RunConfig,
        h_list: Sequence[float]
) -> ConvergenceTable:
    """
    Run a problem on a sequence of meshes and compare the final solutions
    with the exact solution.

    The cases run on ``cfg_base.max_workers`` threads; the rows keep the
    order of ``h_list``.


    :return: The table of ``(h, L1 error, estimate, effectivity)``.


    :raise OracleInvalidError: If ``T_final`` exceeds 90% of the crossing
        time of the problem.
    """
    crossing_time = problem.crossing_time
    if cfg_base.T_final > CROSSING_TIME_SAFETY_FACTOR * crossing_time:
        raise OracleInvalidError(cfg_base.T_final, crossing_time)

    oracle = ExactOracle(problem=problem)

    def run_case(h: float) -> ConvergenceRow:
        cfg = RunConfig.model_validate({**cfg_base.model_dump(), 'h': h})
        artifact = run_simulation(problem, cfg, raise_on_abort=True)
        l1_error = measure_error(oracle, artifact)
        estimate = artifact.budget.E_global
        return ConvergenceRow(
            h=h,
            l1_error=l1_error,
            estimate=estimate,
            effectivity=estimate / l1_error if l1_error > 0 else math.inf,
            step_count=artifact.step_count
        )

    with ThreadPoolExecutor(max_workers=cfg_base.max_workers) as executor:
        rows = tuple(executor.map(run_case, h_list))

    table = ConvergenceTable(
        problem_name=problem.name,
        p=cfg_base.p,
        k=cfg_base.k,
        T_final=cfg_base.T_final,
        rows=rows
    )
    if len(rows) > 1:
        logging.info(f"Convergence study of {problem.name} (p={cfg_base.p}): fitted order {table.fitted_order:.3f}")
    return table


def compare_runs(reference: RunArtifact, other: RunArtifact, t: float) -> RunComparison:
    """
    Compare the high-order indicators of two runs at a common snapshot
    time: the largest ``|∂_t^{k+1} u^h|`` and the largest jump ``|J^p|``.


    :raise InvalidInputError: If one of the runs has no snapshot at ``t``.
    """
    reference_snapshot = reference.snapshot_at(t)
    other_snapshot = other.snapshot_at(t)
    if reference_snapshot is None or other_snapshot is None:
        raise InvalidInputError(f"Both runs must have a snapshot at t={t}")

    return RunComparison(
        t=t,
        reference_temporal=reference_snapshot.temporal.d_max[-1],
        temporal=other_snapshot.temporal.d_max[-1],
        reference_jump=float(reference_snapshot.spatial.J_max[-1]),
        jump=float(other_snapshot.spatial.J_max[-1])
    )
