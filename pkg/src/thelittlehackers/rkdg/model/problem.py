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
from functools import cached_property
from typing import Any
from typing import Callable
from typing import ClassVar

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from thelittlehackers.rkdg.model.boundary import BoundaryModel
from thelittlehackers.rkdg.model.dg_solution import DGSolution
from thelittlehackers.rkdg.model.estimator import ErrorBudget
from thelittlehackers.rkdg.model.estimator import EstimatorPolicy
from thelittlehackers.rkdg.model.flux import FluxModel
from thelittlehackers.rkdg.model.indicator import SpatialIndicator
from thelittlehackers.rkdg.model.indicator import TemporalIndicator
from thelittlehackers.rkdg.model.run_config import RunConfig


class ProblemSpec(BaseModel):
    """
    Represent an initial-boundary value problem ``u_t + f(u)_x = 0`` on
    ``Ω = [a, b]`` with the initial datum ``u_I``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    # Number of samples of the domain on which the steepest compression of
    # the initial characteristics is searched.
    CROSSING_SAMPLE_COUNT: ClassVar[int] = 10_000

    name: str
    description: str = ''

    flux: FluxModel
    domain: tuple[float, float]

    initial: Callable[[Any], Any] = Field(..., description="Vectorized initial datum u_I.")
    initial_derivative: Callable[[Any], Any] = Field(..., description="Vectorized derivative u_I'.")

    boundary: BoundaryModel
    T_final: float = Field(..., ge=0)
    shock_time_estimate: float | None = None

    defaults: dict[str, Any] = Field(
        default_factory=dict,
        description="Run configuration values of the reference experiment."
    )

    @model_validator(mode='after')
    def validate_domain(self) -> ProblemSpec:
        a, b = self.domain
        if not b > a:
            raise ValueError(f"Invalid domain [{a}, {b}]")
        return self

    @property
    def a(self) -> float:
        return self.domain[0]

    @property
    def b(self) -> float:
        return self.domain[1]

    @property
    def length(self) -> float:
        return self.b - self.a

    @cached_property
    def crossing_time(self) -> float:
        """
        Return the time ``t* = -1 / min(d/dx f'(u_I))`` at which the
        characteristics issued from the initial line first cross, or
        infinity when they never do.
        """
        x = np.linspace(self.a, self.b, self.CROSSING_SAMPLE_COUNT)
        compression = np.asarray(self.flux.f_double_prime(self.initial(x)), dtype=float) \
            * np.asarray(self.initial_derivative(x), dtype=float)
        steepest = float(np.min(compression))
        return -1.0 / steepest if steepest < 0 else math.inf


class ExactOracle(BaseModel):
    """
    Represent the exact solution of a problem by the method of
    characteristics, valid strictly before the crossing time.
    """
    model_config = ConfigDict(frozen=True)

    problem: ProblemSpec
    newton_tol: float = Field(1e-13, gt=0)
    max_iter: int = Field(100, ge=1)


class StepRecord(BaseModel):
    """
    Represent the indicator maxima of a solution at the start of a step.
    """
    model_config = ConfigDict(frozen=True)

    n: int
    t: float
    D_tilde: float
    M_max: tuple[float, ...]
    J_max: tuple[float, ...]
    d_max: tuple[float, ...]

    @classmethod
    def from_indicators(cls, n: int, S: SpatialIndicator, T: TemporalIndicator) -> StepRecord:
        return cls(
            n=n,
            t=S.t,
            D_tilde=S.D_tilde,
            M_max=tuple(float(value) for value in S.M_max),
            J_max=tuple(float(value) for value in S.J_max),
            d_max=T.d_max
        )


class Snapshot(BaseModel):
    """
    Represent the solution and its indicators at an output time.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t: float
    solution: DGSolution
    spatial: SpatialIndicator
    temporal: TemporalIndicator

    last_good: bool = Field(
        False,
        description="Whether the snapshot is the last finite state of an aborted run."
    )


class RunArtifact(BaseModel):
    """
    Represent the outcome of a run: its snapshots, the series of indicator
    maxima, and the error budget.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    problem_name: str
    config: RunConfig
    policy: EstimatorPolicy

    snapshots: tuple[Snapshot, ...] = ()
    records: tuple[StepRecord, ...] = ()
    budget: ErrorBudget

    abort_reason: str | None = None
    elapsed_seconds: float = 0.0

    @property
    def aborted(self) -> bool:
        return self.abort_reason is not None

    @property
    def step_count(self) -> int:
        return self.budget.step_count

    @property
    def final_snapshot(self) -> Snapshot | None:
        return self.snapshots[-1] if self.snapshots else None

    def snapshot_at(self, t: float, tolerance: float = 1e-9) -> Snapshot | None:
        return next(
            (snapshot for snapshot in self.snapshots if abs(snapshot.t - t) <= tolerance * max(1.0, abs(t))),
            None
        )


class ConvergenceRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    h: float
    l1_error: float
    estimate: float
    effectivity: float
    step_count: int


class ConvergenceTable(BaseModel):
    """
    Represent the outcome of a mesh-refinement study.
    """
    model_config = ConfigDict(frozen=True)

    problem_name: str
    p: int
    k: int
    T_final: float
    rows: tuple[ConvergenceRow, ...]

    @property
    def fitted_order(self) -> float:
        """
        Return the slope of the least-squares line of ``log(error)`` against
        ``log(h)``.
        """
        h = np.log([row.h for row in self.rows])
        errors = np.log([row.l1_error for row in self.rows])
        return float(np.polyfit(h, errors, 1)[0])


class RunComparison(BaseModel):
    """
    Represent the growth of the high-order indicators of a run relative to
    a reference run, at a common time.
    """
    model_config = ConfigDict(frozen=True)

    t: float
    reference_temporal: float = Field(..., description="max |∂_t^{k+1} u^h| of the reference run.")
    temporal: float = Field(..., description="max |∂_t^{k+1} u^h| of the compared run.")
    reference_jump: float = Field(..., description="max |J^p| of the reference run.")
    jump: float = Field(..., description="max |J^p| of the compared run.")

    @staticmethod
    def _ratio(numerator: float, denominator: float) -> float:
        if denominator == 0:
            return 1.0 if numerator == 0 else math.inf
        return numerator / denominator

    @property
    def temporal_ratio(self) -> float:
        return self._ratio(self.temporal, self.reference_temporal)

    @property
    def jump_ratio(self) -> float:
        return self._ratio(self.jump, self.reference_jump)
