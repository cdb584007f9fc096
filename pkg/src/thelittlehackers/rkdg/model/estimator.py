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
from typing import ClassVar

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from thelittlehackers.rkdg.model.version import Version


class EstimatorConstants(BaseModel):
    """
    Represent the constants of the a posteriori error estimator, computed
    on the reference cell ``[-1, 1]`` for a degree ``p`` and a Runge-Kutta
    order ``k``.

    * ``C1``, ``C2``, ``C3``: projection-error constants in the ``L1``,
      ``L2`` and ``L∞`` forms;
    * ``C_inv``: inverse-inequality constant, ``0`` for ``p = 0``;
    * ``C_tr``: trace-inequality constant;
    * ``C_rk``: Runge-Kutta remainder coefficient;
    * ``N_p1``: surrogate of the bound of the ``(p+1)``-th derivative of
      the local exact solution, set per step.
    """
    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0)
    k: int = Field(..., ge=1, le=3)

    C1: float = Field(..., gt=0)
    C2: float = Field(..., gt=0)
    C3: float = Field(..., gt=0)
    C_inv: float = Field(..., ge=0)
    C_tr: float = Field(..., gt=0)
    C_rk: float = Field(..., gt=0)
    N_p1: float = Field(0.0, ge=0)

    @model_validator(mode='after')
    def validate_embedding(self) -> EstimatorConstants:
        values = (self.C1, self.C2, self.C3, self.C_inv, self.C_tr, self.C_rk, self.N_p1)
        if not all(math.isfinite(value) for value in values):
            raise ValueError("The estimator constants must be finite")
        if self.C1 > self.C2 * math.sqrt(2.0) * (1.0 + 1e-12):
            raise ValueError(f"C1={self.C1} exceeds √2·C2={self.C2 * math.sqrt(2.0)}")
        return self

    def with_n_p1(self, n_p1: float) -> EstimatorConstants:
        return self.model_copy(update={'N_p1': n_p1})


class EstimatorPolicy(BaseModel):
    """
    Identify the assembly of the functions ``F`` and ``G`` of the
    estimator, so that published bounds can cite it.
    """
    model_config = ConfigDict(frozen=True)

    # Version of the current assembly of the estimator.
    CURRENT_VERSION: ClassVar[str] = '1.0.0'

    version: str = Field(CURRENT_VERSION, description="Version of the estimator policy.")
    kappa: float = Field(2.0, gt=0, description="Safety factor of the N^{p+1} surrogate.")
    indicator_ceiling: float = Field(1e4, gt=0, description="Untrusted-indicator threshold.")

    @field_validator('version')
    @classmethod
    def validate_version(cls, value: str) -> str:
        return str(Version.from_string(value))


class StepEstimate(BaseModel):
    """
    Represent the local error estimates of one time step.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Index of the step, from 1.")
    t: float = Field(..., description="Time at the end of the step.")
    tau: float = Field(..., gt=0)

    F: float | None = Field(None, description="Spatial estimate function; None when untrusted.")
    G: float | None = Field(None, description="Temporal estimate function; None when untrusted.")

    local_space: float = Field(0.0, description="τ·h^{p+μ}·F.")
    local_time: float = Field(0.0, description="τ^{k+1}·G.")
    E_global: float

    trusted: bool = True


class ErrorBudget(BaseModel):
    """
    Represent the accumulated ``L1`` error bound of a run: the initial
    projection error ``E_0`` plus the sum of the local estimates of the
    steps.
    """
    model_config = ConfigDict(frozen=True)

    E_0: float = Field(..., ge=0, description="L1 error of the initial projection.")
    E_global: float = Field(..., ge=0, description="Running global L1 bound.")
    steps: tuple[StepEstimate, ...] = ()
    trusted: bool = True

    @classmethod
    def start(cls, E_0: float) -> ErrorBudget:
        return cls(E_0=E_0, E_global=E_0)

    @property
    def step_count(self) -> int:
        return len(self.steps)
