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

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from thelittlehackers.rkdg.constant.time_step import CflMode
from thelittlehackers.rkdg.model.basis import MAXIMUM_DEGREE


class RunConfig(BaseModel):
    """
    Represent the parameters of a run of the RKDG solver.

    The exponent ``α`` of the strengthened CFL condition ``τ ≤ γ·h^{1+α}``
    is always derived from ``μ = p·α``, and is never stored.
    """
    model_config = ConfigDict(frozen=True, extra='forbid')

    p: int = Field(..., ge=0, le=MAXIMUM_DEGREE, description="Polynomial degree.")
    k: int = Field(..., ge=1, le=3, description="Order of the TVD Runge-Kutta scheme.")
    h: float = Field(0.05, gt=0, description="Cell width.")

    mu: float = Field(
        1.0,
        ge=0,
        le=1,
        description="Exponent μ of the scaled jumps; 1 for smooth initial data."
    )

    gamma: float = Field(..., gt=0, description="Constant γ of the strengthened CFL condition.")

    tau_fixed: float | None = Field(None, gt=0, description="Time step of the fixed mode.")

    tau_schedule: tuple[tuple[int, float], ...] = Field(
        (),
        description="Segments (step count, time step) used before falling back to the "
                    "fixed or automatic time step."
    )

    T_final: float = Field(..., ge=0, description="Final time of the run.")

    cfl_mode: CflMode = Field(CflMode.AUTO, description="Time step control.")

    output_times: tuple[float, ...] = Field(
        (),
        description="Times at which snapshots are emitted, in addition to T_final."
    )

    kappa: float = Field(2.0, gt=0, description="Safety factor of the N^{p+1} surrogate.")

    indicator_ceiling: float = Field(
        1e4,
        gt=0,
        description="Indicator magnitude above which a step estimate is flagged untrusted."
    )

    max_workers: int = Field(1, ge=1, description="Number of workers of convergence studies.")

    @field_validator('tau_schedule')
    @classmethod
    def validate_tau_schedule(cls, value: tuple[tuple[int, float], ...]) -> tuple[tuple[int, float], ...]:
        for steps, tau in value:
            if steps < 1 or not tau > 0:
                raise ValueError(f"Invalid time step schedule segment ({steps}, {tau})")
        return value

    @model_validator(mode='after')
    def validate_time_control(self) -> RunConfig:
        if self.cfl_mode == CflMode.FIXED and self.tau_fixed is None:
            raise ValueError("The fixed CFL mode requires tau_fixed")

        for t in self.output_times:
            if not 0 <= t <= self.T_final:
                raise ValueError(f"The output time {t} is outside [0, {self.T_final}]")

        return self

    @property
    def alpha(self) -> float:
        return self.mu / self.p if self.p else 0.0

    @property
    def snapshot_times(self) -> tuple[float, ...]:
        """
        Return the sorted times at which snapshots are emitted, ``T_final``
        included.
        """
        return tuple(sorted(set(self.output_times) | {self.T_final}))


class TimeStepSelection(BaseModel):
    """
    Represent a time step together with the CFL bounds it violates.
    """
    model_config = ConfigDict(frozen=True)

    tau: float = Field(..., gt=0)

    standard_cfl_violated: bool = Field(
        False,
        description="Whether β·τ > h."
    )

    strengthened_cfl_violated: bool = Field(
        False,
        description="Whether τ > γ·h^{1+α}."
    )

    @property
    def violates_cfl(self) -> bool:
        return self.standard_cfl_violated or self.strengthened_cfl_violated
