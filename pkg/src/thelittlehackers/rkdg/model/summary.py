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

from typing import Any

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from thelittlehackers.rkdg.model.estimator import EstimatorPolicy


class SnapshotSummary(BaseModel):
    """
    Represent the indicator maxima of a snapshot.
    """
    model_config = ConfigDict(frozen=True)

    t: float
    last_good: bool = False
    D_tilde: float
    M_max: list[float]
    J_max: list[float]
    D_max: list[float]
    d_max: list[float] = Field(..., description="Sup norms of ∂_t^l u^h for l = 0..k+1.")


class RunSummary(BaseModel):
    """
    Represent the structured metadata of a run, written to
    ``summary.json``.
    """
    model_config = ConfigDict(frozen=True)

    package_version: str
    policy: EstimatorPolicy

    problem: str
    config: dict[str, Any]
    config_hash: str = Field(..., description="SHA-256 of the canonical JSON of the configuration.")

    step_count: int
    aborted: bool
    abort_reason: str | None = None

    E_0: float
    E_global: float
    trusted: bool
    untrusted_step_count: int

    max_D_tilde: float = Field(..., description="Largest D̃ over the steps.")
    max_d: list[float] = Field(..., description="Largest sup norm of ∂_t^l u^h over the steps.")

    snapshots: list[SnapshotSummary]
    elapsed_seconds: float

    def snapshot_at(self, t: float, tolerance: float = 1e-9) -> SnapshotSummary | None:
        return next(
            (snapshot for snapshot in self.snapshots if abs(snapshot.t - t) <= tolerance * max(1.0, abs(t))),
            None
        )
