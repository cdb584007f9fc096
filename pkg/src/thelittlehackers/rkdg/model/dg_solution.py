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

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from thelittlehackers.rkdg.model.basis import Basis
from thelittlehackers.rkdg.model.mesh import Mesh


class DGSolution(BaseModel):
    """
    Represent a piecewise polynomial of ``V_h``, stored as the cell-major
    ``m × (p + 1)`` matrix of its coefficients in the normalized Legendre
    basis, at the simulation time ``t``.

    A solution is an immutable value: its coefficient matrix is flagged
    read-only, and a time step builds a successor with ``evolve``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    mesh: Mesh
    basis: Basis
    coeffs: np.ndarray = Field(..., description="Cell-major coefficient matrix.")
    t: float = Field(0.0, description="Simulation time.")

    @field_validator('coeffs', mode='before')
    @classmethod
    def copy_coeffs(cls, value: np.ndarray) -> np.ndarray:
        return np.array(value, dtype=np.float64)

    @model_validator(mode='after')
    def validate_shape(self) -> DGSolution:
        expected_shape = (self.mesh.m, self.basis.size)
        if self.coeffs.shape != expected_shape:
            raise ValueError(
                f"The coefficient matrix has the shape {self.coeffs.shape}; "
                f"{expected_shape} is expected"
            )
        self.coeffs.setflags(write=False)
        return self

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def m(self) -> int:
        return self.mesh.m

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    def evolve(self, coeffs: np.ndarray, t: float) -> DGSolution:
        """
        Return the successor of this solution with new coefficients at the
        time ``t``, on the same mesh and basis.
        """
        return DGSolution(mesh=self.mesh, basis=self.basis, coeffs=coeffs, t=t)

    def cell_means(self) -> np.ndarray:
        # Only the constant mode φ_0 = 1/√2 has a non-zero mean.
        return self.coeffs[:, 0] / np.sqrt(2.0)
