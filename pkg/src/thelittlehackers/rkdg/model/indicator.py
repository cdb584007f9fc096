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
from pydantic import model_validator


class SpatialIndicator(BaseModel):
    """
    Represent the spatial smoothness indicator of a solution at the time
    ``t``.

    Row ``j`` of every array refers to the interface ``x_{j-1/2}`` and
    column ``l`` to the derivative order ``l = 0..p``:

    * ``M[j, l]``: the right trace ``∂_x^l u(x_{j-1/2}^+)``;
    * ``L[j, l]``: the left trace ``∂_x^l u(x_{j-1/2}^-)``, given by the
      boundary model at ``j = 0``;
    * ``J = M - L``: the jumps;
    * ``D[j, l] = J[j, l] / h^{p+1+μ-l(1+α)}``: the scaled jumps.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t: float
    h: float = Field(..., gt=0, description="Cell width.")
    domain_length: float = Field(..., gt=0, description="Length |Ω| of the domain.")

    M: np.ndarray
    L: np.ndarray
    J: np.ndarray
    D: np.ndarray

    exponents: np.ndarray = Field(
        ...,
        description="Scaling exponents p+1+μ-l(1+α) of the jumps, per order l."
    )

    @model_validator(mode='after')
    def validate_shapes(self) -> SpatialIndicator:
        shape = self.M.shape
        if any(array.shape != shape for array in (self.L, self.J, self.D)):
            raise ValueError("The indicator arrays must share the same shape")
        if self.exponents.shape != (shape[1],):
            raise ValueError("One scaling exponent per derivative order is expected")
        for array in (self.M, self.L, self.J, self.D, self.exponents):
            array.setflags(write=False)
        return self

    @property
    def p(self) -> int:
        return self.M.shape[1] - 1

    @property
    def m(self) -> int:
        return self.M.shape[0]

    @property
    def D_tilde(self) -> float:
        return float(np.max(np.abs(self.D)))

    @property
    def M_max(self) -> np.ndarray:
        return np.max(np.abs(self.M), axis=0)

    @property
    def J_max(self) -> np.ndarray:
        return np.max(np.abs(self.J), axis=0)

    @property
    def D_max(self) -> np.ndarray:
        return np.max(np.abs(self.D), axis=0)

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(array)) for array in (self.M, self.L, self.J, self.D))

    def magnitude(self) -> float:
        """
        Return the largest magnitude of the components ``M`` and ``D``.
        """
        return max(float(np.max(np.abs(self.M))), self.D_tilde)


class TemporalIndicator(BaseModel):
    """
    Represent the temporal smoothness indicator of a solution at the time
    ``t``: the coefficient fields of ``∂_t^l u^h(t)`` for ``l = 1..k+1``,
    and their sup norms.

    ``d_max[l]`` is the sup norm of ``∂_t^l u^h(t)`` over the quadrature
    nodes and both edges of every cell; ``d_max[0]`` is the sup norm of
    the solution itself.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t: float
    k: int = Field(..., ge=1, le=3)

    derivatives: tuple[np.ndarray, ...] = Field(
        ...,
        description="Coefficient fields of ∂_t^l u^h for l = 1..k+1."
    )

    d_max: tuple[float, ...] = Field(..., description="Sup norms of ∂_t^l u^h for l = 0..k+1.")

    @model_validator(mode='after')
    def validate_orders(self) -> TemporalIndicator:
        if len(self.derivatives) != self.k + 1 or len(self.d_max) != self.k + 2:
            raise ValueError(f"Temporal derivatives of the orders 1..{self.k + 1} are expected")
        for field in self.derivatives:
            field.setflags(write=False)
        return self

    def field(self, order: int) -> np.ndarray:
        """
        Return the coefficient field of ``∂_t^order u^h``, ``order ≥ 1``.
        """
        return self.derivatives[order - 1]

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.d_max)))

    def magnitude(self) -> float:
        return max(self.d_max[1:])
