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
from typing import Callable
from typing import Sequence

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from thelittlehackers.rkdg.constant.boundary import BoundaryKind
from thelittlehackers.rkdg.exception import BoundaryModelError
from thelittlehackers.rkdg.model.flux import constant_function


class BoundaryModel(BaseModel):
    """
    Represent the closure of the domain: either the inflow condition
    ``u(t, a) = u_L(t)`` with the tower of time derivatives of ``u_L``, or
    periodicity.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: BoundaryKind

    inflow_derivatives: tuple[Callable[[Any], Any], ...] = Field(
        (),
        description="Functions u_L, u_L', u_L'', ... of the time, in increasing order."
    )

    exhaustive: bool = Field(
        False,
        description="Whether the time derivatives of u_L beyond the supplied ones vanish."
    )

    @model_validator(mode='after')
    def validate_inflow(self) -> BoundaryModel:
        if self.kind == BoundaryKind.PERIODIC:
            if self.inflow_derivatives:
                raise ValueError("A periodic boundary model takes no inflow data")
        elif not self.inflow_derivatives:
            raise ValueError("An inflow boundary model requires u_L")
        elif not self.exhaustive and len(self.inflow_derivatives) < 3:
            raise ValueError("An inflow boundary model requires u_L and at least two of its time derivatives")
        return self

    @classmethod
    def constant_inflow(cls, value: float) -> BoundaryModel:
        return cls(kind=BoundaryKind.INFLOW, inflow_derivatives=(constant_function(value),), exhaustive=True)

    @classmethod
    def inflow(cls, derivatives: Sequence[Callable[[Any], Any]], exhaustive: bool = False) -> BoundaryModel:
        return cls(kind=BoundaryKind.INFLOW, inflow_derivatives=tuple(derivatives), exhaustive=exhaustive)

    @classmethod
    def periodic(cls) -> BoundaryModel:
        return cls(kind=BoundaryKind.PERIODIC)

    @property
    def is_periodic(self) -> bool:
        return self.kind == BoundaryKind.PERIODIC

    def inflow_value(self, t: float, order: int = 0) -> float:
        """
        Return the ``order``-th time derivative of ``u_L`` at the time ``t``.


        :raise BoundaryModelError: If the boundary is periodic, or if the
            derivative of this order hasn't been supplied.
        """
        if self.is_periodic:
            raise BoundaryModelError("inflow trace requires boundary model")

        if order < len(self.inflow_derivatives):
            return float(self.inflow_derivatives[order](t))
        if self.exhaustive:
            return 0.0

        raise BoundaryModelError(
            f"The boundary model doesn't supply the time derivative of u_L of order {order}"
        )
