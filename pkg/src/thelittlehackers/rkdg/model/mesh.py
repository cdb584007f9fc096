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

from thelittlehackers.rkdg.exception import InvalidInputError


class Mesh(BaseModel):
    """
    Represent a uniform partition of the interval ``[a, b]`` into ``m``
    cells of width ``h = (b - a) / m``.

    Cell ``j`` spans ``[a + j·h, a + (j + 1)·h]`` for ``j = 0..m-1``, and
    interface ``j`` (denoted ``x_{j-1/2}``) is located at ``a + j·h`` for
    ``j = 0..m``.
    """
    model_config = ConfigDict(frozen=True)

    a: float = Field(..., description="Left endpoint of the domain.")
    b: float = Field(..., description="Right endpoint of the domain.")
    m: int = Field(..., gt=0, description="Number of cells.")

    @model_validator(mode='after')
    def validate_endpoints(self) -> Mesh:
        if not np.isfinite(self.a) or not np.isfinite(self.b):
            raise ValueError("The domain endpoints must be finite")
        if not self.b > self.a:
            raise ValueError(f"The right endpoint {self.b} must exceed the left endpoint {self.a}")
        return self

    @classmethod
    def from_cell_size(cls, a: float, b: float, h: float) -> Mesh:
        """
        Build the uniform mesh of ``[a, b]`` whose cells have the width
        ``h``.


        :param a: The left endpoint of the domain.

        :param b: The right endpoint of the domain.

        :param h: The cell width.  It MUST divide ``b - a``.


        :return: A ``Mesh`` instance.


        :raise InvalidInputError: If ``h`` is not positive or doesn't divide
            the length of the domain.
        """
        if not h > 0:
            raise InvalidInputError(f"The cell width must be positive (got {h})")

        m = int(round((b - a) / h))
        if m < 1 or abs(m * h - (b - a)) > 1e-9 * (b - a):
            raise InvalidInputError(f"The cell width {h} doesn't divide the domain [{a}, {b}]")

        return cls(a=a, b=b, m=m)

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.m

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def interfaces(self) -> np.ndarray:
        """
        Return the ``m + 1`` interface coordinates ``x_{-1/2}, ..., x_{m-1/2}``.
        """
        return self.a + np.arange(self.m + 1) * self.h

    @property
    def centers(self) -> np.ndarray:
        return self.a + (np.arange(self.m) + 0.5) * self.h

    def contains(self, x: float | np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.a) & (x <= self.b)))

    def locate(self, x: np.ndarray) -> np.ndarray:
        """
        Return the index of the cell containing each point.

        A point located on an interior interface belongs to the cell on its
        right; the right endpoint ``b`` belongs to the last cell.
        """
        cells = np.floor((np.asarray(x, dtype=float) - self.a) / self.h).astype(int)
        return np.clip(cells, 0, self.m - 1)

    def to_reference(self, x: np.ndarray, cells: np.ndarray) -> np.ndarray:
        """
        Map physical points to the reference cell ``[-1, 1]`` of their cell.
        """
        return 2.0 * (np.asarray(x, dtype=float) - (self.a + cells * self.h)) / self.h - 1.0

    def to_physical(self, xi: np.ndarray) -> np.ndarray:
        """
        Map reference coordinates to every cell.


        :param xi: Reference coordinates in ``[-1, 1]``.


        :return: An array of shape ``(m, len(xi))`` of physical coordinates.
        """
        left_endpoints = self.interfaces[:-1]
        return left_endpoints[:, None] + 0.5 * self.h * (np.asarray(xi, dtype=float)[None, :] + 1.0)
