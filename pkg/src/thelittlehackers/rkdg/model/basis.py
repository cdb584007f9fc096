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

from functools import cached_property
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre
from numpy.polynomial.legendre import Legendre
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


# Highest polynomial degree for which basis tables and estimator constants
# have been validated.
MAXIMUM_DEGREE = 10


class Basis(BaseModel):
    """
    Represent the normalized Legendre basis of ``Π_p`` on the reference
    cell ``[-1, 1]``, together with its Gauss-Legendre quadrature.

    The reference basis functions are ``φ_i = sqrt((2i + 1) / 2)·P_i``,
    orthonormal on ``[-1, 1]``.  Mapped onto a physical cell of width
    ``h`` they satisfy ``(φ_{j,i}, φ_{j,i})_{Ω_j} = h/2``, so the mass
    matrix is ``(h/2)·I``.

    The quadrature uses ``p + 2`` Gauss points unless stated otherwise,
    which integrates polynomials of degree ``2p + 3`` exactly.
    """
    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0, le=MAXIMUM_DEGREE, description="Polynomial degree.")

    quadrature_points: int | None = Field(
        None,
        ge=1,
        description="Number of Gauss points per cell; defaults to p + 2."
    )

    @property
    def size(self) -> int:
        return self.p + 1

    @property
    def node_count(self) -> int:
        return self.quadrature_points or self.p + 2

    @cached_property
    def modes(self) -> tuple[Legendre, ...]:
        return tuple(
            Legendre.basis(i) * np.sqrt((2 * i + 1) / 2.0)
            for i in range(self.size)
        )

    @cached_property
    def quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        return legendre.leggauss(self.node_count)

    @property
    def nodes(self) -> np.ndarray:
        return self.quadrature[0]

    @property
    def weights(self) -> np.ndarray:
        return self.quadrature[1]

    def values(self, xi: np.ndarray | float, order: int = 0) -> np.ndarray:
        """
        Evaluate the ``order``-th reference derivative of every basis
        function.


        :param xi: Reference coordinates.

        :param order: The derivative order; the derivatives of order
            greater than ``p`` are identically zero.


        :return: An array of shape ``(len(xi), p + 1)``.
        """
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if order > self.p:
            return np.zeros((xi.size, self.size))

        return np.stack([mode.deriv(order)(xi) if order else mode(xi) for mode in self.modes], axis=1)

    @cached_property
    def node_table(self) -> np.ndarray:
        return self.values(self.nodes)

    @cached_property
    def node_derivative_table(self) -> np.ndarray:
        return self.values(self.nodes, 1)

    @cached_property
    def edge_table(self) -> np.ndarray:
        """
        Return the reference derivatives of the basis functions at both
        edges of the reference cell.

        The entry ``[l, 0, i]`` is ``φ_i^{(l)}(-1)`` and ``[l, 1, i]`` is
        ``φ_i^{(l)}(+1)``, for ``l = 0..p``.
        """
        return np.stack([self.values([-1.0, 1.0], order) for order in range(self.size)])


@lru_cache(maxsize=None)
def get_basis(p: int, quadrature_points: int | None = None) -> Basis:
    """
    Return the shared basis instance of degree ``p``, so that its tables
    are computed once per process.
    """
    return Basis(p=p, quadrature_points=quadrature_points)
