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

from functools import lru_cache
from math import comb
from math import factorial
from typing import Sequence

import numpy as np
from scipy.signal import convolve2d


@lru_cache(maxsize=None)
def _bell_partitions(n: int, k: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """
    Return the monomials of the partial Bell polynomial ``B_{n,k}`` as
    pairs ``(coefficient, exponents)``, where ``exponents[i]`` is the power
    of ``x_{i+1}``.
    """
    if n == 0 and k == 0:
        return ((1, ()),)
    if n == 0 or k == 0:
        return ()

    # Exponent tuples all have the length n - k + 1 so that equal monomials
    # share a key.
    width = n - k + 1
    monomials: dict[tuple[int, ...], int] = {}

    # B_{n,k} = Σ_{i=1}^{n-k+1} C(n-1, i-1)·x_i·B_{n-i,k-1}
    for i in range(1, width + 1):
        for coefficient, exponents in _bell_partitions(n - i, k - 1):
            powers = list(exponents) + [0] * (width - len(exponents))
            powers[i - 1] += 1
            key = tuple(powers)
            monomials[key] = monomials.get(key, 0) + comb(n - 1, i - 1) * coefficient

    return tuple((coefficient, exponents) for exponents, coefficient in sorted(monomials.items()))


def bell_polynomial(n: int, k: int, x: Sequence[np.ndarray | float]) -> np.ndarray | float:
    """
    Evaluate the partial exponential Bell polynomial ``B_{n,k}(x_1, ...,
    x_{n-k+1})``.


    :param n: The total order.

    :param k: The number of blocks.

    :param x: The arguments ``x_1, x_2, ...``; ``x[0]`` is ``x_1``.  The
        entries may be arrays of a common shape.  Missing trailing entries
        are taken as ``0``.


    :return: The value of the polynomial, with the shape of the arguments.
    """
    total = 0.0
    for coefficient, exponents in _bell_partitions(n, k):
        term = float(coefficient)
        for index, power in enumerate(exponents):
            if power:
                term = term * (x[index] ** power if index < len(x) else 0.0)
        total = total + term
    return total


def faa_di_bruno(
        outer_derivatives: Sequence[np.ndarray | float],
        inner_derivatives: Sequence[np.ndarray | float],
        order: int
) -> np.ndarray | float:
    """
    Return the ``order``-th derivative of a composition ``f(g(t))``.


    :param outer_derivatives: The values ``f'(g), f''(g), ...``;
        ``outer_derivatives[0]`` is ``f'(g)``.

    :param inner_derivatives: The values ``g', g'', ...``;
        ``inner_derivatives[0]`` is ``g'``.

    :param order: The derivative order, at least ``1``.


    :return: ``Σ_k f^(k)(g)·B_{order,k}(g', g'', ...)``.
    """
    return sum(
        outer_derivatives[k - 1] * bell_polynomial(order, k, inner_derivatives)
        for k in range(1, order + 1)
    )


def truncate(series: np.ndarray, degree: int) -> np.ndarray:
    """
    Zero the coefficients of a bivariate series whose total degree
    ``i + j`` exceeds ``degree``.
    """
    i, j = np.indices(series.shape)
    return np.where(i + j <= degree, series, 0.0)


def multiply(a: np.ndarray, b: np.ndarray, degree: int) -> np.ndarray:
    """
    Return the product of two bivariate truncated series of the same
    shape, truncated at the total degree ``degree``.
    """
    return truncate(convolve2d(a, b)[:a.shape[0], :a.shape[1]], degree)


def compose(
        derivatives_at_center: Sequence[float],
        series: np.ndarray,
        degree: int
) -> np.ndarray:
    """
    Return the truncated Taylor series of ``g(S)`` where ``S`` is a
    bivariate series whose constant coefficient is the expansion center
    ``c``.


    :param derivatives_at_center: The values ``g(c), g'(c), g''(c), ...``.

    :param series: The coefficients ``S[i, j]`` of ``S``.

    :param degree: The total degree at which the result is truncated.


    :return: The coefficients of ``g(S)``.
    """
    deviation = series.copy()
    deviation[0, 0] = 0.0

    result = np.zeros_like(series)
    result[0, 0] = derivatives_at_center[0]
    power = np.zeros_like(series)
    power[0, 0] = 1.0
    for order in range(1, min(degree, len(derivatives_at_center) - 1) + 1):
        power = multiply(power, deviation, degree)
        if not power.any():
            break
        result += derivatives_at_center[order] / factorial(order) * power
    return result
