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
from typing import Any
from typing import Callable
from typing import ClassVar

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from thelittlehackers.rkdg.exception import FluxDomainError
from thelittlehackers.rkdg.exception import InvalidInputError


ScalarFunction = Callable[[Any], Any]


def constant_function(value: float) -> ScalarFunction:
    """
    Return a vectorized function that is identically equal to ``value``.
    """
    def function(w):
        return np.full_like(np.asarray(w, dtype=float), value)
    return function


ZERO_FUNCTION = constant_function(0.0)


def _sample_abs_max(function: ScalarFunction, samples: np.ndarray) -> float:
    return float(np.max(np.abs(np.broadcast_to(function(samples), samples.shape))))


class FluxModel(BaseModel):
    """
    Represent the flux ``f`` of a scalar conservation law together with
    the tower of its derivatives ``f, f', f'', ...``.

    The flux is only used on the admissible state interval
    ``[u_min, u_max]``, where the west-wind assumption ``f'(w) > 0`` is
    verified by sampling on construction.  ``beta`` bounds ``f'`` and
    ``delta`` bounds ``|f''|`` on that interval; both are computed from
    the samples when not given, and checked against the samples when
    given.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    # Number of samples of the admissible interval used to verify the
    # west-wind assumption and the derivative bounds.
    SAMPLE_COUNT: ClassVar[int] = 10_000

    name: str = Field('flux', description="Human-readable name of the flux.")

    derivatives: tuple[ScalarFunction, ...] = Field(
        ...,
        min_length=3,
        description="Vectorized functions f, f', f'', ... in increasing order."
    )

    exhaustive: bool = Field(
        False,
        description="Whether the derivatives beyond the supplied ones vanish identically "
                    "(polynomial fluxes)."
    )

    u_min: float = Field(..., description="Lower end of the admissible state interval.")
    u_max: float = Field(..., description="Upper end of the admissible state interval.")

    beta: float | None = Field(None, description="Bound of f' on the admissible interval.")
    delta: float | None = Field(None, description="Bound of |f''| on the admissible interval.")

    @model_validator(mode='before')
    @classmethod
    def compute_bounds(cls, data: Any) -> Any:
        if not isinstance(data, dict) or 'derivatives' not in data:
            return data

        if data.get('u_min') is None or data.get('u_max') is None:
            return data

        samples = np.linspace(data['u_min'], data['u_max'], cls.SAMPLE_COUNT)
        derivatives = tuple(data['derivatives'])
        data = dict(data)
        if data.get('beta') is None:
            data['beta'] = float(np.max(np.broadcast_to(derivatives[1](samples), samples.shape)))
        if data.get('delta') is None and len(derivatives) > 2:
            data['delta'] = _sample_abs_max(derivatives[2], samples)
        return data

    @model_validator(mode='after')
    def validate_west_wind(self) -> FluxModel:
        if not self.u_max > self.u_min:
            raise ValueError(f"Empty admissible interval [{self.u_min}, {self.u_max}]")

        samples = self.samples
        wave_speeds = np.broadcast_to(self.f_prime(samples), samples.shape)
        if np.any(wave_speeds <= 0):
            raise ValueError(
                f"The flux \"{self.name}\" violates the west-wind assumption f' > 0 "
                f"on [{self.u_min}, {self.u_max}]"
            )

        if self.beta < np.max(wave_speeds):
            raise ValueError(f"beta={self.beta} doesn't bound f' on the admissible interval")

        if self.delta < _sample_abs_max(self.f_double_prime, samples):
            raise ValueError(f"delta={self.delta} doesn't bound |f''| on the admissible interval")

        return self

    @classmethod
    def burgers(cls, u_min: float, u_max: float) -> FluxModel:
        """
        Return Burgers' flux ``f(u) = u²/2``.
        """
        return cls(
            name='burgers',
            derivatives=(lambda w: 0.5 * np.square(w), lambda w: np.asarray(w, dtype=float), constant_function(1.0)),
            exhaustive=True,
            u_min=u_min,
            u_max=u_max
        )

    @classmethod
    def linear_advection(cls, speed: float, u_min: float, u_max: float) -> FluxModel:
        """
        Return the linear flux ``f(u) = speed·u``.
        """
        return cls(
            name='linear_advection',
            derivatives=(lambda w: speed * np.asarray(w, dtype=float), constant_function(speed), ZERO_FUNCTION),
            exhaustive=True,
            u_min=u_min,
            u_max=u_max
        )

    @property
    def f(self) -> ScalarFunction:
        return self.derivatives[0]

    @property
    def f_prime(self) -> ScalarFunction:
        return self.derivatives[1]

    @property
    def f_double_prime(self) -> ScalarFunction:
        return self.derivatives[2]

    @property
    def U(self) -> float:
        return max(abs(self.u_min), abs(self.u_max))

    @property
    def samples(self) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, self.SAMPLE_COUNT)

    def has_derivative(self, order: int) -> bool:
        return self.exhaustive or order < len(self.derivatives)

    def derivative(self, order: int) -> ScalarFunction:
        """
        Return the ``order``-th derivative of the flux.


        :raise InvalidInputError: If this derivative hasn't been supplied.
        """
        if order < len(self.derivatives):
            return self.derivatives[order]
        if self.exhaustive:
            return ZERO_FUNCTION
        raise InvalidInputError(f"The flux \"{self.name}\" doesn't supply its derivative of order {order}")

    @cached_property
    def _derivative_bounds(self) -> dict[int, float]:
        return {}

    def derivative_bound(self, order: int) -> float:
        """
        Return the sampled bound of ``|f^(order)|`` on the admissible
        interval.
        """
        if order == 1:
            return self.beta
        if order == 2:
            return self.delta

        bounds = self._derivative_bounds
        if order not in bounds:
            bounds[order] = _sample_abs_max(self.derivative(order), self.samples)
        return bounds[order]

    def check_states(self, states: np.ndarray | float) -> None:
        """
        Check that states lie in the admissible interval.


        :raise FluxDomainError: If a state is outside ``[u_min, u_max]`` or
            not finite.
        """
        states = np.asarray(states, dtype=float)
        if not np.all((states >= self.u_min) & (states <= self.u_max)):
            outside = states[~((states >= self.u_min) & (states <= self.u_max))]
            raise FluxDomainError(
                f"{outside.size} state(s) outside the admissible interval "
                f"[{self.u_min}, {self.u_max}] of the flux \"{self.name}\", e.g. {outside.flat[0]!r}"
            )
