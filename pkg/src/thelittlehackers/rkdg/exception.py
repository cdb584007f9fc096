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

class RkdgError(Exception):
    """
    Base class of the errors raised by the RKDG solver and its tooling.
    """


class InvalidInputError(RkdgError, ValueError):
    """
    Indicate that an argument is outside the domain of an operation, such
    as a point outside the mesh, a non-finite datum, or an unsupported
    polynomial degree.
    """


class BoundaryModelError(RkdgError, ValueError):
    """
    Indicate that the boundary model cannot provide what an operation
    needs: an inflow trace where no inflow model is registered, a time
    derivative of ``u_L`` of an order that has not been supplied, or a
    singular inflow where ``f'(u_L(t))`` vanishes.
    """


class FluxDomainError(RkdgError, ValueError):
    """
    Indicate that a state falls outside the admissible interval of the
    flux model, or that the flux violates the west-wind assumption there.
    """


class BlowUpError(RkdgError, ArithmeticError):
    """
    Indicate that a Runge-Kutta stage produced non-finite coefficients, or
    states outside the admissible interval of the flux.
    """
    def __init__(self, stage: int, t: float, detail: str | None = None):
        message = f"blow-up at stage {stage} (t={t!r})"
        super().__init__(f"{message}: {detail}" if detail else message)
        self.stage = stage
        self.t = t


class OracleInvalidError(RkdgError, ValueError):
    """
    Indicate that the exact solution by characteristics is requested at
    or beyond the time at which characteristics cross.
    """
    def __init__(self, t: float, crossing_time: float):
        super().__init__(f"pre-shock oracle invalid beyond t*={crossing_time!r} (requested t={t!r})")
        self.t = t
        self.crossing_time = crossing_time


class ConfigError(RkdgError, ValueError):
    """
    Indicate that a run configuration is malformed or inconsistent.
    """
