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

from enum import StrEnum
from enum import auto


class BoundaryKind(StrEnum):
    """
    Enumeration of the boundary closures supported by the DG operator.
    """
    # Dirichlet data ``u_L(t)`` imposed at the upwind end ``x = a``; the
    # downwind end ``x = b`` is a pure outflow.
    INFLOW = auto()

    # Interface ``m`` is identified with interface ``0``.
    PERIODIC = auto()


class TraceSide(StrEnum):
    """
    Side from which a one-sided trace is read at a cell interface.
    """
    # Read the polynomial of the cell on the left of the interface
    # (``x_{j-1/2}^-``).
    LEFT = auto()

    # Read the polynomial of the cell on the right of the interface
    # (``x_{j-1/2}^+``).
    RIGHT = auto()
