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

import csv
import math
from os import PathLike
from typing import Any
from typing import Iterable
from typing import Sequence


def format_value(value: Any) -> str:
    """
    Return the CSV representation of a value.

    Floats are written with their shortest round-trip representation, so
    that parsing them back gives the same bits.  ``None`` is written as an
    empty field and booleans as ``true``/``false``.
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def format_time(t: float) -> str:
    """
    Return the representation of a time used in file names, e.g. ``0.05``
    or ``2.0``.
    """
    return repr(round(float(t), 10))


def parse_float(value: str) -> float | None:
    return float(value) if value != '' else None


def write_csv(
        path: PathLike | str,
        header: Sequence[str],
        rows: Iterable[Sequence[Any]]
) -> None:
    with open(path, mode='wt', encoding='utf-8', newline='') as fd:
        writer = csv.writer(fd)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])


def read_csv(path: PathLike | str) -> tuple[list[str], list[list[str]]]:
    """
    Return the header and the rows of a CSV file, as strings.
    """
    with open(path, mode='rt', encoding='utf-8', newline='') as fd:
        reader = csv.reader(fd)
        header = next(reader)
        return header, [row for row in reader]


def read_columns(path: PathLike | str, prefix: str) -> list[list[float]]:
    """
    Return, for every row of a CSV file, the values of the columns whose
    name is ``prefix`` followed by an integer, in the order of that
    integer.
    """
    header, rows = read_csv(path)
    indices = sorted(
        (int(name[len(prefix):]), index)
        for index, name in enumerate(header)
        if name.startswith(prefix) and name[len(prefix):].isdigit()
    )
    return [[float(row[index]) for _, index in indices] for row in rows]


def log_h(value: float, h: float) -> float:
    """
    Return ``log_h |value|``; ``inf`` for a zero value, as ``h < 1``.
    """
    magnitude = abs(value)
    if magnitude == 0:
        return math.inf
    return math.log(magnitude) / math.log(h)
