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

import os
import re
from importlib import metadata
from os import PathLike
from pathlib import Path
from typing import ClassVar

import toml
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


# Distribution name of the package.
PACKAGE_NAME = 'thelittlehackers-rkdg'


class Version(BaseModel):
    """
    Represent a ``major.minor.patch`` version number, as written in the
    ``pyproject.toml`` file of the project.
    """
    model_config = ConfigDict(frozen=True)

    major: int = Field(..., ge=0)
    minor: int = Field(0, ge=0)
    patch: int = Field(0, ge=0)

    prerelease: str | None = None

    # Regular expression that matches the string representation of a
    # version, with an optional pre-release suffix.
    REGEX_PATTERN_SEMANTIC_VERSION: ClassVar[re.Pattern] = re.compile(
        r'^(?P<major>0|[1-9]\d*)\.(?P<minor>0|[1-9]\d*)\.(?P<patch>0|[1-9]\d*)'
        r'(?:-(?P<prerelease>[0-9A-Za-z-]+(?:\.[0-9A-Za-z-]+)*))?$'
    )

    @classmethod
    def from_pyproject(cls, project_root_path: PathLike | str, strict: bool = True) -> Version | None:
        """
        Retrieve the version of the project from its ``pyproject.toml``
        file, under the key ``[tool.poetry.version]``.


        :param project_root_path: The root path of the project.

        :param strict: If ``True``, raise an exception when the version is
            unavailable.


        :return: The version, or ``None`` if it is unavailable and
            ``strict`` is ``False``.


        :raise FileNotFoundError: If the file is missing and ``strict`` is
            ``True``.

        :raise KeyError: If the key is missing and ``strict`` is ``True``.
        """
        try:
            with open(os.path.join(project_root_path, 'pyproject.toml'), mode='rt', encoding='utf-8') as fd:
                data = toml.load(fd)
            return cls.from_string(data['tool']['poetry']['version'])
        except (FileNotFoundError, KeyError):
            if strict:
                raise
        return None

    @classmethod
    def from_string(cls, value: str) -> Version:
        match = cls.REGEX_PATTERN_SEMANTIC_VERSION.match(value)
        if not match:
            raise ValueError(f"Invalid version string: {value}")

        return cls(
            major=int(match.group('major')),
            minor=int(match.group('minor')),
            patch=int(match.group('patch')),
            prerelease=match.group('prerelease')
        )

    def __str__(self) -> str:
        version_str = f"{self.major}.{self.minor}.{self.patch}"
        if self.prerelease:
            version_str += f"-{self.prerelease}"
        return version_str


def get_package_version() -> str:
    """
    Return the version of the package, read from the ``pyproject.toml``
    file of a source checkout, or from the installed distribution.
    """
    project_root_path = Path(__file__).resolve().parents[4]
    version = Version.from_pyproject(project_root_path, strict=False)
    if version is not None:
        return str(version)

    try:
        return metadata.version(PACKAGE_NAME)
    except metadata.PackageNotFoundError:
        return '0.0.0'
