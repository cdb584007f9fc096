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

from os import PathLike
from typing import Any

import toml

from thelittlehackers.rkdg.exception import ConfigError


# Keys of a configuration file, mapped to the names of the run settings
# they define.
CONFIG_KEYS = {
    'p': 'p',
    'k': 'k',
    'h': 'h',
    'tau': 'tau_fixed',
    'tau_schedule': 'tau_schedule',
    'gamma': 'gamma',
    'mu': 'mu',
    'tfinal': 'T_final',
    'problem': 'problem',
    'out': 'out',
    'cfl_mode': 'cfl_mode',
    'output_times': 'output_times',
    'kappa': 'kappa',
    'ceiling': 'indicator_ceiling',
    'max_workers': 'max_workers',
}


def decode_value(raw_value: str) -> Any:
    """
    Decode the value of a configuration entry as a TOML value, so that
    numbers, booleans and arrays are typed.  A value that is not valid
    TOML is returned as a bare string.
    """
    try:
        return toml.loads(f"value = {raw_value}")['value']
    except (toml.TomlDecodeError, IndexError, KeyError):
        return raw_value


def parse_config_text(text: str) -> dict[str, Any]:
    """
    Parse the content of a configuration file.

    The file has one ``key = value`` entry per line.  Blank lines are
    ignored and ``#`` starts a comment.


    :param text: The content of the file.


    :return: A dictionary of the run settings, keyed by their names (for
        instance ``tau`` is returned as ``tau_fixed``).


    :raise ConfigError: If a line is malformed or a key is unknown.
    """
    settings: dict[str, Any] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        entry = line.split('#', 1)[0].strip()
        if not entry:
            continue

        key, separator, raw_value = entry.partition('=')
        key, raw_value = key.strip(), raw_value.strip()
        if not separator or not key or not raw_value:
            raise ConfigError(f"Line {line_number}: \"{line.strip()}\" is not a \"key = value\" entry")
        if key not in CONFIG_KEYS:
            raise ConfigError(
                f"Line {line_number}: unknown key \"{key}\"; expected one of {', '.join(CONFIG_KEYS)}"
            )

        settings[CONFIG_KEYS[key]] = decode_value(raw_value)

    return settings


def load_config_file(path: PathLike | str) -> dict[str, Any]:
    """
    Read and parse a configuration file.


    :raise ConfigError: If the file can't be read or is malformed.
    """
    try:
        with open(path, mode='rt', encoding='utf-8') as fd:
            text = fd.read()
    except OSError as error:
        raise ConfigError(f"Can't read the configuration file {path}: {error}") from error
    return parse_config_text(text)
