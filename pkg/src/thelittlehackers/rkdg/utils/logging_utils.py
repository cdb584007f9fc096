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

import logging
import sys

from thelittlehackers.rkdg.constant.logging import LoggingLevelLiteral


DEFAULT_LOGGING_FORMATTER = logging.Formatter("%(asctime)s [%(levelname)s] %(message)s")
DEFAULT_LOGGING_LEVEL = LoggingLevelLiteral.INFO


def get_console_handler(
        logging_formatter: logging.Formatter | None = DEFAULT_LOGGING_FORMATTER
) -> logging.StreamHandler:
    """
    Return a logging handler that writes to the standard output with the
    given formatter.
    """
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(logging_formatter)
    return console_handler


def set_up_logger(
        logging_formatter: logging.Formatter | None = DEFAULT_LOGGING_FORMATTER,
        logging_level: LoggingLevelLiteral | None = DEFAULT_LOGGING_LEVEL,
        logger_name: str | None = None
) -> logging.Logger:
    """
    Configure a logger to write to the standard output.

    The console handlers that a previous call attached to the logger are
    replaced, so the command-line interface can be invoked several times
    in a process without duplicating the log records.


    :param logging_formatter: The formatter of the log records.

    :param logging_level: The logging threshold.  Defaults to
        ``DEFAULT_LOGGING_LEVEL``.

    :param logger_name: The name of the logger to configure; the root
        logger when ``None``.


    :return: The configured logger.
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel((logging_level or DEFAULT_LOGGING_LEVEL).level)

    for handler in list(logger.handlers):
        if getattr(handler, '_rkdg_console', False):
            logger.removeHandler(handler)

    console_handler = get_console_handler(logging_formatter=logging_formatter)
    console_handler._rkdg_console = True
    logger.addHandler(console_handler)
    logger.propagate = False
    return logger
