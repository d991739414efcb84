"""Helpers for logging.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import logging
import sys
from importlib.metadata import version as installed_version
from importlib.util import find_spec
from typing import Any, List

import structlog  # type: ignore
from packaging import version

LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def enable_console_logging(verbosity: int = 0, json_output: bool = False) -> None:
    """Send formatted logs to stderr with the specified verbosity; stdout stays reserved for results.

    Args:
        verbosity (int): 0 for WARNING logs, 1 for INFO logs, 2 or more for DEBUG logs
        json_output (bool): render one JSON object per event instead of the colored console format
    """
    level = LEVELS[min(max(verbosity, 0), len(LEVELS) - 1)]
    logging.basicConfig(format="%(message)s", level=level, stream=sys.stderr)

    processors: List[Any] = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso" if json_output else "%Y-%m-%d %H:%M.%S"),
        structlog.processors.StackInfoRenderer(),
    ]

    if json_output or _structlog_exception_formatter_required():
        processors.append(structlog.processors.format_exc_info)

    # Renderers must be added after format_exc_info
    if json_output:
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def _structlog_exception_formatter_required() -> bool:
    """Determine if structlog exception formatter is needed.

    Structlog version 21.2.0 or higher will generate a warning
    if either rich or better_exceptions packages are available to import
    when the 'format_exc_info' processor is used.
    """
    if version.parse(installed_version("structlog")) < version.Version("21.2.0"):
        return True

    # Determine if module is available for import, without importing it.
    rich = find_spec("rich")
    better_exceptions = find_spec("better_exceptions")
    return not (rich or better_exceptions)
