"""Unit tests for console logging setup.

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

import pytest
import structlog

from collatzk.logging import LEVELS, _structlog_exception_formatter_required, enable_console_logging


@pytest.fixture
def restore_structlog():
    """Undo the global structlog configuration made by the test."""
    yield
    structlog.reset_defaults()


@pytest.mark.parametrize(
    "verbosity,level", [(0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG), (9, logging.DEBUG)]
)
def test_levels(verbosity, level):
    assert LEVELS[min(verbosity, len(LEVELS) - 1)] == level


def test_json_output(restore_structlog):
    enable_console_logging(verbosity=1, json_output=True)
    processors = structlog.get_config()["processors"]
    assert isinstance(processors[-1], structlog.processors.JSONRenderer)
    assert structlog.processors.format_exc_info in processors


def test_console_output(restore_structlog):
    enable_console_logging()
    assert isinstance(structlog.get_config()["processors"][-1], structlog.dev.ConsoleRenderer)


def test_exception_formatter_check():
    assert isinstance(_structlog_exception_formatter_required(), bool)
