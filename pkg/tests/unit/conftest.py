"""Used to setup fixtures to be used through tests.

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
import json
from pathlib import Path
from typing import Callable

import pytest

from collatzk.models import Params, SweepConfig

GOLDEN_DIR = Path(__file__).parent.parent / "golden"


@pytest.fixture
def k0():
    """Parameters of the classical 3n+1 map."""
    return Params(k=0)


@pytest.fixture
def k2():
    """Parameters of 3n+9, the map most examples are worked under."""
    return Params(k=2)


@pytest.fixture
def make_params() -> Callable[[int], Params]:
    """Factory for Params of any k."""

    def params(k: int = 0) -> Params:
        return Params(k=k)

    return params


@pytest.fixture
def make_sweep_config() -> Callable[..., SweepConfig]:
    """Factory for small, serial sweep configurations."""

    def sweep_config(end: int = 100, **kwargs) -> SweepConfig:
        kwargs.setdefault("k", 0)
        kwargs.setdefault("start", 1)
        kwargs.setdefault("chunk_size", 10)
        kwargs.setdefault("parallelism", 1)
        return SweepConfig(end=end, **kwargs)

    return sweep_config


@pytest.fixture
def golden_table() -> str:
    """The checked-in rendering of the published table."""
    return (GOLDEN_DIR / "table1.txt").read_text(encoding="utf-8")


@pytest.fixture
def golden_spot_checks():
    """Recorded large-input stopping times."""
    return json.loads((GOLDEN_DIR / "spot_checks.json").read_text(encoding="utf-8"))
