"""Utility functions for the collatzk library.

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
import re
import sys
from collections import OrderedDict
from contextlib import contextmanager
from typing import Callable, Generic, Iterator, Tuple, TypeVar

K = TypeVar("K")
V = TypeVar("V")

_FACTOR_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")
_OFFSET_RE = re.compile(r"^(.+?)([+-]\d+)?$")


class OrderedDefaultDict(OrderedDict, Generic[K, V]):
    """A combination of collections.OrderedDict and collections.DefaultDict behavior."""

    def __init__(self, dict_type: Callable[[], V]) -> None:
        """Create a new OrderedDefaultDict."""
        self.factory = dict_type
        super().__init__(self)

    def __missing__(self, key: K) -> V:
        """When trying to access a nonexistent key, initialize the key value based on the internal factory."""
        self[key] = value = self.factory()
        return value


@contextmanager
def unlimited_int_digits() -> Iterator[None]:
    """Lift CPython's int/str conversion digit limit (3.11+) for the duration of the block."""
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    previous = getter()
    sys.set_int_max_str_digits(0)  # type: ignore[attr-defined]
    try:
        yield
    finally:
        sys.set_int_max_str_digits(previous)  # type: ignore[attr-defined]


def to_decimal(value: int) -> str:
    """Render a natural in plain decimal, whatever its size."""
    with unlimited_int_digits():
        return str(int(value))


def parse_natural(text: str) -> int:
    """Parse a non-negative integer from the command line.

    Accepts plain decimal of any length, powers `a^b`, products of those joined by `*`,
    and one trailing `+c` or `-c` offset, e.g. `2^1000-1` or `2^1000*9`.

    Raises:
        ValueError: if the text is not of that form or evaluates below zero.
    """
    cleaned = text.strip().replace("_", "")
    match = _OFFSET_RE.match(cleaned)
    if not match:
        raise ValueError(f"not a natural number: {text!r}")
    body, offset = match.groups()

    value = 1
    with unlimited_int_digits():
        for factor in body.split("*"):
            factor_match = _FACTOR_RE.match(factor)
            if not factor_match:
                raise ValueError(f"not a natural number: {text!r}")
            base, exponent = factor_match.groups()
            value *= int(base) ** int(exponent) if exponent is not None else int(base)
        if offset:
            value += int(offset)

    if value < 0:
        raise ValueError(f"{text!r} is negative")
    return value


def chunk_bounds(start: int, end: int, size: int) -> Iterator[Tuple[int, int]]:
    """Yield inclusive (lo, hi) pairs covering [start, end] in ascending order, each at most `size` long."""
    if size < 1:
        raise ValueError(f"chunk size must be positive (not {size})")
    low = start
    while low <= end:
        high = min(low + size - 1, end)
        yield low, high
        low = high + 1
