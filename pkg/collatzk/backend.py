"""Integer backend selection for the hot loops.

Plain `int` is used while values fit in a machine word. When the optional `gmpy2` package is
installed, values that outgrow a word are promoted to `gmpy2.mpz`, which is considerably
faster for multi-thousand-bit arithmetic. Everything leaving this package is a plain `int`.
"""
from typing import Any, Tuple

try:
    import gmpy2  # type: ignore

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - depends on the environment
    gmpy2 = None
    HAVE_GMPY2 = False

WORD_BITS = 63
"""Values strictly below 2**WORD_BITS are kept as native ints."""

WORD_LIMIT = 1 << WORD_BITS


def promote(value: Any) -> Any:
    """Return `value` in the fastest available representation for its magnitude."""
    if HAVE_GMPY2 and value >= WORD_LIMIT:
        return gmpy2.mpz(value)
    return value


def remove_factor(value: int, factor: int) -> Tuple[int, int]:
    """Divide `factor` out of `value` as often as possible, returning (cofactor, multiplicity)."""
    if HAVE_GMPY2:
        cofactor, count = gmpy2.remove(gmpy2.mpz(value), factor)
        return int(cofactor), int(count)
    count = 0
    while value % factor == 0:
        value //= factor
        count += 1
    return value, count
