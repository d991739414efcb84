"""Closed forms for terms, total stopping times and equal-stopping-time partners.

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

All arithmetic here is exact. With D = d_1 + ... + d_m the correction sum

    S = sum_{j=1..m} 3^(m-j) / 2^(d_j + ... + d_m)

is a dyadic rational, and every other intermediate is an integer times a power of two, so the whole module
runs on `DyadicRational`.

The stopping-time form needs the profile of C^t, which already encodes t; it is a consistency check against a
known trajectory, not a way to predict t.
"""
import structlog  # type: ignore

from collatzk.dyadic import DyadicRational
from collatzk.exceptions import (
    DivisionByZero,
    InexactDivision,
    NonIntegerResult,
    NotPowerOfTwo,
    ProfileLengthError,
    ZeroInputError,
)
from collatzk.models import EpsilonFlag, OddEvenProfile, Params

logger = structlog.get_logger()


def _require_positive(n: int) -> None:
    if n < 1:
        raise ZeroInputError(f"the map is only defined on positive integers, got {n}")


def epsilon(profile: OddEvenProfile) -> EpsilonFlag:
    """The indicator that the prefix holds at least one odd term."""
    return EpsilonFlag.for_profile(profile)


def epsilon_sum(profile: OddEvenProfile) -> DyadicRational:
    """Correction sum S of a profile; 0 when m = 0.

    S * 2^D is accumulated in Horner form: the j-th summand scaled by 2^D is 3^(m-j) * 2^(d_1 + ... + d_(j-1)).
    """
    accumulator = 0
    prefix = 0
    for run in profile.d[1:]:
        accumulator = 3 * accumulator + (1 << prefix)
        prefix += run
    return DyadicRational(accumulator, prefix)


def _one_minus_eps_sum(profile: OddEvenProfile) -> DyadicRational:
    return 1 - epsilon(profile).epsilon * epsilon_sum(profile)


def eval_term_formula(n: int, params: Params, profile: OddEvenProfile) -> int:
    """Term g^l(n) from n and the parity profile of its first l terms.

    Raises:
        ZeroInputError: if n is 0.
        NonIntegerResult: if the result is not integral, i.e. the profile does not belong to n's trajectory.
    """
    _require_positive(n)
    leading = DyadicRational(3**profile.m * n, profile.l - profile.m)
    value = leading + params.addend * epsilon(profile).epsilon * epsilon_sum(profile)
    if not value.is_integer():
        raise NonIntegerResult(f"term formula gives {value} for n={n} under {params.label}", value)
    return value.to_int()


def k0_term_formula(n: int, profile: OddEvenProfile) -> int:
    """Term formula of the classical 3n+1 map."""
    return eval_term_formula(n, Params(k=0), profile)


def total_stopping_time_formula(n: int, params: Params, profile: OddEvenProfile) -> int:
    """Recover t from n and the profile of C^t as log2 of 2^m * 3^m * n / (3^k * (1 - eps*S)).

    Raises:
        ZeroInputError: if n is 0.
        DivisionByZero: if 1 - eps*S vanishes.
        NotPowerOfTwo: if the rational is not an exact power of two.
    """
    _require_positive(n)
    remainder = _one_minus_eps_sum(profile)
    if remainder <= 0:
        logger.error(
            "Non-positive stopping-time denominator",
            n=n,
            k=params.k,
            l=profile.l,
            m=profile.m,
            d=list(profile.d),
            denominator=str(remainder),
        )
        if not remainder:
            raise DivisionByZero(f"1 - eps*S is zero for the profile of n={n}", profile)

    numerator = DyadicRational((6**profile.m) * n)
    try:
        ratio = numerator / (remainder * params.addend)
    except InexactDivision as err:
        raise NotPowerOfTwo(f"stopping-time rational for n={n} is not dyadic", None) from err
    return ratio.log2_exact()


def same_time_partner(n1: int, profile1: OddEvenProfile, profile2: OddEvenProfile, params: Params) -> int:
    """Reconstruct n2 from n1 when both have C^t profiles of the same length t.

    n2 = 6^m1 * (1 - eps2*S2) * n1 / (6^m2 * (1 - eps1*S1)); 3^k cancels, `params` only labels errors.

    Raises:
        ZeroInputError: if n1 is 0.
        ProfileLengthError: if the two profiles cover a different number of terms.
        DivisionByZero: if 1 - eps1*S1 vanishes.
        NonIntegerResult: if n2 is not a positive integer, i.e. the profiles are inconsistent.
    """
    _require_positive(n1)
    if profile1.l != profile2.l:
        raise ProfileLengthError(f"profiles cover {profile1.l} and {profile2.l} terms; partners need equal t")

    divisor = _one_minus_eps_sum(profile1) * (6**profile2.m)
    if not divisor:
        raise DivisionByZero(f"1 - eps*S is zero for the profile of n={n1}", profile1)
    dividend = _one_minus_eps_sum(profile2) * ((6**profile1.m) * n1)
    try:
        partner = dividend / divisor
    except InexactDivision as err:
        raise NonIntegerResult(f"no integer partner of n={n1} under {params.label}", None) from err
    if not partner.is_integer() or partner <= 0:
        raise NonIntegerResult(f"partner of n={n1} under {params.label} is {partner}", partner)
    return partner.to_int()
