"""Exact rationals, four-square decompositions and the prime triples behind the tuple codec."""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Union

from sympy import sieve

from h10_py.errors import InvalidDenominator, InvalidIndex, InvalidParameter

logger = logging.getLogger(__name__)

# sympy's sieve is a process-wide cache that grows on demand
_SIEVE_LOCK = threading.Lock()


def lowest_terms(a: int, b: int) -> tuple[int, int]:
    """
    Reduce a/b to the unique pair (hat, bar) with gcd(|hat|, bar) = 1 and bar >= 1.

    Args:
        a: Numerator
        b: Denominator, non-zero

    Returns:
        (hat, bar) with the sign carried by hat

    Raises:
        InvalidDenominator: If b is zero
    """
    if b == 0:
        raise InvalidDenominator(f"cannot reduce {a}/{b}")
    reduced = Fraction(a, b)
    return reduced.numerator, reduced.denominator


RationalLike = Union["Rational", int, Fraction]


def _as_fraction(value: RationalLike) -> Fraction | None:
    if isinstance(value, Rational):
        return value.fraction
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return None


@dataclass(frozen=True, eq=False)
class Rational:
    """Exact rational hat/bar, always in lowest terms."""

    hat: int
    bar: int = 1

    def __post_init__(self):
        if self.bar < 1 or gcd(abs(self.hat), self.bar) != 1:
            raise InvalidParameter(
                f"({self.hat}, {self.bar}) is not in lowest terms; use Rational.of"
            )

    @classmethod
    def of(cls, a: int, b: int = 1) -> "Rational":
        """Build a rational from any integer pair, normalizing it."""
        hat, bar = lowest_terms(a, b)
        return cls(hat, bar)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Rational":
        return cls(value.numerator, value.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.hat, self.bar)

    @property
    def is_integer(self) -> bool:
        return self.bar == 1

    @property
    def is_natural(self) -> bool:
        return self.bar == 1 and self.hat >= 0

    def __bool__(self) -> bool:
        return self.hat != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Rational):
            return self.hat == other.hat and self.bar == other.bar
        value = _as_fraction(other)  # type: ignore[arg-type]
        if value is None:
            return NotImplemented
        return self.fraction == value

    def __hash__(self) -> int:
        return hash(self.fraction)

    def __lt__(self, other: RationalLike) -> bool:
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return self.fraction < value

    def __le__(self, other: RationalLike) -> bool:
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return self.fraction <= value

    def __gt__(self, other: RationalLike) -> bool:
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return self.fraction > value

    def __ge__(self, other: RationalLike) -> bool:
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return self.fraction >= value

    def __neg__(self) -> "Rational":
        return Rational(-self.hat, self.bar)

    def __abs__(self) -> "Rational":
        return Rational(abs(self.hat), self.bar)

    def __add__(self, other: RationalLike) -> "Rational":
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return Rational.from_fraction(self.fraction + value)

    __radd__ = __add__

    def __sub__(self, other: RationalLike) -> "Rational":
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return Rational.from_fraction(self.fraction - value)

    def __rsub__(self, other: RationalLike) -> "Rational":
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return Rational.from_fraction(value - self.fraction)

    def __mul__(self, other: RationalLike) -> "Rational":
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        return Rational.from_fraction(self.fraction * value)

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "Rational":
        value = _as_fraction(other)
        if value is None:
            return NotImplemented
        if value == 0:
            raise InvalidDenominator(f"division of {self} by zero")
        return Rational.from_fraction(self.fraction / value)

    def __pow__(self, exponent: int) -> "Rational":
        return Rational.from_fraction(self.fraction**exponent)

    def __str__(self) -> str:
        if self.bar == 1:
            return str(self.hat)
        return f"{self.hat}/{self.bar}"

    def __repr__(self) -> str:
        return f"Rational({self})"


ZERO = Rational(0)
ONE = Rational(1)


class FourSquareWitness(NamedTuple):
    """t1^2 + t2^2 + t3^2 + t4^2 in non-increasing order."""

    t1: int
    t2: int
    t3: int
    t4: int

    @property
    def total(self) -> int:
        return self.t1**2 + self.t2**2 + self.t3**2 + self.t4**2


def _least_root(n: int, parts: int) -> int:
    """Smallest t with parts * t^2 >= n."""
    t = isqrt(n // parts)
    while parts * t * t < n:
        t += 1
    return t


def four_squares(n: int) -> FourSquareWitness:
    """
    Lexicographically smallest non-increasing (t1, t2, t3, t4) with squares summing to n.

    Bounded exhaustive search; t1 can be no smaller than ceil(sqrt(n/4)) and
    every later component is capped by its predecessor.

    Args:
        n: Non-negative integer

    Returns:
        The canonical witness
    """
    if n < 0:
        raise InvalidParameter(f"four_squares needs n >= 0, got {n}")
    for t1 in range(_least_root(n, 4), isqrt(n) + 1):
        r1 = n - t1 * t1
        for t2 in range(_least_root(r1, 3), min(t1, isqrt(r1)) + 1):
            r2 = r1 - t2 * t2
            for t3 in range(_least_root(r2, 2), min(t2, isqrt(r2)) + 1):
                r3 = r2 - t3 * t3
                t4 = isqrt(r3)
                if t4 * t4 == r3 and t4 <= t3:
                    return FourSquareWitness(t1, t2, t3, t4)
    raise AssertionError(f"no four-square decomposition found for {n}")


class PrimeTriple(NamedTuple):
    """The i-th consecutive triple (p_i, q_i, r_i) of the primes."""

    p: int
    q: int
    r: int


def nth_prime(k: int) -> int:
    """Return the k-th prime, 1-based (nth_prime(1) == 2)."""
    if k < 1:
        raise InvalidIndex(f"primes are numbered from 1, got {k}")
    with _SIEVE_LOCK:
        return int(sieve[k])


def prime_triple(i: int) -> PrimeTriple:
    """
    Return the primes numbered 3i-2, 3i-1 and 3i.

    Raises:
        InvalidIndex: If i < 1 (triples are 1-based)
    """
    if i < 1:
        raise InvalidIndex(f"prime triples are numbered from 1, got {i}")
    return PrimeTriple(nth_prime(3 * i - 2), nth_prime(3 * i - 1), nth_prime(3 * i))
