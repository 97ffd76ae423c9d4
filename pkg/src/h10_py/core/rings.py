"""Models of subrings of Q (and the tau-presented set N) with decidable membership."""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from math import gcd

from h10_py.core.codec import decode_tuple, encode_tuple, project, sigma
from h10_py.core.exactnum import Rational
from h10_py.errors import InvalidParameter, NotASubring

logger = logging.getLogger(__name__)

_LOCALIZATION = re.compile(r"Z\[1/(\d+)\]")
_MULTIPLES = re.compile(r"([-+]?\d+)\*Z")


class RingKind(str, Enum):
    """Supported ring family."""

    Z = "Z"
    CZ = "cZ"
    LOCALIZATION = "Z[1/m]"
    Q = "Q"
    N = "N"


class FindMode(str, Enum):
    DIRECT = "direct"
    CONSTRUCTIVE = "constructive"


@dataclass(frozen=True)
class RingSpec:
    """
    A subring of Q, with or without 1, or the tau-presented subset N.

    Every variant except N satisfies {0} < R <= Q and r*Z <= R for r in R.
    `param` is c for cZ and m for Z[1/m].
    """

    kind: RingKind
    param: int | None = None

    def __post_init__(self):
        if self.kind is RingKind.CZ and not self.param:
            raise InvalidParameter("c*Z needs a non-zero integer c")
        if self.kind is RingKind.LOCALIZATION and (self.param is None or self.param < 2):
            raise InvalidParameter("Z[1/m] needs m >= 2")
        if self.kind in (RingKind.Z, RingKind.Q, RingKind.N) and self.param is not None:
            raise InvalidParameter(f"{self.kind.value} takes no parameter")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(RingKind.Z)

    @classmethod
    def multiples(cls, c: int) -> "RingSpec":
        return cls(RingKind.CZ, c)

    @classmethod
    def localization(cls, m: int) -> "RingSpec":
        return cls(RingKind.LOCALIZATION, m)

    @classmethod
    def rationals(cls) -> "RingSpec":
        return cls(RingKind.Q)

    @classmethod
    def naturals(cls) -> "RingSpec":
        return cls(RingKind.N)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse "Z", "Q", "N", "Z[1/m]" or "c*Z"."""
        spec = text.replace(" ", "")
        if spec in ("Z", "Q", "N"):
            return cls(RingKind(spec))
        if match := _LOCALIZATION.fullmatch(spec):
            return cls.localization(int(match.group(1)))
        if match := _MULTIPLES.fullmatch(spec):
            return cls.multiples(int(match.group(1)))
        raise InvalidParameter(f"unknown ring {text!r}; expected Z, Q, N, Z[1/m] or c*Z")

    @property
    def is_subring(self) -> bool:
        return self.kind is not RingKind.N

    def require_subring(self) -> None:
        if not self.is_subring:
            raise NotASubring(f"{self} is not a ring; this operation needs a non-zero subring of Q")

    def contains(self, r: Rational) -> bool:
        return contains(self, r)

    def tau(self, k: int) -> Rational:
        """tau(k) = tau_1(k) / tau_2(k), a surjection N -> R."""
        return enumerate_element(self, k)

    def tau_pair(self, k: int) -> tuple[int, int]:
        """(tau_1(k), tau_2(k)); tau_2 is never zero."""
        element = self.tau(k)
        return element.hat, element.bar

    def tau_index(self, r: Rational) -> int:
        """Some k with tau(k) == r."""
        if not self.contains(r):
            raise InvalidParameter(f"{r} is not in {self}")
        return encode_tuple((r,))

    def __str__(self) -> str:
        if self.kind is RingKind.CZ:
            return f"{self.param}*Z"
        if self.kind is RingKind.LOCALIZATION:
            return f"Z[1/{self.param}]"
        return self.kind.value


def contains(ring: RingSpec, r: Rational) -> bool:
    """Exact membership of r in ring."""
    if ring.kind is RingKind.Q:
        return True
    if ring.kind is RingKind.Z:
        return r.bar == 1
    if ring.kind is RingKind.N:
        return r.is_natural
    if ring.kind is RingKind.CZ:
        return r.bar == 1 and r.hat % ring.param == 0  # type: ignore[operator]
    # Z[1/m]: strip from the denominator every prime it shares with m
    denominator = r.bar
    while (common := gcd(denominator, ring.param)) > 1:  # type: ignore[arg-type]
        denominator //= common
    return denominator == 1


def enumerate_element(ring: RingSpec, k: int) -> Rational:
    """
    The k-th element of a total surjection N -> ring.

    Subrings project s_1(k) onto R; N projects it onto N.
    """
    decoded = decode_tuple(k, 1)
    if ring.is_subring:
        return project(decoded, ring)[0]
    return sigma(decoded)[0]


def locate_nonzero_integer(ring: RingSpec, n: int = 1) -> tuple[int, int]:
    """
    Smallest i such that (rho_n o s_n)(i) starts with a non-zero integer.

    Returns:
        (m, i)
    """
    ring.require_subring()
    i = 0
    while True:
        head = project(decode_tuple(i, n), ring)[0]
        if head and head.is_integer:
            logger.debug("non-zero integer %s of %s found at index %d", head, ring, i)
            return head.hat, i
        i += 1


def find_nonzero_integer(ring: RingSpec, mode: FindMode = FindMode.DIRECT, n: int = 1) -> int:
    """
    A non-zero integer m in ring.

    Direct mode reads it off the ring description; constructive mode searches
    the enumeration of R^n.
    """
    ring.require_subring()
    if mode is FindMode.CONSTRUCTIVE:
        m, _ = locate_nonzero_integer(ring, n)
        return m
    if ring.kind is RingKind.CZ:
        return ring.param  # type: ignore[return-value]
    return 1

