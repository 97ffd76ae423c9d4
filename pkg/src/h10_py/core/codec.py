"""
Prime-exponent coding of rational tuples.

For x >= 0 factor x + 1 over the prime triples (p_i, q_i, r_i); with
exponents alpha_i, beta_i, gamma_i the i-th component of s_n(x) is
(-1)^alpha_i * beta_i / (gamma_i + 1). Primes outside the first n triples
are ignored, so s_n is a surjection N -> Q^n but not a bijection.
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING, Protocol

from sympy import multiplicity

from h10_py.core.exactnum import ZERO, Rational, prime_triple
from h10_py.errors import ArityError, InvalidIndex

if TYPE_CHECKING:
    from h10_py.core.rings import RingSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QTuple(Sequence[Rational]):
    """Non-empty tuple of rationals."""

    components: tuple[Rational, ...]

    def __post_init__(self):
        if not self.components:
            raise ArityError("tuples have at least one component")

    @classmethod
    def of(cls, *values: Rational | int) -> "QTuple":
        return cls(tuple(v if isinstance(v, Rational) else Rational(v) for v in values))

    @classmethod
    def zeros(cls, n: int) -> "QTuple":
        return cls((ZERO,) * n)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, index):  # type: ignore[override]
        return self.components[index]

    def __iter__(self) -> Iterator[Rational]:
        return iter(self.components)

    def extend(self, *values: Rational) -> "QTuple":
        return QTuple(self.components + tuple(values))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


class Target(Protocol):
    """Anything with decidable membership."""

    def contains(self, r: Rational) -> bool: ...


def decode_tuple(x: int, n: int) -> QTuple:
    """
    s_n(x): read the exponents of the first n prime triples in x + 1.

    Args:
        x: Non-negative index
        n: Tuple length

    Returns:
        The decoded tuple, each component reduced to lowest terms
    """
    if x < 0:
        raise InvalidIndex(f"codec indices are non-negative, got {x}")
    if n < 1:
        raise ArityError(f"tuple length must be positive, got {n}")
    value = x + 1
    components = []
    for i in range(1, n + 1):
        p, q, r = prime_triple(i)
        alpha, beta, gamma = multiplicity(p, value), multiplicity(q, value), multiplicity(r, value)
        components.append(Rational.of((-1) ** alpha * beta, gamma + 1))
    return QTuple(tuple(components))


def encode_tuple(t: Sequence[Rational]) -> int:
    """
    A right inverse of decode_tuple: decode_tuple(encode_tuple(t), len(t)) == t.

    Component i = s*a/b in lowest terms contributes p_i^[s<0] * q_i^a * r_i^(b-1);
    zero contributes nothing.
    """
    product = 1
    for i, component in enumerate(t, start=1):
        if not component:
            continue
        p, q, r = prime_triple(i)
        alpha = 1 if component.hat < 0 else 0
        product *= p**alpha * q ** abs(component.hat) * r ** (component.bar - 1)
    return product - 1


def project(t: QTuple, target: "Target") -> QTuple:
    """rho_n / sigma_n: identity on target^n, the zero tuple elsewhere."""
    if all(target.contains(c) for c in t):
        return t
    return QTuple.zeros(len(t))


def sigma(t: QTuple) -> QTuple:
    """Projection onto N^n."""
    if all(c.is_natural for c in t):
        return t
    return QTuple.zeros(len(t))


def surjection(ring: "RingSpec", n: int, i: int) -> QTuple:
    """
    The computable surjection N -> R^n.

    Subrings use rho_n o s_n; tau-presented sets use (tau, ..., tau) o sigma_n o s_n.
    """
    decoded = decode_tuple(i, n)
    if ring.is_subring:
        return project(decoded, ring)
    return QTuple(tuple(ring.tau(c.hat) for c in sigma(decoded)))


def preimage(ring: "RingSpec", t: QTuple) -> int:
    """
    An index i with surjection(ring, len(t), i) == t.

    Raises:
        InvalidIndex: If t is not in R^n
    """
    if not all(ring.contains(c) for c in t):
        raise InvalidIndex(f"{t} is not a tuple over {ring}")
    if ring.is_subring:
        return encode_tuple(t)
    return encode_tuple(tuple(Rational(ring.tau_index(c)) for c in t))
