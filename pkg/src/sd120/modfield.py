"""Even-weight polynomials modulo ``x^p - 1``.

``P`` is the binary cyclic code of length ``p`` generated by ``x - 1``.  With
``e(x) = x + ... + x^(p-1)`` as identity it is a ring, and a field
isomorphic to ``GF(2^(p-1))`` exactly when 2 has multiplicative order
``p - 1`` modulo ``p``.  Elements stay in the length-``p`` polynomial basis;
coefficient ``i`` is bit ``i`` of :attr:`PElement.bits`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .gf2core import BitVector

# prime factorisations of 2^(p-1) - 1 for the primes this project touches
FACTOR_TABLE: dict[int, dict[int, int]] = {
    3: {3: 1},
    5: {3: 1, 5: 1},
    7: {3: 2, 7: 1},
    11: {3: 1, 11: 1, 31: 1},
    23: {3: 1, 23: 1, 89: 1, 683: 1},
    29: {3: 1, 5: 1, 29: 1, 43: 1, 113: 1, 127: 1},
    59: {3: 1, 59: 1, 233: 1, 1103: 1, 2089: 1, 3033169: 1},
}

TRIAL_DIVISION_BOUND = 10**7


class FactorizationIncomplete(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def mult_order_of_2(p: int) -> int:
    """Least ``s >= 1`` with ``2^s = 1 (mod p)``."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p}")
    s, x = 1, 2 % p
    while x != 1:
        x = 2 * x % p
        s += 1
    return s


def trial_factor(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Factor ``n`` by trial division; the cofactor left after ``bound`` must
    itself be provably prime (i.e. below ``bound**2``)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if d * d <= n:
            raise FactorizationIncomplete(f"cofactor {n} not resolved below {bound}")
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def group_factorization(p: int) -> dict[int, int]:
    if p in FACTOR_TABLE:
        return dict(FACTOR_TABLE[p])
    return trial_factor((1 << (p - 1)) - 1)


@dataclass(frozen=True)
class PElement:
    p: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.p:
            raise ValueError("coefficients beyond degree p-1")
        if self.bits.bit_count() % 2:
            raise ValueError("odd weight polynomial is not in P")

    @classmethod
    def from_coefficients(cls, p: int, coeffs: Sequence[int]) -> "PElement":
        if len(coeffs) > p:
            raise ValueError("too many coefficients")
        return cls(p, sum((c & 1) << i for i, c in enumerate(coeffs)))

    @classmethod
    def from_vector(cls, v: BitVector) -> "PElement":
        return cls(v.length, v.bits)

    @classmethod
    def monomial_times_identity(cls, p: int, t: int) -> "PElement":
        """``x^t e(x)``, an element of the order-``p`` subgroup."""
        return identity(p).shift(t)

    def vector(self) -> BitVector:
        return BitVector(self.p, self.bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        terms = []
        for i in range(self.p):
            if self.bits >> i & 1:
                terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return " + ".join(terms) if terms else "0"

    def _same(self, other: "PElement"):
        if self.p != other.p:
            raise ValueError(f"p mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "PElement") -> "PElement":
        self._same(other)
        return PElement(self.p, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "PElement") -> "PElement":
        return mul(self, other)

    def __pow__(self, e: int) -> "PElement":
        return power(self, e)

    def shift(self, t: int) -> "PElement":
        """Multiply by ``x^t``."""
        p, t = self.p, t % self.p
        full = (1 << p) - 1
        return PElement(p, ((self.bits << t) | (self.bits >> (p - t))) & full)

    def substitute(self, t: int) -> "PElement":
        """``a(x) -> a(x^t)`` for ``t`` a unit mod ``p``."""
        p = self.p
        if t % p == 0:
            raise ValueError("substitution exponent must be a unit mod p")
        out, x = 0, self.bits
        while x:
            low = x & -x
            out |= 1 << ((low.bit_length() - 1) * t % p)
            x ^= low
        return PElement(p, out)

    def conjugate(self) -> "PElement":
        """``a(x^-1)``; equals ``a^q`` with ``q = 2^((p-1)/2)`` in field mode."""
        return self.substitute(-1)

    def square(self) -> "PElement":
        return self.substitute(2)


def zero(p: int) -> PElement:
    return PElement(p, 0)


@lru_cache(maxsize=None)
def identity(p: int) -> PElement:
    return PElement(p, ((1 << p) - 1) ^ 1)


def mul(a: PElement, b: PElement) -> PElement:
    """Cyclic convolution modulo ``x^p - 1``."""
    a._same(b)
    p = a.p
    full = (1 << p) - 1
    x, y, acc = a.bits, b.bits, 0
    if x.bit_count() > y.bit_count():
        x, y = y, x
    while x:
        low = x & -x
        i = low.bit_length() - 1
        acc ^= ((y << i) | (y >> (p - i))) & full
        x ^= low
    return PElement(p, acc)


def power(a: PElement, e: int) -> PElement:
    """Square-and-multiply; ``a^0 = e(x)``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = identity(a.p)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = base.square()
    return result


@dataclass(frozen=True)
class PField:
    p: int

    def __post_init__(self):
        mult_order_of_2(self.p)  # validates p

    @cached_property
    def s(self) -> int:
        return mult_order_of_2(self.p)

    @property
    def is_field(self) -> bool:
        return self.s == self.p - 1

    @property
    def group_order(self) -> int:
        return (1 << (self.p - 1)) - 1

    @property
    def q(self) -> int:
        return 1 << ((self.p - 1) // 2)

    @cached_property
    def factorization(self) -> dict[int, int]:
        fac = group_factorization(self.p)
        if math.prod(r**m for r, m in fac.items()) != self.group_order:
            raise FactorizationIncomplete(f"table entry for p={self.p} does not multiply back")
        return fac

    def _require_field(self):
        if not self.is_field:
            raise ValueError(f"s({self.p}) = {self.s} != p-1: P is not a field")

    def element_order(self, a: PElement) -> int:
        """Multiplicative order of a nonzero element (field mode)."""
        self._require_field()
        if a.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        order = self.group_order
        for r, m in self.factorization.items():
            for _ in range(m):
                if power(a, order // r) == identity(self.p):
                    order //= r
                else:
                    break
        return order

    def is_primitive(self, a: PElement) -> bool:
        self._require_field()
        if a.is_zero():
            return False
        e = identity(self.p)
        return all(power(a, self.group_order // r) != e for r in self.factorization)

    def inverse(self, a: PElement) -> PElement:
        self._require_field()
        if a.is_zero():
            raise ZeroDivisionError("zero is not invertible")
        return power(a, self.group_order - 1)

    def random_element(self, rng: random.Random) -> PElement:
        bits = rng.getrandbits(self.p)
        if bits.bit_count() % 2:
            bits ^= 1
        return PElement(self.p, bits)


def find_primitive(field: PField, seed: int = 0) -> PElement:
    """First primitive element drawn from ``random.Random(seed)``."""
    field._require_field()
    field.factorization  # raises if incomplete
    rng = random.Random(seed)
    while True:
        a = field.random_element(rng)
        if field.is_primitive(a):
            return a


def hermitian_ip(u: Sequence[PElement], v: Sequence[PElement], q: int) -> PElement:
    """``sum_i u_i v_i^q``."""
    if len(u) != len(v):
        raise ValueError("tuple length mismatch")
    if not u:
        raise ValueError("empty tuples carry no p")
    p = u[0].p
    acc = zero(p)
    frob = q > 0 and q & (q - 1) == 0  # b^(2^j) = b(x^(2^j))
    t = pow(2, q.bit_length() - 1, p) if frob else 0
    for a, b in zip(u, v):
        acc = acc + mul(a, b.substitute(t) if frob else power(b, q))
    return acc


def reciprocal_ip(u: Sequence[PElement], v: Sequence[PElement]) -> PElement:
    """``sum_i u_i(x) v_i(x^-1)``: its coefficient at ``x^j`` is the binary
    inner product of ``u`` with ``v`` cyclically shifted by ``j``."""
    if len(u) != len(v) or not u:
        raise ValueError("tuple length mismatch")
    acc = zero(u[0].p)
    for a, b in zip(u, v):
        acc = acc + mul(a, b.conjugate())
    return acc
