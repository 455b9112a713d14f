"""Cycle-type filters for prime-order automorphisms of self-dual codes.

Each filter is a necessary condition on the type ``p-(c;f)`` of an
automorphism of a binary self-dual ``[n, n/2, d]`` code:

``L6a``   ``p*c >= g(d, (p-1)c/2)``
``L6b``   ``f >= g(d, (f-c)/2)`` whenever ``f > c``
``BMW1``  ``c >= f`` for extremal codes of length ``24m + 2r`` (``m >= 2``,
          ``0 <= r <= 11``) and ``p >= 5``
``BMW2``  ``c`` even whenever the order of 2 mod ``p`` is even
``BMW3``  not (``c = f`` and ``p + c < d``)

``BMW2-thin`` is the parity filter as used for the reference type table
(preset ``paper-table``): it may remove types from a prime's row but never
empties the row (whole primes are removed by a separate step, see
:data:`PRESETS`).  That is how the table keeps ``13-(9;3)`` and
``17-(7;1)`` while dropping odd ``c`` for ``p = 3, 5``.

For ``p = 17`` the surviving candidate has ``c = 7``, and the parity
filter rejects it on that value.  Verdicts always report against the
candidate's real ``c``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field

from .modfield import is_prime, mult_order_of_2

LEMMAS = ("L6a", "L6b", "BMW1", "BMW2", "BMW2-thin", "BMW3")

PRESETS: dict[str, frozenset[str]] = {
    "paper-table": frozenset({"L6a", "L6b", "BMW1", "BMW2-thin"}),
    "full": frozenset({"L6a", "L6b", "BMW1", "BMW2", "BMW3"}),
    "none": frozenset(),
}

_OPS = {">=": operator.ge, "==": operator.eq, "<=": operator.le}


def g(d: int, s: int) -> int:
    """``sum_{i<s} ceil(d / 2^i)``."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return sum(-(-d // (1 << i)) for i in range(s))


@dataclass(frozen=True)
class TypeCandidate:
    p: int
    c: int
    f: int

    def __post_init__(self):
        if self.c < 0 or self.f < 0:
            raise ValueError("negative cycle or fixed-point count")

    @property
    def n(self) -> int:
        return self.p * self.c + self.f

    @property
    def label(self) -> str:
        return f"{self.p}-({self.c};{self.f})"


@dataclass(frozen=True)
class Reason:
    """A violated requirement ``lhs op rhs``, self-describing."""

    lemma: str
    requirement: str
    lhs: int
    op: str
    rhs: int

    def violated(self) -> bool:
        return not _OPS[self.op](self.lhs, self.rhs)

    def __str__(self) -> str:
        return f"{self.lemma}: needs {self.requirement}, got {self.lhs} vs {self.rhs}"


@dataclass(frozen=True)
class TypeVerdict:
    candidate: TypeCandidate
    status: str
    reasons: tuple[Reason, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def survives(self) -> bool:
        return self.status == "survives"


def bmw1_applies(n: int, p: int) -> bool:
    """Hypothesis of the ``c >= f`` lemma: ``n = 24m + 2r``, ``m >= 2``,
    ``0 <= r <= 11``, ``p >= 5``."""
    if n % 2 or p < 5:
        return False
    m, rest = divmod(n, 24)
    return m >= 2 and rest // 2 <= 11


def _check(t: TypeCandidate, n: int, d: int, lemma: str) -> Reason | None:
    p, c, f = t.p, t.c, t.f
    r = None
    if lemma == "L6a":
        r = Reason("L6a", "p*c >= g((p-1)c/2)", p * c, ">=", g(d, (p - 1) * c // 2))
    elif lemma == "L6b":
        if f > c:
            r = Reason("L6b", "f >= g((f-c)/2)", f, ">=", g(d, (f - c) // 2))
    elif lemma == "BMW1":
        if bmw1_applies(n, p):
            r = Reason("BMW1", "c >= f", c, ">=", f)
    elif lemma in ("BMW2", "BMW2-thin"):
        if mult_order_of_2(p) % 2 == 0:
            r = Reason(lemma, f"c even (s({p}) = {mult_order_of_2(p)} is even)", c % 2, "==", 0)
    elif lemma == "BMW3":
        if c == f:
            r = Reason("BMW3", "p + c >= d when c = f", p + c, ">=", d)
    else:
        raise ValueError(f"unknown lemma {lemma!r}")
    return r if r is not None and r.violated() else None


def _resolve(lemma_set) -> frozenset[str]:
    if isinstance(lemma_set, str):
        if lemma_set not in PRESETS:
            raise ValueError(f"unknown preset {lemma_set!r}; choose from {sorted(PRESETS)}")
        return PRESETS[lemma_set]
    out = frozenset(lemma_set)
    bad = out - set(LEMMAS)
    if bad:
        raise ValueError(f"unknown lemmas: {sorted(bad)}")
    return out


def filter_type(t: TypeCandidate, n: int, d: int, lemma_set="full") -> TypeVerdict:
    """Apply each selected filter to one candidate.

    ``BMW2-thin`` depends on the whole row and is ignored here; use
    :func:`feasible_types`.
    """
    lemmas = _resolve(lemma_set)
    if t.n != n:
        raise ValueError(f"{t.label} covers {t.n} points, not {n}")
    if t.c == 0:
        return TypeVerdict(t, "excluded", (Reason("trivial", "c >= 1 (order-p element moves a point)",
                                                  0, ">=", 1),))
    reasons = [r for lem in LEMMAS if lem in lemmas and lem != "BMW2-thin"
               for r in [_check(t, n, d, lem)] if r]
    return TypeVerdict(t, "excluded" if reasons else "survives", tuple(reasons))


def feasible_types(n: int, d: int, p: int, lemma_set="paper-table") -> list[TypeVerdict]:
    """Verdicts for every ``(c, f)`` with ``p*c + f = n``, ordered by ``c``."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p}")
    if p > n:
        raise ValueError(f"p = {p} exceeds n = {n}")
    lemmas = _resolve(lemma_set)
    verdicts = []
    for c in range(n // p + 1):
        t = TypeCandidate(p, c, n - p * c)
        if not lemmas:
            verdicts.append(TypeVerdict(t, "survives"))
            continue
        verdicts.append(filter_type(t, n, d, lemmas))
    if "BMW2-thin" in lemmas:
        thin = [(v, _check(v.candidate, n, d, "BMW2-thin")) for v in verdicts]
        keeps_some = any(v.survives and r is None for v, r in thin)
        out = []
        for v, r in thin:
            if v.survives and r is not None:
                if keeps_some:
                    v = TypeVerdict(v.candidate, "excluded", (r,))
                else:
                    v = TypeVerdict(v.candidate, "survives", (),
                                    (f"parity ({r.requirement}) deferred: it would empty the row",))
            out.append(v)
        verdicts = out
    return verdicts


def survivors(verdicts: list[TypeVerdict]) -> list[TypeCandidate]:
    return [v.candidate for v in verdicts if v.survives]


def odd_primes_upto(n: int) -> list[int]:
    return [p for p in range(3, n + 1, 2) if is_prime(p)]


def type_table(n: int, d: int, lemma_set="paper-table") -> dict[int, list[TypeCandidate]]:
    """Surviving types per odd prime, primes with empty rows omitted."""
    out = {}
    for p in odd_primes_upto(n):
        alive = survivors(feasible_types(n, d, p, lemma_set))
        if alive:
            out[p] = alive
    return out


def surviving_primes(n: int, d: int, lemma_set="full") -> list[int]:
    return sorted(type_table(n, d, lemma_set))


def mod_p_weight_test(extremal_a: int, observed_a: int, p: int) -> bool:
    """Orbit counting: the count in the code and in the fixed subcode agree
    mod ``p``.  False means the pair is inconsistent."""
    return (extremal_a - observed_a) % p == 0
