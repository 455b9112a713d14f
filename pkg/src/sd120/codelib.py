"""Binary linear codes: constructions, duality, weight distributions.

Also home of the extremal bound and the Gleason solve for extremal Type II
weight enumerators.
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from itertools import combinations
from math import comb
from typing import Iterable, Sequence, TextIO

import numpy as np

from .gf2core import (
    BitMatrix,
    BitVector,
    kernel_basis,
    n_words,
    pack_rows,
    popcount_words,
    reduce_against,
    rref,
    unpack_rows,
)

DEFAULT_DIM_CAP = 28


class DimensionTooLarge(ValueError):
    pass


class CodeParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """Row space of a generator, stored in canonical RREF.

    Two codes compare equal iff they have the same length and row space.
    """

    n: int
    generator: BitMatrix
    pivots: tuple[int, ...] = field(repr=False)
    name: str | None = field(default=None, compare=False)

    @classmethod
    def from_generator(cls, gen: BitMatrix, name: str | None = None) -> "BinaryCode":
        reduced, _, pivots = rref(gen)
        return cls(gen.cols, reduced, tuple(pivots), name)

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[int], name: str | None = None) -> "BinaryCode":
        return cls.from_generator(BitMatrix(n, tuple(rows)), name)

    @classmethod
    def from_strings(cls, lines: Sequence[str], name: str | None = None) -> "BinaryCode":
        return cls.from_generator(BitMatrix.from_strings(lines), name)

    @property
    def k(self) -> int:
        return self.generator.nrows

    dimension = k

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.n == other.n and self.generator.rows == other.generator.rows

    def __hash__(self) -> int:
        return hash((self.n, self.generator.rows))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<BinaryCode{label} [{self.n},{self.k}]>"

    def contains(self, v: BitVector | int) -> bool:
        x = v.bits if isinstance(v, BitVector) else int(v)
        return reduce_against(x, self.generator, self.pivots) == 0

    def is_subcode_of(self, other: "BinaryCode") -> bool:
        return self.n == other.n and all(other.contains(r) for r in self.generator.rows)

    def permuted(self, images: Sequence[int]) -> "BinaryCode":
        return BinaryCode.from_generator(self.generator.permute_columns(images), self.name)

    def punctured_to(self, coords: Sequence[int]) -> "BinaryCode":
        return BinaryCode.from_generator(self.generator.select_columns(coords))

    @cached_property
    def words(self) -> np.ndarray:
        """Generator rows packed as ``uint64`` words."""
        return pack_rows(self.generator.rows, self.n)


def dual(c: BinaryCode) -> BinaryCode:
    return BinaryCode.from_generator(kernel_basis(c.generator))


def is_self_orthogonal(c: BinaryCode) -> bool:
    rows = c.generator.rows
    return all((a & b).bit_count() % 2 == 0 for i, a in enumerate(rows) for b in rows[i:])


def is_self_dual(c: BinaryCode) -> bool:
    return 2 * c.k == c.n and is_self_orthogonal(c)


def is_doubly_even(c: BinaryCode, dim_cap: int = DEFAULT_DIM_CAP) -> bool:
    # generator criterion is only valid once self-orthogonality holds
    if is_self_orthogonal(c):
        return all(r.bit_count() % 4 == 0 for r in c.generator.rows)
    dist = weight_distribution(c, dim_cap)
    return all(a == 0 for i, a in enumerate(dist) if i % 4)


def span_words(rows: np.ndarray) -> np.ndarray:
    """All ``2**len(rows)`` combinations of packed rows, in Gray-compatible
    doubling order (entry ``m`` is the sum of rows in the bit set of ``m``)."""
    nw = rows.shape[1] if rows.ndim == 2 else 1
    out = np.zeros((1, nw), dtype=np.uint64)
    for r in rows:
        out = np.concatenate([out, out ^ r], axis=0)
    return out


def codewords(c: BinaryCode, dim_cap: int = 22) -> np.ndarray:
    """Every codeword as packed words, shape ``(2**k, n_words)``."""
    if c.k > dim_cap:
        raise DimensionTooLarge(f"k={c.k} exceeds cap {dim_cap}")
    if c.k == 0:
        return np.zeros((1, n_words(c.n)), dtype=np.uint64)
    return span_words(c.words)


def weight_distribution(c: BinaryCode, dim_cap: int = DEFAULT_DIM_CAP) -> list[int]:
    """Exact ``[A_0, ..., A_n]`` by enumerating all ``2**k`` codewords.

    The span is split into two halves whose partial sums are tabulated and
    combined blockwise, so memory stays bounded for ``k`` up to the cap.
    """
    if c.k > dim_cap:
        raise DimensionTooLarge(f"k={c.k} exceeds cap {dim_cap}")
    counts = np.zeros(c.n + 1, dtype=np.int64)
    if c.k == 0:
        counts[0] = 1
        return [int(a) for a in counts]
    rows = c.words
    lo = min(c.k, 14)
    low = span_words(rows[:lo])
    high = span_words(rows[lo:])
    block = max(1, (1 << 22) // len(low))
    for start in range(0, len(high), block):
        chunk = high[start:start + block]
        w = popcount_words(low[None, :, :] ^ chunk[:, None, :])
        counts += np.bincount(w.ravel(), minlength=c.n + 1)
    return [int(a) for a in counts]


def min_weight(c: BinaryCode, dim_cap: int = DEFAULT_DIM_CAP) -> int:
    """Minimum nonzero weight (0 for the zero code)."""
    dist = weight_distribution(c, dim_cap)
    return next((i for i in range(1, c.n + 1) if dist[i]), 0)


def tetrad_signature(c: BinaryCode, weight: int | None = None) -> tuple[tuple[int, int], ...]:
    """Equivalence invariant: for each 4-subset of coordinates, count the
    codewords of the given weight (default: minimum weight) containing it;
    return the sorted histogram of those counts over all 4-subsets."""
    weight = weight or min_weight(c)
    words = codewords(c)
    wt = popcount_words(words)
    hits: Counter = Counter()
    for w in words[wt == weight]:
        x = unpack_rows(w)[0]
        hits.update(combinations([i for i in range(c.n) if x >> i & 1], 4))
    hist = Counter(hits.values())
    hist[0] = comb(c.n, 4) - len(hits)
    return tuple(sorted((k, v) for k, v in hist.items() if v))


def extremal_bound(n: int) -> int:
    if n < 2 or n % 2:
        raise ValueError(f"self-dual lengths are even and >= 2, got {n}")
    base = 4 * (n // 24)
    return base + 6 if n % 24 == 22 else base + 4


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_pow(a: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


@lru_cache(maxsize=None)
def extremal_type2_enumerator(n: int) -> tuple[int, ...]:
    """Weight enumerator ``(A_0, ..., A_n)`` of an extremal Type II code.

    Written in ``y`` with ``x = 1``, Gleason's invariants are
    ``g2 = 1 + 14y^4 + y^8`` and ``g3 = y^4 (1 - y^4)^4``.  The enumerator is
    ``sum_b a_b g2^((n-24b)/8) g3^b``; forcing ``A_0 = 1`` and
    ``A_4 = ... = A_{4 floor(n/24)} = 0`` gives a unit triangular system,
    solved exactly over the rationals.
    """
    if n <= 0 or n % 8:
        raise ValueError(f"Type II lengths are positive multiples of 8, got {n}")
    g2 = [1, 0, 0, 0, 14, 0, 0, 0, 1]
    g3 = _poly_mul([0, 0, 0, 0, 1], _poly_pow([1, 0, 0, 0, -1], 4))
    m = n // 24
    basis = []
    for b in range(m + 1):
        p = _poly_mul(_poly_pow(g2, (n - 24 * b) // 8), _poly_pow(g3, b))
        basis.append(p + [0] * (n + 1 - len(p)))
    # row i of the system reads coefficient y^{4i}; basis b starts at y^{4b}
    coef = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        target = Fraction(1 if i == 0 else 0)
        acc = sum(coef[b] * basis[b][4 * i] for b in range(i))
        coef[i] = (target - acc) / basis[i][4 * i]
    total = [sum(coef[b] * basis[b][j] for b in range(m + 1)) for j in range(n + 1)]
    if any(t.denominator != 1 for t in total):
        raise ArithmeticError("non-integral extremal enumerator")
    return tuple(int(t) for t in total)


def _quadratic_residues(q: int) -> set[int]:
    return {(i * i) % q for i in range(1, q)}


def _cyclic_span(q: int, support: Iterable[int]) -> BinaryCode:
    base = sum(1 << i for i in support)
    full = (1 << q) - 1
    shifts = [((base << s) | (base >> (q - s))) & full for s in range(q)]
    return BinaryCode.from_rows(q, shifts)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def extended_qr(q: int) -> BinaryCode:
    """Extended binary quadratic residue code of length ``q + 1``.

    The cyclic code is spanned by the shifts of the residue-set polynomial
    (or of ``1`` plus it, whichever spans ``(q+1)/2`` dimensions); an overall
    parity coordinate is appended last.  Self-dual when ``q = -1 mod 8``.
    """
    if q < 3 or not _is_prime(q) or q % 8 not in (1, 7):
        raise ValueError(f"need an odd prime q = +-1 mod 8, got {q}")
    residues = sorted(_quadratic_residues(q))
    target = (q + 1) // 2
    for support in (residues, [0] + residues):
        cyc = _cyclic_span(q, support)
        if cyc.k == target:
            break
    else:  # pragma: no cover - excluded by the residue-class check
        raise ArithmeticError(f"no QR idempotent of dimension {target} for q={q}")
    rows = [r | ((r.bit_count() & 1) << q) for r in cyc.generator.rows]
    return BinaryCode.from_rows(q + 1, rows, name=f"xqr{q + 1}")


def reed_muller(r: int, m: int) -> BinaryCode:
    """RM(r, m): evaluations of monomials of degree <= r on F_2^m."""
    from itertools import combinations

    n = 1 << m
    var = [sum(1 << pt for pt in range(n) if pt >> i & 1) for i in range(m)]
    rows = []
    for deg in range(r + 1):
        for mono in combinations(range(m), deg):
            x = (1 << n) - 1
            for i in mono:
                x &= var[i]
            rows.append(x)
    return BinaryCode.from_rows(n, rows, name=f"rm{r}{m}")


def reed_muller_2_5() -> BinaryCode:
    code = reed_muller(2, 5)
    return BinaryCode(code.n, code.generator, code.pivots, "c82")


def repetition(n: int = 2) -> BinaryCode:
    return BinaryCode.from_rows(n, [(1 << n) - 1], name=f"rep{n}")


def load_code(source: TextIO | str, name: str | None = None) -> BinaryCode:
    """Parse the code file format.

    First non-comment line ``n k``; then ``k`` rows of ``n`` characters from
    ``{0,1}``.  Lines starting with ``#`` and blank lines are ignored.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    header = None
    rows: list[str] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise CodeParseError(f"expected header 'n k', got {line!r}", lineno)
            header = (int(parts[0]), int(parts[1]))
            continue
        n = header[0]
        if len(line) != n or any(ch not in "01" for ch in line):
            raise CodeParseError(f"expected {n} characters from {{0,1}}", lineno)
        rows.append(line)
    if header is None:
        raise CodeParseError("missing header")
    n, k = header
    if len(rows) != k:
        raise CodeParseError(f"header says {k} rows, found {len(rows)}")
    code = BinaryCode.from_generator(BitMatrix.from_strings(rows, n), name) if rows else \
        BinaryCode.from_generator(BitMatrix(n, ()), name)
    if code.k != k:
        raise CodeParseError(f"header dimension {k} but generator rank {code.k}")
    return code


def dump_code(c: BinaryCode, comments: Sequence[str] = ()) -> str:
    lines = [f"# {line}" for line in comments]
    lines.append(f"{c.n} {c.k}")
    lines.extend(c.generator.to_strings())
    return "\n".join(lines) + "\n"


# name -> (catalogued length, dimension, minimum distance, doubly even)
CATALOGUE = {
    "golay24": (24, 12, 8, True),
    "qr48": (48, 24, 12, True),
    "c81": (32, 16, 8, True),
    "c82": (32, 16, 8, True),
    "c83": (32, 16, 8, True),
    "c84": (32, 16, 8, True),
    "c85": (32, 16, 8, True),
    "x24": (24, 12, 4, False),
    "y24": (24, 12, 4, False),
    "z24": (24, 12, 6, False),
}

_BUILT = {
    "golay24": lambda: extended_qr(23),
    "qr48": lambda: extended_qr(47),
    "c81": lambda: extended_qr(31),
    "c82": reed_muller_2_5,
}


@lru_cache(maxsize=None)
def registry(name: str) -> BinaryCode:
    """Named codes: built ones are constructed, classified ones are read from
    the vendored data files."""
    key = name.lower()
    if key not in CATALOGUE:
        raise KeyError(f"unknown code {name!r}; known: {', '.join(CATALOGUE)}")
    if key in _BUILT:
        code = _BUILT[key]()
        return BinaryCode(code.n, code.generator, code.pivots, key)
    text = resources.files("sd120.data").joinpath(f"{key}.code").read_text()
    return load_code(text, name=key)


def registry_names() -> list[str]:
    return list(CATALOGUE)
