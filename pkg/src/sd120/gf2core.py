"""Bit-packed vectors and matrices over GF(2).

Bit order: coordinate ``i`` lives in word ``i // 64`` at bit ``i % 64``
(little-endian within the coordinate sequence).  Rows are stored as Python
integers, which are exactly that layout with unbounded width; ``words()``
exposes the fixed-width ``uint64`` form used by the vectorised kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64


def _mask(n: int) -> int:
    return (1 << n) - 1


def n_words(n: int) -> int:
    return max(1, (n + WORD - 1) // WORD)


def int_to_words(x: int, nw: int) -> np.ndarray:
    out = np.empty(nw, dtype=np.uint64)
    for j in range(nw):
        out[j] = (x >> (WORD * j)) & 0xFFFFFFFFFFFFFFFF
    return out


def pack_rows(rows: Sequence[int], n: int) -> np.ndarray:
    """Pack integer rows into a ``(len(rows), n_words(n))`` uint64 array."""
    nw = n_words(n)
    out = np.zeros((len(rows), nw), dtype=np.uint64)
    for i, r in enumerate(rows):
        out[i] = int_to_words(r, nw)
    return out


def unpack_rows(words: np.ndarray) -> list[int]:
    words = np.atleast_2d(words)
    out = []
    for row in words:
        x = 0
        for j, w in enumerate(row):
            x |= int(w) << (WORD * j)
        out.append(x)
    return out


def popcount_words(words: np.ndarray) -> np.ndarray:
    """Row-wise popcount of a ``(..., n_words)`` uint64 array."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits >> self.length:
            raise ValueError("bits set beyond length")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a binary string: {s!r}")
        return cls(len(s), sum(1 << i for i, ch in enumerate(s) if ch == "1"))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        x = 0
        for i in support:
            if not 0 <= i < length:
                raise IndexError(i)
            x ^= 1 << i
        return cls(length, x)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, _mask(length))

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self.bits >> i & 1

    def _check(self, other: "BitVector"):
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        x, out = self.bits, []
        while x:
            low = x & -x
            out.append(low.bit_length() - 1)
            x ^= low
        return out

    def restrict(self, coords: Sequence[int]) -> "BitVector":
        """Vector of length ``len(coords)`` reading ``self`` at ``coords``."""
        x = 0
        for j, i in enumerate(coords):
            x |= (self.bits >> i & 1) << j
        return BitVector(len(coords), x)

    def words(self) -> np.ndarray:
        return int_to_words(self.bits, n_words(self.length))


@dataclass(frozen=True)
class BitMatrix:
    """Dense binary matrix; ``rows[i]`` is row ``i`` packed into an int."""

    cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise ValueError("row has bits beyond cols")

    @classmethod
    def from_strings(cls, lines: Sequence[str], cols: int | None = None) -> "BitMatrix":
        vecs = [BitVector.from_string(s) for s in lines]
        if cols is None:
            if not vecs:
                raise ValueError("cannot infer width of an empty matrix")
            cols = vecs[0].length
        if any(v.length != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(cols, tuple(v.bits for v in vecs))

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = vecs[0].length
        if any(v.length != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(cols, tuple(v.bits for v in vecs))

    @classmethod
    def from_array(cls, a) -> "BitMatrix":
        a = np.asarray(a, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        weights = 1 << np.arange(a.shape[1], dtype=object)
        return cls(a.shape[1], tuple(int((row.astype(object) * weights).sum()) for row in a))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, cols: int) -> "BitMatrix":
        return cls(cols, (0,) * nrows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def __iter__(self):
        return (BitVector(self.cols, r) for r in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def to_strings(self) -> list[str]:
        return [str(BitVector(self.cols, r)) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in BitVector(self.cols, r).support():
                out[i, j] = 1
        return out

    def words(self) -> np.ndarray:
        return pack_rows(self.rows, self.cols)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.rows):
            for j in BitVector(self.cols, r).support():
                out[j] |= 1 << i
        return BitMatrix(self.nrows, tuple(out))

    def select_columns(self, coords: Sequence[int]) -> "BitMatrix":
        return BitMatrix(len(coords), tuple(BitVector(self.cols, r).restrict(coords).bits for r in self.rows))

    def permute_columns(self, images: Sequence[int]) -> "BitMatrix":
        """Send column ``j`` to column ``images[j]``."""
        if len(images) != self.cols:
            raise ValueError("permutation length mismatch")
        out = []
        for r in self.rows:
            x = 0
            for j in BitVector(self.cols, r).support():
                x |= 1 << images[j]
            out.append(x)
        return BitMatrix(self.cols, tuple(out))

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError("column mismatch")
        return BitMatrix(self.cols, self.rows + other.rows)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.nrows != self.nrows:
            raise ValueError("row count mismatch")
        return BitMatrix(self.cols + other.cols,
                         tuple(a | (b << self.cols) for a, b in zip(self.rows, other.rows)))


def rref(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Gauss-Jordan elimination.

    Returns ``(reduced, rank, pivots)``; zero rows are dropped from
    ``reduced`` and its rows are ordered by increasing pivot column.  The
    pivot of a row is its lowest set coordinate.
    """
    rows = [r for r in m.rows if r]
    basis: list[int] = []
    pivbits: list[int] = []
    for r in rows:
        for b, pb in zip(basis, pivbits):
            if r & pb:
                r ^= b
        if not r:
            continue
        low = r & -r
        for i, b in enumerate(basis):
            if b & low:
                basis[i] = b ^ r
        basis.append(r)
        pivbits.append(low)
    order = sorted(range(len(basis)), key=lambda i: pivbits[i])
    reduced = BitMatrix(m.cols, tuple(basis[i] for i in order))
    pivots = [pivbits[i].bit_length() - 1 for i in order]
    return reduced, len(pivots), pivots


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


def reduce_against(x: int, reduced: BitMatrix, pivots: Sequence[int]) -> int:
    """Residue of ``x`` modulo the row space of an RREF matrix."""
    for r, p in zip(reduced.rows, pivots):
        if x >> p & 1:
            x ^= r
    return x


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of ``{x : m x^T = 0}``, one free column per row."""
    reduced, _, pivots = rref(m)
    pivset = set(pivots)
    out = []
    for j in range(m.cols):
        if j in pivset:
            continue
        x = 1 << j
        for r, p in zip(reduced.rows, pivots):
            if r >> j & 1:
                x |= 1 << p
        out.append(x)
    return BitMatrix(m.cols, tuple(out))


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.nrows:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        for i in BitVector(a.cols, r).support():
            acc ^= b.rows[i]
        out.append(acc)
    return BitMatrix(b.cols, tuple(out))


def row_space_contains(reduced: BitMatrix, pivots: Sequence[int], x: int) -> bool:
    return reduce_against(x, reduced, pivots) == 0
