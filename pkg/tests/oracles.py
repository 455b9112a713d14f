"""Slow, obviously-correct reference implementations for the tests.

Everything here works on ``numpy`` 0/1 arrays or plain Python loops and
shares no code with the package beyond the data types.
"""

from __future__ import annotations

import random
from itertools import product

import numpy as np

from sd120.codelib import BinaryCode


def bits(x: int, n: int) -> np.ndarray:
    return np.array([(x >> i) & 1 for i in range(n)], dtype=np.uint8)


def to_int(v) -> int:
    return sum(int(b) << i for i, b in enumerate(v))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            s = 0
            for t in range(a.shape[1]):
                s ^= int(a[i, t]) & int(b[t, j])
            out[i, j] = s
    return out


def rank(a: np.ndarray) -> int:
    """Gaussian elimination on a copy, leftmost pivots."""
    m = a.copy() % 2
    r = 0
    for col in range(m.shape[1]):
        piv = next((i for i in range(r, m.shape[0]) if m[i, col]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        for i in range(m.shape[0]):
            if i != r and m[i, col]:
                m[i] ^= m[r]
        r += 1
    return r


def span(rows: list[int]) -> set[int]:
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def all_codewords(code: BinaryCode) -> list[int]:
    return sorted(span(list(code.generator.rows)))


def weight_distribution(code: BinaryCode) -> list[int]:
    a = [0] * (code.n + 1)
    for w in all_codewords(code):
        a[w.bit_count()] += 1
    return a


def min_weight(code: BinaryCode) -> int:
    return min(w.bit_count() for w in all_codewords(code) if w)


def kernel_by_search(a: np.ndarray) -> set[int]:
    """Every x with a @ x = 0, by enumeration (small column counts only)."""
    n = a.shape[1]
    rows = [to_int(r) for r in a]
    return {x for x in range(1 << n) if all((r & x).bit_count() % 2 == 0 for r in rows)}


def cyclic_conv(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * p
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[(i + j) % p] ^= x & y
    return out


def random_self_dual(n: int, rng: random.Random, steps: int = 12) -> BinaryCode:
    """Random walk through self-dual codes by neighbour steps, starting
    from a permuted direct sum of ``[2,1]`` repetition codes."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [(1 << perm[2 * i]) | (1 << perm[2 * i + 1]) for i in range(n // 2)]
    code = BinaryCode.from_rows(n, rows)
    for _ in range(steps):
        while True:
            u = rng.getrandbits(n)
            if u.bit_count() % 2 == 0 and u and not code.contains(u):
                break
        keep = []
        odd = None
        for r in code.generator.rows:
            if (r & u).bit_count() % 2 == 0:
                keep.append(r)
            elif odd is None:
                odd = r
            else:
                keep.append(r ^ odd)
        code = BinaryCode.from_rows(n, keep + [u])
    return code


def expanded_words(code0: BinaryCode, p: int, fixed: set[int]) -> list[int]:
    """Expanded weights ``p * |x on cycles| + |x on fixed|`` of every word."""
    return [p * sum(1 for i in range(code0.n) if w >> i & 1 and i not in fixed)
            + sum(1 for i in fixed if w >> i & 1) for w in all_codewords(code0)]


def every_vector(n: int):
    for t in product((0, 1), repeat=n):
        yield to_int(t)
