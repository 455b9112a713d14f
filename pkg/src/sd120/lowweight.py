"""Randomised low-weight codeword search (information-set decoding).

Each round draws a random column order, row-reduces the generator so that
its pivots land on the first independent columns in that order (an
information set), and then tries every combination of at most
``window_size`` reduced rows.  A codeword with at most ``window_size`` ones
on the information set is found in any round whose information set it
hits that lightly.

Absence of a witness is never a proof of minimum distance.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import combinations

from .codelib import BinaryCode
from .gf2core import BitVector

DEFAULT_ITERATIONS = 2000


@dataclass(frozen=True)
class SearchBudget:
    max_iterations: int = DEFAULT_ITERATIONS
    window_size: int = 2
    seed: int = 0
    stern: bool = False
    collision_bits: int = 12

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.window_size < 1:
            raise ValueError("window_size must be >= 1")

    def with_seed(self, seed: int) -> "SearchBudget":
        return SearchBudget(self.max_iterations, self.window_size, seed, self.stern, self.collision_bits)


@dataclass(frozen=True)
class Witness:
    codeword: BitVector
    weight: int
    iterations_used: int


def derive_seed(master_seed: int, task_index: int, attempt: int = 0) -> int:
    """64-bit task seed independent of scheduling order."""
    h = hashlib.blake2b(f"{master_seed}:{task_index}:{attempt}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "little")


def _reduce_on_order(rows: list[int], order: list[int]) -> list[int]:
    """Gauss-Jordan with pivots chosen along ``order``; returns the reduced
    rows (one per pivot)."""
    rows = list(rows)
    k = len(rows)
    done = 0
    for col in order:
        bit = 1 << col
        piv = -1
        for i in range(done, k):
            if rows[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        rows[done], rows[piv] = rows[piv], rows[done]
        pr = rows[done]
        for i in range(k):
            if i != done and rows[i] & bit:
                rows[i] ^= pr
        done += 1
        if done == k:
            break
    return rows


def _lee_brickell(rows: list[int], target: int, window: int) -> int | None:
    best = None
    best_w = target
    for r in rows:
        w = r.bit_count()
        if 0 < w < best_w:
            best, best_w = r, w
    if best is not None:
        return best
    for size in range(2, window + 1):
        for combo in combinations(rows, size):
            x = 0
            for r in combo:
                x ^= r
            w = x.bit_count()
            if 0 < w < best_w:
                best, best_w = x, w
        if best is not None:
            return best
    return None


def _stern(rows: list[int], target: int, half: int, zmask: int) -> int | None:
    """Collision variant: split the rows in two, match partial sums on the
    ``zmask`` window of redundancy columns."""
    mid = len(rows) // 2
    left, right = rows[:mid], rows[mid:]
    table: dict[int, list[int]] = {}
    for size in range(1, half + 1):
        for combo in combinations(left, size):
            x = 0
            for r in combo:
                x ^= r
            table.setdefault(x & zmask, []).append(x)
    best, best_w = None, target
    for size in range(1, half + 1):
        for combo in combinations(right, size):
            y = 0
            for r in combo:
                y ^= r
            for x in table.get(y & zmask, ()):
                w = (x ^ y).bit_count()
                if 0 < w < best_w:
                    best, best_w = x ^ y, w
    return best


def find_below(code: BinaryCode, target: int, budget: SearchBudget) -> Witness | None:
    """A verified codeword of weight ``< target``, or None if the budget runs out."""
    if target < 1:
        raise ValueError("target must be >= 1")
    rows0 = list(code.generator.rows)
    if not rows0:
        return None
    rng = random.Random(budget.seed)
    n = code.n
    order = list(range(n))
    for it in range(1, budget.max_iterations + 1):
        rng.shuffle(order)
        rows = _reduce_on_order(rows0, order)
        found = _lee_brickell(rows, target, min(2, budget.window_size))
        if found is None and budget.stern:
            pivots = set()
            for r in rows:
                pivots.add((r & -r).bit_length() - 1)
            redundant = [c for c in order if c not in pivots][:budget.collision_bits]
            zmask = sum(1 << c for c in redundant)
            found = _stern(rows, target, max(1, budget.window_size // 2), zmask)
        elif found is None and budget.window_size > 2:
            found = _lee_brickell(rows, target, budget.window_size)
        if found is not None:
            if not code.contains(found):  # pragma: no cover - soundness guard
                raise AssertionError("search produced a non-codeword")
            return Witness(BitVector(n, found), found.bit_count(), it)
    return None


def find_min_weight_word(code: BinaryCode, upper_hint: int | None = None,
                         budget: SearchBudget = SearchBudget()) -> Witness | None:
    """Lightest codeword seen while repeatedly lowering the target.

    The budget is shared: every round counts against ``max_iterations``.
    Deterministic given ``(code, budget)``.
    """
    target = (upper_hint + 1) if upper_hint is not None else code.n + 1
    best = None
    used = 0
    seed = budget.seed
    while used < budget.max_iterations:
        sub = SearchBudget(budget.max_iterations - used, budget.window_size, seed,
                           budget.stern, budget.collision_bits)
        w = find_below(code, target, sub)
        if w is None:
            break
        used += w.iterations_used
        best = Witness(w.codeword, w.weight, used)
        target = w.weight
        seed = derive_seed(seed, used)
    return best
