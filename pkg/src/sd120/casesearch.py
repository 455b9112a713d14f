"""Computational refutations of the remaining cycle types.

* ``59-(2;2)``: every candidate generator is built from a primitive element
  of ``P = GF(2^58)`` and searched for a codeword of weight below 24.
* ``5-(22;10)`` and ``7-(16;8)``: a self-dual code of length ``c + f`` is
  expanded for every choice of ``f`` fixed coordinates and checked for an
  expanded word that is too light or of weight not divisible by 4.
* the Golay case of ``7-(16;8)``: the fixed subcode has no weight-28 word,
  which clashes with ``A_28 = 3 (mod 7)`` for an extremal length-120 code.
"""

from __future__ import annotations

import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .codelib import BinaryCode, codewords, extremal_type2_enumerator, is_self_dual
from .decomp import (
    CycleStructure,
    Permutation,
    check_selfdual_conditions,
    expand_pi_inverse,
    expansion_layout,
    expand_word,
)
from .exclusion import mod_p_weight_test
from .gf2core import BitVector, popcount_words
from .lowweight import SearchBudget, Witness, derive_seed, find_below
from .modfield import PElement, PField, find_primitive, identity, power, trial_factor

P59 = 59
DELTA_EXPONENT = (1 << 29) - 1
DELTA_ORDER = (1 << 29) + 1  # 3 * 59 * 3033169
ORBIT_MODULUS = DELTA_ORDER // P59  # 9099507 = 3 * 3033169
EXPECTED_ORBIT_COUNT = 156889
DEFAULT_ALPHA_SEED = 20240601
P59_TARGET = 24
P59_STRUCTURE = CycleStructure.standard(P59, 2, 2)


# ---------------------------------------------------------------- p = 59

@dataclass(frozen=True)
class OrbitSummary:
    modulus: int
    representatives: np.ndarray = field(repr=False)
    count_including_zero: int
    count_excluding_zero: int

    def convention_matching(self, expected: int = EXPECTED_ORBIT_COUNT) -> str | None:
        if self.count_excluding_zero == expected:
            return "excluding the zero class"
        if self.count_including_zero == expected:
            return "including the zero class"
        return None


def doubling_orbit(i: int, modulus: int = ORBIT_MODULUS) -> list[int]:
    out, x = [], i % modulus
    while x not in out:
        out.append(x)
        x = 2 * x % modulus
    return out


def p59_orbit_representatives(modulus: int = ORBIT_MODULUS) -> OrbitSummary:
    """Least element of each orbit of ``k -> 2k`` on ``Z_modulus``."""
    if modulus % 2 == 0:
        raise ValueError("doubling is a bijection only for odd moduli")
    order = 1
    if modulus > 1:
        order, x = 1, 2 % modulus
        while x != 1:
            x = 2 * x % modulus
            order += 1
    idx = np.arange(modulus, dtype=np.int64)
    low = idx.copy()
    cur = idx.copy()
    for _ in range(order - 1):
        cur = (cur << 1) % modulus
        np.minimum(low, cur, out=low)
    reps = np.flatnonzero(low == idx)
    total = int(reps.size)
    return OrbitSummary(modulus, reps, total, total - 1)


def _mult_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def orbit_count_by_divisors(modulus: int = ORBIT_MODULUS) -> int:
    """Number of doubling orbits on ``Z_modulus`` (zero class included):
    ``sum over divisors m of phi(m) / ord_m(2)``."""
    fac = trial_factor(modulus)
    divs = [1]
    for q, e in fac.items():
        divs = [d * q ** i for d in divs for i in range(e + 1)]
    total = 0
    for m in divs:
        phi = m
        for q in fac:
            if m % q == 0:
                phi = phi // q * (q - 1)
        total += phi // _mult_order(2, m)
    return total


@dataclass(frozen=True)
class P59Family:
    """Fixed data of one sweep: the primitive element and ``delta``."""

    alpha: PElement
    alpha_seed: int | None = None

    @property
    def delta(self) -> PElement:
        return _delta(self.alpha)

    def b(self, k: int) -> PElement:
        return power(self.delta, k)

    def to_json(self) -> dict:
        return {"alpha_bits": hex(self.alpha.bits), "alpha_seed": self.alpha_seed}


_DELTA_CACHE: dict[int, PElement] = {}


def _delta(alpha: PElement) -> PElement:
    if alpha.bits not in _DELTA_CACHE:
        _DELTA_CACHE[alpha.bits] = power(alpha, DELTA_EXPONENT)
    return _DELTA_CACHE[alpha.bits]


def default_family(seed: int = DEFAULT_ALPHA_SEED) -> P59Family:
    return P59Family(find_primitive(PField(P59), seed), seed)


@dataclass(frozen=True)
class P59Candidate:
    k: int
    b: PElement
    generator_rows: tuple[int, ...] = field(repr=False)

    @property
    def code(self) -> BinaryCode:
        return BinaryCode.from_rows(2 * P59 + 2, self.generator_rows, name=f"p59[k={self.k}]")


def p59_generator_rows(b: PElement) -> list[int]:
    """Rows of the block matrix: two fixed-subcode rows, then the 58 shifts
    of ``(e(x), b(x))`` as circulant blocks; fixed points are coordinates
    118 and 119."""
    p = P59
    ones = (1 << p) - 1
    rows = [ones | (1 << (2 * p)), (ones << p) | (1 << (2 * p + 1))]
    e = identity(p)
    for i in range(p - 1):
        rows.append(e.shift(i).bits | (b.shift(i).bits << p))
    return rows


def build_p59_candidate(k: int, family: P59Family, check: bool = True) -> P59Candidate:
    """Candidate generator for ``phi(E*)`` spanned by ``(e, delta^k)``.

    With ``check`` the construction gates run: ``alpha`` primitive,
    ``b^(2^29 + 1) = e``, the code self-dual and both halves of the
    decomposition criterion satisfied.
    """
    if not 0 <= k <= ORBIT_MODULUS:
        raise ValueError(f"k must lie in [0, {ORBIT_MODULUS}]")
    field_ = PField(P59)
    if check and not field_.is_primitive(family.alpha):
        raise ValueError("alpha is not primitive")
    b = family.b(k)
    if check and power(b, DELTA_ORDER) != identity(P59):
        raise ArithmeticError("b(x)^(2^29+1) != e(x)")
    cand = P59Candidate(k, b, tuple(p59_generator_rows(b)))
    if check:
        code = cand.code
        if code.k != 60 or not is_self_dual(code):
            raise ArithmeticError(f"candidate k={k} is not self-dual")
        report = check_selfdual_conditions(code, P59_STRUCTURE)
        if not report.both:
            raise ArithmeticError(f"candidate k={k} fails the decomposition criterion: {report}")
    return cand


def equivalence_moves(gen: Sequence[PElement], t: int, shifts: Sequence[int]) -> tuple[PElement, ...]:
    """Substitute ``x -> x^t`` in every coordinate, then multiply coordinate
    ``j`` by ``x^shifts[j]``.  Both moves give an equivalent code."""
    if not gen:
        raise ValueError("empty generator")
    p = gen[0].p
    if not 1 <= t <= p - 1:
        raise ValueError(f"t must lie in [1, {p - 1}]")
    if len(shifts) != len(gen):
        raise ValueError("one shift per coordinate")
    if any(not 0 <= s <= p - 1 for s in shifts):
        raise ValueError(f"shifts must lie in [0, {p - 1}]")
    return tuple(a.substitute(t).shift(s) for a, s in zip(gen, shifts))


def coset_shift(family: P59Family, k: int) -> tuple[int, int]:
    """Write ``delta^k = x^s e(x) * delta^(k mod N)``; returns ``(k mod N, s)``."""
    base = k % ORBIT_MODULUS
    ratio = power(family.delta, k - base) if k >= base else None
    e = identity(P59)
    for s in range(P59):
        if e.shift(s) == ratio:
            return base, s
    raise ArithmeticError("delta^N is not a power of x e(x)")


def orbit_mate_permutation(family: P59Family, k: int) -> tuple[int, Permutation]:
    """Coordinate permutation carrying candidate ``k`` onto candidate
    ``2k mod N``: square every cycle polynomial (``j -> 2j`` inside each
    block) and rotate the second block to absorb the ``<x e(x)>`` factor."""
    k2, s = coset_shift(family, 2 * k)
    p = P59
    images = list(range(2 * p + 2))
    for j in range(p):
        images[j] = 2 * j % p
        images[p + j] = p + (2 * j - s) % p
    return k2, Permutation(tuple(images))


# -------------------------------------------------------- sweep reports

@dataclass
class TaskRecord:
    id: int | str
    status: str
    witness_weight: int | None = None
    iterations: int = 0
    attempts: int = 1
    detail: dict | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        if d["detail"] is None:
            del d["detail"]
        return d


@dataclass
class SweepReport:
    case: str
    total: int
    records: list[TaskRecord] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def completed(self) -> int:
        return len(self.records)

    @property
    def refuted(self) -> int:
        return sum(r.status == "refuted" for r in self.records)

    @property
    def unresolved(self) -> int:
        return self.completed - self.refuted

    @property
    def cursor(self) -> int:
        return self.completed

    @property
    def witness_log(self) -> list[tuple]:
        return [(r.id, r.witness_weight) for r in self.records if r.status == "refuted"]

    def summary(self) -> dict:
        weights: dict[int, int] = {}
        for _, w in self.witness_log:
            if w is not None:
                weights[w] = weights.get(w, 0) + 1
        return {
            "case": self.case,
            "total": self.total,
            "completed": self.completed,
            "refuted": self.refuted,
            "unresolved": self.unresolved,
            "unresolved_ids": [r.id for r in self.records if r.status != "refuted"],
            "witness_weights": {str(k): v for k, v in sorted(weights.items())},
            "meta": self.meta,
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(r.to_json(), sort_keys=True) for r in self.records]
        lines.append(json.dumps({"summary": self.summary()}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def write(self, path: str | os.PathLike):
        Path(path).write_text(self.to_jsonl())


class Checkpoint:
    """Append-only record log plus a small cursor file.

    ``<path>.records.jsonl`` holds one finished task per line; ``<path>``
    holds ``{"cursor": ..., "master_seed": ..., "case": ...}``.
    """

    def __init__(self, path: str | os.PathLike, case: str, master_seed: int):
        self.path = Path(path)
        self.records_path = self.path.with_name(self.path.name + ".records.jsonl")
        self.case = case
        self.master_seed = master_seed
        self._written = 0

    def load(self) -> list[TaskRecord]:
        if not self.path.exists():
            self._truncate(0)
            return []
        state = json.loads(self.path.read_text())
        if state.get("case") != self.case or state.get("master_seed") != self.master_seed:
            raise ValueError(f"checkpoint {self.path} belongs to a different run: {state}")
        out = []
        if self.records_path.exists():
            with self.records_path.open() as fh:
                for line in fh:
                    if len(out) == state["cursor"]:
                        break
                    out.append(TaskRecord(**json.loads(line)))
        self._written = len(out)
        self._truncate(len(out))  # drop lines written after the last cursor
        return out

    def _truncate(self, count: int):
        if not self.records_path.exists():
            return
        with self.records_path.open("r+") as fh:
            for _ in range(count):
                fh.readline()
            fh.truncate(fh.tell())

    def save(self, records: list[TaskRecord]):
        """Append records not yet on disk, then move the cursor."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        written = self._written
        with self.records_path.open("a") as fh:
            for r in records[written:]:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
        self._written = len(records)
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(json.dumps({"case": self.case, "master_seed": self.master_seed,
                                   "cursor": len(records)}))
        tmp.replace(self.path)


def _run_tasks(fn, args: list, jobs: int) -> Iterator:
    if jobs <= 1 or len(args) <= 1:
        for a in args:
            yield fn(a)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, args, chunksize=1)


def _sweep(case: str, task_ids: Sequence, fn, make_args, total: int, meta: dict,
           master_seed: int, checkpoint: str | os.PathLike | None, jobs: int,
           every: int, stop_after: int | None = None) -> SweepReport:
    ckpt = Checkpoint(checkpoint, case, master_seed) if checkpoint else None
    records = ckpt.load() if ckpt else []
    done = len(records)
    todo = list(task_ids[done:])
    if stop_after is not None:
        todo = todo[:stop_after]
    for start in range(0, len(todo), every):
        chunk = todo[start:start + every]
        records.extend(_run_tasks(fn, [make_args(t) for t in chunk], jobs))
        if ckpt:
            ckpt.save(records)
    return SweepReport(case, total, records, meta)


def _p59_task(args) -> TaskRecord:
    k, alpha_bits, budget, master_seed, retries = args
    family = P59Family(PElement(P59, alpha_bits))
    code = build_p59_candidate(k, family).code
    used = 0
    for attempt in range(retries + 1):
        w = find_below(code, P59_TARGET, budget.with_seed(derive_seed(master_seed, k, attempt)))
        if w is not None:
            used += w.iterations_used
            if not code.contains(w.codeword) or w.codeword.weight != w.weight:
                raise AssertionError(f"witness for k={k} failed re-verification")
            return TaskRecord(k, "refuted", w.weight, used, attempt + 1)
        used += budget.max_iterations
    return TaskRecord(k, "unresolved", None, used, retries + 1)


def p59_sweep(reps: Sequence[int], budget: SearchBudget = SearchBudget(), *,
              family: P59Family | None = None, master_seed: int = 0, retries: int = 1,
              checkpoint: str | os.PathLike | None = None, jobs: int = 1,
              every: int = 100, stop_after: int | None = None) -> SweepReport:
    """Build and search the candidate for every representative ``k``."""
    family = family or default_family()
    reps = [int(k) for k in reps]
    meta = {"family": family.to_json(), "budget": asdict(budget), "master_seed": master_seed,
            "retries": retries, "target": P59_TARGET}

    def make(k):
        return (k, family.alpha.bits, budget, master_seed, retries)

    return _sweep("p59", reps, _p59_task, make, len(reps), meta, master_seed,
                  checkpoint, jobs, every, stop_after)


def sample_representatives(summary: OrbitSummary, count: int, seed: int,
                           include_zero: bool = True) -> list[int]:
    reps = summary.representatives if include_zero else summary.representatives[1:]
    rng = random.Random(seed)
    picked = rng.sample(range(len(reps)), min(count, len(reps)))
    return sorted(int(reps[i]) for i in picked)


# ----------------------------------------------- fixed-point subset sweeps

def subset_mask(subset: Iterable[int]) -> int:
    return sum(1 << i for i in subset)


def sample_subsets(m: int, f: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """``count`` distinct uniformly random ``f``-subsets of ``range(m)``,
    in draw order."""
    total = math.comb(m, f)
    if count >= total:
        return list(combinations(range(m), f))
    rng = random.Random(seed)
    seen: set[tuple[int, ...]] = set()
    out = []
    while len(out) < count:
        s = tuple(sorted(rng.sample(range(m), f)))
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def _violates(exp: np.ndarray, d_target: int, doubly_even: bool) -> np.ndarray:
    bad = exp < d_target
    if doubly_even:
        bad |= exp % 4 != 0
    return bad


@dataclass(frozen=True)
class SubsetVerdict:
    subset: tuple[int, ...]
    refuted: bool
    light_weight: int | None
    light_word: int | None
    mod4_weight: int | None
    mod4_word: int | None
    violating_weights: tuple[int, ...] = ()

    def record(self, idx: int) -> TaskRecord:
        weights = [w for w in (self.light_weight, self.mod4_weight) if w is not None]
        return TaskRecord(
            idx, "refuted" if self.refuted else "unresolved",
            min(weights) if weights else None, 1, 1,
            {"subset": list(self.subset), "light": self.light_weight, "mod4": self.mod4_weight,
             "violating_weights": list(self.violating_weights)})


class SubsetSweeper:
    """Vectorised test of many fixed-point choices against one code.

    ``pool`` holds every codeword when the code is small enough, otherwise
    the codewords that can expand below ``d_target`` plus the generator
    rows (doubly-evenness of the self-orthogonal expansion is decided by
    its generators).
    """

    def __init__(self, code0: BinaryCode, p: int, f: int, d_target: int = 24,
                 doubly_even: bool = True, full_pool_dim: int = 16):
        if not is_self_dual(code0):
            raise ValueError("code0 must be self-dual")
        if not 0 < f < code0.n:
            raise ValueError("need 0 < f < length")
        if code0.n > 64:
            raise ValueError("subset sweeps support lengths up to 64")
        self.code0, self.p, self.f, self.d = code0, p, f, d_target
        self.doubly_even = doubly_even
        words = codewords(code0, dim_cap=max(full_pool_dim, 20))[:, 0]
        words = words[words != 0]
        wt = np.bitwise_count(words).astype(np.int64)
        if code0.k <= full_pool_dim:
            keep = np.ones(words.shape, dtype=bool)
        else:
            keep = p * wt - (p - 1) * np.minimum(wt, f) < d_target
        gen = np.array(code0.generator.rows, dtype=np.uint64)
        self.pool = np.unique(np.concatenate([words[keep], gen]))
        self.pool_wt = np.bitwise_count(self.pool).astype(np.int64)
        self.complete = bool(code0.k <= full_pool_dim)

    def expanded_weights(self, masks: np.ndarray) -> np.ndarray:
        """``(len(masks), len(pool))`` expanded weights ``p*x + y``."""
        y = np.bitwise_count(self.pool[None, :] & masks[:, None]).astype(np.int64)
        return self.p * self.pool_wt[None, :] - (self.p - 1) * y

    def check(self, subsets: Sequence[tuple[int, ...]], record_weights: bool = False) -> list[SubsetVerdict]:
        out = []
        block = max(1, (1 << 22) // max(1, len(self.pool)))
        for start in range(0, len(subsets), block):
            chunk = subsets[start:start + block]
            masks = np.array([subset_mask(s) for s in chunk], dtype=np.uint64)
            exp = self.expanded_weights(masks)
            big = np.iinfo(np.int64).max
            light = np.where(exp < self.d, exp, big)
            li = light.argmin(axis=1)
            if self.doubly_even:
                bad4 = np.where(exp % 4 != 0, exp, big)
                bi = bad4.argmin(axis=1)
            for row, s in enumerate(chunk):
                lw = int(light[row, li[row]])
                lw_ok = lw != big
                if self.doubly_even:
                    bw = int(bad4[row, bi[row]])
                    bw_ok = bw != big
                else:
                    bw_ok = False
                vw = ()
                if record_weights:
                    e = exp[row][_violates(exp[row], self.d, self.doubly_even)]
                    vw = tuple(int(x) for x in np.unique(e))
                out.append(SubsetVerdict(
                    tuple(s), lw_ok or bw_ok,
                    lw if lw_ok else None, int(self.pool[li[row]]) if lw_ok else None,
                    bw if bw_ok else None, int(self.pool[bi[row]]) if bw_ok else None, vw))
        return out

    def count_unrefuted_all(self) -> tuple[int, int, list[tuple[int, ...]]]:
        """Exhaustive pass over all ``f``-subsets by depth-first search.

        A branch is closed as soon as some pool word expands below
        ``d_target`` (the overlap only grows as points are added), so whole
        subtrees are counted as refuted without being listed.  Returns
        ``(total, refuted, unrefuted_subsets)``; the survivors of the
        lightness test are then checked for the mod-4 obstruction.
        """
        m, f, p = self.code0.n, self.f, self.p
        light_pool = [int(w) for w, wt in zip(self.pool, self.pool_wt)
                      if p * wt - (p - 1) * min(int(wt), f) < self.d]
        # a word with weight wt kills S once |w & S| > (p*wt - d) / (p-1)
        limits = [(p * w.bit_count() - self.d) // (p - 1) for w in light_pool]
        by_coord = [[j for j, w in enumerate(light_pool) if w >> i & 1] for i in range(m)]
        counts = [0] * len(light_pool)
        survivors: list[tuple[int, ...]] = []
        chosen: list[int] = []

        def dfs(start: int):
            if len(chosen) == f:
                survivors.append(tuple(chosen))
                return
            for i in range(start, m - (f - len(chosen)) + 1):
                dead = False
                for j in by_coord[i]:
                    counts[j] += 1
                    if counts[j] > limits[j]:
                        dead = True
                if not dead:
                    chosen.append(i)
                    dfs(i + 1)
                    chosen.pop()
                for j in by_coord[i]:
                    counts[j] -= 1

        dfs(0)
        unrefuted = [v.subset for v in self.check(survivors) if not v.refuted] if survivors else []
        total = math.comb(m, f)
        return total, total - len(unrefuted), unrefuted


def verify_subset_witness(code0: BinaryCode, p: int, subset: Sequence[int], word: int,
                          claimed: int) -> bool:
    """Re-derive a witness inside the explicitly expanded code."""
    cycles = [i for i in range(code0.n) if i not in set(subset)]
    big = expand_pi_inverse(code0, cycles, p)
    layout = expansion_layout(code0.n, cycles, p)
    x = expand_word(word, layout)
    on_cycles = bin(word & subset_mask(cycles)).count("1")
    return (code0.contains(word) and big.contains(x) and x.bit_count() == claimed
            and claimed == p * on_cycles + word.bit_count() - on_cycles)


def fixed_point_sweep(code0: BinaryCode, p: int, f: int, d_target: int = 24, *,
                      subsets: Sequence[tuple[int, ...]] | None = None,
                      sample: int | None = 1000, seed: int = 0, doubly_even: bool = True,
                      record_weights: bool = False, case: str | None = None,
                      checkpoint: str | os.PathLike | None = None, every: int = 1000) -> SweepReport:
    """Test fixed-point choices for ``pi(F) = code0``.

    A choice ``S`` is refuted when the expansion ``pi^-1(code0)`` with ``S``
    as fixed points has a word of weight below ``d_target`` or (with
    ``doubly_even``) of weight not divisible by 4.  ``subsets`` overrides
    sampling; ``sample=None`` takes every subset.
    """
    if subsets is None:
        if sample is None:
            subsets = list(combinations(range(code0.n), f))
        else:
            subsets = sample_subsets(code0.n, f, sample, seed)
    subsets = [tuple(s) for s in subsets]
    if any(len(s) != f for s in subsets):
        raise ValueError(f"every subset must have {f} elements")
    sweeper = SubsetSweeper(code0, p, f, d_target, doubly_even)
    label = case or f"{p}-({code0.n - f};{f})"
    meta = {"code": code0.name, "p": p, "f": f, "d_target": d_target, "doubly_even": doubly_even,
            "sample": sample, "seed": seed}
    ids = list(range(len(subsets)))

    def run_chunk(idx_chunk):
        verdicts = sweeper.check([subsets[i] for i in idx_chunk], record_weights)
        return [v.record(i) for i, v in zip(idx_chunk, verdicts)]

    ckpt = Checkpoint(checkpoint, label, seed) if checkpoint else None
    records = ckpt.load() if ckpt else []
    for start in range(len(records), len(ids), every):
        records.extend(run_chunk(ids[start:start + every]))
        if ckpt:
            ckpt.save(records)
    return SweepReport(label, len(subsets), records, meta)


def free_coordinates(code0: BinaryCode, p: int, d_target: int = 24) -> list[int]:
    """Coordinates that may be fixed points: those lying in no codeword whose
    expansion is forced below ``d_target`` by a single fixed coordinate."""
    words = codewords(code0)[:, 0]
    wt = np.bitwise_count(words).astype(np.int64)
    bad = (wt > 0) & (p * (wt - 1) + 1 < d_target)
    union = 0
    for w in words[bad]:
        union |= int(w)
    return [i for i in range(code0.n) if not union >> i & 1]


# ------------------------------------------------------- Golay mod-7 test

@dataclass(frozen=True)
class Mod7Result:
    subset: tuple[int, ...]
    a28_fixed: int
    consistent: bool


@dataclass
class Mod7Report:
    extremal_a28: int
    p: int
    results: list[Mod7Result]

    @property
    def all_inconsistent(self) -> bool:
        return all(not r.consistent for r in self.results)

    def as_sweep_report(self, case: str = "7-16-8/golay24") -> SweepReport:
        recs = [TaskRecord(i, "unresolved" if r.consistent else "refuted", None, 1, 1,
                           {"subset": list(r.subset), "A28": r.a28_fixed})
                for i, r in enumerate(self.results)]
        return SweepReport(case, len(recs), recs, {"test": f"A_28 mod {self.p}"})

    def summary(self) -> dict:
        counts: dict[int, int] = {}
        for r in self.results:
            counts[r.a28_fixed] = counts.get(r.a28_fixed, 0) + 1
        return {"subsets": len(self.results), "extremal_A28": self.extremal_a28,
                "extremal_A28_mod_p": self.extremal_a28 % self.p,
                "fixed_A28_histogram": {str(k): v for k, v in sorted(counts.items())},
                "consistent": sum(r.consistent for r in self.results),
                "all_inconsistent": self.all_inconsistent}


def golay_mod7_test(subsets: Sequence[tuple[int, ...]] | None = None, *, code: BinaryCode | None = None,
                    p: int = 7, weight: int = 28, extremal_a: int | None = None,
                    n_big: int = 120) -> Mod7Report:
    """Count weight-``weight`` words of the expanded fixed code for each
    fixed-point choice and test them against the extremal count mod ``p``.

    Every codeword of ``code`` (dimension 12 for the Golay code) is expanded
    for every subset; nothing is skipped.
    """
    from .codelib import registry

    code = code or registry("golay24")
    c = (n_big - code.n) // (p - 1)
    f = code.n - c
    if p * c + f != n_big:
        raise ValueError(f"no type {p}-(c;f) with c+f={code.n} and pc+f={n_big}")
    if extremal_a is None:
        extremal_a = extremal_type2_enumerator(n_big)[weight]
    if subsets is None:
        subsets = combinations(range(code.n), f)
    words = codewords(code)[:, 0]
    wt = np.bitwise_count(words).astype(np.int64)
    results = []
    batch: list[tuple[int, ...]] = []

    def flush():
        masks = np.array([subset_mask(s) for s in batch], dtype=np.uint64)
        y = np.bitwise_count(words[None, :] & masks[:, None]).astype(np.int64)
        exp = p * wt[None, :] - (p - 1) * y
        counts = (exp == weight).sum(axis=1)
        for s, a in zip(batch, counts):
            results.append(Mod7Result(tuple(s), int(a), mod_p_weight_test(extremal_a, int(a), p)))
        batch.clear()

    for s in subsets:
        batch.append(tuple(s))
        if len(batch) == 512:
            flush()
    if batch:
        flush()
    return Mod7Report(extremal_a, p, results)


# --------------------------------------------------- theorem composition

@dataclass(frozen=True)
class CaseExclusion:
    """A type removed beyond the lemma filters, with the kind of evidence."""

    label: str
    evidence: str  # "computed", "sampled" or "cited"
    detail: str


# Types whose exclusion rests on a written argument rather than a search.
CITED_EXCLUSIONS = (
    CaseExclusion("3-(30;30)", "cited", "weight argument on the (I|E) form of pi(F)"),
    CaseExclusion("5-(20;20)", "cited", "doubly-even (I|E') form forces a word of weight <= 12"),
)


def exclusion_from_reports(label: str, reports: Sequence[SweepReport], exhaustive: bool,
                           detail: str = "") -> CaseExclusion | None:
    """A computed exclusion when every report finished with nothing
    unresolved; None otherwise."""
    if not reports or any(r.unresolved or r.completed < r.total for r in reports):
        return None
    done = sum(r.refuted for r in reports)
    kind = "computed" if exhaustive else "sampled"
    return CaseExclusion(label, kind, f"{done} tasks refuted" + (f"; {detail}" if detail else ""))


def theorem_table(exclusions: Iterable[CaseExclusion], n: int = 120, d: int = 24) -> dict[int, list[str]]:
    """Types surviving the full lemma set minus the given case exclusions."""
    from .exclusion import type_table

    gone = {e.label for e in exclusions}
    out = {}
    for p, types in type_table(n, d, "full").items():
        alive = [t.label for t in types if t.label not in gone]
        if alive:
            out[p] = alive
    return out
