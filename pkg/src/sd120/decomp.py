"""Prime-order automorphisms and the induced decomposition of a code.

For ``sigma`` of type ``p-(c;f)`` the code splits as ``F + E`` where ``F``
is the fixed subcode and ``E`` holds the words of even weight on every
cycle and fixed point.  ``F`` collapses to a length ``c + f`` code under
``project_pi``; ``E`` (fixed coordinates dropped) maps into ``P^c`` under
``phi_map``.

Cycle sets are stored in orbit order ``(i, sigma(i), sigma^2(i), ...)``, so
coefficient ``j`` of the polynomial of a cycle reads coordinate
``sigma^j(i)`` and applying ``sigma`` to a word multiplies every cycle
polynomial by ``x``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

from .codelib import BinaryCode, dual, is_self_dual
from .gf2core import BitMatrix, BitVector, kernel_basis, rref
from .modfield import PElement, PField, hermitian_ip, is_prime, reciprocal_ip


class SigmaNotAutomorphism(ValueError):
    pass


class PermutationParseError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """0-based images: coordinate ``i`` is sent to ``images[i]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a bijection on 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if a in seen:
                    raise ValueError(f"point {a} appears twice")
                seen.add(a)
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``self * other`` applies ``self`` first."""
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.n else 1

    def apply(self, v: BitVector | int) -> int:
        """Image of a word: bit ``i`` moves to bit ``images[i]``."""
        x = v.bits if isinstance(v, BitVector) else v
        out = 0
        while x:
            low = x & -x
            out |= 1 << self.images[low.bit_length() - 1]
            x ^= low
        return out

    def to_cycle_string(self) -> str:
        parts = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) if parts else "()"

    def to_image_string(self) -> str:
        return " ".join(str(i + 1) for i in self.images)


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Read 1-based cycle notation ``(1 2 3)(4 5)`` or a line of images.

    Cycle notation needs ``n`` when the largest point is a fixed point.
    """
    text = text.strip()
    if "(" in text:
        body = re.sub(r"\s+", " ", text)
        if not re.fullmatch(r"(\(\s*[\d ,]*\s*\)\s*)+", body):
            raise PermutationParseError(f"malformed cycle notation: {text!r}")
        cycles = []
        for grp in re.findall(r"\(([^)]*)\)", body):
            pts = [int(t) - 1 for t in re.split(r"[ ,]+", grp.strip()) if t]
            if any(p < 0 for p in pts):
                raise PermutationParseError("points are 1-based")
            if pts:
                cycles.append(pts)
        top = max((max(c) + 1 for c in cycles), default=0)
        if n is None:
            n = top
        if top > n:
            raise PermutationParseError(f"point {top} exceeds n = {n}")
        try:
            return Permutation.from_cycles(n, cycles)
        except ValueError as exc:
            raise PermutationParseError(str(exc)) from None
    try:
        images = [int(t) - 1 for t in text.split()]
    except ValueError:
        raise PermutationParseError(f"non-integer image in {text!r}") from None
    if n is not None and len(images) != n:
        raise PermutationParseError(f"expected {n} images, got {len(images)}")
    try:
        return Permutation(tuple(images))
    except ValueError as exc:
        raise PermutationParseError(str(exc)) from None


@dataclass(frozen=True)
class CycleStructure:
    p: int
    cycle_sets: tuple[tuple[int, ...], ...]
    fixed_points: tuple[int, ...]

    @property
    def c(self) -> int:
        return len(self.cycle_sets)

    @property
    def f(self) -> int:
        return len(self.fixed_points)

    @property
    def n(self) -> int:
        return self.p * self.c + self.f

    @property
    def type_label(self) -> str:
        return f"{self.p}-({self.c};{self.f})"

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """``Omega_1 .. Omega_{c+f}``: cycles then singleton fixed points."""
        return self.cycle_sets + tuple((i,) for i in self.fixed_points)

    def pi_coordinates(self) -> list[int]:
        """The coordinate sampled by ``pi`` for each block (first of the orbit)."""
        return [cyc[0] for cyc in self.cycle_sets] + list(self.fixed_points)

    def standard_relabeling(self) -> Permutation:
        """Relabel so cycles occupy consecutive blocks of ``p`` and fixed
        points come last, each cycle in orbit order."""
        images = [0] * self.n
        pos = 0
        for cyc in self.cycle_sets:
            for i in cyc:
                images[i] = pos
                pos += 1
        for i in self.fixed_points:
            images[i] = pos
            pos += 1
        return Permutation(tuple(images))

    @classmethod
    def standard(cls, p: int, c: int, f: int) -> "CycleStructure":
        return cls(p, tuple(tuple(range(j * p, (j + 1) * p)) for j in range(c)),
                   tuple(range(p * c, p * c + f)))

    def permutation(self) -> Permutation:
        return Permutation.from_cycles(self.n, self.cycle_sets)


def cycle_structure(sigma: Permutation) -> CycleStructure:
    cycles = sigma.cycles()
    p = sigma.order()
    if not is_prime(p):
        raise ValueError(f"order {p} is not prime")
    moving = tuple(c for c in cycles if len(c) > 1)
    fixed = tuple(c[0] for c in cycles if len(c) == 1)
    return CycleStructure(p, moving, fixed)


def is_automorphism(code: BinaryCode, sigma: Permutation) -> bool:
    if sigma.n != code.n:
        return False
    return code.permuted(sigma.images) == code


def _left_kernel_rows(gen: BitMatrix, m: BitMatrix) -> list[int]:
    """Rows ``x G`` for ``x`` spanning the left kernel of ``m`` (``k x t``)."""
    ker = kernel_basis(m.transpose())
    out = []
    for x in ker.rows:
        acc = 0
        for i in BitVector(gen.nrows, x).support():
            acc ^= gen.rows[i]
        out.append(acc)
    return out


def _check_sigma(code: BinaryCode, structure: CycleStructure):
    if structure.n != code.n:
        raise ValueError(f"structure acts on {structure.n} points, code has length {code.n}")
    if not is_automorphism(code, structure.permutation()):
        raise SigmaNotAutomorphism(f"{structure.type_label} does not preserve the code")


def fixed_subcode(code: BinaryCode, structure: CycleStructure) -> BinaryCode:
    _check_sigma(code, structure)
    sigma = structure.permutation()
    gen = code.generator
    diff = BitMatrix(code.n, tuple(r ^ sigma.apply(r) for r in gen.rows))
    return BinaryCode.from_rows(code.n, _left_kernel_rows(gen, diff))


def _block_parity_matrix(gen: BitMatrix, structure: CycleStructure) -> BitMatrix:
    masks = [sum(1 << i for i in blk) for blk in structure.blocks]
    rows = []
    for r in gen.rows:
        rows.append(sum(((r & m).bit_count() & 1) << j for j, m in enumerate(masks)))
    return BitMatrix(len(masks), tuple(rows))


def even_subcode(code: BinaryCode, structure: CycleStructure) -> BinaryCode:
    _check_sigma(code, structure)
    gen = code.generator
    return BinaryCode.from_rows(code.n, _left_kernel_rows(gen, _block_parity_matrix(gen, structure)))


@dataclass(frozen=True)
class Decomposition:
    F: BinaryCode
    E: BinaryCode
    structure: CycleStructure


def decompose(code: BinaryCode, sigma: Permutation | CycleStructure) -> Decomposition:
    structure = sigma if isinstance(sigma, CycleStructure) else cycle_structure(sigma)
    F = fixed_subcode(code, structure)
    E = even_subcode(code, structure)
    return Decomposition(F, E, structure)


def direct_sum_holds(code: BinaryCode, dec: Decomposition) -> bool:
    joined = BinaryCode.from_generator(dec.F.generator.stack(dec.E.generator))
    return joined == code and dec.F.k + dec.E.k == code.k


def _is_sigma_fixed(x: int, structure: CycleStructure) -> bool:
    for cyc in structure.cycle_sets:
        bit = x >> cyc[0] & 1
        if any((x >> i & 1) != bit for i in cyc):
            return False
    return True


def project_pi(F: BinaryCode, structure: CycleStructure) -> BinaryCode:
    """Collapse each cycle to one coordinate; cycles first, then fixed points."""
    if F.n != structure.n:
        raise ValueError("length mismatch")
    coords = structure.pi_coordinates()
    rows = []
    for r in F.generator.rows:
        if not _is_sigma_fixed(r, structure):
            raise ValueError("input code is not sigma-fixed")
        rows.append(BitVector(F.n, r).restrict(coords).bits)
    return BinaryCode.from_rows(len(coords), rows)


def expansion_layout(m: int, cycle_coords: Sequence[int], p: int) -> list[list[int]]:
    """Target coordinates of each of the ``m`` source coordinates.

    Sorted cycle coordinates fill consecutive blocks of ``p``; the remaining
    (fixed) coordinates follow one each, in increasing order.
    """
    cyc = sorted(set(cycle_coords))
    if len(cyc) != len(cycle_coords) or any(not 0 <= i < m for i in cyc):
        raise ValueError("cycle coordinates must be distinct and in range")
    layout: list[list[int]] = [[] for _ in range(m)]
    for j, i in enumerate(cyc):
        layout[i] = list(range(j * p, (j + 1) * p))
    base = p * len(cyc)
    for j, i in enumerate(i for i in range(m) if i not in set(cyc)):
        layout[i] = [base + j]
    return layout


def expand_word(x: int, layout: Sequence[Sequence[int]]) -> int:
    out = 0
    for i, targets in enumerate(layout):
        if x >> i & 1:
            for t in targets:
                out |= 1 << t
    return out


def expand_pi_inverse(D: BinaryCode, cycle_coords: Sequence[int], p: int,
                      c: int | None = None) -> BinaryCode:
    """``pi^-1(D)``: replicate every cycle coordinate ``p`` times.

    A word with ``x`` ones on cycle coordinates and ``y`` on fixed ones
    expands to weight ``p*x + y``.
    """
    if c is not None and len(cycle_coords) != c:
        raise ValueError(f"expected {c} cycle coordinates, got {len(cycle_coords)}")
    layout = expansion_layout(D.n, cycle_coords, p)
    n = p * len(cycle_coords) + D.n - len(cycle_coords)
    return BinaryCode.from_rows(n, [expand_word(r, layout) for r in D.generator.rows])


def expanded_weight(x: int, cycle_mask: int, p: int) -> int:
    on_cycles = (x & cycle_mask).bit_count()
    return p * on_cycles + x.bit_count() - on_cycles


def phi_of_word(x: int, structure: CycleStructure) -> tuple[PElement, ...]:
    """``phi`` of one word of ``E``: one polynomial per cycle."""
    p = structure.p
    if any(x >> i & 1 for i in structure.fixed_points):
        raise ValueError("word is nonzero on a fixed point: not in E")
    out = []
    for cyc in structure.cycle_sets:
        bits = sum((x >> i & 1) << j for j, i in enumerate(cyc))
        if bits.bit_count() % 2:
            raise ValueError("odd weight restriction to a cycle: not in E")
        out.append(PElement(p, bits))
    return tuple(out)


def phi_map(E: BinaryCode, structure: CycleStructure) -> list[tuple[PElement, ...]]:
    """Images of the generator rows of ``E``; they span ``phi(E*)`` over
    GF(2), which is already a ``P``-module because ``E`` is ``sigma``-stable."""
    return [phi_of_word(r, structure) for r in E.generator.rows]


def phi_inverse(tuples: Sequence[Sequence[PElement]], structure: CycleStructure) -> list[int]:
    """Words of length ``n`` whose cycle blocks carry the given polynomials."""
    out = []
    for tup in tuples:
        if len(tup) != structure.c:
            raise ValueError("tuple length must equal the number of cycles")
        x = 0
        for poly, cyc in zip(tup, structure.cycle_sets):
            for j, i in enumerate(cyc):
                x |= (poly.bits >> j & 1) << i
        out.append(x)
    return out


@dataclass(frozen=True)
class SelfDualReport:
    pi_self_dual: bool
    phi_self_dual: bool
    field_mode: bool
    q: int | None

    @property
    def both(self) -> bool:
        return self.pi_self_dual and self.phi_self_dual


def phi_module_self_dual(gens: Sequence[Sequence[PElement]], structure: CycleStructure,
                         binary_dim: int, q: int | None = None) -> bool:
    """Self-orthogonal under the hermitian form and of half size.

    With ``q`` the form is ``sum u_i v_i^q`` (field mode); otherwise the
    reciprocal form ``sum u_i(x) v_i(x^-1)``, which is the same thing when
    ``P`` is a field and remains the right duality when it is not.
    """
    p, c = structure.p, structure.c
    for i, u in enumerate(gens):
        for v in gens[i:]:
            ip = hermitian_ip(u, v, q) if q is not None else reciprocal_ip(u, v)
            if not ip.is_zero():
                return False
    return 2 * binary_dim == c * (p - 1)


def check_selfdual_conditions(code: BinaryCode, sigma: Permutation | CycleStructure) -> SelfDualReport:
    """The two-part self-duality criterion for a ``sigma``-invariant code:
    ``pi(F)`` binary self-dual and ``phi(E*)`` hermitian self-dual."""
    dec = decompose(code, sigma)
    st = dec.structure
    pf = project_pi(dec.F, st)
    pi_ok = pf.n == st.c + st.f and is_self_dual(pf)
    field = PField(st.p)
    q = field.q if field.is_field else None
    gens = phi_map(dec.E, st)
    phi_ok = phi_module_self_dual(gens, st, dec.E.k, q)
    return SelfDualReport(pi_ok, phi_ok, field.is_field, q)


@dataclass(frozen=True)
class BalanceBlocks:
    k1: int
    k2: int
    A: BitMatrix
    B: BitMatrix
    D: BitMatrix
    E: BitMatrix
    code_A: BinaryCode
    code_AD: BinaryCode
    code_B: BinaryCode
    code_BE: BinaryCode

    def balanced(self, c: int, f: int) -> bool:
        return 2 * self.k1 - c == 2 * self.k2 - f

    def rank_identity(self, c: int, f: int) -> bool:
        expect = (c + f) // 2 - self.k1 - self.k2
        return rref(self.D)[1] == expect and rref(self.E)[1] == expect

    def duality_identity(self) -> bool:
        return dual(self.code_A) == self.code_AD and dual(self.code_B) == self.code_BE


def balance_blocks(piF: BinaryCode, c: int, f: int) -> BalanceBlocks:
    """Generator in the block form ``[[A, 0], [0, B], [D, E]]`` for the split
    of ``piF`` into its first ``c`` and last ``f`` coordinates."""
    if piF.n != c + f:
        raise ValueError(f"length {piF.n} != c + f = {c + f}")
    if not is_self_dual(piF):
        raise ValueError("balance blocks need a self-dual code")
    gen = piF.generator
    left = list(range(c))
    right = list(range(c, c + f))
    rows1 = _left_kernel_rows(gen, gen.select_columns(right))
    rows2 = _left_kernel_rows(gen, gen.select_columns(left))
    sub, k12, pivots = rref(BitMatrix(piF.n, tuple(rows1 + rows2)))
    extra = []
    basis = list(sub.rows)
    for r in gen.rows:
        trial, rk, _ = rref(BitMatrix(piF.n, tuple(basis + [r])))
        if rk > len(basis):
            basis.append(r)
            extra.append(r)
    A = BitMatrix(piF.n, tuple(rows1)).select_columns(left)
    B = BitMatrix(piF.n, tuple(rows2)).select_columns(right)
    DE = BitMatrix(piF.n, tuple(extra))
    D = DE.select_columns(left)
    E = DE.select_columns(right)
    code_A = BinaryCode.from_generator(A) if A.nrows else BinaryCode.from_generator(BitMatrix(c, ()))
    code_B = BinaryCode.from_generator(B) if B.nrows else BinaryCode.from_generator(BitMatrix(f, ()))
    code_AD = BinaryCode.from_generator(BitMatrix(c, A.rows + D.rows))
    code_BE = BinaryCode.from_generator(BitMatrix(f, B.rows + E.rows))
    return BalanceBlocks(code_A.k, code_B.k, A, B, D, E, code_A, code_AD, code_B, code_BE)


@dataclass(frozen=True)
class IdentityForm:
    matrix: BitMatrix | None
    reason: str

    def __bool__(self) -> bool:
        return self.matrix is not None


def has_identity_form(piF: BinaryCode, c: int, f: int, d: int) -> IdentityForm:
    """``(I | E')`` generator of ``pi(F)`` when ``c = f < d`` forces it.

    A word supported on the fixed side has weight at most ``f < d`` in the
    big code, so ``B`` must vanish; balance then kills ``A`` and ``D`` is
    invertible.
    """
    if c != f or not c < d:
        raise ValueError(f"need c = f < d, got c={c}, f={f}, d={d}")
    blocks = balance_blocks(piF, c, f)
    if blocks.k2:
        w = min(r.bit_count() for r in blocks.B.rows)
        return IdentityForm(None, f"fixed-side subcode has dimension {blocks.k2} "
                                  f"(a word of weight {w} <= f < d)")
    if blocks.k1:
        return IdentityForm(None, f"cycle-side subcode has dimension {blocks.k1}")
    reduced = piF.generator
    if list(piF.pivots) != list(range(c)):
        return IdentityForm(None, "pivots are not the first c coordinates")
    return IdentityForm(reduced, "B = 0 and A = 0, D invertible")
