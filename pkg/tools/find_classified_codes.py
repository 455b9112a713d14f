#!/usr/bin/env python3
"""Regenerate the vendored length-24 and length-32 codes in ``sd120/data``.

Random walk through self-dual codes by neighbour steps: from ``C`` and an
even-weight ``u`` outside ``C``, the neighbour is ``{c in C : c.u = 0} + <u>``.
Each visited code is bucketed by an equivalence invariant; a new bucket is
a new class.  Classes are then labelled by the rules in ``PROVENANCE.md``.

    python tools/find_classified_codes.py --out /tmp/found --check

``--check`` compares every regenerated class with the vendored file of the
same name by invariant (the files need not be identical matrices).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from collections import Counter
from functools import lru_cache
from pathlib import Path

import numpy as np

from sd120.casesearch import free_coordinates
from sd120.codelib import (
    BinaryCode,
    codewords,
    dump_code,
    extended_qr,
    min_weight,
    reed_muller_2_5,
    registry,
    tetrad_signature,
    weight_distribution,
)
from sd120.gf2core import popcount_words


def neighbour(code: BinaryCode, rng: random.Random, step: int) -> BinaryCode:
    n = code.n
    while True:
        u = sum(1 << i for i in rng.sample(range(n), rng.randrange(step, n, step)))
        if not code.contains(u):
            break
    keep, odd = [], None
    for r in code.generator.rows:
        if (r & u).bit_count() % 2 == 0:
            keep.append(r)
        elif odd is None:
            odd = r
        else:
            keep.append(r ^ odd)
    return BinaryCode.from_rows(n, keep + [u])


def invariant24(code: BinaryCode) -> tuple:
    """Weight distribution, free coordinates for p = 7, and the sizes of the
    connected pieces of the weight-4 supports."""
    words = codewords(code)
    wt = popcount_words(words)
    w4 = [int(x[0]) for x in words[wt == 4]]
    parent = list(range(code.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    union = 0
    for x in w4:
        union |= x
        pts = [i for i in range(code.n) if x >> i & 1]
        for i in pts[1:]:
            parent[find(i)] = find(pts[0])
    sizes = Counter(find(i) for i in range(code.n) if union >> i & 1)
    return (tuple(np.bincount(wt, minlength=code.n + 1).tolist()),
            len(free_coordinates(code, 7)), tuple(sorted(sizes.values())))


def label24(key: tuple, code: BinaryCode) -> str | None:
    dist, free, _ = key  # code unused: the invariant decides
    d = next(i for i in range(1, len(dist)) if dist[i])
    if d == 6:
        return "z24"
    if d == 4 and free == 8:
        return "x24"
    if d == 4 and free == 16:
        return "y24"
    return None


@lru_cache(maxsize=None)
def _built_signatures() -> dict[tuple, str]:
    return {tetrad_signature(extended_qr(31)): "c81", tetrad_signature(reed_muller_2_5()): "c82"}


def label32(sig: tuple, code: BinaryCode) -> str | None:
    h = dict(sig)
    if sig in _built_signatures():
        return _built_signatures()[sig]
    if h.get(7) == 280:
        return "c83"
    if h.get(7) == 8:
        return "c84"
    if h.get(5) == 360:
        return "c85"
    return None


def walk(start: BinaryCode, seed: int, steps: int, step_weight: int, d_min: int, keyfn, labelfn,
         wanted: set[str], log) -> dict[str, BinaryCode]:
    rng = random.Random(seed)
    found: dict[str, BinaryCode] = {}
    seen = set()
    code = start
    for s in range(steps):
        nxt = neighbour(code, rng, step_weight)
        if min_weight(nxt) < d_min:
            continue
        code = nxt
        key = keyfn(code)
        if key in seen:
            continue
        seen.add(key)
        name = labelfn(key, code)
        log(f"step {s}: class {len(seen)}" + (f" -> {name}" if name else ""))
        if name and name not in found:
            found[name] = code
        if wanted <= set(found):
            break
    return found


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--seed24", type=int, default=5)
    ap.add_argument("--seed32", type=int, default=11)
    ap.add_argument("--steps", type=int, default=60000)
    ap.add_argument("--check", action="store_true", help="compare with the vendored files")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    t0 = time.time()

    def log(msg):
        print(f"[{time.time() - t0:7.1f}s] {msg}", flush=True)

    found = walk(extended_qr(23), args.seed24, args.steps, 2, 4, invariant24, label24,
                 {"x24", "y24", "z24"}, log)
    found.update(walk(extended_qr(31), args.seed32, args.steps, 4, 8, tetrad_signature, label32,
                      {"c83", "c84", "c85"}, log))
    ok = True
    for name in ("c83", "c84", "c85", "x24", "y24", "z24"):
        if name not in found:
            print(f"{name}: not reached in {args.steps} steps", file=sys.stderr)
            ok = False
            continue
        code = found[name]
        (args.out / f"{name}.code").write_text(dump_code(code, [name, "regenerated by neighbour walk"]))
        if args.check:
            ref = registry(name)
            if name.startswith("c"):
                same = tetrad_signature(ref) == tetrad_signature(code)
            else:
                same = invariant24(ref) == invariant24(code)
            same = same and weight_distribution(ref) == weight_distribution(code)
            print(f"{name}: {'matches' if same else 'DIFFERS FROM'} vendored invariant")
            ok &= same
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
