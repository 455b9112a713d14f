"""Command-line entry point: ``sd120 <command> ...``.

Every command writes ``config.json`` (the full effective configuration) to
its output directory before computing, then its result files.  The output
directory defaults to ``$SD120_OUT/<command>`` (``./sd120-runs/<command>``
when the variable is unset).

Exit codes: 0 done, 2 done with unresolved tasks (or nothing found), 64
usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

EXIT_OK = 0
EXIT_UNRESOLVED = 2
EXIT_USAGE = 64
OUT_ENV = "SD120_OUT"

log = logging.getLogger("sd120")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _load_code(spec: str):
    from .codelib import registry, registry_names, load_code

    if spec in registry_names():
        return registry(spec)
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"{spec!r} is neither a registry code ({', '.join(registry_names())}) nor a file")
    return load_code(path.read_text(), name=path.stem)


def _out_dir(args) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get(OUT_ENV, "sd120-runs")) / args.command


def _write_config(out: Path, args, extra: dict | None = None) -> None:
    out.mkdir(parents=True, exist_ok=True)
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",) and not k.startswith("_")}
    if extra:
        cfg.update(extra)
    (out / "config.json").write_text(json.dumps(cfg, indent=2, sort_keys=True, default=str) + "\n")


# ------------------------------------------------------------- commands

def cmd_types(args) -> int:
    from .exclusion import feasible_types, odd_primes_upto

    if args.n < 2 or args.n % 2 or args.d < 1:
        raise UsageError("need even n >= 2 and d >= 1")
    out = _out_dir(args)
    _write_config(out, args)
    lines = []
    rows = {}
    for p in odd_primes_upto(args.n):
        verdicts = feasible_types(args.n, args.d, p, args.preset)
        alive = [v for v in verdicts if v.survives]
        if alive:
            rows[p] = [[v.candidate.c, v.candidate.f] for v in alive]
            for v in alive:
                note = f"   ({'; '.join(v.notes)})" if v.notes else ""
                lines.append(f"{p:>3} | {v.candidate.c:>3} | {v.candidate.f:>3}{note}")
        if args.reasons:
            for v in verdicts:
                if not v.survives:
                    why = "; ".join(str(r) for r in v.reasons)
                    lines.append(f"      x {v.candidate.label}: {why}")
    text = f"  p |   c |   f    (n={args.n}, d={args.d}, preset={args.preset})\n" + "\n".join(lines)
    print(text)
    (out / "types.json").write_text(json.dumps({str(k): v for k, v in rows.items()}, indent=1) + "\n")
    return EXIT_OK


def cmd_enumerator(args) -> int:
    from .codelib import extremal_type2_enumerator

    if args.n < 8 or args.n % 8:
        raise UsageError("doubly-even self-dual lengths are multiples of 8")
    out = _out_dir(args)
    _write_config(out, args)
    a = extremal_type2_enumerator(args.n)
    terms = [(i, v) for i, v in enumerate(a) if v]
    for i, v in terms:
        print(f"A_{i} = {v}")
    print("W(y) = " + " + ".join(str(v) if i == 0 else f"{v}y^{i}" for i, v in terms))
    (out / "enumerator.json").write_text(json.dumps({str(i): v for i, v in terms}) + "\n")
    if any(v < 0 for v in a):
        print("negative coefficient: no extremal code of this length", file=sys.stderr)
    return EXIT_OK


def _budget(args):
    from .lowweight import SearchBudget

    return SearchBudget(args.iterations, args.window, args.seed, args.stern)


def _report_exit(report, out: Path, name: str) -> int:
    report.write(out / f"{name}.jsonl")
    s = report.summary()
    (out / "summary.json").write_text(json.dumps(s, indent=2, sort_keys=True) + "\n")
    print(f"case {s['case']}: {s['completed']}/{s['total']} tasks, "
          f"{s['refuted']} refuted, {s['unresolved']} unresolved")
    if s["witness_weights"]:
        print("witness weights: " + ", ".join(f"{w}: {c}" for w, c in s["witness_weights"].items()))
    if s["unresolved"]:
        print("unresolved ids: " + ", ".join(map(str, s["unresolved_ids"][:20])))
    return EXIT_UNRESOLVED if s["unresolved"] or s["completed"] < s["total"] else EXIT_OK


def cmd_p59(args) -> int:
    from . import casesearch as cs
    from .modfield import PField, group_factorization

    out = _out_dir(args)
    family = cs.default_family(args.alpha_seed)
    _write_config(out, args, {"alpha_bits": hex(family.alpha.bits)})
    if args.action == "orbits":
        t = time.perf_counter()
        summ = cs.p59_orbit_representatives()
        dt = time.perf_counter() - t
        field = PField(cs.P59)
        fac = group_factorization(cs.P59)
        print(f"s(59) = {field.s}; 2^58 - 1 = " + " * ".join(f"{q}^{e}" if e > 1 else str(q)
                                                         for q, e in sorted(fac.items())))
        print(f"delta = alpha^(2^29-1) has order 2^29+1 = 3 * 59 * 3033169 = {cs.DELTA_ORDER}")
        print(f"orbits of k -> 2k on Z_{summ.modulus}: {summ.count_including_zero} including 0, "
              f"{summ.count_excluding_zero} excluding 0  ({dt:.1f} s)")
        conv = summ.convention_matching()
        print(f"count {cs.EXPECTED_ORBIT_COUNT} matches: {conv}")
        (out / "representatives.txt").write_text("\n".join(map(str, summ.representatives.tolist())) + "\n")
        return EXIT_OK if conv else EXIT_UNRESOLVED
    summ = cs.p59_orbit_representatives()
    budget = _budget(args)
    if args.action == "sample":
        reps = cs.sample_representatives(summ, args.count, args.seed)
    else:
        if not args.full:
            raise UsageError("the full sweep takes hours; pass --full to confirm")
        reps = summ.representatives.tolist()
    ckpt = args.checkpoint
    if ckpt and Path(ckpt).exists() and not args.resume:
        raise UsageError(f"checkpoint {ckpt} exists; pass --resume or choose another path")
    print(f"seed {args.seed}; alpha {hex(family.alpha.bits)}; {len(reps)} representatives")
    t = time.perf_counter()
    report = cs.p59_sweep(reps, budget, family=family, master_seed=args.seed, retries=args.retries,
                          checkpoint=ckpt, jobs=args.jobs, every=args.every)
    dt = time.perf_counter() - t
    if args.action == "sample" and reps:
        per = dt / len(reps)
        total = summ.count_including_zero
        print(f"{per:.3f} s/task here; a full sweep of {total} tasks would take about "
              f"{per * total / 3600 / max(1, args.jobs):.1f} h with {args.jobs} job(s)")
    return _report_exit(report, out, "p59")


CASES = {"5-22-10": (5, 10), "7-16-8": (7, 8)}


def cmd_sweep(args) -> int:
    from . import casesearch as cs

    p, f = CASES[args.case]
    code0 = _load_code(args.code)
    if code0.n != (120 - f) // p + f:
        raise UsageError(f"case {args.case} needs a code of length {(120 - f) // p + f}, got {code0.n}")
    out = _out_dir(args)
    _write_config(out, args)
    ckpt = args.checkpoint
    if ckpt and Path(ckpt).exists() and not args.resume:
        raise UsageError(f"checkpoint {ckpt} exists; pass --resume or choose another path")
    print(f"seed {args.seed}; code {code0.name}; p={p}, f={f}")
    if args.all:
        sweeper = cs.SubsetSweeper(code0, p, f, args.d)
        total, refuted, left = sweeper.count_unrefuted_all()
        s = {"case": args.case, "code": code0.name, "total": total, "refuted": refuted,
             "unresolved": len(left), "unresolved_subsets": [list(x) for x in left[:1000]]}
        (out / "summary.json").write_text(json.dumps(s, indent=2) + "\n")
        print(f"all {total} subsets: {refuted} refuted, {len(left)} unresolved")
        return EXIT_UNRESOLVED if left else EXIT_OK
    report = cs.fixed_point_sweep(code0, p, f, args.d, sample=args.sample, seed=args.seed,
                                  record_weights=args.record_weights, case=args.case,
                                  checkpoint=ckpt)
    if args.record_weights:
        seen = sorted({w for r in report.records for w in r.detail["violating_weights"]})
        print("violating expanded weights seen: " + ", ".join(map(str, seen)))
    return _report_exit(report, out, "sweep")


def cmd_mod7(args) -> int:
    from . import casesearch as cs
    from .codelib import registry

    out = _out_dir(args)
    _write_config(out, args)
    code = _load_code(args.code) if args.code else registry("golay24")
    subsets = None if args.all else cs.sample_subsets(code.n, 8, args.sample, args.seed)
    rep = cs.golay_mod7_test(subsets, code=code)
    s = rep.summary()
    (out / "summary.json").write_text(json.dumps(s, indent=2) + "\n")
    print(f"A_28 = {s['extremal_A28']} = {s['extremal_A28_mod_p']} (mod 7)")
    print(f"A'_28 over {s['subsets']} subsets: {s['fixed_A28_histogram']}")
    print("every subset contradicts the congruence" if rep.all_inconsistent
          else f"{s['consistent']} subsets are consistent")
    return EXIT_OK if rep.all_inconsistent else EXIT_UNRESOLVED


def cmd_decompose(args) -> int:
    from .codelib import is_self_dual, weight_distribution
    from .decomp import (check_selfdual_conditions, cycle_structure, decompose, direct_sum_holds,
                         is_automorphism, parse_permutation, project_pi)

    code = _load_code(args.code)
    text = Path(args.perm[1:]).read_text() if args.perm.startswith("@") else args.perm
    sigma = parse_permutation(text, code.n)
    out = _out_dir(args)
    _write_config(out, args)
    if not is_automorphism(code, sigma):
        raise UsageError("permutation is not an automorphism of the code")
    st = cycle_structure(sigma)
    dec = decompose(code, sigma)
    pf = project_pi(dec.F, st)
    rep = check_selfdual_conditions(code, sigma)
    info = {"type": st.type_label, "dim_F": dec.F.k, "dim_E": dec.E.k,
            "direct_sum": direct_sum_holds(code, dec), "pi_F_self_dual": is_self_dual(pf),
            "phi_E_self_dual": rep.phi_self_dual, "field_mode": rep.field_mode, "q": rep.q}
    if pf.k <= 28:
        info["pi_F_weights"] = {str(i): a for i, a in enumerate(weight_distribution(pf)) if a}
    for k, v in info.items():
        print(f"{k}: {v}")
    (out / "decompose.json").write_text(json.dumps(info, indent=2) + "\n")
    return EXIT_OK if rep.both and info["direct_sum"] else EXIT_UNRESOLVED


def cmd_lowweight(args) -> int:
    from .lowweight import find_below, find_min_weight_word

    code = _load_code(args.code)
    out = _out_dir(args)
    _write_config(out, args)
    budget = _budget(args)
    print(f"seed {args.seed}")
    if args.target is None:
        w = find_min_weight_word(code, None, budget)
    else:
        w = find_below(code, args.target, budget)
    if w is None:
        print("no witness within budget")
        return EXIT_UNRESOLVED
    res = {"weight": w.weight, "iterations": w.iterations_used, "codeword": str(w.codeword)}
    print(f"weight {w.weight} after {w.iterations_used} iterations\n{w.codeword}")
    (out / "witness.json").write_text(json.dumps(res) + "\n")
    return EXIT_OK


# --------------------------------------------------------------- parser

def _add_budget(sp, iterations=2000):
    sp.add_argument("--iterations", type=_positive, default=iterations, help="ISD rounds per attempt")
    sp.add_argument("--window", type=_positive, default=2)
    sp.add_argument("--stern", action="store_true", help="add the collision step")


def _add_batch(sp):
    sp.add_argument("--checkpoint", help="checkpoint file for long runs")
    sp.add_argument("--resume", action="store_true", help="continue from --checkpoint")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sd120", description=__doc__.split("\n\n")[0])
    ap.add_argument("--out", help=f"output directory (default ${OUT_ENV}/<command>)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("types", help="cycle types surviving the lemma filters")
    sp.add_argument("--n", type=int, default=120)
    sp.add_argument("--d", type=int, default=24)
    sp.add_argument("--preset", choices=["paper-table", "full", "none"], default="paper-table")
    sp.add_argument("--reasons", action="store_true", help="also list excluded types and why")
    sp.set_defaults(func=cmd_types)

    sp = sub.add_parser("enumerator", help="extremal doubly-even weight enumerator")
    sp.add_argument("--n", type=int, default=120)
    sp.set_defaults(func=cmd_enumerator)

    sp = sub.add_parser("p59", help="the 59-(2;2) candidate family")
    sp.add_argument("action", choices=["orbits", "sample", "sweep"])
    sp.add_argument("--count", type=_positive, default=20, help="representatives to sample")
    sp.add_argument("--full", action="store_true", help="confirm the full sweep")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--alpha-seed", type=_seed, default=20240601, help="seed choosing alpha")
    sp.add_argument("--retries", type=int, default=1)
    sp.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    sp.add_argument("--every", type=_positive, default=100, help="checkpoint interval")
    _add_budget(sp)
    _add_batch(sp)
    sp.set_defaults(func=cmd_p59)

    sp = sub.add_parser("sweep", help="fixed-point subset sweep for 5-(22;10) or 7-(16;8)")
    sp.add_argument("--case", choices=sorted(CASES), required=True)
    sp.add_argument("--code", required=True, help="registry name or .code file")
    sp.add_argument("--sample", type=_positive, default=1000)
    sp.add_argument("--all", action="store_true", help="every subset (depth-first, pruned)")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--d", type=int, default=24)
    sp.add_argument("--record-weights", action="store_true",
                    help="list every violating expanded weight per subset")
    _add_batch(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("mod7", help="A_28 congruence test on the Golay fixed code")
    sp.add_argument("--code", help="length-24 code (default golay24)")
    sp.add_argument("--sample", type=_positive, default=1000)
    sp.add_argument("--all", action="store_true", help="all 735471 subsets")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.set_defaults(func=cmd_mod7)

    sp = sub.add_parser("decompose", help="decompose a code under an automorphism")
    sp.add_argument("--code", required=True)
    sp.add_argument("--perm", required=True, help="cycles '(1,2,3)(4,5)' or images; @file reads a file")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("lowweight", help="search for a light codeword")
    sp.add_argument("--code", required=True)
    sp.add_argument("--target", type=_positive, help="find weight < target (default: minimise)")
    sp.add_argument("--seed", type=_seed, default=0)
    _add_budget(sp)
    sp.set_defaults(func=cmd_lowweight)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"sd120: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:  # parse errors carry their line numbers
        print(f"sd120: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
