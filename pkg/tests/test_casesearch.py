import json
import math
import random
from itertools import combinations

import pytest

from sd120 import casesearch as cs
from sd120.codelib import BinaryCode, registry
from sd120.lowweight import SearchBudget, find_below
from sd120.modfield import PElement, identity, power

from . import oracles


@pytest.fixture(scope="module")
def family():
    return cs.default_family()


# ------------------------------------------------------------ orbits

@pytest.mark.parametrize("m", [1, 3, 7, 9, 15, 21, 45, 63, 255, 1001])
def test_orbit_representatives_small(m):
    summ = cs.p59_orbit_representatives(m)
    seen, reps = set(), []
    for i in range(m):
        if i not in seen:
            orb = cs.doubling_orbit(i, m)
            seen.update(orb)
            reps.append(min(orb))
    assert summ.representatives.tolist() == sorted(reps)
    assert summ.count_including_zero == cs.orbit_count_by_divisors(m) == len(reps)
    assert summ.count_excluding_zero == len(reps) - 1


def test_orbit_basics():
    assert cs.doubling_orbit(0) == [0]
    orb = cs.doubling_orbit(1)
    assert orb[:4] == [1, 2, 4, 8] and len(orb) == 58
    assert 2 * orb[-1] % cs.ORBIT_MODULUS == 1
    assert cs.ORBIT_MODULUS == 3 * 3033169 == cs.DELTA_ORDER // 59
    with pytest.raises(ValueError):
        cs.p59_orbit_representatives(10)


def test_divisor_formula_p59():
    assert cs.orbit_count_by_divisors() == cs.EXPECTED_ORBIT_COUNT + 1


# --------------------------------------------------------- candidates

def test_candidate_k0_is_identity(family):
    cand = cs.build_p59_candidate(0, family)
    assert cand.b == identity(59)
    assert cand.code.k == 60


def test_candidate_rejects_bad_input(family):
    with pytest.raises(ValueError):
        cs.build_p59_candidate(-1, family)
    with pytest.raises(ValueError):
        cs.build_p59_candidate(cs.ORBIT_MODULUS + 1, family)
    with pytest.raises(ValueError):
        cs.build_p59_candidate(3, cs.P59Family(identity(59)))  # e(x) has order 1


def test_candidate_structure(family):
    cand = cs.build_p59_candidate(4242, family)
    rows = cand.generator_rows
    assert len(rows) == 60
    assert power(cand.b, cs.DELTA_ORDER) == identity(59)
    # rows 3.. are the shifts of (e, b): sigma maps the code to itself
    sigma = cs.P59_STRUCTURE.permutation()
    code = cand.code
    assert all(code.contains(sigma.apply(r)) for r in rows)


def test_equivalence_moves(family):
    e = identity(59)
    b = family.b(17)
    assert cs.equivalence_moves((e, b), 1, (0, 0)) == (e, b)
    assert cs.equivalence_moves((e, b), 2, (0, 0)) == (e, family.b(34))
    moved = cs.equivalence_moves((e, b), 1, (0, 5))
    assert moved[1] == power(e.shift(1), 5) * b  # stays in <x e(x)> delta^k
    for bad in [(0, (0, 0)), (59, (0, 0)), (1, (0,)), (1, (0, 59))]:
        with pytest.raises(ValueError):
            cs.equivalence_moves((e, b), *bad)


def test_orbit_mates_are_equivalent(family):
    rng = random.Random(8)
    for _ in range(10):
        k = rng.randrange(cs.ORBIT_MODULUS)
        k2, perm = cs.orbit_mate_permutation(family, k)
        assert k2 == 2 * k % cs.ORBIT_MODULUS
        a = cs.build_p59_candidate(k, family).code
        b = cs.build_p59_candidate(k2, family).code
        assert a.permuted(perm.images) == b
        w = find_below(a, 24, SearchBudget(200, seed=k))
        assert w is not None
        image = perm.apply(w.codeword.bits)
        assert b.contains(image) and image.bit_count() == w.weight


def test_coset_shift(family):
    base, s = cs.coset_shift(family, cs.ORBIT_MODULUS + 5)
    assert base == 5
    assert family.b(cs.ORBIT_MODULUS + 5) == identity(59).shift(s) * family.b(5)


# ------------------------------------------------------------ sweeps

def test_p59_sweep_and_resume(tmp_path, family):
    reps = [1, 3, 5, 7, 11, 13, 15]
    budget = SearchBudget(500)
    fresh = cs.p59_sweep(reps, budget, family=family, master_seed=9)
    assert fresh.refuted == len(reps) and fresh.unresolved == 0
    ck = tmp_path / "run.ckpt"
    part = cs.p59_sweep(reps, budget, family=family, master_seed=9, checkpoint=ck, every=2, stop_after=3)
    assert part.completed == 3
    state = json.loads(ck.read_text())
    assert state["cursor"] == 3 and state["master_seed"] == 9
    # simulate a crash that wrote a record past the cursor
    with open(str(ck) + ".records.jsonl", "a") as fh:
        fh.write('{"id": 999, "status": "junk", "attempts": 1, "iterations": 0}\n')
    resumed = cs.p59_sweep(reps, budget, family=family, master_seed=9, checkpoint=ck, every=2)
    assert resumed.to_jsonl() == fresh.to_jsonl()


def test_checkpoint_rejects_other_runs(tmp_path, family):
    ck = tmp_path / "c"
    cs.p59_sweep([1], SearchBudget(50), family=family, master_seed=1, checkpoint=ck)
    with pytest.raises(ValueError):
        cs.p59_sweep([1], SearchBudget(50), family=family, master_seed=2, checkpoint=ck)


def test_report_summary():
    r = cs.SweepReport("x", 3, [cs.TaskRecord(1, "refuted", 20), cs.TaskRecord(2, "unresolved")])
    s = r.summary()
    assert (s["refuted"], s["unresolved"], s["unresolved_ids"]) == (1, 1, [2])
    lines = r.to_jsonl().splitlines()
    assert len(lines) == 3 and "summary" in json.loads(lines[-1])


def test_sample_subsets():
    a = cs.sample_subsets(10, 3, 50, seed=1)
    assert a == cs.sample_subsets(10, 3, 50, seed=1)
    assert len(set(a)) == 50 and all(len(s) == 3 and list(s) == sorted(s) for s in a)
    assert len(cs.sample_subsets(6, 2, 100, 0)) == 15


def _brute_verdict(code0, p, fixed, d, doubly_even=True):
    ws = [w for w in oracles.expanded_words(code0, p, set(fixed)) if w]
    return any(w < d or (doubly_even and w % 4) for w in ws)


def test_subset_sweeper_matches_brute_force():
    rng = random.Random(31)
    for _ in range(12):
        n = rng.choice([8, 10, 12])
        code0 = oracles.random_self_dual(n, rng)
        p = rng.choice([3, 5])
        f = rng.randint(1, n - 1)
        d = rng.choice([8, 12, 16])
        subsets = cs.sample_subsets(n, f, 40, rng.randrange(1000))
        sw = cs.SubsetSweeper(code0, p, f, d)
        for v in sw.check(subsets):
            assert v.refuted == _brute_verdict(code0, p, v.subset, d)


def test_dfs_matches_brute_force():
    rng = random.Random(5)
    for _ in range(6):
        n = rng.choice([8, 10, 12])
        code0 = oracles.random_self_dual(n, rng)
        p, f, d = 3, rng.randint(2, n - 2), rng.choice([8, 10, 12])
        total, refuted, left = cs.SubsetSweeper(code0, p, f, d).count_unrefuted_all()
        brute = [s for s in combinations(range(n), f) if not _brute_verdict(code0, p, s, d)]
        assert total == math.comb(n, f)
        assert sorted(left) == brute and refuted == total - len(brute)


def test_light_pool_is_enough_for_large_codes():
    # pool restricted to light words plus generators (k > 16) agrees with
    # the full enumeration
    code0 = registry("c81")
    small = cs.SubsetSweeper(code0, 5, 10, 24, full_pool_dim=16)
    big = cs.SubsetSweeper(code0, 5, 10, 24, full_pool_dim=20)
    assert big.complete
    subs = cs.sample_subsets(32, 10, 200, seed=4)
    assert [v.refuted for v in small.check(subs)] == [v.refuted for v in big.check(subs)]


def test_fixed_point_sweep_witnesses_verify():
    code0 = registry("z24")
    rep = cs.fixed_point_sweep(code0, 7, 8, sample=30, seed=2)
    assert rep.refuted == 30
    sw = cs.SubsetSweeper(code0, 7, 8)
    for v in sw.check([tuple(r.detail["subset"]) for r in rep.records]):
        if v.light_word is not None:
            assert cs.verify_subset_witness(code0, 7, v.subset, v.light_word, v.light_weight)
        if v.mod4_word is not None:
            assert cs.verify_subset_witness(code0, 7, v.subset, v.mod4_word, v.mod4_weight)


def test_fixed_point_sweep_checkpoint(tmp_path):
    code0 = registry("y24")
    ck = tmp_path / "s.ckpt"
    full = cs.fixed_point_sweep(code0, 7, 8, sample=25, seed=3)
    again = cs.fixed_point_sweep(code0, 7, 8, sample=25, seed=3, checkpoint=ck, every=10)
    assert again.to_jsonl() == full.to_jsonl()


def test_fixed_point_sweep_errors():
    with pytest.raises(ValueError):
        cs.fixed_point_sweep(BinaryCode.from_rows(4, [0b1111]), 3, 2)
    with pytest.raises(ValueError):
        cs.fixed_point_sweep(registry("z24"), 7, 8, subsets=[(0, 1)])


def test_x24_weight_30():
    x = registry("x24")
    free = cs.free_coordinates(x, 7)
    assert len(free) == 8
    rep = cs.fixed_point_sweep(x, 7, 8, subsets=[tuple(free)], record_weights=True)
    assert 30 in rep.records[0].detail["violating_weights"]


def test_golay_mod7():
    rep = cs.golay_mod7_test(cs.sample_subsets(24, 8, 50, seed=1))
    assert rep.extremal_a28 % 7 == 3
    assert all(r.a28_fixed == 0 for r in rep.results) and rep.all_inconsistent
    control = cs.golay_mod7_test(cs.sample_subsets(24, 8, 10, seed=1), extremal_a=7 * 1000)
    assert all(r.consistent for r in control.results)
    sweep = rep.as_sweep_report()
    assert sweep.refuted == 50 and sweep.unresolved == 0


def test_theorem_composition():
    assert cs.exclusion_from_reports("x", [], True) is None
    bad = cs.SweepReport("x", 1, [cs.TaskRecord(0, "unresolved")])
    assert cs.exclusion_from_reports("x", [bad], True) is None
    good = cs.SweepReport("x", 1, [cs.TaskRecord(0, "refuted", 8)])
    ex = cs.exclusion_from_reports("59-(2;2)", [good], False)
    assert ex.evidence == "sampled"
    table = cs.theorem_table(list(cs.CITED_EXCLUSIONS) + [ex])
    assert 59 not in table and "5-(20;20)" not in table[5]
