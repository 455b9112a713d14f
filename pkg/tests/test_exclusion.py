import pytest

from sd120.exclusion import (
    PRESETS,
    TypeCandidate,
    bmw1_applies,
    feasible_types,
    filter_type,
    g,
    mod_p_weight_test,
    surviving_primes,
    survivors,
    type_table,
)

# surviving (c, f) per prime for n = 120, d = 24 under the reference-table filters
TABLE_120 = {
    3: [(30, 30), (32, 24), (34, 18), (36, 12), (38, 6), (40, 0)],
    5: [(20, 20), (22, 10), (24, 0)],
    7: [(15, 15), (16, 8), (17, 1)],
    11: [(10, 10)],
    13: [(9, 3)],
    17: [(7, 1)],
    19: [(6, 6)],
    23: [(5, 5)],
    29: [(4, 4)],
    59: [(2, 2)],
}


def as_pairs(table):
    return {p: [(t.c, t.f) for t in ts] for p, ts in table.items()}


def test_g_values():
    assert g(24, 0) == 0
    assert g(24, 1) == 24
    assert g(24, 4) == 24 + 12 + 6 + 3
    assert g(24, 50) == 92  # tail of ones
    with pytest.raises(ValueError):
        g(24, -1)


def test_reference_table():
    assert as_pairs(type_table(120, 24, "paper-table")) == TABLE_120


def test_full_preset_drops_three_rows():
    full = as_pairs(type_table(120, 24, "full"))
    assert set(TABLE_120) - set(full) == {11, 13, 17}
    assert surviving_primes(120, 24) == [3, 5, 7, 19, 23, 29, 59]


def test_row_reasons_for_dropped_primes():
    v11 = filter_type(TypeCandidate(11, 10, 10), 120, 24)
    assert [r.lemma for r in v11.reasons] == ["BMW3"]
    assert (v11.reasons[0].lhs, v11.reasons[0].rhs) == (21, 24)
    for p, c, f in [(13, 9, 3), (17, 7, 1)]:
        v = filter_type(TypeCandidate(p, c, f), 120, 24)
        assert [r.lemma for r in v.reasons] == ["BMW2"]
        assert v.reasons[0].lhs == 1  # c is odd


def test_thin_parity_keeps_nonempty_rows():
    rows = feasible_types(120, 24, 13, "paper-table")
    alive = [v for v in rows if v.survives]
    assert [(v.candidate.c, v.candidate.f) for v in alive] == [(9, 3)]
    assert alive[0].notes
    # for p = 5 the parity filter does apply: odd c gone
    five = [v.candidate.c for v in feasible_types(120, 24, 5, "paper-table") if v.survives]
    assert all(c % 2 == 0 for c in five)


def test_p31_row_is_empty_with_numbers():
    rows = feasible_types(120, 24, 31)
    assert not survivors(rows)
    for v in rows:
        assert v.reasons
        for r in v.reasons:
            assert r.violated()
            assert str(r).startswith(r.lemma)


def test_golay_and_qr48_types_survive():
    assert TypeCandidate(23, 1, 1) in type_table(24, 8, "full")[23]
    assert TypeCandidate(47, 1, 1) in type_table(48, 12, "full")[47]
    # the automorphism i -> 2i of the length-48 code has type 23-(2;2)
    assert TypeCandidate(23, 2, 2) in type_table(48, 12, "full")[23]


def test_bmw1_hypothesis():
    assert bmw1_applies(120, 5)
    assert not bmw1_applies(120, 3)
    assert not bmw1_applies(24, 5)  # m = 1
    assert bmw1_applies(70, 5)  # 48 + 2*11
    assert not bmw1_applies(121, 5)


def test_trivial_and_errors():
    v = filter_type(TypeCandidate(5, 0, 120), 120, 24)
    assert v.status == "excluded" and v.reasons[0].lemma == "trivial"
    with pytest.raises(ValueError):
        filter_type(TypeCandidate(5, 1, 1), 120, 24)
    with pytest.raises(ValueError):
        feasible_types(120, 24, 9)
    with pytest.raises(ValueError):
        feasible_types(120, 24, 3, "nonsense")
    with pytest.raises(ValueError):
        feasible_types(120, 24, 3, {"L6a", "bogus"})
    with pytest.raises(ValueError):
        TypeCandidate(3, -1, 2)


def test_none_preset_keeps_everything():
    assert len(feasible_types(120, 24, 7, "none")) == 120 // 7 + 1
    assert PRESETS["none"] == frozenset()


def test_mod_p_weight_test():
    assert not mod_p_weight_test(6101289120, 0, 7)
    assert mod_p_weight_test(7 * 11, 0, 7)
