"""Rank-2 multiarrangement exponents and the ambient-3 freeness criterion."""

import pytest

from idealshi import (
    Arrangement,
    CharPoly,
    ExponentMultiset,
    build,
    charpoly_mobius,
    derivation_space_dim,
    exp_rank2_multi,
    root_arrangement,
    root_covector,
    shi_arrangement,
    shift_predict,
    yoshinaga_check,
    z_covector,
)


def a2_lines():
    rs = build("A2")
    base = root_arrangement(rs)
    a1 = root_covector(rs, rs.positive_roots[0])
    a2r = root_covector(rs, rs.positive_roots[1])
    a12 = root_covector(rs, rs.root_at((1, 1)))
    return base, a1, a2r, a12


def test_exponent_pair_examples():
    base, a1, a2r, a12 = a2_lines()
    assert exp_rank2_multi(base, {c: 2 for c in base.covectors}) == (3, 3)
    single = Arrangement.of(2, [(1, 0)])
    assert exp_rank2_multi(single, {(1, 0): 5}) == (0, 5)
    assert exp_rank2_multi(base, {a1: 1}) == (0, 1)
    assert exp_rank2_multi(base, {a1: 3, a2r: 2, a12: 2}) == (3, 4)
    assert exp_rank2_multi(base, {}) == (0, 0)


def test_indicator_multiplicity_exponents():
    # 0/1 multiplicities behave like the simple subarrangement
    base, a1, a2r, a12 = a2_lines()
    assert exp_rank2_multi(base, {a1: 1, a2r: 1}) == (1, 1)
    assert exp_rank2_multi(base, {a1: 1, a2r: 1, a12: 1}) == (1, 2)
    assert exp_rank2_multi(base, {a12: 1}) == (0, 1)


def test_degree_sum_and_dimension_law():
    # the graded dimensions must match a free pair (d1, d2)
    base, a1, a2r, a12 = a2_lines()
    cases = [
        {a1: 3, a2r: 3, a12: 2},
        {a1: 2, a2r: 2, a12: 2},
        {a1: 4, a2r: 1, a12: 1},
        {a1: 5, a2r: 0, a12: 0},
        {a1: 1, a2r: 1, a12: 4},
    ]
    for mult in cases:
        total = sum(mult.values())
        d1, d2 = exp_rank2_multi(base, mult)
        assert d1 + d2 == total and d1 <= d2
        for d in range(total + 2):
            want = max(0, d - d1 + 1) + max(0, d - d2 + 1)
            assert derivation_space_dim(base, mult, d) == want, (mult, d)


def test_dimension_nondecreasing():
    base, a1, a2r, a12 = a2_lines()
    mult = {a1: 3, a2r: 2, a12: 3}
    dims = [derivation_space_dim(base, mult, d) for d in range(10)]
    assert dims == sorted(dims)


def test_shift_predict():
    assert shift_predict(ExponentMultiset((1, 2)), 1, 3, "+").parts == (4, 5)
    assert shift_predict(ExponentMultiset((0, 0)), 2, 4, "-").parts == (8, 8)
    assert shift_predict(ExponentMultiset((0, 1)), 1, 3, "-").parts == (2, 3)


def test_yoshinaga_examples():
    rs = build("A2")
    hz = z_covector(rs)
    v = yoshinaga_check(shi_arrangement(rs, 1, [rs.root_at((1, 1))], "+"), hz)
    assert not v.free and v.chi0_zero == 13 and v.restriction_exponents == (3, 4)
    v = yoshinaga_check(shi_arrangement(rs, 1, [rs.positive_roots[0]], "+"), hz)
    assert v.free and v.exponents.parts == (1, 3, 4)
    v = yoshinaga_check(shi_arrangement(rs, 1, [], "+"), hz)
    assert v.free and v.exponents.parts == (1, 3, 3)


def test_yoshinaga_requires_dimension_3():
    a3 = build("A3")
    from idealshi import shi_plus

    with pytest.raises(ValueError):
        yoshinaga_check(shi_plus(a3, 1, []), z_covector(a3))


def freeness_survey(rs, k):
    """Free or not, both signs, for every subset of the positive roots."""
    hz = z_covector(rs)
    base = root_arrangement(rs)
    simple_mask = sum(1 << rs.index[r.coeffs] for r in rs.positive_roots if r.height == 1)
    h = rs.coxeter_number
    rows = []
    for mask in range(1 << rs.n_positive):
        sigma = [r for i, r in enumerate(rs.positive_roots) if mask >> i & 1]
        expect_free = mask == 0 or bool(mask & simple_mask)
        indicator = {
            root_covector(rs, r): 1 if mask >> i & 1 else 0
            for i, r in enumerate(rs.positive_roots)
        }
        base_exp = exp_rank2_multi(base, indicator)
        verdicts = {}
        for sign in "+-":
            arr = shi_arrangement(rs, k, sigma, sign)
            v = yoshinaga_check(arr, hz)
            verdicts[sign] = v
            if v.free:
                want = tuple(
                    sorted((1,) + shift_predict(ExponentMultiset(base_exp), k, h, sign).parts)
                )
                assert v.exponents.parts == want, (rs.type, k, mask, sign)
                d1, d2 = v.restriction_exponents
                assert charpoly_mobius(arr).coeffs == CharPoly.from_roots((1, d1, d2)).coeffs
        assert verdicts["+"].free == verdicts["-"].free == expect_free, (rs.type, k, mask)
        rows.append(mask)
    return rows


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_sign_symmetry_complete_small(systems, name):
    rs = systems[name]
    assert len(freeness_survey(rs, 1)) == 1 << rs.n_positive


def test_sign_symmetry_g2_k1(systems):
    assert len(freeness_survey(systems["G2"], 1)) == 64
