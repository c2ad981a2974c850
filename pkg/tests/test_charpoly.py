"""Characteristic polynomials: frozen values, oracle agreement, chi_0,
factorization, deletion-restriction."""

import random

import pytest

from idealshi import (
    Arrangement,
    BadReductionError,
    CharPoly,
    FactorFailure,
    NotDivisibleError,
    SizeBoundError,
    build,
    charpoly_finite_field,
    charpoly_mobius,
    charpoly_whitney,
    chi0,
    chi0_at_zero,
    count_free_points,
    restriction,
    root_arrangement,
    shi_arrangement,
    shi_minus,
    shi_plus,
    terao_check,
    try_factor_exponents,
)
from idealshi.rootsys import ExponentMultiset


def poly_of_roots(*roots):
    return CharPoly.from_roots(roots).coeffs


def test_frozen_polynomials():
    a2 = build("A2")
    b2 = build("B2")
    assert charpoly_mobius(shi_plus(a2, 1, [])).coeffs == poly_of_roots(1, 3, 3)
    assert charpoly_mobius(shi_plus(a2, 1, a2.positive_roots)).coeffs == poly_of_roots(1, 4, 5)
    assert charpoly_mobius(shi_minus(a2, 1, a2.positive_roots)).coeffs == poly_of_roots(1, 1, 2)
    assert charpoly_mobius(shi_plus(b2, 1, [])).coeffs == poly_of_roots(1, 4, 4)
    assert charpoly_mobius(root_arrangement(a2)).coeffs == poly_of_roots(1, 2)
    boolean = Arrangement.of(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert charpoly_mobius(boolean).coeffs == poly_of_roots(1, 1, 1)
    single = Arrangement.of(2, [(1, 0)])
    assert charpoly_mobius(single).coeffs == (0, -1, 1)  # t^2 - t
    empty = Arrangement.of(2, [])
    assert charpoly_mobius(empty).coeffs == (0, 0, 1)


def test_whitney_matches_hand_values():
    a2 = build("A2")
    assert charpoly_whitney(shi_minus(a2, 1, a2.positive_roots)).coeffs == poly_of_roots(1, 1, 2)
    b2 = build("B2")
    assert charpoly_whitney(shi_plus(b2, 1, [])).coeffs == poly_of_roots(1, 4, 4)
    single = Arrangement.of(2, [(1, 0)])
    assert charpoly_whitney(single).coeffs == (0, -1, 1)


def test_whitney_size_guard():
    g2 = build("G2")
    big = shi_plus(g2, 2, g2.positive_roots)  # 31 planes
    with pytest.raises(SizeBoundError):
        charpoly_whitney(big)


def test_finite_field_counts():
    a2 = build("A2")
    shi = shi_plus(a2, 1, [])
    assert count_free_points(shi, 7) == 96  # (7-1)(7-3)^2
    boolean = Arrangement.of(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert count_free_points(boolean, 5) == 64
    empty = Arrangement.of(2, [])
    assert count_free_points(empty, 5) == 25
    assert charpoly_finite_field(empty).coeffs == (0, 0, 1)


def test_finite_field_rejects_small_primes():
    a2 = build("A2")
    shi = shi_plus(a2, 1, [])
    with pytest.raises(ValueError):
        charpoly_finite_field(shi, primes=[2, 3, 5, 7])


def corpus():
    out = []
    for name in ("A2", "B2", "G2"):
        rs = build(name)
        out.append(shi_plus(rs, 1, []))
        out.append(shi_plus(rs, 1, rs.positive_roots))
        out.append(shi_minus(rs, 1, rs.positive_roots))
        out.append(root_arrangement(rs))
    a3 = build("A3")
    out.append(shi_plus(a3, 1, []))
    out.append(shi_minus(a3, 1, a3.positive_roots))
    return out


def test_three_way_oracle_agreement():
    for arr in corpus():
        mob = charpoly_mobius(arr)
        assert charpoly_finite_field(arr).coeffs == mob.coeffs
        if arr.size <= 22:
            assert charpoly_whitney(arr).coeffs == mob.coeffs


def test_deletion_restriction_sampled():
    rng = random.Random(23)
    pool = corpus()
    for _ in range(20):
        arr = rng.choice(pool)
        if arr.size < 2:
            continue
        h = rng.choice(arr.covectors)
        whole = charpoly_mobius(arr).coeffs
        deleted = charpoly_mobius(arr.delete(h)).coeffs
        restricted = charpoly_mobius(restriction(arr, h)).coeffs
        want = list(deleted)
        for d, c in enumerate(restricted):
            want[d] -= c
        assert tuple(want) == whole


def test_chi0_examples():
    a2 = build("A2")
    shi = shi_plus(a2, 1, [])
    q = chi0(charpoly_mobius(shi))
    assert q.coeffs == (9, -6, 1)  # (t-3)^2
    assert chi0_at_zero(shi) == 9
    assert chi0_at_zero(shi_plus(a2, 1, [a2.root_at((1, 1))])) == 13
    assert chi0_at_zero(shi_plus(a2, 1, [a2.positive_roots[0]])) == 12


def test_chi0_rejects_non_divisible():
    with pytest.raises(NotDivisibleError):
        chi0(CharPoly((0, 0, 1)))  # t^2, the empty arrangement


def chi0_zero_formula(rs, k, sigma_mask):
    """Closed form for chi_0 at zero of the extended arrangement, rank 2."""
    h = rs.coxeter_number
    size = bin(sigma_mask).count("1")
    simple_mask = sum(1 << rs.index[r.coeffs] for r in rs.positive_roots if r.height == 1)
    if sigma_mask == 0:
        return (k * h) ** 2
    if sigma_mask & simple_mask:
        return (k * h) ** 2 + k * h + (k * h + 1) * (size - 1)
    return (k * h) ** 2 + (k * h + 1) * size


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
@pytest.mark.parametrize("k", [1, 2])
def test_chi0_zero_closed_form(systems, name, k):
    rs = systems[name]
    for mask in range(1 << rs.n_positive):
        sigma = [r for i, r in enumerate(rs.positive_roots) if mask >> i & 1]
        got = chi0_at_zero(shi_plus(rs, k, sigma))
        assert got == chi0_zero_formula(rs, k, mask), (name, k, mask)


def test_try_factor_exponents():
    assert try_factor_exponents(CharPoly.from_roots([1, 3, 3])).parts == (1, 3, 3)
    assert try_factor_exponents(CharPoly.from_roots([1, 4, 5])).parts == (1, 4, 5)
    failure = try_factor_exponents(CharPoly((1, 0, 1)))  # t^2 + 1
    assert isinstance(failure, FactorFailure)
    assert failure.residual.coeffs == (1, 0, 1)
    # negative roots stay in the residual
    mixed = try_factor_exponents(CharPoly((-2, -1, 1)))  # (t+1)(t-2)
    assert isinstance(mixed, FactorFailure)
    assert mixed.roots_found == (2,)
    assert mixed.residual.coeffs == (1, 1)


def test_terao_check_examples():
    a2 = build("A2")
    assert terao_check(shi_plus(a2, 1, []), ExponentMultiset((1, 3, 3))).passed
    cat = shi_plus(a2, 1, a2.positive_roots)
    assert terao_check(cat, ExponentMultiset((1, 4, 5))).passed
    assert not terao_check(cat, ExponentMultiset((1, 3, 3))).passed
    with pytest.raises(ValueError):
        terao_check(cat, ExponentMultiset((1, 2)))


def test_root_sums_track_sizes():
    # when chi splits, the roots add up to the number of hyperplanes
    for arr in corpus():
        split = try_factor_exponents(charpoly_mobius(arr))
        if not isinstance(split, FactorFailure):
            assert split.total() == arr.size
