"""Exact characteristic polynomials by three independent routes.

The Mobius-function sum over the intersection lattice is authoritative.
The signed subset sum (Whitney) and finite-field point counting are
consistency oracles: divergence means a bug or a bad prime, never
something to hide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg
from .arrangement import Arrangement, LatticeCache, SizeBoundError, intersection_lattice
from .rootsys import ExponentMultiset


@dataclass(frozen=True)
class CharPoly:
    """Dense integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError(f"characteristic polynomials are monic, got {self.coeffs}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "CharPoly":
        coeffs = [1]
        for r in roots:
            coeffs = [0] + coeffs
            for i in range(len(coeffs) - 1):
                coeffs[i] -= r * coeffs[i + 1]
        return cls(tuple(coeffs))

    def __str__(self) -> str:
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mono = "1" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if d == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms) if terms else "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


class NotDivisibleError(ValueError):
    """(t - 1) does not divide the polynomial; the input was not central."""


class BadReductionError(RuntimeError):
    """Finite-field counts were inconsistent across the prime set."""


def charpoly_mobius(
    arr: Arrangement,
    cache: Optional[LatticeCache] = None,
    *,
    max_hyperplanes: int = 80,
    max_dim: int = 5,
) -> CharPoly:
    """Mobius-weighted sum of t^dim(X) over the intersection lattice."""
    if cache is not None:
        hit = cache.get_charpoly(arr)
        if hit is not None:
            return CharPoly(hit)
    lattice = intersection_lattice(arr, max_hyperplanes=max_hyperplanes, max_dim=max_dim)
    poly = CharPoly(lattice.charpoly_coeffs())
    if cache is not None:
        cache.put_charpoly(arr, poly.coeffs, [len(lv) for lv in lattice.levels])
    return poly


def charpoly_whitney(arr: Arrangement, max_hyperplanes: int = 22) -> CharPoly:
    """Signed sum of t^(dim - rank B) over subsets B of the arrangement.

    Subsets whose next element depends on the ones already chosen cancel
    in +/- pairs, so the walk only ever branches on independent sets;
    that keeps |A| = 22 comfortably feasible without changing the sum.
    """
    if arr.size > max_hyperplanes:
        raise SizeBoundError(f"{arr.size} hyperplanes exceed the subset-sum bound {max_hyperplanes}")
    n = arr.dim
    covs = arr.covectors
    m = len(covs)
    coeffs = [0] * (n + 1)

    def walk(i: int, rows, pivots, size: int) -> None:
        if i == m:
            coeffs[n - size] += -1 if size % 2 else 1
            return
        ins = linalg.insert_row(rows, pivots, covs[i])
        if ins is None:
            return  # dependent: the include/exclude subtrees cancel exactly
        walk(i + 1, rows, pivots, size)
        walk(i + 1, ins[0], ins[1], size + 1)

    walk(0, (), (), 0)
    return CharPoly(tuple(coeffs))


def _primes_from(start: int):
    q = max(5, start)
    while True:
        if all(q % p for p in range(2, int(q**0.5) + 1)):
            yield q
        q += 1


def count_free_points(arr: Arrangement, q: int) -> int:
    """Points of the affine space over F_q lying on no hyperplane."""
    n = arr.dim
    if not arr.covectors:
        return q**n
    mat = np.array(arr.covectors, dtype=np.int64)
    pts = np.indices((q,) * n).reshape(n, -1)
    total = 0
    chunk = 1 << 16
    for start in range(0, pts.shape[1], chunk):
        block = pts[:, start : start + chunk]
        dots = (mat @ block) % q
        total += int((dots != 0).all(axis=0).sum())
    return total


def charpoly_finite_field(
    arr: Arrangement,
    primes: Optional[Sequence[int]] = None,
    *,
    retries: int = 3,
    max_dim: int = 5,
) -> CharPoly:
    """Interpolate the polynomial from point counts over prime fields.

    Uses dim+1 primes for interpolation plus two more as consistency
    witnesses; each prime must exceed every covector entry and dim+1.
    Inconsistent batches are retried with larger primes, then flagged.
    """
    n = arr.dim
    if n > max_dim:
        raise SizeBoundError(f"ambient dimension {n} exceeds the point-counting bound {max_dim}")
    max_entry = max((abs(e) for c in arr.covectors for e in c), default=0)
    floor = max(max_entry, n + 1) + 1
    if primes is not None:
        batch = list(primes)
        if len(batch) < n + 1:
            raise ValueError(f"need at least {n + 1} primes, got {len(batch)}")
        if min(batch) <= max(max_entry, n + 1):
            raise ValueError("primes must exceed every covector entry and dim+1")
        return _interpolate_batch(arr, batch)
    last_error: Optional[Exception] = None
    for attempt in range(retries):
        gen = _primes_from(floor * (4**attempt))
        batch = [next(gen) for _ in range(n + 3)]
        try:
            return _interpolate_batch(arr, batch)
        except BadReductionError as err:
            last_error = err
    raise BadReductionError(f"no consistent prime batch found: {last_error}")


def _interpolate_batch(arr: Arrangement, primes: Sequence[int]) -> CharPoly:
    n = arr.dim
    counts = [count_free_points(arr, q) for q in primes]
    xs, ys = primes[: n + 1], counts[: n + 1]
    coeffs = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(len(basis)):
            coeffs[d] += Fraction(yi) * basis[d] / denom
    if any(c.denominator != 1 for c in coeffs) or coeffs[-1] != 1:
        raise BadReductionError(f"interpolant from primes {list(primes)} is not monic integral")
    poly = CharPoly(tuple(int(c) for c in coeffs))
    for q, cnt in zip(primes[n + 1 :], counts[n + 1 :]):
        if poly(q) != cnt:
            raise BadReductionError(f"count at extra prime {q} disagrees with the interpolant")
    return poly


def chi0(p: CharPoly) -> CharPoly:
    """Exact quotient by (t - 1)."""
    quot = [0] * p.degree
    carry = 0
    for d in range(p.degree, 0, -1):
        carry = p.coeffs[d] + carry
        quot[d - 1] = carry
    if carry + p.coeffs[0] != 0:
        raise NotDivisibleError("(t - 1) does not divide; arrangement was empty or not central")
    return CharPoly(tuple(quot))


def chi0_at_zero(arr: Arrangement, cache: Optional[LatticeCache] = None, **bounds) -> int:
    return chi0(charpoly_mobius(arr, cache, **bounds)).coeffs[0]


@dataclass(frozen=True)
class FactorFailure:
    """Witness that a polynomial does not split over the nonnegative integers."""

    roots_found: tuple[int, ...]
    residual: CharPoly

    def __str__(self) -> str:
        return f"no split: residual {self.residual} after roots {self.roots_found}"


def try_factor_exponents(p: CharPoly) -> Union[ExponentMultiset, FactorFailure]:
    """Extract all nonnegative integer roots by synthetic division.

    Returns the full multiset when the polynomial splits completely, else
    a :class:`FactorFailure` carrying the non-splitting residual.  Failure
    is an ordinary value: non-free arrangements are expected witnesses.
    """
    roots: list[int] = []
    current = list(p.coeffs)

    def divide_out(r: int) -> bool:
        # synthetic division by (t - r); only commit when remainder is 0
        out = []
        carry = 0
        for c in reversed(current):
            carry = carry * r + c
            out.append(carry)
        if out[-1] != 0:
            return False
        del current[:]
        current.extend(reversed(out[:-1]))
        return True

    bound = 1 + max(abs(c) for c in p.coeffs)
    r = 0
    while len(current) > 1 and r <= bound:
        if divide_out(r):
            roots.append(r)
        else:
            r += 1
    if len(current) == 1:
        return ExponentMultiset(tuple(roots))
    return FactorFailure(tuple(roots), CharPoly(tuple(current)))


@dataclass(frozen=True)
class TeraoVerdict:
    passed: bool
    computed: CharPoly
    predicted: ExponentMultiset

    @property
    def predicted_poly(self) -> CharPoly:
        return CharPoly.from_roots(tuple(self.predicted))

    def __str__(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}: chi = {self.computed}, predicted roots {self.predicted}"


def terao_check(
    arr: Arrangement,
    predicted: ExponentMultiset,
    cache: Optional[LatticeCache] = None,
    **bounds,
) -> TeraoVerdict:
    """Exact test that chi equals the product of (t - e) over the
    predicted exponents.  A pass is necessary for freeness with those
    exponents; in ambient dimension 3 see the complete criterion in
    :mod:`idealshi.multiarr`."""
    if len(predicted) != arr.dim:
        raise ValueError(f"predicted multiset has {len(predicted)} parts, ambient is {arr.dim}")
    computed = charpoly_mobius(arr, cache, **bounds)
    return TeraoVerdict(
        computed.coeffs == CharPoly.from_roots(tuple(predicted)).coeffs, computed, predicted
    )
