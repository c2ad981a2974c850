"""Irreducible crystallographic root systems in simple-root coordinates.

A positive root is stored as its integer coefficient vector over the simple
basis, so heights, dominance and hyperplane covectors are all exact integer
computations.  Cartan matrices follow the Bourbaki numbering; in particular
B and C chains end in the short and long root respectively, which matters
because their root posets differ.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import Vec

FAMILIES = "ABCDEFG"

_RANK_RULES = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class DualPartitionError(ValueError):
    """The level-count profile of a multiset is not weakly decreasing.

    Raised instead of clamping: a malformed profile signals a bug in the
    caller, not a degenerate input.
    """


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _RANK_RULES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if not _RANK_RULES[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        m = re.fullmatch(r"([A-Ga-g])(\d+)", text.strip())
        if not m:
            raise ValueError(f"cannot parse root system type {text!r} (expected e.g. 'B3')")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def cartan_matrix(self) -> tuple[Vec, ...]:
        """Cartan matrix C[i][j] = <alpha_i, alpha_j^vee> (Bourbaki numbering)."""
        r = self.rank
        c = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

        def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
            c[i][j] = cij
            c[j][i] = cji

        if self.family in ("A", "B", "C"):
            for i in range(r - 1):
                bond(i, i + 1)
            if self.family == "B" and r >= 2:
                bond(r - 2, r - 1, -2, -1)  # short root last
            if self.family == "C" and r >= 2:
                bond(r - 2, r - 1, -1, -2)  # long root last
        elif self.family == "D":
            for i in range(r - 3):
                bond(i, i + 1)
            bond(r - 3, r - 2)
            bond(r - 3, r - 1)
        elif self.family == "E":
            # chain 1-3-4-5-6(-7(-8)), node 2 hangs off node 4
            chain = [0, 2, 3, 4, 5, 6, 7][: r - 1]
            for a, b in zip(chain, chain[1:]):
                bond(a, b)
            bond(1, 3)
        elif self.family == "F":
            bond(0, 1)
            bond(1, 2, -2, -1)
            bond(2, 3)
        elif self.family == "G":
            bond(0, 1, -1, -3)
        return tuple(tuple(row) for row in c)


_TERM = re.compile(r"(\d*)a(\d+)")


@dataclass(frozen=True)
class Root:
    """A positive root as its coefficient vector over the simple basis."""

    coeffs: Vec

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def name(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            terms.append(f"a{i}" if c == 1 else f"{c}a{i}")
        return "+".join(terms)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Root":
        """Parse names like ``a1``, ``a1+a2``, ``3a1+2a2``."""
        coeffs = [0] * rank
        body = text.strip().replace(" ", "")
        if not body:
            raise ValueError("empty root name")
        for term in body.split("+"):
            m = _TERM.fullmatch(term)
            if not m:
                raise ValueError(f"cannot parse root term {term!r} in {text!r}")
            idx = int(m.group(2))
            if not 1 <= idx <= rank:
                raise ValueError(f"simple-root index {idx} out of range 1..{rank}")
            coeffs[idx - 1] += int(m.group(1) or 1)
        if not any(coeffs):
            raise ValueError(f"zero vector is not a root: {text!r}")
        return cls(tuple(coeffs))

    def __str__(self) -> str:
        return self.name


class RootSystem:
    """Positive roots of an irreducible crystallographic root system.

    Built by :func:`build`.  Roots are kept in the canonical order
    (ascending height, then descending lexicographic on coefficients), so
    every structure indexed by root position is reproducible.
    """

    def __init__(self, rstype: RootSystemType, positive_roots: Sequence[Root]):
        self.type = rstype
        self.rank = rstype.rank
        self.cartan = rstype.cartan_matrix()
        self.positive_roots: tuple[Root, ...] = tuple(positive_roots)
        self.index: dict[Vec, int] = {r.coeffs: i for i, r in enumerate(self.positive_roots)}
        self.n_positive = len(self.positive_roots)
        self.highest_root = max(self.positive_roots, key=lambda r: r.height)
        self.coxeter_number = self.highest_root.height + 1
        h = self.coxeter_number
        counts = [0] * h
        for r in self.positive_roots:
            counts[r.height - 1] += 1
        self.height_counts: tuple[int, ...] = tuple(counts)  # index i-1 holds |Ht^-1(i)|
        self._check_invariants()

    def _check_invariants(self) -> None:
        ell, h, g = self.rank, self.coxeter_number, self.height_counts
        if 2 * self.n_positive != ell * h:
            raise AssertionError(f"{self.type}: 2|roots| != rank * coxeter number")
        if g[0] != ell or g[h - 1] != 0:
            raise AssertionError(f"{self.type}: bad height count boundary {g}")
        if any(g[i] < g[i + 1] for i in range(h - 1)):
            raise AssertionError(f"{self.type}: height counts not weakly decreasing {g}")
        if any(g[i - 1] + g[h - i] != ell for i in range(1, h + 1)):
            raise AssertionError(f"{self.type}: height counts fail the mirror identity {g}")

    def root_at(self, coeffs: Sequence[int]) -> Root:
        key = tuple(coeffs)
        if key not in self.index:
            raise ValueError(f"{key} is not a positive root of {self.type}")
        return self.positive_roots[self.index[key]]

    def contains(self, root: Root) -> bool:
        return root.coeffs in self.index

    def __repr__(self) -> str:
        return f"RootSystem({self.type}, {self.n_positive} positive roots)"


def _canon_key(coeffs: Vec) -> tuple[int, tuple[int, ...]]:
    return (sum(coeffs), tuple(-c for c in coeffs))


def build(rstype: RootSystemType | str) -> RootSystem:
    """Construct a root system by reflection closure of the simple basis.

    Applies every simple reflection to every known vector and keeps the
    results with all-nonnegative coefficients, until stable.
    """
    if isinstance(rstype, str):
        rstype = RootSystemType.parse(rstype)
    cartan = rstype.cartan_matrix()
    r = rstype.rank
    found: set[Vec] = {tuple(1 if i == j else 0 for j in range(r)) for i in range(r)}
    frontier = list(found)
    while frontier:
        nxt = []
        for v in frontier:
            for j in range(r):
                pairing = sum(v[i] * cartan[i][j] for i in range(r))
                w = list(v)
                w[j] -= pairing
                if all(x >= 0 for x in w):
                    wt = tuple(w)
                    if wt not in found:
                        found.add(wt)
                        nxt.append(wt)
        frontier = nxt
    roots = [Root(c) for c in sorted(found, key=_canon_key)]
    return RootSystem(rstype, roots)


def coxeter_number(rs: RootSystem) -> int:
    """Height of the highest root plus one; equals 2|roots| / rank."""
    return rs.coxeter_number


@dataclass(frozen=True)
class ExponentMultiset:
    """A sorted multiset of nonnegative integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))
        if any(p < 0 for p in self.parts):
            raise ValueError(f"negative part in exponent multiset {self.parts}")

    def total(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


def dual_partition(values: Iterable[int], d: int) -> ExponentMultiset:
    """Conjugate the level counts of a multiset of positive integers.

    With f_i the multiplicity of i, returns (0)^(d-f_1) (1)^(f_1-f_2) ...
    The profile must satisfy f_1 <= d and f_i <= f_{i-1}; violations raise
    :class:`DualPartitionError`.
    """
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    vals = list(values)
    if any(v < 1 for v in vals):
        raise DualPartitionError(f"values must be positive integers, got {sorted(vals)[:5]}...")
    top = max(vals, default=0)
    f = [0] * (top + 2)
    for v in vals:
        f[v] += 1
    if top and f[1] > d:
        raise DualPartitionError(f"level count f_1 = {f[1]} exceeds dimension {d}")
    for i in range(2, top + 1):
        if f[i] > f[i - 1]:
            raise DualPartitionError(f"level counts increase at {i}: f = {f[1:top + 1]}")
    parts = [0] * (d - (f[1] if top else 0))
    for i in range(1, top + 1):
        parts.extend([i] * (f[i] - f[i + 1]))
    return ExponentMultiset(tuple(parts))


def weyl_exponents(rs: RootSystem) -> ExponentMultiset:
    """Exponents of the Weyl arrangement: dual partition of the root heights."""
    return dual_partition((r.height for r in rs.positive_roots), rs.rank)


def ext_height(rs: RootSystem, root: Root, j: int) -> int:
    """Height of the affine vector ``root - j*z``, extended h-periodically.

    Positive levels mirror the height through the top of the window:
    -Ht + j*h + 1; nonpositive levels shift it: Ht - j*h.
    """
    if root.coeffs not in rs.index:
        raise ValueError(f"{root} is not a positive root of {rs.type}")
    h = rs.coxeter_number
    if j > 0:
        return -root.height + j * h + 1
    return root.height - j * h


def ext_height_z() -> int:
    """Height assigned to the coning direction."""
    return 1


def shi_defining_values(rs: RootSystem, k: int, ideal_roots: Iterable[Root], sign: str) -> list[int]:
    """Extended heights of the defining vectors of an ideal-Shi arrangement.

    Sign '+': levels 1-k..k for all roots, plus level -k for the ideal,
    plus z.  Sign '-': levels 1-k..k with level k removed on the ideal,
    plus z.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    chosen = _validated_ideal_mask(rs, ideal_roots)
    values = [ext_height_z()]
    for i, root in enumerate(rs.positive_roots):
        for j in range(-k + 1, k + 1):
            if sign == "-" and j == k and chosen >> i & 1:
                continue
            values.append(ext_height(rs, root, j))
        if sign == "+" and chosen >> i & 1:
            values.append(ext_height(rs, root, -k))
    return values


def _validated_ideal_mask(rs: RootSystem, roots: Iterable[Root]) -> int:
    mask = 0
    for r in roots:
        if r.coeffs not in rs.index:
            raise ValueError(f"{r} is not a positive root of {rs.type}")
        mask |= 1 << rs.index[r.coeffs]
    for i, alpha in enumerate(rs.positive_roots):
        if not mask >> i & 1:
            continue
        for j, beta in enumerate(rs.positive_roots):
            if mask >> j & 1:
                continue
            if all(a - b >= 0 for a, b in zip(alpha.coeffs, beta.coeffs)):
                raise ValueError(
                    f"subset is not an ideal: contains {alpha} but not {beta}"
                )
    return mask


def shi_exponents_dp(rs: RootSystem, k: int, ideal_roots: Iterable[Root], sign: str) -> ExponentMultiset:
    """Predicted ideal-Shi exponents: dual partition of the extended heights."""
    values = shi_defining_values(rs, k, ideal_roots, sign)
    return dual_partition(values, rs.rank + 1)
