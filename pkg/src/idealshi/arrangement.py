"""Central arrangements of integer covectors and their intersection lattices.

A hyperplane {alpha - j*z = 0} in the coned space is the covector
(c_1, ..., c_l, -j) over the basis (simple roots, z); {z = 0} is
(0, ..., 0, 1).  Only the linear matroid of these vectors matters for the
lattice, the Mobius function and the characteristic polynomial, so no inner
product or Gram matrix ever enters: everything is exact integer arithmetic.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import linalg
from .ideals import linear_extension
from .linalg import Vec
from .rootsys import ExponentMultiset, Root, RootSystem, dual_partition, ext_height, ext_height_z


class SizeBoundError(RuntimeError):
    """A computation was refused because it exceeds a configured size guard."""


def covector(entries: Sequence[int]) -> Vec:
    """Normalize to a primitive covector with positive first nonzero entry."""
    v = linalg.normalize_primitive(entries)
    if v is None:
        raise ValueError("the zero vector does not define a hyperplane")
    return v


@dataclass(frozen=True)
class Arrangement:
    """A deduplicated set of hyperplanes through the origin."""

    dim: int
    covectors: tuple[Vec, ...]

    @classmethod
    def of(cls, dim: int, vectors: Iterable[Sequence[int]]) -> "Arrangement":
        normed = set()
        for v in vectors:
            if len(v) != dim:
                raise ValueError(f"covector length {len(v)} != ambient dimension {dim}")
            normed.add(covector(v))
        return cls(dim, tuple(sorted(normed)))

    @property
    def size(self) -> int:
        return len(self.covectors)

    def __len__(self) -> int:
        return len(self.covectors)

    def contains(self, v: Sequence[int]) -> bool:
        return covector(v) in set(self.covectors)

    def delete(self, v: Sequence[int]) -> "Arrangement":
        cov = covector(v)
        if cov not in self.covectors:
            raise ValueError("hyperplane not in arrangement")
        return Arrangement(self.dim, tuple(c for c in self.covectors if c != cov))

    def rank(self) -> int:
        return linalg.rank(self.covectors)


# ---------------------------------------------------------------------------
# construction of the arrangements attached to a root system


def root_covector(rs: RootSystem, root: Root, j: int = 0, coned: bool = False) -> Vec:
    """Covector of {root - j*z = 0}; plain root hyperplane when not coned."""
    if root.coeffs not in rs.index:
        raise ValueError(f"{root} is not a positive root of {rs.type}")
    if coned:
        return covector(root.coeffs + (-j,))
    if j != 0:
        raise ValueError("unconed hyperplanes only exist at level 0")
    return covector(root.coeffs)


def z_covector(rs: RootSystem) -> Vec:
    return (0,) * rs.rank + (1,)


def root_arrangement(rs: RootSystem, roots: Optional[Iterable[Root]] = None) -> Arrangement:
    """The arrangement {root = 0 : root in subset} in rank-many coordinates."""
    chosen = rs.positive_roots if roots is None else tuple(roots)
    return Arrangement.of(rs.rank, [root_covector(rs, r) for r in chosen])


def _sigma_mask(rs: RootSystem, sigma: Iterable[Root]) -> int:
    mask = 0
    for r in sigma:
        idx = rs.index.get(r.coeffs)
        if idx is None:
            raise ValueError(f"{r} is not a positive root of {rs.type}")
        mask |= 1 << idx
    return mask


def shi_plus(rs: RootSystem, k: int, sigma: Iterable[Root]) -> Arrangement:
    """Coned k-extended Shi arrangement plus the level -k planes of sigma."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    mask = _sigma_mask(rs, sigma)
    covs = [z_covector(rs)]
    for i, root in enumerate(rs.positive_roots):
        for j in range(-k + 1, k + 1):
            covs.append(root_covector(rs, root, j, coned=True))
        if mask >> i & 1:
            covs.append(root_covector(rs, root, -k, coned=True))
    return Arrangement.of(rs.rank + 1, covs)


def shi_minus(rs: RootSystem, k: int, sigma: Iterable[Root]) -> Arrangement:
    """Coned k-extended Shi arrangement minus the level k planes of sigma."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    mask = _sigma_mask(rs, sigma)
    covs = [z_covector(rs)]
    for i, root in enumerate(rs.positive_roots):
        for j in range(-k + 1, k + 1):
            if j == k and mask >> i & 1:
                continue
            covs.append(root_covector(rs, root, j, coned=True))
    return Arrangement.of(rs.rank + 1, covs)


def shi_arrangement(rs: RootSystem, k: int, sigma: Iterable[Root], sign: str) -> Arrangement:
    if sign == "+":
        return shi_plus(rs, k, sigma)
    if sign == "-":
        return shi_minus(rs, k, sigma)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def filtration_vectors(rs: RootSystem, i: int) -> tuple[tuple[Root, int], ...]:
    """The (root, level) pairs of the first i-1 planes of the saturated chain.

    Within each full round of 2n planes the chain first lays down level -q
    along the fixed prefix-ideal order, then level q+1 in reverse order.
    """
    if i < 1:
        raise ValueError("filtration steps are indexed from 1")
    order = linear_extension(rs).order
    n = len(order)
    out = []
    for p in range(1, i):
        q, r = divmod(p - 1, 2 * n)
        r += 1
        if r <= n:
            out.append((order[r - 1], -q))
        else:
            out.append((order[2 * n - r], q + 1))
    return tuple(out)


def filtration_step(rs: RootSystem, i: int) -> Arrangement:
    """The i-th member of the saturated filtration of the coned affine
    Weyl arrangement: {z = 0} plus the first i-1 chain planes."""
    covs = [z_covector(rs)]
    covs.extend(root_covector(rs, root, j, coned=True) for root, j in filtration_vectors(rs, i))
    arr = Arrangement.of(rs.rank + 1, covs)
    if arr.size != i:
        raise AssertionError(f"filtration step {i} produced {arr.size} planes")
    return arr


def filtration_exponents(rs: RootSystem, i: int) -> ExponentMultiset:
    """Predicted exponents of the i-th filtration step (dual partition of
    the extended heights of its defining vectors, including z)."""
    values = [ext_height_z()]
    values.extend(ext_height(rs, root, j) for root, j in filtration_vectors(rs, i))
    return dual_partition(values, rs.rank + 1)


# ---------------------------------------------------------------------------
# intersection lattice


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by the canonical row space of the linear
    forms vanishing on it.  codim equals the number of rows."""

    ambient_dim: int
    rows: tuple[Vec, ...]

    @property
    def codim(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.rows)

    def pivots(self) -> tuple[int, ...]:
        return tuple(linalg.first_nonzero(r) for r in self.rows)

    def contains_form(self, v: Sequence[int]) -> bool:
        """True when the linear form vanishes on this subspace."""
        return linalg.in_rowspace(v, self.rows, self.pivots())

    def contains_subspace(self, other: "Subspace") -> bool:
        piv = other.pivots()
        return all(linalg.in_rowspace(r, other.rows, piv) for r in self.rows)


@dataclass(frozen=True)
class LatticeNode:
    subspace: Subspace
    mask: int  # bitmask of the hyperplanes containing the flat
    mu: int


@dataclass(frozen=True)
class IntersectionLattice:
    arrangement: Arrangement
    levels: tuple[tuple[LatticeNode, ...], ...]  # levels[c] = flats of codim c

    @property
    def dim(self) -> int:
        return self.arrangement.dim

    def nodes(self) -> Iterable[LatticeNode]:
        for level in self.levels:
            yield from level

    def charpoly_coeffs(self) -> tuple[int, ...]:
        """Coefficients (ascending degree) of sum mu(X) t^dim(X)."""
        coeffs = [0] * (self.dim + 1)
        for node in self.nodes():
            coeffs[node.subspace.dim] += node.mu
        return tuple(coeffs)


def intersection_lattice(
    arr: Arrangement, *, max_hyperplanes: int = 80, max_dim: int = 5
) -> IntersectionLattice:
    """Build the full intersection lattice, level by level.

    Flats of codimension c+1 arise by intersecting each codim-c flat with
    each hyperplane not containing it; canonical row forms deduplicate
    them.  The top flat (the intersection of everything) is unique, so the
    last level is written down directly instead of being re-derived from
    every flat below it.
    """
    n = arr.dim
    if n > max_dim:
        raise SizeBoundError(f"ambient dimension {n} exceeds bound {max_dim}")
    if arr.size > max_hyperplanes:
        raise SizeBoundError(f"{arr.size} hyperplanes exceed bound {max_hyperplanes}")
    covs = arr.covectors
    m = len(covs)

    # flats per level as {rows: (pivots, mask)}
    levels: list[dict[tuple[Vec, ...], tuple[tuple[int, ...], int]]] = [{(): ((), 0)}]
    if m:
        full_rows = linalg.rref(covs)
        top_codim = len(full_rows)
        atoms = {
            (cov,): ((linalg.first_nonzero(cov),), 1 << i) for i, cov in enumerate(covs)
        }
        levels.append(atoms)
        for c in range(2, top_codim):
            prev = levels[c - 1]
            cur: dict[tuple[Vec, ...], tuple[tuple[int, ...], int]] = {}
            for rows, (pivots, mask) in prev.items():
                for i in range(m):
                    if mask >> i & 1:
                        continue
                    ins = linalg.insert_row(rows, pivots, covs[i])
                    if ins is None:  # hyperplane already contains the flat
                        continue
                    new_rows, new_pivots = ins
                    if new_rows in cur:
                        continue
                    child_mask = mask | (1 << i)
                    for t in range(m):
                        if child_mask >> t & 1:
                            continue
                        if linalg.in_rowspace(covs[t], new_rows, new_pivots):
                            child_mask |= 1 << t
                    cur[new_rows] = (new_pivots, child_mask)
            levels.append(cur)
        if top_codim >= 2:
            top_pivots = tuple(linalg.first_nonzero(r) for r in full_rows)
            levels.append({full_rows: (top_pivots, (1 << m) - 1)})

    # Mobius values: mu(X) = -sum over flats strictly containing X, which
    # are exactly the flats whose hyperplane mask is a subset of X's.
    use_numpy = m <= 63
    out_levels: list[list[LatticeNode]] = []
    np_masks = np.zeros(0, dtype=np.uint64)
    np_mus = np.zeros(0, dtype=np.int64)
    py_pairs: list[tuple[int, int]] = []
    for c, level in enumerate(levels):
        nodes = []
        masks_here = []
        mus_here = []
        for rows, (_pivots, mask) in level.items():
            if c == 0:
                mu = 1
            elif use_numpy:
                sel = (np_masks & np.uint64(mask)) == np_masks
                mu = -int(np_mus[sel].sum())
            else:
                mu = -sum(v for mk, v in py_pairs if mk & mask == mk)
            nodes.append(LatticeNode(Subspace(n, rows), mask, mu))
            masks_here.append(mask)
            mus_here.append(mu)
        out_levels.append(nodes)
        if use_numpy:
            np_masks = np.concatenate([np_masks, np.array(masks_here, dtype=np.uint64)])
            np_mus = np.concatenate([np_mus, np.array(mus_here, dtype=np.int64)])
        else:
            py_pairs.extend(zip(masks_here, mus_here))

    lattice = IntersectionLattice(arr, tuple(tuple(lv) for lv in out_levels))
    if m and sum(node.mu for node in lattice.nodes()) != 0:
        raise AssertionError("Mobius values of a nonempty central arrangement must sum to 0")
    return lattice


def localization(arr: Arrangement, x: Subspace) -> Arrangement:
    """The subarrangement of hyperplanes containing a flat of the lattice."""
    if x.ambient_dim != arr.dim:
        raise ValueError("subspace lives in a different ambient dimension")
    members = [c for c in arr.covectors if x.contains_form(c)]
    closure = linalg.rref(members)
    if closure != x.rows:
        raise ValueError("subspace is not a flat of this arrangement")
    return Arrangement(arr.dim, tuple(members))


def flat_of(arr: Arrangement, forms: Iterable[Sequence[int]]) -> Subspace:
    """The flat cut out by a set of the arrangement's hyperplanes."""
    vs = [covector(v) for v in forms]
    missing = [v for v in vs if v not in set(arr.covectors)]
    if missing:
        raise ValueError(f"hyperplanes not in arrangement: {missing}")
    return Subspace(arr.dim, linalg.rref(vs))


# ---------------------------------------------------------------------------
# restriction and Ziegler multiplicities


def _traces(arr: Arrangement, h0: Vec) -> list[Vec]:
    basis = linalg.kernel_basis(h0)
    out = []
    for c in arr.covectors:
        if c == h0:
            continue
        t = tuple(linalg.dot(c, b) for b in basis)
        out.append(covector(t))
    return out


def restriction(arr: Arrangement, h0: Sequence[int]) -> Arrangement:
    """The arrangement {K cap H0 : K != H0} inside H0.

    H0 may be any hyperplane, member of the arrangement or not.  The basis
    of H0 is the Hermite normal form of its integer kernel lattice, so
    restricted arrangements are canonical.
    """
    h0v = covector(h0)
    return Arrangement.of(arr.dim - 1, _traces(arr, h0v))


def intersection_count(arr: Arrangement, h0: Sequence[int]) -> int:
    return restriction(arr, h0).size


def ziegler_multiplicity(
    arr: Arrangement, h0: Sequence[int]
) -> tuple[Arrangement, dict[Vec, int]]:
    """Restriction onto h0 with each trace weighted by how many
    hyperplanes of the arrangement cut it out."""
    h0v = covector(h0)
    if h0v not in set(arr.covectors):
        raise ValueError("restriction hyperplane must belong to the arrangement")
    mult: dict[Vec, int] = {}
    for t in _traces(arr, h0v):
        mult[t] = mult.get(t, 0) + 1
    return Arrangement(arr.dim - 1, tuple(sorted(mult))), mult


# ---------------------------------------------------------------------------
# lattice cache

CACHE_VERSION = 1


def arrangement_key(arr: Arrangement) -> str:
    payload = json.dumps([arr.dim, [list(c) for c in arr.covectors]], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


class LatticeCache:
    """Optional on-disk store of characteristic-polynomial summaries,
    keyed by a hash of the canonical covector set.  The file format is
    internal and versioned, not a compatibility surface."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def get_charpoly(self, arr: Arrangement) -> Optional[tuple[int, ...]]:
        path = self._path(arrangement_key(arr))
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                blob = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None
        if blob.get("version") != CACHE_VERSION or blob.get("dim") != arr.dim:
            return None
        return tuple(int(c) for c in blob["chi"])

    def put_charpoly(self, arr: Arrangement, coeffs: Sequence[int], level_sizes: Sequence[int]) -> None:
        blob = {
            "version": CACHE_VERSION,
            "dim": arr.dim,
            "size": arr.size,
            "chi": [str(c) for c in coeffs],
            "level_sizes": list(level_sizes),
        }
        path = self._path(arrangement_key(arr))
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(blob, fh, sort_keys=True)
        os.replace(tmp, path)
