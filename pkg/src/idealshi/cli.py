"""Command-line driver: verification campaigns over (type, k, subset, sign) grids.

Subcommands: roots, ideals, exponents, verify, filtration, charpoly.
Exit codes: 0 all expectations met, 1 at least one mismatch (a genuine
counterexample would land here, so it normally means an implementation
bug), 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional, Sequence

from . import __version__
from .arrangement import (
    Arrangement,
    LatticeCache,
    SizeBoundError,
    filtration_exponents,
    filtration_step,
    root_arrangement,
    root_covector,
    shi_arrangement,
    z_covector,
    ziegler_multiplicity,
)
from .charpoly import (
    FactorFailure,
    charpoly_finite_field,
    charpoly_mobius,
    charpoly_whitney,
    terao_check,
    try_factor_exponents,
)
from .ideals import Ideal, enumerate_ideals, ideal_exponents, is_ideal, mask_of
from .multiarr import exp_rank2_multi, shift_predict, yoshinaga_check
from .report import (
    FAIL,
    NOT_FREE_CONFIRMED,
    PASS,
    SKIPPED,
    CaseRecord,
    CheckResult,
    Report,
    text_table,
)
from .rootsys import (
    ExponentMultiset,
    Root,
    RootSystem,
    RootSystemType,
    build,
    shi_exponents_dp,
    weyl_exponents,
)

DEFAULT_MAX_HYPERPLANES = 73  # admits every rank <= 3 campaign and rank 4 at k = 1
DEFAULT_MAX_DIM = 5


class UsageError(Exception):
    pass


@lru_cache(maxsize=None)
def _system(name: str) -> RootSystem:
    return build(RootSystemType.parse(name))


def _parse_subset(rs: RootSystem, spec: str) -> tuple[int, Optional[int]]:
    """Subset descriptor -> (bitmask, ideal index if given by index)."""
    spec = spec.strip()
    if spec in ("none", "empty"):
        return 0, None
    if spec == "all":
        return (1 << rs.n_positive) - 1, None
    if spec.startswith("ideal:"):
        idx = int(spec.split(":", 1)[1])
        ideals = enumerate_ideals(rs)
        if not 0 <= idx < len(ideals):
            raise UsageError(f"ideal index {idx} out of range 0..{len(ideals) - 1}")
        return ideals[idx].mask, idx
    roots = [Root.parse(tok, rs.rank) for tok in spec.split(",")]
    return mask_of(rs, roots), None


def _mask_roots(rs: RootSystem, mask: int) -> tuple[Root, ...]:
    return tuple(r for i, r in enumerate(rs.positive_roots) if mask >> i & 1)


@dataclass(frozen=True)
class CaseSpec:
    system: str
    k: int
    sign: str
    subset_mask: int
    subset_index: Optional[int]
    checks: tuple[str, ...]
    cache_dir: Optional[str]
    max_hyperplanes: int
    max_dim: int
    timings: bool


def _bounds(spec: CaseSpec) -> dict:
    return {"max_hyperplanes": spec.max_hyperplanes, "max_dim": spec.max_dim}


def _check_terao(spec: CaseSpec, rs, arr, cache) -> tuple[CheckResult, Optional[tuple], Optional[tuple]]:
    roots = _mask_roots(rs, spec.subset_mask)
    if not is_ideal(rs, spec.subset_mask):
        return (
            CheckResult("terao", SKIPPED, "dual-partition prediction needs an ideal"),
            None,
            None,
        )
    predicted = shi_exponents_dp(rs, spec.k, roots, spec.sign)
    verdict = terao_check(arr, predicted, cache, **_bounds(spec))
    status = PASS if verdict.passed else FAIL
    return (
        CheckResult("terao", status, f"chi = {verdict.computed}"),
        predicted.parts,
        verdict.computed.coeffs,
    )


def _rank2_freeness_expected(rs: RootSystem, mask: int) -> bool:
    simple_mask = sum(1 << rs.index[r.coeffs] for r in rs.positive_roots if r.height == 1)
    return mask == 0 or bool(mask & simple_mask)


def _check_yoshinaga(spec: CaseSpec, rs, arr, cache) -> CheckResult:
    if arr.dim != 3:
        return CheckResult("yoshinaga", SKIPPED, "complete criterion needs ambient dimension 3")
    verdict = yoshinaga_check(arr, z_covector(rs), cache)
    expected_free = _rank2_freeness_expected(rs, spec.subset_mask)
    if verdict.free != expected_free:
        return CheckResult("yoshinaga", FAIL, f"freeness {verdict.free}, expected {expected_free}")
    if not verdict.free:
        return CheckResult("yoshinaga", NOT_FREE_CONFIRMED, str(verdict))
    base = exp_rank2_multi(root_arrangement(rs), _indicator(rs, spec.subset_mask))
    shifted = shift_predict(ExponentMultiset(base), spec.k, rs.coxeter_number, spec.sign)
    want = tuple(sorted((1,) + shifted.parts))
    if verdict.exponents.parts != want:
        return CheckResult(
            "yoshinaga", FAIL, f"exponents {verdict.exponents.parts} != shift law {want}"
        )
    return CheckResult("yoshinaga", PASS, str(verdict))


def _indicator(rs: RootSystem, mask: int) -> dict:
    return {
        root_covector(rs, r): 1 if mask >> i & 1 else 0
        for i, r in enumerate(rs.positive_roots)
    }


def _check_ziegler(spec: CaseSpec, rs, arr) -> CheckResult:
    restricted, mult = ziegler_multiplicity(arr, z_covector(rs))
    base = root_arrangement(rs)
    want = {
        root_covector(rs, r): 2 * spec.k + (1 if spec.subset_mask >> i & 1 else 0) * (1 if spec.sign == "+" else -1)
        for i, r in enumerate(rs.positive_roots)
    }
    if restricted.covectors != base.covectors or mult != want:
        return CheckResult("ziegler", FAIL, "multirestriction onto {z=0} differs from 2k +/- indicator")
    return CheckResult("ziegler", PASS, "multirestriction equals base roots with 2k +/- indicator")


def _check_duality(spec: CaseSpec, rs, cache) -> CheckResult:
    roots = _mask_roots(rs, spec.subset_mask)
    if rs.rank == 2:
        plus = yoshinaga_check(shi_arrangement(rs, spec.k, roots, "+"), z_covector(rs), cache)
        minus = yoshinaga_check(shi_arrangement(rs, spec.k, roots, "-"), z_covector(rs), cache)
        if plus.free != minus.free:
            return CheckResult("duality", FAIL, "freeness differs between signs")
        if not plus.free:
            return CheckResult("duality", PASS, "both signs not free")
        base = exp_rank2_multi(root_arrangement(rs), _indicator(rs, spec.subset_mask))
        for sign, verdict in (("+", plus), ("-", minus)):
            shifted = shift_predict(ExponentMultiset(base), spec.k, rs.coxeter_number, sign)
            want = tuple(sorted((1,) + shifted.parts))
            if verdict.exponents.parts != want:
                return CheckResult("duality", FAIL, f"sign {sign} exponents break the shift law")
        return CheckResult("duality", PASS, "freeness and exponents symmetric across signs")
    # In rank >= 3 freeness cannot be certified from chi, so only the
    # polynomial-level consequences are judged: both signs matching the
    # shifted base exponents, or both provably non-free (chi not split).
    base_chi = charpoly_mobius(root_arrangement(rs, roots), cache, **_bounds(spec))
    split = try_factor_exponents(base_chi)
    if isinstance(split, FactorFailure):
        return CheckResult("duality", SKIPPED, "subset arrangement chi does not split")
    h = rs.coxeter_number
    matches = {}
    splits = {}
    for sign in "+-":
        arr = shi_arrangement(rs, spec.k, roots, sign)
        want = (1,) + shift_predict(split, spec.k, h, sign).parts
        verdict = terao_check(arr, ExponentMultiset(want), cache, **_bounds(spec))
        matches[sign] = verdict.passed
        splits[sign] = not isinstance(try_factor_exponents(verdict.computed), FactorFailure)
    if matches["+"] and matches["-"]:
        return CheckResult("duality", PASS, "both signs match the shifted base exponents")
    if not splits["+"] and not splits["-"]:
        return CheckResult("duality", PASS, "both signs provably not free (chi does not split)")
    return CheckResult("duality", SKIPPED, "inconclusive at the polynomial level in this rank")


def run_case(spec: CaseSpec) -> CaseRecord:
    t0 = time.perf_counter()
    rs = _system(spec.system)
    roots = _mask_roots(rs, spec.subset_mask)
    cache = LatticeCache(spec.cache_dir) if spec.cache_dir else None
    subset_kind = "ideal" if is_ideal(rs, spec.subset_mask) else "roots"
    record = CaseRecord(
        system=spec.system,
        k=spec.k,
        sign=spec.sign,
        subset_kind=subset_kind,
        subset_roots=tuple(r.name for r in roots),
        subset_index=spec.subset_index,
        arrangement_size=0,
        predicted_exponents=None,
        chi_coeffs=None,
        verdict=SKIPPED,
        checks=[],
    )
    try:
        arr = shi_arrangement(rs, spec.k, roots, spec.sign)
        record.arrangement_size = arr.size
        for check in spec.checks:
            if check == "terao":
                result, predicted, chi = _check_terao(spec, rs, arr, cache)
                record.predicted_exponents = predicted
                record.chi_coeffs = chi
            elif check == "yoshinaga":
                result = _check_yoshinaga(spec, rs, arr, cache)
            elif check == "ziegler":
                result = _check_ziegler(spec, rs, arr)
            elif check == "duality":
                result = _check_duality(spec, rs, cache)
            else:
                raise ValueError(f"unknown check {check!r}")
            record.checks.append(result)
    except SizeBoundError as err:
        record.checks.append(CheckResult("bound", SKIPPED, str(err)))
    statuses = [c.status for c in record.checks]
    if FAIL in statuses:
        record.verdict = FAIL
    elif NOT_FREE_CONFIRMED in statuses:
        record.verdict = NOT_FREE_CONFIRMED
    elif statuses and all(s == SKIPPED for s in statuses):
        record.verdict = SKIPPED
    else:
        record.verdict = PASS
    record.timing_ms = (time.perf_counter() - t0) * 1000.0
    return record


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(args) -> int:
    rs = _system(args.system)
    rows = [(i, r.name, r.coeffs, r.height) for i, r in enumerate(rs.positive_roots)]
    sys.stdout.write(text_table(rows, ["idx", "root", "coeffs", "height"]))
    sys.stdout.write(
        f"{rs.type}: {rs.n_positive} positive roots, coxeter number {rs.coxeter_number}\n"
    )
    return 0


def cmd_ideals(args) -> int:
    rs = _system(args.system)
    rows = []
    for i, ideal in enumerate(enumerate_ideals(rs)):
        rows.append((i, ideal.size, ideal_exponents(ideal), ", ".join(r.name for r in ideal.roots)))
    sys.stdout.write(text_table(rows, ["idx", "size", "exponents", "roots"]))
    return 0


def cmd_exponents(args) -> int:
    rs = _system(args.system)
    if args.k is None:
        exps = weyl_exponents(rs)
        sys.stdout.write(f"{rs.type}: exponents {exps}, coxeter number {rs.coxeter_number}\n")
        return 0
    rows = []
    for mask, idx in _subset_grid(rs, args):
        roots = _mask_roots(rs, mask)
        if not is_ideal(rs, mask):
            raise UsageError("dual-partition exponents are defined for ideals only")
        for sign in _signs(args.sign):
            exps = shi_exponents_dp(rs, args.k, roots, sign)
            label = ",".join(r.name for r in roots) or "(empty)"
            rows.append((idx if idx is not None else "-", sign, label, exps))
    sys.stdout.write(text_table(rows, ["ideal", "sign", "roots", "exponents"]))
    return 0


def _signs(sign: str) -> tuple[str, ...]:
    return ("+", "-") if sign == "both" else (sign,)


def _subset_grid(rs: RootSystem, args) -> list[tuple[int, Optional[int]]]:
    if getattr(args, "all_ideals", False):
        return [(ideal.mask, i) for i, ideal in enumerate(enumerate_ideals(rs))]
    if getattr(args, "subset", None) is None:
        return [(0, None)]
    mask, idx = _parse_subset(rs, args.subset)
    return [(mask, idx)]


def _default_checks(rs: RootSystem, mask: int, sign_mode: str) -> tuple[str, ...]:
    checks = []
    if is_ideal(rs, mask):
        checks.append("terao")
    checks.append("ziegler")
    if rs.rank == 2:
        checks.append("yoshinaga")
        if sign_mode == "both":
            checks.append("duality")
    return tuple(checks)


KNOWN_CHECKS = ("terao", "ziegler", "yoshinaga", "duality")


def cmd_verify(args) -> int:
    rs = _system(args.system)
    cache_dir = args.cache_dir or os.environ.get("IDEALSHI_CACHE")
    if args.checks:
        unknown = [c for c in args.checks.split(",") if c not in KNOWN_CHECKS]
        if unknown:
            raise UsageError(f"unknown checks {unknown}; known: {', '.join(KNOWN_CHECKS)}")
    specs = []
    for mask, idx in _subset_grid(rs, args):
        if args.checks:
            checks = tuple(args.checks.split(","))
        else:
            checks = _default_checks(rs, mask, args.sign)
        for sign in _signs(args.sign):
            specs.append(
                CaseSpec(
                    system=str(rs.type),
                    k=args.k,
                    sign=sign,
                    subset_mask=mask,
                    subset_index=idx,
                    checks=checks,
                    cache_dir=cache_dir,
                    max_hyperplanes=args.max_hyperplanes,
                    max_dim=args.max_dim,
                    timings=args.timings,
                )
            )
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            cases = list(pool.map(run_case, specs))
    else:
        cases = [run_case(s) for s in specs]
    report = Report(command="verify", tool_version=__version__, cases=cases)
    _emit(report, args)
    return 0 if report.ok else 1


def cmd_filtration(args) -> int:
    rs = _system(args.system)
    cache = None
    cache_dir = args.cache_dir or os.environ.get("IDEALSHI_CACHE")
    if cache_dir:
        cache = LatticeCache(cache_dir)
    cases = []
    previous: Optional[Arrangement] = None
    for i in range(1, args.steps + 1):
        t0 = time.perf_counter()
        arr = filtration_step(rs, i)
        checks = []
        if arr.size != i:
            checks.append(CheckResult("saturated", FAIL, f"|A_{i}| = {arr.size}"))
        else:
            checks.append(CheckResult("saturated", PASS, f"|A_{i}| = {i}"))
        if previous is not None:
            nested = set(previous.covectors) <= set(arr.covectors)
            checks.append(CheckResult("nested", PASS if nested else FAIL, "previous step contained"))
        predicted = filtration_exponents(rs, i)
        chi = None
        try:
            verdict = terao_check(
                arr, predicted, cache, max_hyperplanes=args.max_hyperplanes, max_dim=args.max_dim
            )
            chi = verdict.computed.coeffs
            checks.append(
                CheckResult("terao", PASS if verdict.passed else FAIL, f"chi = {verdict.computed}")
            )
        except SizeBoundError as err:
            checks.append(CheckResult("terao", SKIPPED, str(err)))
        record = CaseRecord(
            system=str(rs.type),
            k=None,
            sign=None,
            subset_kind="step",
            subset_roots=(),
            subset_index=i,
            arrangement_size=arr.size,
            predicted_exponents=predicted.parts,
            chi_coeffs=chi,
            verdict=FAIL if any(c.status == FAIL for c in checks) else PASS,
            checks=checks,
            timing_ms=(time.perf_counter() - t0) * 1000.0,
        )
        cases.append(record)
        previous = arr
    report = Report(command="filtration", tool_version=__version__, cases=cases)
    _emit(report, args)
    return 0 if report.ok else 1


def cmd_charpoly(args) -> int:
    rs = _system(args.system)
    if args.sign == "both":  # a single polynomial is requested; default to adding planes
        args.sign = "+"
    mask, _ = (0, None) if args.subset is None else _parse_subset(rs, args.subset)
    roots = _mask_roots(rs, mask)
    if args.k is None:
        arr = root_arrangement(rs, roots if args.subset is not None else None)
        label = f"A({args.subset or 'all roots'}) in {arr.dim} coordinates"
    else:
        arr = shi_arrangement(rs, args.k, roots, args.sign)
        label = f"Shi k={args.k} sign {args.sign} subset {{{','.join(r.name for r in roots)}}}"
    cache_dir = args.cache_dir or os.environ.get("IDEALSHI_CACHE")
    cache = LatticeCache(cache_dir) if cache_dir else None
    bounds = {"max_hyperplanes": args.max_hyperplanes, "max_dim": args.max_dim}
    polys = {}
    methods = ("mobius", "whitney", "finite-field") if args.method == "all" else (args.method,)
    for method in methods:
        try:
            if method == "mobius":
                polys[method] = charpoly_mobius(arr, cache, **bounds)
            elif method == "whitney":
                polys[method] = charpoly_whitney(arr)
            else:
                polys[method] = charpoly_finite_field(arr, max_dim=args.max_dim)
        except SizeBoundError as err:
            sys.stdout.write(f"{method}: skipped ({err})\n")
    sys.stdout.write(f"{rs.type} {label}: {arr.size} hyperplanes\n")
    for method, poly in polys.items():
        sys.stdout.write(f"{method}: {poly}\n")
    if len(set(p.coeffs for p in polys.values())) > 1:
        sys.stdout.write("METHOD DISAGREEMENT\n")
        return 1
    if polys:
        split = try_factor_exponents(next(iter(polys.values())))
        sys.stdout.write(f"integer roots: {split}\n")
    return 0


def _emit(report: Report, args) -> None:
    text = report.render(args.format, with_timings=args.timings)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, k_required: bool = False) -> None:
    p.add_argument("system", help="root system type, e.g. A2, B3, F4")
    p.add_argument("-k", type=int, required=k_required, default=None, help="Shi extension level")
    p.add_argument("--sign", choices=["+", "-", "both"], default="both")
    p.add_argument("--subset", help="comma-separated roots (a1,a1+a2), ideal:IDX, none, all")
    p.add_argument("--all-ideals", action="store_true", help="run over every ideal")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    p.add_argument("--out", help="write the report to a file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="case-level parallelism")
    p.add_argument("--cache-dir", help="lattice cache directory (or env IDEALSHI_CACHE)")
    p.add_argument("--timings", action="store_true", help="include wall-clock fields")
    p.add_argument("--max-hyperplanes", type=int, default=DEFAULT_MAX_HYPERPLANES)
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealshi",
        description="Exact verification of ideal-Shi arrangement exponent and freeness identities.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="positive roots with heights")
    p.add_argument("system")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("ideals", help="enumerate ideals of the root poset")
    p.add_argument("system")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("exponents", help="Weyl or ideal-Shi dual-partition exponents")
    _add_common(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("verify", help="run the freeness/exponent check matrix")
    _add_common(p, k_required=True)
    p.add_argument("--checks", help="comma list: terao,ziegler,yoshinaga,duality")
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("filtration", help="saturated chain of the coned affine Weyl arrangement")
    p.add_argument("system")
    p.add_argument("--steps", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("charpoly", help="characteristic polynomial by chosen method")
    _add_common(p)
    p.add_argument("--method", choices=["mobius", "whitney", "finite-field", "all"], default="all")
    _add_output(p)
    p.set_defaults(func=cmd_charpoly)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        if getattr(args, "all_ideals", False) and getattr(args, "subset", None):
            raise UsageError("--all-ideals and --subset are mutually exclusive")
        return args.func(args)
    except (UsageError, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
