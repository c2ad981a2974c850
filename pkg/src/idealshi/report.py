"""Machine-readable campaign reports: JSON, CSV and terminal tables.

JSON output is deterministic byte for byte for a given tool version and
case set: keys are sorted, fields are stable, and wall-clock timings are
only included on request.  Characteristic-polynomial coefficients are
serialized as decimal strings so arbitrary precision survives any JSON
reader.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

SCHEMA_VERSION = 1

PASS = "PASS"
FAIL = "FAIL"
NOT_FREE_CONFIRMED = "NOT_FREE_CONFIRMED"
SKIPPED = "SKIPPED"


@dataclass
class CheckResult:
    name: str
    status: str  # PASS / FAIL / NOT_FREE_CONFIRMED / SKIPPED
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class CaseRecord:
    system: str
    k: Optional[int]
    sign: Optional[str]
    subset_kind: str  # "ideal" | "roots" | "step"
    subset_roots: tuple[str, ...]
    subset_index: Optional[int]
    arrangement_size: int
    predicted_exponents: Optional[tuple[int, ...]]
    chi_coeffs: Optional[tuple[int, ...]]
    verdict: str
    checks: list[CheckResult] = field(default_factory=list)
    timing_ms: Optional[float] = None

    def to_dict(self, with_timings: bool) -> dict:
        out = {
            "case": {
                "system": self.system,
                "k": self.k,
                "sign": self.sign,
                "subset": {
                    "kind": self.subset_kind,
                    "index": self.subset_index,
                    "roots": list(self.subset_roots),
                },
            },
            "arrangement_size": self.arrangement_size,
            "predicted_exponents": list(self.predicted_exponents)
            if self.predicted_exponents is not None
            else None,
            "chi_coeffs": [str(c) for c in self.chi_coeffs]
            if self.chi_coeffs is not None
            else None,
            "verdict": self.verdict,
            "checks": [c.to_dict() for c in self.checks],
        }
        if with_timings:
            out["timing_ms"] = self.timing_ms
        return out


@dataclass
class Report:
    command: str
    tool_version: str
    cases: list[CaseRecord]
    seed: int = 0

    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, NOT_FREE_CONFIRMED: 0, SKIPPED: 0}
        for c in self.cases:
            counts[c.verdict] = counts.get(c.verdict, 0) + 1
        return {
            "pass": counts[PASS],
            "fail": counts[FAIL],
            "not_free_confirmed": counts[NOT_FREE_CONFIRMED],
            "skipped": counts[SKIPPED],
            "tool_version": self.tool_version,
            "seed": self.seed,
        }

    @property
    def ok(self) -> bool:
        return all(c.verdict != FAIL for c in self.cases)

    def to_json(self, with_timings: bool = False) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "summary": self.summary(),
            "cases": [c.to_dict(with_timings) for c in self.cases],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_csv(self, with_timings: bool = False) -> str:
        buf = io.StringIO()
        headers = [
            "system",
            "k",
            "sign",
            "subset_kind",
            "subset_index",
            "subset_roots",
            "arrangement_size",
            "predicted_exponents",
            "chi_coeffs",
            "verdict",
            "checks",
        ]
        if with_timings:
            headers.append("timing_ms")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        for c in self.cases:
            row = [
                c.system,
                c.k,
                c.sign,
                c.subset_kind,
                c.subset_index,
                " ".join(c.subset_roots),
                c.arrangement_size,
                " ".join(map(str, c.predicted_exponents)) if c.predicted_exponents else "",
                " ".join(map(str, c.chi_coeffs)) if c.chi_coeffs else "",
                c.verdict,
                "; ".join(f"{r.name}={r.status}" for r in c.checks),
            ]
            if with_timings:
                row.append(c.timing_ms)
            writer.writerow(row)
        return buf.getvalue()

    def to_pretty(self) -> str:
        lines = []
        for c in self.cases:
            subset = ",".join(c.subset_roots) or "(empty)"
            if c.subset_kind == "step":
                head = f"{c.system} step {c.subset_index}"
            else:
                sign = c.sign or ""
                head = f"{c.system} k={c.k} {sign}{{{subset}}}"
            exps = (
                "(" + ",".join(map(str, c.predicted_exponents)) + ")"
                if c.predicted_exponents
                else "-"
            )
            checks = " ".join(f"{r.name}:{r.status}" for r in c.checks)
            lines.append(f"{head:<42} |A|={c.arrangement_size:<4} exp={exps:<18} {c.verdict:<19} {checks}")
        s = self.summary()
        lines.append(
            f"summary: pass={s['pass']} fail={s['fail']} "
            f"not_free_confirmed={s['not_free_confirmed']} skipped={s['skipped']}"
        )
        return "\n".join(lines) + "\n"

    def render(self, fmt: str, with_timings: bool = False) -> str:
        if fmt == "json":
            return self.to_json(with_timings)
        if fmt == "csv":
            return self.to_csv(with_timings)
        if fmt == "pretty":
            return self.to_pretty()
        raise ValueError(f"unknown format {fmt!r}")


def text_table(rows: Sequence[tuple], headers: Sequence[str]) -> str:
    widths = [len(h) for h in headers]
    str_rows = [[str(x) for x in row] for row in rows]
    for row in str_rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [fmt(headers), fmt(["-" * w for w in widths])]
    out.extend(fmt(r) for r in str_rows)
    return "\n".join(out) + "\n"
