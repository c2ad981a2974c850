#!/usr/bin/env python3
"""Grow the coned affine Weyl arrangement one plane at a time.

The chain adds the level 0 planes along a prefix-ideal order, then level 1
in reverse, then level -1, level 2, and so on.  At every step the
characteristic polynomial splits with the dual-partition exponents, and
full rounds land exactly on the extended Shi cones.
"""

from idealshi import (
    build,
    charpoly_mobius,
    filtration_exponents,
    filtration_step,
    shi_plus,
    terao_check,
)

rs = build("B2")
n = rs.n_positive

print(f"{rs.type}: 2n = {2 * n} planes per round\n")
prev = None
for i in range(1, 2 * 2 * n + 2):
    arr = filtration_step(rs, i)
    exps = filtration_exponents(rs, i)
    verdict = terao_check(arr, exps)
    nested = "" if prev is None else ("  nested" if set(prev.covectors) <= set(arr.covectors) else "  BROKEN")
    mark = ""
    for k in (1, 2):
        if set(arr.covectors) == set(shi_plus(rs, k, []).covectors):
            mark = f"   <- Shi cone, k = {k}"
    status = "ok" if verdict.passed else "MISMATCH"
    print(f"step {i:>2}  |A| = {arr.size:>2}  exponents {str(exps):<14} {status}{nested}{mark}")
    prev = arr

print("\nchi at the second full round:", charpoly_mobius(filtration_step(rs, 4 * n + 1)))
