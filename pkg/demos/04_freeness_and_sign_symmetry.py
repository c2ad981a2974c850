#!/usr/bin/env python3
"""Freeness of extended Shi cones over arbitrary root subsets, rank 2.

Adding the level -k planes of a subset (sign +) or removing its level k
planes (sign -) preserves freeness, and a rank-2 cone is free exactly when
the subset is empty or meets the simple roots.  The ambient-3 criterion
decides each case exactly: compare chi_0 at zero with the product of the
multirestriction exponents.
"""

from idealshi import (
    ExponentMultiset,
    build,
    exp_rank2_multi,
    root_arrangement,
    root_covector,
    shi_arrangement,
    shift_predict,
    yoshinaga_check,
    z_covector,
)

rs = build("B2")
hz = z_covector(rs)
base = root_arrangement(rs)
k = 1
h = rs.coxeter_number

print(f"{rs.type}, k = {k}: freeness of both signs over all subsets\n")
print(f"{'subset':<22} {'+':<34} {'-':<34}")
for mask in range(1 << rs.n_positive):
    sigma = [r for i, r in enumerate(rs.positive_roots) if mask >> i & 1]
    label = ",".join(r.name for r in sigma) or "(empty)"
    cells = []
    for sign in "+-":
        v = yoshinaga_check(shi_arrangement(rs, k, sigma, sign), hz)
        cells.append(str(v))
    print(f"{label:<22} {cells[0]:<34} {cells[1]:<34}")

print("\nwhen free, the exponents follow the shift law k*h +/- m_i,")
print("with (m_1, m_2) the exponents of the 0/1 multiplicity on the base roots:")
sigma = [rs.positive_roots[0], rs.root_at((1, 1))]
indicator = {root_covector(rs, r): (1 if r in sigma else 0) for r in rs.positive_roots}
m = exp_rank2_multi(base, indicator)
print("  sigma = {a1, a1+a2}, base exponents:", m)
for sign in "+-":
    v = yoshinaga_check(shi_arrangement(rs, k, sigma, sign), hz)
    predicted = shift_predict(ExponentMultiset(m), k, h, sign)
    print(f"  sign {sign}: verdict {v}  (shift law gives {predicted})")
