#!/usr/bin/env python3
"""Build root systems and read off their exponents from height counts.

The exponents of a Weyl arrangement are the dual partition of the heights
of the positive roots: count how many roots live at each height, then
conjugate that profile.
"""

from idealshi import build, dual_partition, weyl_exponents

for name in ["A2", "B2", "G2", "A3", "B3", "D4", "F4"]:
    rs = build(name)
    print(f"== {name}: {rs.n_positive} positive roots, coxeter number {rs.coxeter_number}")
    for r in rs.positive_roots:
        print(f"   {r.name:<12} coeffs {r.coeffs}  height {r.height}")
    heights = [r.height for r in rs.positive_roots]
    print("   height counts:", rs.height_counts)
    print("   exponents:    ", weyl_exponents(rs))
    # the same computation by hand, straight from the heights
    assert dual_partition(heights, rs.rank) == weyl_exponents(rs)
    print()

# the mirror identity of the height counts: g_i + g_{h-i+1} = rank
rs = build("F4")
h = rs.coxeter_number
print("F4 mirror identity:", [rs.height_counts[i - 1] + rs.height_counts[h - i] for i in range(1, h + 1)])
