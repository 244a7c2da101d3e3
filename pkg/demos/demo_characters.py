"""Exact character values on cycle classes and the decay bound they power."""

from altgen.characters import (column_orthogonality_defect, decay_factor,
                               dimension, mn_character, partitions,
                               roichman_violations)
from altgen.words import standard_cycle_length

n = 8
print(f"== character column of a 6-cycle in degree {n} ==")
for parts in partitions(n):
    chi = mn_character(parts, 6)
    print(f"  {str(parts):24s} dim {dimension(parts):4d}   chi {chi:4d}")
print("column orthogonality defect:", column_orthogonality_defect(n, 6))

print()
print("== the cycle-class character bound ==")
total = 0
for nn in range(8, 15):
    for L in range(6, nn + 1):
        total += len(roichman_violations(nn, L))
print(f"violations over degrees 8..14, all admissible cycle lengths: {total}")

print()
print("== the decay factor at both scales ==")
K = 10**6 + 1
L, _ = standard_cycle_length(K, 6)
h = int(K ** 1.5 // 2)
info = decay_factor(K, 6, h, L, bits=256)
lo, hi = info["interval"]
print(f"side {K}: factor in [{float(lo):.6f}, {float(hi):.6f}], "
      f"threshold verdict: {info['verdict']}")

L7, _ = standard_cycle_length(7, 6)
info = decay_factor(7, 6, 9, L7)
lo, hi = info["interval"]
print(f"side 7 (desk): factor in [{float(lo):.6f}, {float(hi):.6f}], "
      f"verdict: {info['verdict']} (reported, never asserted at desk scale)")
