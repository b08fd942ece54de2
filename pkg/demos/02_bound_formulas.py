"""Closed-form bounds: what the theorems promise before any optimization.

Prints the implemented lower bounds and asymptotic envelopes on a small
grid, with every abstract constant pinned to its default knob value 1, and
shows the exponent formulas (Kwapien, Bennett-Carl, the summability
exponent rho) at a few points.
"""

import math

from bohrlab.bounds import (bombieri_closed_form, cotype_bounds, envelope,
                            lower_bound_general, prop22_constant, rho_exponent)
from bohrlab.operators import bennett_carl_exponent, kwapien_exponent
from bohrlab.spaces import INF

print("Positivity constant of a non-null operator (prop22):")
for v, lam in [(1.0, 2.0), (0.5, 1.0), (1.5, 2.0)]:
    print(f"  ||V|| = {v}, lam = {lam}:  B = {prop22_constant(v, lam):.6f}")

print("\nIdentity lower bounds (lam-1)/lam * n^-(1-1/p):")
for p in (1.0, 2.0, INF):
    row = [f"{lower_bound_general(p, n, 2.0, 1.0, identity=True):.4f}"
           for n in (2, 4, 8, 16)]
    print(f"  p = {'inf' if p == INF else p}:  " + "  ".join(row))

print("\nCotype-2 bracket at lam = 2, C_2 = 1:")
for p in (1.0, 2.0, 4.0, INF):
    lo = cotype_bounds(p, 16, 2.0, 2.0, 1.0, "lower")
    up = cotype_bounds(p, 16, 2.0, 2.0, 1.0, "upper")
    print(f"  p = {'inf' if p == INF else p}:  [{lo:.5f}, {up:.5f}]")

print("\nMain asymptotic envelope (log n / n)^(1-1/min(p,2)) at lam = 2:")
for n in (4, 16, 64, 256):
    lo = envelope(2.0, n, 2.0, "main_lower")
    up = envelope(2.0, n, 2.0, "main_upper")
    print(f"  n = {n:4}:  C*{lo:.5f}  <=  K  <=  B*{up:.5f}")

print("\nExponent formulas:")
print(f"  Kwapien r for q = 1, 2, 4:      "
      f"{kwapien_exponent(1):.4f}, {kwapien_exponent(2):.4f}, {kwapien_exponent(4):.4f}")
print(f"  Bennett-Carl s for (1,2), (2,4): "
      f"{bennett_carl_exponent(1, 2):.4f}, {bennett_carl_exponent(2, 4):.4f}")
print(f"  rho(q=2, r=1, m=1..5):           "
      + ", ".join(f"{rho_exponent(2, 1, m):.4f}" for m in range(1, 6)))

print(f"\nDisk closed form at lam = 1 and sqrt(2): "
      f"{bombieri_closed_form(1.0):.6f}, {bombieri_closed_form(math.sqrt(2)):.6f}")
