"""The underlying toolkit: index sets, norm brackets, polarization, cotype.

A tour of the machinery the radius estimators are built from, at sizes
where everything can be eyeballed.
"""

import numpy as np

from bohrlab.multiindex import count_Jm1, enumerate_J, multiplicity, reduced_star
from bohrlab.polynomials import (multilinear_supnorm_lower, polarize,
                                 random_polynomial, scalar_polynomial,
                                 supnorm_lower, supnorm_upper)
from bohrlab.spaces import INF, estimate_cotype_constant, monomial_max

print("Index sets: J(2,3) with multiplicities (summing to 3^2 = 9):")
for j in enumerate_J(2, 3):
    print(f"  {j}: {multiplicity(j)} orderings")
print(f"  reduced star of the full set: {sorted(reduced_star(enumerate_J(2, 3)))}")
exact, env = count_Jm1(5, 10)
print(f"  card J(4,10) = {exact}, counting envelope {env:.1f}")

print("\nMonomial maxima on unit balls (exact closed forms):")
for p in (1.0, 2.0, INF):
    tag = "inf" if p == INF else f"{p:g}"
    print(f"  sup |z1 z2^2| on the l{tag} ball: {monomial_max((1, 2), p):.6f}")

print("\nCertified sup-norm brackets for a random 3-homogeneous polynomial:")
P = random_polynomial(3, 3, 1, "unimodular-signs", seed=11, p=2.0)
lo, zstar = supnorm_lower(P, restarts=24, iters=150, seed=0)
up = supnorm_upper(P)
print(f"  {len(P.terms)} terms on the l2^3 ball: ||P|| in [{lo:.6f}, {up:.6f}]")
print(f"  attained near z = {np.round(zstar, 3)}")

print("\nPolarization: the symmetric trilinear form behind P.")
A = polarize(P)
z = np.array([0.3, -0.5j, 0.4])
print(f"  diagonal identity |A(z,z,z) - P(z)| = "
      f"{abs(A(z, z, z)[0] - P.evaluate(z)[0]):.2e}")
print(f"  entry A(e1,e2,e3) = c_(1,2,3)/3! = {A.entry((1, 2, 3))[0]:+.4f}")
ml = multilinear_supnorm_lower(A, seed=0)
print(f"  multilinear norm lower bound {ml:.6f} (>= diagonal bound {lo:.6f})")

print("\nCotype constants by search (lower bounds; Hilbert stays at 1):")
for q, d in [(2.0, 4), (3.0, 3), (4.0, 2)]:
    val = estimate_cotype_constant(q, d, trials=60, seed=1)
    print(f"  C_{q:g}(l{q:g}^{d}) >= {val:.6f}")

print("\nExplicit little example: z1 - z2 on the l1 ball has sup norm 1,")
P2 = scalar_polynomial(1.0, 2, {(1, 0): 1.0, (0, 1): -1.0})
print(f"  ascent lower bound {supnorm_lower(P2, 8, 60, seed=0)[0]:.6f}, "
      f"coefficient majorant {supnorm_upper(P2):.1f} (valid, loose).")
