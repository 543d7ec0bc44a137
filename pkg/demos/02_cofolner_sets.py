"""
Finite families that barely move point sets
============================================

For a finite support of dyadics, build a family E of group elements whose
images of any two n-subsets nearly coincide as multisets, then check the
certificate from scratch.
"""

from fractions import Fraction

from liouville import Dyadic, PointSet, build_cofolner, restrict_to_F, sym_diff_ratio
from liouville.action import recheck

# %% Singletons: averaging over translates is already enough.
support = [Dyadic(0, 0), Dyadic(1, 1), Dyadic(3, 2)]
cert1 = build_cofolner(support, n=1, epsilon=Fraction(1, 4))
print("n=1 |E| =", len(cert1.E), " achieved", cert1.achieved, " verified", cert1.verified)

# %% Pairs: a multiplicative box of scalings, lifted into the group and averaged.
cert2 = build_cofolner(support, n=2, epsilon=Fraction(1, 2))
print("n=2 |E| =", len(cert2.E), " achieved", cert2.achieved, " verified", cert2.verified)
for step in cert2.pipeline["history"]:
    print("   tried L=%(L)d N=%(N)d -> %(achieved)s" % step)

# %% The worst pair is recorded, and the ratio can be recomputed directly.
i, j = cert2.worst_pair
x, y = cert2.F[i], cert2.F[j]
print("worst pair", x, y, "ratio", sym_diff_ratio(cert2.E, x, y))

# %% An independent recheck only looks at E, F and epsilon.
print("recheck agrees:", recheck(cert2).achieved == cert2.achieved)

# %% Inside (0, 1) the same certificate can be re-expressed with elements of F.
inner = [Dyadic(1, 2), Dyadic(1, 1), Dyadic(3, 2)]
cert_F = restrict_to_F(build_cofolner(inner, n=2, epsilon=Fraction(1, 2)))
print("F version verified:", cert_F.verified, " on", [PointSet(p.points) for p in cert_F.F][:1])
