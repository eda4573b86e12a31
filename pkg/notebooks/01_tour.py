"""A short walk through latile, from one-dimensional tilings to the case analysis.

Run with ``python3 notebooks/01_tour.py``.  Every number printed is exact.
"""

from fractions import Fraction

from latile import Cluster, classify, search_fully_periodic, tile_1d, verify_tiling
from latile.cyclotomic import root_power_sum
from latile.lattice import Sublattice, smith_normal_form
from latile.spectral import RationalTorusPoint, compute_delta, line_in_Z, z_membership
from latile.tiler import dilation_check

# %% One dimension
# The transfer graph of a 1-D tile is a functional graph on coverage states.
# Its cycles are the tilings, and all of them share one period.
for offsets in ([0, 1], [0, 2], [0, 1, 3], [0, 3, 4, 7]):
    report = tile_1d(Cluster((a,) for a in offsets))
    print(f"{offsets}: exact={report.exact} period={report.uniform_period} words={report.tilings}")

# A tiling stays a tiling after dilating the tile by a factor coprime to its size.
pair = Cluster([(0,), (2,)])
tiling = tile_1d(pair).as_periodic(0)
print("dilate {0,2} by 3:", dilation_check(pair, tiling, 3))

# %% Periodic tilings of Z^3
# The search runs over sublattices by index and solves an exact cover on each
# quotient torus.
square = Cluster([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
found = search_fully_periodic(square, 16)
print("square period basis:", found.period.basis, "reps:", found.reps,
      "verified:", verify_tiling(square, found))

# %% Lattice tools
u, d, v = smith_normal_form([[2, 0], [0, 3]])
print("Smith form of diag(2, 3):", d)
print("index of span{(2,0,0),(1,3,0),(0,0,2)}:",
      Sublattice.span([(2, 0, 0), (1, 3, 0), (0, 0, 2)]).index)

# %% Zero sets of mask sums
# Sums of roots of unity are decided exactly in Z[zeta_N].
print("1 + i^2 == 0:", root_power_sum(4, [0, 2]).is_zero())
rho = RationalTorusPoint((Fraction(1, 2), Fraction(1, 3), 0))
print("square mask vanishes at (1/2, 1/3, 0):", z_membership(square, rho))
print("support vectors of the square:", compute_delta(square).vectors)
print("vertical line through (1/2, 1/2, 0) lies in the zero set:",
      line_in_Z(square, RationalTorusPoint((Fraction(1, 2), Fraction(1, 2), 0)), (0, 0, 1)))

# %% The case analysis
# Two divisible support directions give a prism and a periodic tiling; none
# leaves only a certificate.
for name, pts, p in [
    ("square", square.points, 2),
    ("skew", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 2, 0)], 2),
    ("triangle prism", [(x, y, z) for x, y in [(0, 0), (1, 0), (0, 1)] for z in (0, 1, 2)], 3),
]:
    result = classify(Cluster(pts), p, 32)
    tiling = result.tiling
    summary = f"period index {tiling.period.index}" if tiling else getattr(result.witness, "note", "")
    print(f"{name}: {result.case}; divisible {result.divisible_dirs}; {summary}")
