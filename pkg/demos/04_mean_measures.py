"""
Mean nodal length and mean number of common zeros
=================================================

For uniformly random unit harmonics on S^2 the mean nodal length is
2 pi sqrt(lambda_n / 2) and the mean number of common zeros of an
independent pair is sqrt(lambda_n1 lambda_n2), with lambda_n = n(n+1).
"""

from nodal_lab import mean_measure as mm

for n in (1, 2, 3):
    closed = mm.mean_measure_closed(mm.MeanSpec(2, 1, (n,)))
    r = mm.mc_mean_nodal_length(n, 200, seed=0)
    print(f"length n={n}: closed {closed:.3f}, Monte Carlo {r.mean:.3f} +- {r.stderr:.3f}")

for n1, n2 in ((1, 1), (2, 2), (1, 3)):
    closed = mm.mean_measure_closed(mm.MeanSpec(2, 2, (n1, n2)))
    r = mm.mc_mean_common_zeros(n1, n2, 200, seed=0)
    print(f"zeros {n1},{n2}: closed {closed:.3f}, Monte Carlo {r.mean:.3f} +- {r.stderr:.3f}")

# closed forms are available on every S^m
print("three hyperplanes in S^3 meet in", mm.mean_measure_closed(mm.MeanSpec(3, 3, (1, 1, 1))), "points")
