"""
Singlet statistics for two analyzers
====================================

Joint outcome probabilities, marginals and the correlator as the relative
analyzer angle goes from parallel to antiparallel, plus a seeded Monte
Carlo run compared against the exact cell probabilities.
"""

import math

import numpy as np

from eprbell import Scenario, correlation, planar_direction, sample_pairs, singlet_joint

z = planar_direction(0.0)

# joint probabilities (p_pp, p_pm, p_mp, p_mm) and E = -cos(theta)
for deg in (0, 45, 90, 135, 180):
    b = planar_direction(math.radians(deg))
    p = singlet_joint(z, b)
    print(f"{deg:3d} deg  p = {np.round(p.as_tuple(), 4)}  E = {correlation(z, b):+.4f}")

# parallel analyzers never agree: the perfect anti-correlation EPR start from
p = singlet_joint(z, z)
print("P(A = B) at theta = 0:", p.p_pp + p.p_mm)

# each side alone is a fair coin, whatever the angle
for deg in (0, 30, 77, 180):
    p = singlet_joint(z, planar_direction(math.radians(deg)))
    print(f"{deg:3d} deg  P(A=+) = {p.p_pp + p.p_pm:.15f}  P(B=+) = {p.p_pp + p.p_mp:.15f}")

# sampling: same seed, same counts
s = Scenario.planar([0.0], [math.radians(60)])
n = 100_000
counts = sample_pairs(s, 0, 0, n, seed=2024)
exact = np.array(singlet_joint(s.settings_a[0], s.settings_b[0]).as_tuple())
print("counts  ", counts.as_tuple())
print("expected", tuple(np.round(n * exact, 1).tolist()))
assert counts == sample_pairs(s, 0, 0, n, seed=2024)
