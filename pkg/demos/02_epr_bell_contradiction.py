"""
Completeness plus factorization against the quantum predictions
===============================================================

Assume the singlet state is the complete hidden state and that joint
probabilities factor into local pieces.  The quantum marginals then force
every joint probability to 1/4, which the quantum joint predictions
contradict at every angle except a right angle.
"""

import math

import numpy as np

from eprbell import Scenario, epr_bell_derivation

s = Scenario.planar([0.0], [0.0])
report = epr_bell_derivation(s)
print("factorized:", report.factorized_table.table[0, 0].ravel())
print("quantum:   ", report.qm_table.table[0, 0].ravel())
print(report.verdict)

# the gap |sin^2(theta/2)/2 - 1/4| vanishes only at theta = pi/2
for deg in (0, 30, 60, 90, 120, 180):
    r = epr_bell_derivation(Scenario.planar([0.0], [math.radians(deg)]))
    print(f"{deg:3d} deg  deviation {r.max_cell_deviation:.6f}  inconsistent={r.inconsistent}")

# one parallel pair is enough, whatever the other settings are
s = Scenario.planar([0.0, 1.1], [0.0, 2.3])
print("mixed scenario inconsistent:", epr_bell_derivation(s).inconsistent)
print("worst cell:", epr_bell_derivation(s).worst_cell)
assert np.all(epr_bell_derivation(s).factorized_table.table == 0.25)
