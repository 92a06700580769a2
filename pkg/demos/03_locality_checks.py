"""
Parameter and Outcome Independence per hidden state
===================================================

Bell Locality is checked component by component.  The orthodox model (one
hidden state, the singlet) respects Parameter Independence but violates
Outcome Independence.  A half/half mixture of two deterministic local states
reproduces the same parallel-analyzer statistics while every component is
perfectly local.
"""

import numpy as np

from eprbell import LambdaModel, LocalState, Scenario, factorization_check, orthodox_model

s = Scenario.planar([0.0], [0.0])

orthodox = orthodox_model(s)
r = factorization_check(orthodox, s)
print("orthodox:  PI", r.pi_deviation, " OI", r.oi_deviation,
      " factorization", r.factorization_deviation, " local:", r.bell_local)

# A = +1, B = -1  or  A = -1, B = +1, decided at the source
plus_minus = LocalState([[1.0, 0.0]], [[0.0, 1.0]])
minus_plus = LocalState([[0.0, 1.0]], [[1.0, 0.0]])
hidden = LambdaModel([(0.5, plus_minus), (0.5, minus_plus)], kind="local")
r = factorization_check(hidden, s)
print("predetermined: PI", r.pi_deviation, " OI", r.oi_deviation,
      " factorization", r.factorization_deviation, " local:", r.bell_local)

# same observable table as the orthodox model
print(np.array_equal(hidden.mixture(s).table, orthodox.mixture(s).table))
