"""
Local polytope membership and the CHSH witness
==============================================

A behavior has a local hidden-variable model exactly when it is a convex
mixture of deterministic strategies.  The parallel-analyzer singlet is such
a mixture; the singlet on the CHSH angles is not, and its CHSH value
2*sqrt(2) exceeds the local bound 2 reached by the best deterministic
strategy.
"""

import math

import numpy as np

from eprbell import (
    Behavior,
    Scenario,
    enumerate_strategies,
    local_polytope_membership,
    max_abs_chsh,
    singlet_behavior,
    strategy_behavior,
)

parallel = Scenario.planar([0.0], [0.0])
r = local_polytope_membership(singlet_behavior(parallel))
for st, w in zip(enumerate_strategies(parallel), r.weights):
    if w > 0:
        print(f"weight {w:.3f}  A={int(st.a_outputs[0]):+d}  B={int(st.b_outputs[0]):+d}")

chsh = Scenario.planar([0.0, math.pi / 2], [math.pi / 4, 3 * math.pi / 4])
local_bound = max(max_abs_chsh(strategy_behavior(st, chsh))[0] for st in enumerate_strategies(chsh))
print("local bound by enumeration:", local_bound)

quantum = singlet_behavior(chsh)
print("singlet |S|:", max_abs_chsh(quantum)[0], " 2*sqrt(2) =", 2 * math.sqrt(2))
print(local_polytope_membership(quantum))

# mixing in white noise: local once visibility drops to 1/sqrt(2)
for v in (1.0, 0.8, 0.72, 0.7, 0.5):
    b = Behavior(chsh, v * quantum.table + (1 - v) * 0.25)
    r = local_polytope_membership(b)
    print(f"visibility {v:.2f}  |S| = {max_abs_chsh(b)[0]:.4f}  local={r.feasible}  l1={r.l1_distance:.4f}")
