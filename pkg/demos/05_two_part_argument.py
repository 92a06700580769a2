"""
The two-part argument
=====================

Part 1: if the quantum state is complete, the parallel-analyzer statistics
already contradict factorization.  Part 2: if it is incomplete, no local
hidden-variable model reproduces the CHSH statistics.  Both parts together
leave no Bell-local option.
"""

import math

from eprbell import Scenario, two_part_argument

parallel = Scenario.planar([0.0], [0.0])
chsh = Scenario.planar([0.0, math.pi / 2], [math.pi / 4, 3 * math.pi / 4])

v = two_part_argument(parallel, chsh)
print("part 1 established:", v.part1_established)
print("part 2 established:", v.part2_established, f"(|S| = {v.chsh:.6f})")
print("verdict:", v.conclusion)

# weaken each input in turn
right_angle = Scenario.planar([0.0], [math.pi / 2])
print(two_part_argument(right_angle, chsh).conclusion)

flat = Scenario.planar([0.0, math.pi], [math.pi / 2, 3 * math.pi / 2])
print(two_part_argument(parallel, flat).conclusion)
