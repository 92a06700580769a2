"""Spin-singlet predictions for two analyzers and a reproducible sampler.

The singlet is represented only through its measurement statistics:

    P(+,+) = P(-,-) = sin^2(theta/2) / 2
    P(+,-) = P(-,+) = cos^2(theta/2) / 2

with ``theta`` the angle between the two analyzer directions.  Every
single-side marginal is exactly 1/2.

Sampling uses SplitMix64 in counter mode.  Draw ``k`` (``k = 1..n``) takes the
64-bit state ``seed + k * 0x9E3779B97F4A7C15 (mod 2**64)`` and mixes it with

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

The uniform variate is ``(z >> 11) * 2**-53``.  The outcome pair is picked by
inverse CDF over the cells ordered ``(p_pp, p_pm, p_mp, p_mm)``: the first
cell whose cumulative probability exceeds ``u``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .scenario import (
    Behavior,
    MeasurementDirection,
    Outcome,
    Scenario,
    Side,
    angle_between,
)

SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
SPLITMIX_MUL2 = 0x94D049BB133111EB

SWEEP_HEADER = ("theta_rad", "p_pp", "p_pm", "p_mp", "p_mm", "E")


@dataclass(frozen=True)
class JointOutcomeProbabilities:
    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)

    def as_table(self) -> np.ndarray:
        """2x2 array indexed ``[a, b]`` (index 0 is +1)."""
        return np.array([[self.p_pp, self.p_pm], [self.p_mp, self.p_mm]])


@dataclass(frozen=True)
class SampleCounts:
    n: int
    pp: int
    pm: int
    mp: int
    mm: int
    seed: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.pp, self.pm, self.mp, self.mm)


def joint_from_angle(theta: float) -> JointOutcomeProbabilities:
    same = 0.5 * math.sin(theta / 2) ** 2
    opposite = 0.5 * math.cos(theta / 2) ** 2
    return JointOutcomeProbabilities(same, opposite, opposite, same)


def singlet_joint(a: MeasurementDirection, b: MeasurementDirection) -> JointOutcomeProbabilities:
    """Joint outcome probabilities for analyzers along ``a`` and ``b``."""
    return joint_from_angle(angle_between(a, b))


def singlet_marginal(side: Side | str, out: Outcome | int) -> float:
    """Single-side outcome probability; 1/2 for every side, outcome and direction."""
    Side(side)
    Outcome(out)
    return 0.5


def singlet_behavior(s: Scenario) -> Behavior:
    """Tabulate :func:`singlet_joint` over every setting pair of ``s``."""
    m, n = s.shape
    table = np.empty(s.table_shape)
    for i in range(m):
        for j in range(n):
            table[i, j] = singlet_joint(s.settings_a[i], s.settings_b[j]).as_table()
    return Behavior(s, table)


def correlation(a: MeasurementDirection, b: MeasurementDirection) -> float:
    """Expected product of outcomes, ``-cos(theta)``."""
    return -math.cos(angle_between(a, b))


def splitmix64_uniform(seed: int, n: int) -> np.ndarray:
    """``n`` uniforms in [0, 1) from counter-mode SplitMix64 (see module docs)."""
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    k = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + k * np.uint64(SPLITMIX_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(SPLITMIX_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(SPLITMIX_MUL2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def sample_pairs(s: Scenario, i: int, j: int, n: int, seed: int = 0) -> SampleCounts:
    """Draw ``n`` outcome pairs for setting pair ``(i, j)`` of ``s``."""
    if n < 0:
        raise ValueError(f"sample size must be nonnegative, got {n}")
    m_a, m_b = s.shape
    if not (0 <= i < m_a and 0 <= j < m_b):
        raise IndexError(f"setting pair ({i}, {j}) outside scenario of shape {s.shape}")
    probs = singlet_joint(s.settings_a[i], s.settings_b[j]).as_tuple()
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    u = splitmix64_uniform(seed, n)
    cells = np.searchsorted(cdf, u, side="right")
    counts = np.bincount(cells, minlength=4)
    return SampleCounts(n, *(int(c) for c in counts[:4]), seed=int(seed))


def sweep(start: float, stop: float, steps: int) -> list[tuple[float, ...]]:
    """Rows ``(theta, p_pp, p_pm, p_mp, p_mm, E)`` over an evenly spaced grid."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rows = []
    for theta in np.linspace(start, stop, steps):
        theta = float(theta)
        rows.append((theta, *joint_from_angle(theta).as_tuple(), -math.cos(theta)))
    return rows


def write_sweep_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow([f"{v:.17g}" for v in row])
