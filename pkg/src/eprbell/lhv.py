"""Local hidden-variable analysis over the local polytope.

Every local model on a finite scenario is a convex mixture of deterministic
strategies, so a behavior admits a local hidden-variable model iff the
linear system

    w >= 0,  sum(w) == 1,  sum_k w_k * strategy_behavior_k == behavior

is feasible.  Feasibility is decided with the in-repo simplex
(:mod:`eprbell.simplex`).  When it fails, a second LP reports the least L1
gap between the behavior and the polytope.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import TooLarge
from .locality import DerivationReport, epr_bell_derivation
from .quantum import singlet_behavior
from .scenario import DEFAULT_TOL, OUTCOMES, Behavior, Outcome, Scenario

MAX_ENUMERATION_BITS = 20


@dataclass(frozen=True)
class DeterministicStrategy:
    a_outputs: tuple[Outcome, ...]
    b_outputs: tuple[Outcome, ...]


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    weights: tuple[float, ...] | None
    l1_distance: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "l1_distance": self.l1_distance,
            "weights": None if self.weights is None else list(self.weights),
            "iterations": self.iterations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _guard(s: Scenario) -> None:
    m, n = s.shape
    if m + n > MAX_ENUMERATION_BITS:
        raise TooLarge(f"2^{m + n} deterministic strategies exceed the 2^{MAX_ENUMERATION_BITS} guard")


def enumerate_strategies(s: Scenario) -> list[DeterministicStrategy]:
    """All ``2^m * 2^n`` deterministic strategies in lexicographic order.

    Side A is most significant and +1 sorts before -1, so index 0 is the
    all-+1 strategy and the last index is all -1.
    """
    _guard(s)
    m, n = s.shape
    return [
        DeterministicStrategy(tuple(bits[:m]), tuple(bits[m:]))
        for bits in itertools.product(OUTCOMES, repeat=m + n)
    ]


def strategy_behavior(st: DeterministicStrategy, s: Scenario) -> Behavior:
    m, n = s.shape
    if len(st.a_outputs) != m or len(st.b_outputs) != n:
        raise ValueError(
            f"strategy has {len(st.a_outputs)}x{len(st.b_outputs)} outputs, scenario is {m}x{n}"
        )
    table = np.zeros(s.table_shape)
    for i, a in enumerate(st.a_outputs):
        for j, b in enumerate(st.b_outputs):
            table[i, j, a.index, b.index] = 1.0
    return Behavior(s, table)


@functools.lru_cache(maxsize=32)
def _strategy_matrix(m: int, n: int) -> np.ndarray:
    # bits[k, p] is the outcome index of position p (A settings, then B) in strategy k
    bits = np.array(list(itertools.product((0, 1), repeat=m + n)), dtype=int).reshape(-1, m + n)
    k = bits.shape[0]
    cols = np.zeros((k, m, n, 2, 2))
    ks, ii, jj = np.meshgrid(np.arange(k), np.arange(m), np.arange(n), indexing="ij")
    cols[ks, ii, jj, bits[ks, ii], bits[ks, m + jj]] = 1.0
    out = cols.reshape(k, -1).T.copy()
    out.setflags(write=False)
    return out


def strategy_matrix(s: Scenario) -> np.ndarray:
    """Columns are flattened strategy behaviors, in enumeration order."""
    _guard(s)
    return _strategy_matrix(*s.shape)


def mix_strategies(s: Scenario, weights) -> Behavior:
    weights = np.asarray(weights, dtype=float)
    return Behavior(s, (strategy_matrix(s) @ weights).reshape(s.table_shape))


def local_polytope_membership(b: Behavior, tol: float = DEFAULT_TOL) -> LPResult:
    """Decide whether ``b`` is a convex mixture of deterministic strategies.

    The behavior counts as local when the phase-1 optimum (total violation
    of the mixing equations) is at most ``tol``; ``weights`` then hold one
    mixing weight per strategy in :func:`enumerate_strategies` order.
    Otherwise ``l1_distance`` is the minimal ``sum |mixture - b|`` over all
    normalized mixtures.
    """
    M = strategy_matrix(b.scenario)
    target = b.table.ravel()
    cells, k = M.shape
    A = np.vstack([M, np.ones((1, k))])
    rhs = np.concatenate([target, [1.0]])

    feas = simplex.solve(np.zeros(k), A, rhs, feas_tol=tol)
    iterations = feas.iterations
    if feas.status == "optimal":
        w = feas.x
    else:
        # least L1 gap: M w + s_plus - s_minus == b, sum(w) == 1
        eye = np.eye(cells)
        A_l1 = np.block([[M, eye, -eye], [np.ones((1, k)), np.zeros((1, 2 * cells))]])
        c = np.concatenate([np.zeros(k), np.ones(2 * cells)])
        gap = simplex.solve(c, A_l1, rhs)
        iterations += gap.iterations
        if gap.status != "optimal":
            raise RuntimeError(f"L1 distance LP ended with status {gap.status}")
        l1 = float(np.abs(M @ gap.x[:k] - target).sum())
        if l1 > tol:
            return LPResult(False, None, l1, iterations)
        w = gap.x[:k]

    w = np.maximum(w, 0.0)
    w = w / w.sum()
    l1 = float(np.abs(M @ w - target).sum())
    return LPResult(True, tuple(float(v) for v in w), l1, iterations)


def chsh_value(b: Behavior, i1: int, i2: int, j1: int, j2: int) -> float:
    """``S = E(i1,j1) + E(i1,j2) + E(i2,j1) - E(i2,j2)``."""
    if i1 == i2 or j1 == j2:
        raise ValueError("CHSH needs two distinct settings on each side")
    m, n = b.scenario.shape
    for i in (i1, i2):
        if not 0 <= i < m:
            raise IndexError(f"A-setting index {i} out of range")
    for j in (j1, j2):
        if not 0 <= j < n:
            raise IndexError(f"B-setting index {j} out of range")
    E = b.correlations()
    return float(E[i1, j1] + E[i1, j2] + E[i2, j1] - E[i2, j2])


def max_abs_chsh(b: Behavior) -> tuple[float, tuple[int, int, int, int]]:
    """Largest ``|S|`` over all index labelings, with the labeling attaining it."""
    m, n = b.scenario.shape
    best, best_idx = -1.0, None
    for i1, i2 in itertools.permutations(range(m), 2):
        for j1, j2 in itertools.permutations(range(n), 2):
            v = abs(chsh_value(b, i1, i2, j1, j2))
            if v > best:
                best, best_idx = v, (i1, i2, j1, j2)
    if best_idx is None:
        raise ValueError("CHSH needs at least two settings per side")
    return best, best_idx


NOT_BELL_LOCAL = "¬ Bell Locality"


@dataclass(frozen=True)
class Verdict:
    """Outcome of composing the completeness and incompleteness branches.

    Part 1 holds when completeness plus factorization contradicts the quantum
    predictions; part 2 holds when the quantum behavior on the CHSH scenario
    lies outside the local polytope.
    """

    part1: DerivationReport
    part2: LPResult
    chsh: float
    conclusion: str

    @property
    def part1_established(self) -> bool:
        return self.part1.inconsistent

    @property
    def part2_established(self) -> bool:
        return not self.part2.feasible


def two_part_argument(s_epr: Scenario, s_chsh: Scenario, tol: float = DEFAULT_TOL) -> Verdict:
    # s_epr is expected to contain a parallel pair, but that is not enforced:
    # a scenario without one is reported as "part 1 not established".
    if s_chsh.shape != (2, 2):
        raise ValueError(f"CHSH scenario must be 2x2, got {s_chsh.shape[0]}x{s_chsh.shape[1]}")
    part1 = epr_bell_derivation(s_epr, tol)
    quantum = singlet_behavior(s_chsh)
    part2 = local_polytope_membership(quantum, tol)
    s_value, _ = max_abs_chsh(quantum)

    missing = []
    if not part1.inconsistent:
        missing.append("part 1 (completeness -> not Bell Locality)")
    if part2.feasible:
        missing.append("part 2 (incompleteness -> not Bell Locality)")
    if missing:
        conclusion = "not established: " + "; ".join(missing)
    else:
        conclusion = NOT_BELL_LOCAL
    return Verdict(part1, part2, s_value, conclusion)
