"""Dense two-phase tableau simplex for small standard-form LPs.

    minimize    c @ x
    subject to  A @ x == b,  x >= 0

Pivoting follows Bland's rule (lowest-index entering column, lowest-index
leaving variable among ratio ties), so runs are deterministic and cannot
cycle.  Phase 1 minimizes the sum of one artificial per row; artificials
left in the basis at level zero are pivoted out, and rows where that is
impossible are dropped as redundant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-11
FEAS_TOL = 1e-9


@dataclass
class SimplexResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    fun: float
    phase1_objective: float
    iterations: int


def _pivot(T, basis, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = j


def _iterate(T, basis, cost, ncols, pivot_tol, max_iter):
    """Run simplex pivots on columns ``[0, ncols)`` until optimal.

    Returns ``(status, iterations)``.
    """
    its = 0
    while True:
        cb = cost[basis]
        reduced = cost[:ncols] - cb @ T[:, :ncols]
        candidates = np.flatnonzero(reduced < -pivot_tol)
        if candidates.size == 0:
            return "optimal", its
        if its >= max_iter:
            raise RuntimeError(f"simplex did not converge in {max_iter} pivots")
        j = int(candidates[0])
        col = T[:, j]
        rows = np.flatnonzero(col > pivot_tol)
        if rows.size == 0:
            return "unbounded", its
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
        r = int(min(ties, key=lambda k: basis[k]))
        _pivot(T, basis, r, j)
        np.copyto(T[:, -1], 0.0, where=(T[:, -1] < 0) & (T[:, -1] > -FEAS_TOL))
        its += 1


def solve(c, A_eq, b_eq, *, pivot_tol=PIVOT_TOL, feas_tol=FEAS_TOL, max_iter=100_000) -> SimplexResult:
    """Minimize ``c @ x`` over ``{x >= 0 : A_eq @ x == b_eq}``.

    The problem is declared infeasible when the phase-1 optimum (the least
    total violation of the equality rows) exceeds ``feas_tol``.
    """
    A = np.array(A_eq, dtype=float)
    b = np.array(b_eq, dtype=float).reshape(-1)
    c = np.array(c, dtype=float).reshape(-1)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("inconsistent LP dimensions")

    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1

    T = np.zeros((m, n + m + 1))
    T[:, :n] = A
    T[:, n : n + m] = np.eye(m)
    T[:, -1] = b
    basis = np.arange(n, n + m)

    phase1_cost = np.concatenate([np.zeros(n), np.ones(m)])
    _, its1 = _iterate(T, basis, phase1_cost, n + m, pivot_tol, max_iter)
    phase1 = float(T[basis >= n, -1].sum())
    if phase1 > feas_tol:
        return SimplexResult("infeasible", None, float("nan"), phase1, its1)

    keep = []
    for r in range(m):
        if basis[r] >= n:
            nz = np.flatnonzero(np.abs(T[r, :n]) > pivot_tol)
            if nz.size == 0:
                continue  # redundant row
            _pivot(T, basis, r, int(nz[0]))
        keep.append(r)
    keep = np.array(keep, dtype=int)
    T = np.concatenate([T[keep, :n], T[keep, -1:]], axis=1)
    basis = basis[keep]

    status, its2 = _iterate(T, basis, c, n, pivot_tol, max_iter - its1)
    its = its1 + its2
    if status == "unbounded":
        return SimplexResult("unbounded", None, float("-inf"), phase1, its)

    x = np.zeros(n)
    x[basis] = T[:, -1]
    # re-solve the basic system against the original rows to shed pivoting error
    try:
        xb = np.linalg.solve(A[keep][:, basis], b[keep])
        if np.all(xb > -feas_tol):
            x[:] = 0.0
            x[basis] = xb
    except np.linalg.LinAlgError:
        pass
    x = np.where((x < 0) & (x > -feas_tol), 0.0, x)
    return SimplexResult("optimal", x, float(c @ x), phase1, its)
