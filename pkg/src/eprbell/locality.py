"""Bell Locality, Parameter Independence and Outcome Independence checks.

A :class:`LambdaModel` is a finite mixture of hidden states.  All three
conditions are evaluated *per hidden state*, never on the mixture: a mixture
of perfectly local states can still show correlations, and that is not a
locality violation.

Deviations are max-norms over cells, so a single offending cell is enough to
register a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModelError, ShapeMismatch
from .quantum import singlet_behavior, singlet_marginal
from .scenario import DEFAULT_TOL, Behavior, Outcome, Scenario, Side

PREMISES = (
    ("A1", "quantum joint-outcome predictions for the singlet"),
    ("A2", "quantum marginals P = 1/2 for each single-side outcome"),
    ("B", "Bell Locality: per-state factorization of joint probabilities"),
    ("C", "completeness: the quantum state is the full hidden state"),
)


def _check_rows(name, arr, atol):
    if np.any(arr < -atol):
        raise ModelError(f"{name} has a negative entry ({arr.min()!r})")
    sums = arr.sum(axis=-1) if arr.ndim == 2 else arr.sum(axis=(-2, -1))
    if np.any(np.abs(sums - 1.0) > atol):
        raise ModelError(f"{name} is not normalized (worst row sum {sums.flat[np.argmax(np.abs(sums - 1.0))]!r})")


@dataclass(frozen=True, eq=False)
class GeneralState:
    """Hidden state carrying an arbitrary joint table ``p(a, b | i, j)``."""

    joint: np.ndarray

    def __post_init__(self):
        joint = np.array(self.joint, dtype=float)
        if joint.ndim != 4 or joint.shape[2:] != (2, 2):
            raise ShapeMismatch(f"joint table must have shape (m, n, 2, 2), got {joint.shape}")
        joint.setflags(write=False)
        object.__setattr__(self, "joint", joint)

    @property
    def shape(self):
        return self.joint.shape[:2]

    def joint_table(self) -> np.ndarray:
        return self.joint


@dataclass(frozen=True, eq=False)
class LocalState:
    """Hidden state given by local response tables ``p(a | i)`` and ``p(b | j)``."""

    resp_a: np.ndarray
    resp_b: np.ndarray

    def __post_init__(self):
        for name in ("resp_a", "resp_b"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ShapeMismatch(f"{name} must have shape (settings, 2), got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def shape(self):
        return self.resp_a.shape[0], self.resp_b.shape[0]

    def joint_table(self) -> np.ndarray:
        return np.einsum("ia,jb->ijab", self.resp_a, self.resp_b)


@dataclass(frozen=True, eq=False)
class LambdaModel:
    """Finite mixture ``[(weight, state), ...]`` of hidden states.

    ``kind`` is ``"general"`` (joint tables) or ``"local"`` (response tables).
    Weights must sum to one and every table row must be a probability
    distribution, both within ``atol``.
    """

    components: tuple
    kind: str = "general"
    atol: float = 1e-12

    def __post_init__(self):
        if self.kind not in ("general", "local"):
            raise ModelError(f"kind must be 'general' or 'local', got {self.kind!r}")
        comps = tuple((float(w), st) for w, st in self.components)
        if not comps:
            raise ModelError("model needs at least one component")
        expected = GeneralState if self.kind == "general" else LocalState
        shapes = set()
        for k, (w, st) in enumerate(comps):
            if not isinstance(st, expected):
                raise ModelError(f"component {k} is not a {expected.__name__}")
            if not (-self.atol <= w <= 1 + self.atol):
                raise ModelError(f"component {k} weight {w!r} outside [0, 1]")
            if isinstance(st, GeneralState):
                _check_rows(f"component {k} joint", st.joint, self.atol)
            else:
                _check_rows(f"component {k} resp_a", st.resp_a, self.atol)
                _check_rows(f"component {k} resp_b", st.resp_b, self.atol)
            shapes.add(st.shape)
        total = math.fsum(w for w, _ in comps)
        if abs(total - 1.0) > self.atol:
            raise ModelError(f"weights must sum to 1, got {total!r}")
        if len(shapes) != 1:
            raise ShapeMismatch(f"components disagree on setting counts: {sorted(shapes)}")
        object.__setattr__(self, "components", comps)

    @property
    def shape(self):
        return self.components[0][1].shape

    def joint_tables(self) -> list[np.ndarray]:
        return [st.joint_table() for _, st in self.components]

    def mixture(self, s: Scenario) -> Behavior:
        """Observable behavior of the model, ``sum_k w_k p_k``."""
        _require_shape(self, s)
        return Behavior(s, sum(w * t for (w, _), t in zip(self.components, self.joint_tables())))

    @classmethod
    def single(cls, joint) -> "LambdaModel":
        return cls(((1.0, GeneralState(joint)),), kind="general")


def orthodox_model(s: Scenario) -> LambdaModel:
    """The completeness model: one hidden state, the singlet itself."""
    return LambdaModel.single(singlet_behavior(s).table)


def _require_shape(m: LambdaModel, s: Scenario):
    if m.shape != s.shape:
        raise ShapeMismatch(f"model has setting counts {m.shape}, scenario has {s.shape}")


@dataclass(frozen=True)
class LocalityReport:
    pi_deviation: float
    oi_deviation: float
    factorization_deviation: float
    worst_witness: tuple  # (component, i, j, A, B) of the worst factorization cell
    tol: float = DEFAULT_TOL

    @property
    def bell_local(self) -> bool:
        return max(self.pi_deviation, self.oi_deviation, self.factorization_deviation) <= self.tol


def _pi_single(p: np.ndarray) -> float:
    pa = p.sum(axis=3)  # P(A | i, j)
    pb = p.sum(axis=2)  # P(B | i, j)
    dev_a = (pa.max(axis=1) - pa.min(axis=1)).max()
    dev_b = (pb.max(axis=0) - pb.min(axis=0)).max()
    return float(max(dev_a, dev_b))


def _oi_single(p: np.ndarray, tol: float) -> float:
    pa = p.sum(axis=3)
    pb = p.sum(axis=2)
    worst = 0.0
    m, n = p.shape[:2]
    for i in range(m):
        for j in range(n):
            cell = p[i, j]
            for kb in range(2):
                if pb[i, j, kb] > tol:
                    cond = cell[:, kb] / pb[i, j, kb]
                    worst = max(worst, float(np.abs(cond - pa[i, j]).max()))
            for ka in range(2):
                if pa[i, j, ka] > tol:
                    cond = cell[ka, :] / pa[i, j, ka]
                    worst = max(worst, float(np.abs(cond - pb[i, j]).max()))
    return worst


def pi_check(m: LambdaModel, s: Scenario, tol: float = DEFAULT_TOL) -> float:
    """Largest dependence, within one hidden state, of a side's outcome
    probabilities on the distant setting."""
    _require_shape(m, s)
    return max(_pi_single(p) for p in m.joint_tables())


def oi_check(m: LambdaModel, s: Scenario, tol: float = DEFAULT_TOL) -> float:
    """Largest change of ``P(X | i, j, lambda)`` when the distant outcome is
    also conditioned on.

    Conditioning events with probability ``<= tol`` are skipped, since the
    conditional probability is undefined there.
    """
    _require_shape(m, s)
    return max(_oi_single(p, tol) for p in m.joint_tables())


def factorization_check(m: LambdaModel, s: Scenario, tol: float = DEFAULT_TOL) -> LocalityReport:
    """Distance of each hidden state's joint table from the product of its marginals."""
    _require_shape(m, s)
    worst, witness = -1.0, None
    for k, p in enumerate(m.joint_tables()):
        product = np.einsum("ija,ijb->ijab", p.sum(axis=3), p.sum(axis=2))
        gap = np.abs(p - product)
        idx = np.unravel_index(int(np.argmax(gap)), gap.shape)
        if gap[idx] > worst:
            worst = float(gap[idx])
            i, j, ka, kb = (int(v) for v in idx)
            witness = (k, i, j, Outcome.from_index(ka), Outcome.from_index(kb))
    return LocalityReport(
        pi_deviation=pi_check(m, s, tol),
        oi_deviation=oi_check(m, s, tol),
        factorization_deviation=worst,
        worst_witness=witness,
        tol=tol,
    )


@dataclass(frozen=True)
class DerivationReport:
    factorized_table: Behavior
    qm_table: Behavior
    max_cell_deviation: float
    inconsistent: bool
    verdict: str
    worst_cell: tuple  # (i, j, A, B)
    tol: float = DEFAULT_TOL


def epr_bell_derivation(s: Scenario, tol: float = DEFAULT_TOL) -> DerivationReport:
    """Combine completeness with factorization and compare to the quantum table.

    With the hidden state replaced by the singlet, factorization forces
    ``P(A, B | a, b) = P(A | a) * P(B | b)``, and the quantum marginals then
    fix every cell to 1/4.  Any setting pair with ``theta != pi/2`` disagrees
    with the quantum joint predictions.
    """
    m, n = s.shape
    factor = np.empty(s.table_shape)
    for ka, a in enumerate(Outcome.from_index(k) for k in range(2)):
        for kb, b in enumerate(Outcome.from_index(k) for k in range(2)):
            factor[:, :, ka, kb] = singlet_marginal(Side.A, a) * singlet_marginal(Side.B, b)
    factorized = Behavior(s, factor)
    qm = singlet_behavior(s)

    gap = np.abs(qm.table - factorized.table)
    idx = np.unravel_index(int(np.argmax(gap)), gap.shape)
    dev = float(gap[idx])
    i, j, ka, kb = (int(v) for v in idx)
    worst = (i, j, Outcome.from_index(ka), Outcome.from_index(kb))
    inconsistent = dev > tol

    names = ", ".join(f"{tag} ({desc})" for tag, desc in PREMISES)
    if inconsistent:
        verdict = (
            f"inconsistent: premises {names} predict 1/4 in every cell, but the quantum "
            f"joint prediction differs by {dev:.17g} at setting pair ({i}, {j}), "
            f"outcomes ({int(worst[2]):+d}, {int(worst[3]):+d}). "
            "At least one of A1, A2, B, C must be false."
        )
    else:
        verdict = (
            f"consistent within tol={tol:g}: premises {names} agree with the quantum "
            "joint predictions at every setting pair of this scenario."
        )
    return DerivationReport(factorized, qm, dev, inconsistent, verdict, worst, tol)
