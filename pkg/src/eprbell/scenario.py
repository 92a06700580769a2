"""Measurement scenarios and behaviors.

A *behavior* is the full table of conditional probabilities
``p(a, b | i, j)`` for two parties, where ``i`` and ``j`` index the analyzer
directions on each side and ``a, b`` are the ±1 outcomes.  Tables are stored
as float arrays of shape ``(m, n, 2, 2)`` indexed ``[i, j, a, b]``; outcome
index 0 means +1 and index 1 means -1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioError, ShapeMismatch, ZeroVector

ZERO_NORM = 1e-12
DISTINCT_ANGLE = 1e-9
DEFAULT_TOL = 1e-9


class Outcome(enum.IntEnum):
    """A spin measurement result. Only +1 and -1 exist."""

    PLUS = 1
    MINUS = -1

    @property
    def index(self) -> int:
        """Position of the outcome along a table axis (0 for +1, 1 for -1)."""
        return 0 if self is Outcome.PLUS else 1

    @classmethod
    def from_index(cls, k: int) -> "Outcome":
        if k not in (0, 1):
            raise ValueError(f"outcome index must be 0 or 1, got {k!r}")
        return cls.PLUS if k == 0 else cls.MINUS


OUTCOMES = (Outcome.PLUS, Outcome.MINUS)
# sign of a*b for table cells [a, b]
SIGNS = np.array([[1.0, -1.0], [-1.0, 1.0]])


class Side(enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class MeasurementDirection:
    """Unit vector along which a spin component is measured.

    Build instances with :func:`make_direction`, which normalizes.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(
                f"direction must be a unit vector (norm {norm!r}); use make_direction"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def as_list(self) -> list[float]:
        return [self.x, self.y, self.z]


def make_direction(x: float, y: float, z: float) -> MeasurementDirection:
    """Normalize ``(x, y, z)`` into a :class:`MeasurementDirection`.

    Raises :class:`ZeroVector` when the norm is at most 1e-12.
    """
    x, y, z = float(x), float(y), float(z)
    norm = math.sqrt(x * x + y * y + z * z)
    if not math.isfinite(norm) or norm <= ZERO_NORM:
        raise ZeroVector(f"cannot normalize vector ({x}, {y}, {z}) with norm {norm}")
    return MeasurementDirection(x / norm, y / norm, z / norm)


def planar_direction(theta: float) -> MeasurementDirection:
    """Direction in the x-z plane at polar angle ``theta`` (radians) from +z."""
    return make_direction(math.sin(theta), 0.0, math.cos(theta))


def angle_between(a: MeasurementDirection, b: MeasurementDirection) -> float:
    """Angle in ``[0, pi]`` between two directions."""
    # summed in a fixed symmetric order so that angle_between(a, b) == angle_between(b, a)
    dot = a.x * b.x + a.y * b.y + a.z * b.z
    return math.acos(min(1.0, max(-1.0, dot)))


def _check_settings(name: str, settings) -> tuple[MeasurementDirection, ...]:
    settings = tuple(settings)
    if not settings:
        raise ScenarioError(f"{name} must contain at least one direction")
    for k, d in enumerate(settings):
        if not isinstance(d, MeasurementDirection):
            raise ScenarioError(f"{name}[{k}] is not a MeasurementDirection")
    for k in range(len(settings)):
        for l in range(k):
            if angle_between(settings[k], settings[l]) <= DISTINCT_ANGLE:
                raise ScenarioError(f"{name}[{k}] duplicates {name}[{l}]")
    return settings


@dataclass(frozen=True)
class Scenario:
    """Ordered analyzer directions for side A and side B."""

    settings_a: tuple[MeasurementDirection, ...]
    settings_b: tuple[MeasurementDirection, ...]

    def __post_init__(self):
        object.__setattr__(self, "settings_a", _check_settings("settings_a", self.settings_a))
        object.__setattr__(self, "settings_b", _check_settings("settings_b", self.settings_b))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.settings_a), len(self.settings_b)

    @property
    def table_shape(self) -> tuple[int, int, int, int]:
        m, n = self.shape
        return (m, n, 2, 2)

    def angle(self, i: int, j: int) -> float:
        return angle_between(self.settings_a[i], self.settings_b[j])

    def angles(self) -> np.ndarray:
        """Matrix of relative angles ``theta[i, j]``."""
        m, n = self.shape
        return np.array([[self.angle(i, j) for j in range(n)] for i in range(m)])

    @classmethod
    def planar(cls, thetas_a, thetas_b) -> "Scenario":
        """Scenario whose directions all lie in the x-z plane (angles in radians)."""
        return cls(
            tuple(planar_direction(t) for t in thetas_a),
            tuple(planar_direction(t) for t in thetas_b),
        )


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Behavior:
    """Conditional probability table ``p(a, b | i, j)`` over a scenario.

    Construction only checks the table shape; probabilistic validity is
    reported by :func:`validate_behavior`.
    """

    scenario: Scenario
    table: np.ndarray

    def __post_init__(self):
        table = _frozen(self.table)
        if table.shape != self.scenario.table_shape:
            raise ShapeMismatch(
                f"table has shape {table.shape}, scenario requires {self.scenario.table_shape}"
            )
        object.__setattr__(self, "table", table)

    def prob(self, a: Outcome, b: Outcome, i: int, j: int) -> float:
        return float(self.table[i, j, Outcome(a).index, Outcome(b).index])

    def marginal_a(self) -> np.ndarray:
        """``P(A=a | i, j)`` with shape ``(m, n, 2)``."""
        return self.table.sum(axis=3)

    def marginal_b(self) -> np.ndarray:
        """``P(B=b | i, j)`` with shape ``(m, n, 2)``."""
        return self.table.sum(axis=2)

    def correlations(self) -> np.ndarray:
        """Signed correlators ``E[i, j] = sum_ab a*b*p(a, b | i, j)``."""
        return np.einsum("ijab,ab->ij", self.table, SIGNS)


def uniform_behavior(scenario: Scenario) -> Behavior:
    return Behavior(scenario, np.full(scenario.table_shape, 0.25))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    max_negativity: float
    max_normalization_error: float
    offending_cells: list = field(default_factory=list)


def validate_behavior(b: Behavior, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check nonnegativity and per-setting normalization of a behavior.

    Bad probabilities are reported, never raised.  ``offending_cells`` lists
    ``(i, j, a, b)`` with ``a, b`` as :class:`Outcome` values: every negative
    cell beyond ``tol``, plus all four cells of any badly normalized
    setting pair.
    """
    table = np.asarray(b.table, dtype=float)
    if table.shape != b.scenario.table_shape:
        raise ShapeMismatch(
            f"table has shape {table.shape}, scenario requires {b.scenario.table_shape}"
        )
    negativity = np.maximum(-table, 0.0)
    norm_err = np.abs(table.sum(axis=(2, 3)) - 1.0)
    max_neg = float(negativity.max())
    max_norm = float(norm_err.max())

    offending = []
    m, n = b.scenario.shape
    for i in range(m):
        for j in range(n):
            bad_norm = norm_err[i, j] > tol
            for ka in range(2):
                for kb in range(2):
                    if bad_norm or negativity[i, j, ka, kb] > tol:
                        offending.append(
                            (i, j, Outcome.from_index(ka), Outcome.from_index(kb))
                        )
    ok = max_neg <= tol and max_norm <= tol
    return ValidationReport(ok, max_neg, max_norm, offending)


def no_signalling_check(b: Behavior, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Largest dependence of each side's marginals on the distant setting.

    Returns ``(max_deviation_a, max_deviation_b)``; the behavior is
    no-signalling when both are at most ``tol``.  ``tol`` only documents the
    caller's threshold and does not alter the returned values.
    """
    pa = b.marginal_a()  # (m, n, 2): depends on j only if A's marginal signals
    pb = b.marginal_b()
    dev_a = float((pa.max(axis=1) - pa.min(axis=1)).max())
    dev_b = float((pb.max(axis=0) - pb.min(axis=0)).max())
    return dev_a, dev_b
