"""Sign measurements of linear observations and their index bookkeeping.

Two sign conventions appear throughout: the standard one maps values near
zero to 0, the nonstandard one maps them to +1 so the measurement vector
never contains zeros.  Consistency of a signal with a measurement always
means exact elementwise equality of the recomputed sign vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOLERANCES, TolerancePolicy, as_matrix, as_vector

STANDARD = "standard"
NONSTANDARD = "nonstandard"


def sign_standard(v, tol: TolerancePolicy | None = None) -> np.ndarray:
    """Componentwise sign with a dead zone: |value| <= sign_tol reads as 0."""
    pol = tol or DEFAULT_TOLERANCES
    v = as_vector(v)
    return np.where(v > pol.sign_tol, 1, np.where(v < -pol.sign_tol, -1, 0)).astype(int)


def sign_nonstandard(v, tol: TolerancePolicy | None = None) -> np.ndarray:
    """Componentwise sign that never emits zero: values above -sign_tol map to +1."""
    pol = tol or DEFAULT_TOLERANCES
    v = as_vector(v)
    return np.where(v > -pol.sign_tol, 1, -1).astype(int)


@dataclass(frozen=True, eq=False)
class SignMeasurement:
    """A vector y over {-1, 0, +1} with its index partition.

    j_plus/j_minus/j_zero are the ascending row indices where y is +1, -1,
    0.  slot_plus[i] is the position of row i within j_plus (-1 elsewhere),
    so slack vectors indexed by the positive rows can be addressed directly;
    slot_minus is the analogue for j_minus.
    """

    y: np.ndarray
    j_plus: np.ndarray
    j_minus: np.ndarray
    j_zero: np.ndarray
    slot_plus: np.ndarray
    slot_minus: np.ndarray

    @classmethod
    def from_y(cls, y) -> "SignMeasurement":
        arr = np.asarray(y)
        if arr.ndim != 1:
            raise ValueError("measurement must be a 1-D vector")
        arr = arr.astype(int)
        if not np.all(np.isin(arr, (-1, 0, 1))):
            raise ValueError("measurement entries must lie in {-1, 0, 1}")
        jp = np.flatnonzero(arr == 1)
        jm = np.flatnonzero(arr == -1)
        jz = np.flatnonzero(arr == 0)
        m = arr.shape[0]
        slot_plus = np.full(m, -1)
        slot_plus[jp] = np.arange(jp.size)
        slot_minus = np.full(m, -1)
        slot_minus[jm] = np.arange(jm.size)
        return cls(y=arr, j_plus=jp, j_minus=jm, j_zero=jz,
                   slot_plus=slot_plus, slot_minus=slot_minus)

    @property
    def m(self) -> int:
        return self.y.shape[0]

    def is_zero(self) -> bool:
        return bool(np.all(self.y == 0))


@dataclass(frozen=True, eq=False)
class SignalVector:
    """A signal with its signed support split out by sign_tol."""

    x: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray
    support: np.ndarray

    @classmethod
    def from_x(cls, x, tol: TolerancePolicy | None = None) -> "SignalVector":
        pol = tol or DEFAULT_TOLERANCES
        arr = as_vector(x)
        sp = np.flatnonzero(arr > pol.sign_tol)
        sm = np.flatnonzero(arr < -pol.sign_tol)
        return cls(x=arr, s_plus=sp, s_minus=sm,
                   support=np.sort(np.concatenate([sp, sm])))


@dataclass(frozen=True, eq=False)
class ActiveSets:
    """Rows of a measurement at (within active_tol of) their sign boundary.

    active holds the binding rows; inactive_plus and inactive_minus the
    strictly slack rows of j_plus and j_minus respectively.
    """

    active: np.ndarray
    inactive_plus: np.ndarray
    inactive_minus: np.ndarray


def signed_support(x, tol: TolerancePolicy | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(positive support, negative support) of x under sign_tol."""
    sv = SignalVector.from_x(x, tol)
    return sv.s_plus, sv.s_minus


def measure(phi, x, mode: str = STANDARD, tol: TolerancePolicy | None = None) -> SignMeasurement:
    """Take one-bit measurements of phi @ x under the chosen sign convention."""
    phi = as_matrix(phi)
    x = as_vector(x, phi.shape[1])
    v = phi @ x
    if mode == STANDARD:
        return SignMeasurement.from_y(sign_standard(v, tol))
    if mode == NONSTANDARD:
        return SignMeasurement.from_y(sign_nonstandard(v, tol))
    raise ValueError(f"unknown sign mode {mode!r}")


def is_consistent(phi, x, meas: SignMeasurement, mode: str = STANDARD,
                  tol: TolerancePolicy | None = None) -> bool:
    """Exact equality of the recomputed sign vector with meas.y."""
    return bool(np.array_equal(measure(phi, x, mode, tol).y, meas.y))


def active_sets(phi, x, meas: SignMeasurement, tol: TolerancePolicy | None = None) -> ActiveSets:
    """Binding rows of the sign-consistency constraints at x.

    Requires x to satisfy the decoding constraints (rows of j_plus at
    least 1, rows of j_minus at most -1, rows of j_zero equal to 0) within
    active_tol; the error message names the first violated row.
    """
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    x = as_vector(x, phi.shape[1])
    v = phi @ x
    for i in meas.j_plus:
        if v[i] < 1.0 - pol.active_tol:
            raise ValueError(
                f"row {i} requires phi@x >= 1 but has value {v[i]:.6g}")
    for i in meas.j_minus:
        if v[i] > -1.0 + pol.active_tol:
            raise ValueError(
                f"row {i} requires phi@x <= -1 but has value {v[i]:.6g}")
    for i in meas.j_zero:
        if abs(v[i]) > pol.active_tol:
            raise ValueError(
                f"row {i} requires phi@x == 0 but has value {v[i]:.6g}")
    act_plus = [int(i) for i in meas.j_plus if abs(v[i] - 1.0) <= pol.active_tol]
    act_minus = [int(i) for i in meas.j_minus if abs(v[i] + 1.0) <= pol.active_tol]
    active = np.array(sorted(act_plus + act_minus), dtype=int)
    inact_plus = np.array([int(i) for i in meas.j_plus if i not in set(act_plus)], dtype=int)
    inact_minus = np.array([int(i) for i in meas.j_minus if i not in set(act_minus)], dtype=int)
    return ActiveSets(active=active, inactive_plus=inact_plus, inactive_minus=inact_minus)


def minimal_scaling(phi, x, meas: SignMeasurement, tol: TolerancePolicy | None = None) -> float:
    """Smallest positive factor that makes a consistent signal decoding-feasible.

    Scaling x by the returned factor pushes the least-margin row of
    j_plus/j_minus onto its boundary, so the scaled signal satisfies the
    decoding constraints with at least one row active.  Requires standard-
    sign consistency and a nonzero measurement.
    """
    phi = as_matrix(phi)
    x = as_vector(x, phi.shape[1])
    if meas.is_zero():
        raise ValueError("minimal scaling is undefined for the zero measurement")
    if not is_consistent(phi, x, meas, STANDARD, tol):
        raise ValueError("signal is not sign-consistent with the measurement")
    v = phi @ x
    rows = np.concatenate([meas.j_plus, meas.j_minus])
    return float(np.max(1.0 / np.abs(v[rows])))
