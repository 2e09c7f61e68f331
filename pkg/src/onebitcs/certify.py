"""Certificates for sign recovery from one-bit measurements.

Three layers:

* pointwise: does a dual witness prove a given decoder output is the
  unique l1 minimizer (range-space property of the transposed matrix at
  that point, plus full column rank of the boundary submatrix)?
* per measurement: do such witnesses exist for every/some sign pattern a
  consistent signal can have, restricted to sparsity k?
* per matrix: quantified additionally over every k-sparse measurement the
  matrix can produce.

Every "strictly positive / strictly less than 1" requirement is decided by
maximizing a common margin with an LP and comparing against margin_tol;
nothing is perturbed by hand-picked epsilons.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import lp
from .linalg import (
    DEFAULT_TOLERANCES,
    TolerancePolicy,
    as_matrix,
    as_vector,
    column_rank,
    stack_rows,
)
from .signmodel import (
    ActiveSets,
    SignMeasurement,
    active_sets,
    signed_support,
)

SUFFICIENT = "sufficient"
NECESSARY = "necessary"

# Budgets for the exhaustive classifiers; beyond these the sweeps refuse
# rather than silently sample.
WRT_Y_MAX_SIGNED_ROWS = 12
WRT_Y_MAX_COLS = 10
ORDER_K_MAX_COLS = 8
ORDER_K_MAX_SPARSITY = 2
ORDER_K_MAX_ROWS = 8


@dataclass(frozen=True, eq=False)
class CertMatrix:
    """Boundary submatrix used in the rank half of the uniqueness test.

    Rows: matrix rows active at the signal (positive rows first, then
    negative, then the zero-measurement rows).  Columns: positive support
    then negative support.  Labels carry the original indices.
    """

    h: np.ndarray
    row_labels: tuple[tuple[str, int], ...]
    col_labels: tuple[tuple[str, int], ...]


@dataclass(frozen=True, eq=False)
class RrspWitness:
    """A dual certificate: w in measurement space, eta = phi.T @ w.

    margin is the common slack with which the strict requirements hold
    (|eta| <= 1 - margin off the support, signed w entries at least margin
    away from zero on the required rows).
    """

    eta: np.ndarray
    w: np.ndarray
    margin: float


@dataclass(frozen=True)
class TPair:
    """A restriction pair: rows of j_plus/j_minus whose witness entry is pinned to zero.

    Valid pairs never cover all signed rows, so at least one row keeps a
    strictly signed witness entry.
    """

    t1: tuple[int, ...]
    t2: tuple[int, ...]


@dataclass
class RrspCheck:
    holds: bool
    margin: float
    witness: RrspWitness | None


@dataclass
class CertReport:
    """Uniqueness certificate at a specific feasible signal."""

    unique: bool
    h_full_rank: bool
    h_rank: int
    rrsp_holds: bool
    margin: float
    witness: RrspWitness | None
    cert_matrix: CertMatrix
    active: ActiveSets
    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class RrspEvidence:
    """One certifying or falsifying tuple from a quantified sweep."""

    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]
    tpair: TPair | None
    y: tuple[int, ...] | None
    margin: float
    holds: bool
    note: str


def _sign_witness_margin(phi, s_plus, s_minus, pos_rows, neg_rows, zero_rows,
                         tol: TolerancePolicy) -> tuple[bool, RrspWitness | None, float]:
    """Best-margin dual witness for a signed support under row sign constraints.

    Searches w with eta = phi.T @ w equal to +1 on s_plus, -1 on s_minus,
    |eta| strictly below 1 elsewhere, w strictly positive on pos_rows,
    strictly negative on neg_rows, zero on zero_rows, and unrestricted on
    the remaining rows.
    """
    phi = as_matrix(phi)
    m, n = phi.shape
    support = set(s_plus) | set(s_minus)
    rows = []
    strict = []
    for j in s_plus:
        rows.append((phi[:, j], "=", 1.0))
    for j in s_minus:
        rows.append((phi[:, j], "=", -1.0))
    for j in range(n):
        if j in support:
            continue
        strict.append(len(rows))
        rows.append((phi[:, j], "<=", 1.0))
        strict.append(len(rows))
        rows.append((phi[:, j], ">=", -1.0))
    for i in pos_rows:
        e = np.zeros(m)
        e[i] = 1.0
        strict.append(len(rows))
        rows.append((e, ">=", 0.0))
    for i in neg_rows:
        e = np.zeros(m)
        e[i] = 1.0
        strict.append(len(rows))
        rows.append((e, "<=", 0.0))
    for i in zero_rows:
        e = np.zeros(m)
        e[i] = 1.0
        rows.append((e, "=", 0.0))
    if not rows:
        raise ValueError("witness system is empty; nothing to certify")

    cert = lp.max_margin_feasibility(rows, strict, cap=1.0)
    if cert.witness is None:
        return False, None, cert.t_star
    w = cert.witness
    witness = RrspWitness(eta=phi.T @ w, w=w, margin=float(cert.t_star))
    return cert.t_star >= tol.margin_tol, witness, float(cert.t_star)


def witness_is_valid(phi, witness: RrspWitness, s_plus, s_minus, pos_rows,
                     neg_rows, zero_rows, tol: TolerancePolicy | None = None) -> bool:
    """Recheck a serialized witness by direct substitution."""
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    eta = phi.T @ as_vector(witness.w, phi.shape[0])
    if float(np.max(np.abs(eta - witness.eta), initial=0.0)) > 1e-8:
        return False
    slack = witness.margin - 1e-9
    for j in s_plus:
        if abs(eta[j] - 1.0) > 1e-8:
            return False
    for j in s_minus:
        if abs(eta[j] + 1.0) > 1e-8:
            return False
    support = set(s_plus) | set(s_minus)
    for j in range(phi.shape[1]):
        if j not in support and abs(eta[j]) > 1.0 - slack:
            return False
    for i in pos_rows:
        if witness.w[i] < slack:
            return False
    for i in neg_rows:
        if witness.w[i] > -slack:
            return False
    for i in zero_rows:
        if abs(witness.w[i]) > 1e-8:
            return False
    return True


def assemble_H(phi, meas: SignMeasurement, x,
               tol: TolerancePolicy | None = None) -> CertMatrix:
    """Boundary submatrix at a feasible signal.

    Rows are the active rows of j_plus, the active rows of j_minus, then
    all of j_zero; columns are the positive then negative support of x.
    """
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    x = as_vector(x, phi.shape[1])
    acts = active_sets(phi, x, meas, pol)
    sp, sm = signed_support(x, pol)
    yset = meas.y
    act_plus = [int(i) for i in acts.active if yset[i] == 1]
    act_minus = [int(i) for i in acts.active if yset[i] == -1]
    row_ids = act_plus + act_minus + [int(i) for i in meas.j_zero]
    col_ids = [int(j) for j in sp] + [int(j) for j in sm]
    h = phi[np.ix_(np.array(row_ids, dtype=int), np.array(col_ids, dtype=int))] \
        if row_ids and col_ids else np.zeros((len(row_ids), len(col_ids)))
    row_labels = tuple(
        [("plus_active", i) for i in act_plus]
        + [("minus_active", i) for i in act_minus]
        + [("zero", int(i)) for i in meas.j_zero]
    )
    col_labels = tuple(
        [("plus", int(j)) for j in sp] + [("minus", int(j)) for j in sm]
    )
    return CertMatrix(h=h, row_labels=row_labels, col_labels=col_labels)


def rrsp_at(phi, meas: SignMeasurement, x,
            tol: TolerancePolicy | None = None) -> RrspCheck:
    """Dual-witness test at a specific feasible signal.

    The witness must be strictly signed exactly on the active rows,
    vanish on the inactive signed rows, and is unrestricted on j_zero.
    """
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    x = as_vector(x, phi.shape[1])
    sp, sm = signed_support(x, pol)
    if sp.size + sm.size == 0:
        raise ValueError("dual-witness test needs a nonzero signal")
    acts = active_sets(phi, x, meas, pol)
    yv = meas.y
    pos_rows = [int(i) for i in acts.active if yv[i] == 1]
    neg_rows = [int(i) for i in acts.active if yv[i] == -1]
    zero_rows = [int(i) for i in acts.inactive_plus] + [int(i) for i in acts.inactive_minus]
    holds, witness, margin = _sign_witness_margin(
        phi, [int(j) for j in sp], [int(j) for j in sm],
        pos_rows, neg_rows, zero_rows, pol)
    return RrspCheck(holds=holds, margin=margin, witness=witness)


def uniqueness_certificate(phi, y, x,
                           tol: TolerancePolicy | None = None) -> CertReport:
    """Decide whether x is the unique minimum-l1 signal reproducing y.

    x must satisfy the decoding constraints (the check is at the given
    point; optimality of x is the caller's concern, e.g. by producing x
    with the decoder).  Uniqueness holds exactly when the dual witness
    exists and the boundary submatrix has full column rank.
    """
    pol = tol or DEFAULT_TOLERANCES
    meas = y if isinstance(y, SignMeasurement) else SignMeasurement.from_y(y)
    phi = as_matrix(phi)
    x = as_vector(x, phi.shape[1])
    cm = assemble_H(phi, meas, x, pol)
    rank = column_rank(cm.h, pol)
    h_full = rank == cm.h.shape[1]
    check = rrsp_at(phi, meas, x, pol)
    sp, sm = signed_support(x, pol)
    acts = active_sets(phi, x, meas, pol)
    notes = []
    if not h_full:
        notes.append(
            f"boundary submatrix rank {rank} < {cm.h.shape[1]} columns")
    if not check.holds:
        notes.append(f"dual witness margin {check.margin:.3g} below "
                     f"{pol.margin_tol:.3g}")
    return CertReport(
        unique=bool(h_full and check.holds),
        h_full_rank=bool(h_full),
        h_rank=int(rank),
        rrsp_holds=bool(check.holds),
        margin=float(check.margin),
        witness=check.witness,
        cert_matrix=cm,
        active=acts,
        s_plus=tuple(int(j) for j in sp),
        s_minus=tuple(int(j) for j in sm),
        notes=tuple(notes),
    )


NONSTANDARD_X = "nonstandard_x"
NONSTANDARD_PHIX = "nonstandard_phix"
STANDARD_COND = "standard"

_AUDIT_MODES = (NONSTANDARD_X, NONSTANDARD_PHIX, STANDARD_COND)


def relaxation_consistency(phi, y, mode: str,
                           tol: TolerancePolicy | None = None
                           ) -> tuple[bool, list[tuple[int, np.ndarray]]]:
    """Audit whether the legacy relaxation is forced to reproduce y.

    The relaxation keeps minimizers consistent only when, for each audited
    row i, the null space of that row meets the measurement cone solely in
    degenerate directions.  mode picks the applicable criterion:

    * "nonstandard_x":    rows of j_minus; degenerate means d = 0
    * "nonstandard_phix": rows of j_minus; degenerate means phi @ d = 0
    * "standard":         rows of j_plus and j_minus; degenerate means
                          phi @ d = 0 (zero rows join the cone as equalities)

    Returns (holds, violations); each violation is (row, d) with d a
    nondegenerate cone direction in that row's null space.  The two
    nonstandard modes require y over {-1, +1} with at least one -1; the
    standard mode requires y != 0.
    """
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    m, n = phi.shape
    meas = y if isinstance(y, SignMeasurement) else SignMeasurement.from_y(y)
    if meas.m != m:
        raise ValueError(f"measurement has {meas.m} rows, matrix has {m}")
    if mode not in _AUDIT_MODES:
        raise ValueError(f"unknown audit mode {mode!r}; pick one of {_AUDIT_MODES}")
    if mode in (NONSTANDARD_X, NONSTANDARD_PHIX):
        if meas.j_zero.size:
            raise ValueError("nonstandard audits need a measurement over {-1, +1}")
        if meas.j_minus.size == 0:
            raise ValueError("nonstandard audits need at least one -1 row")
        audited = [int(i) for i in meas.j_minus]
    else:
        if meas.is_zero():
            raise ValueError("standard audit is undefined for the zero measurement")
        audited = [int(i) for i in meas.j_plus] + [int(i) for i in meas.j_minus]
        audited.sort()

    base_rows: list[tuple[np.ndarray, str, float]] = []
    for i in meas.j_plus:
        base_rows.append((phi[i], ">=", 0.0))
    for i in meas.j_minus:
        base_rows.append((phi[i], "<=", 0.0))
    if mode == STANDARD_COND:
        for i in meas.j_zero:
            base_rows.append((phi[i], "=", 0.0))

    violations: list[tuple[int, np.ndarray]] = []
    free = np.ones(n, dtype=bool)
    for i in audited:
        rows = [(phi[i], "=", 0.0)] + base_rows
        witness = None
        if mode == NONSTANDARD_X:
            # Nonzero d: sweep coordinates and signs.
            for j, s in product(range(n), (1.0, -1.0)):
                e = np.zeros(n)
                e[j] = s
                sol = lp.solve(lp.LPProblem.from_rows(
                    np.zeros(n), rows + [(e, ">=", 1.0)], sense="min", free=free))
                if sol.status == lp.OPTIMAL:
                    witness = sol.primal.copy()
                    break
        else:
            # Nonzero phi @ d: sweep measurement rows and signs.
            for r, s in product(range(m), (1.0, -1.0)):
                sol = lp.solve(lp.LPProblem.from_rows(
                    np.zeros(n), rows + [(s * phi[r], ">=", 1.0)],
                    sense="min", free=free))
                if sol.status == lp.OPTIMAL:
                    witness = sol.primal.copy()
                    break
        if witness is not None:
            violations.append((i, witness))
    return len(violations) == 0, violations


def _membership_margin(phi, meas: SignMeasurement, s_plus, s_minus,
                       tol: TolerancePolicy) -> lp.MarginCertificate:
    """Margin LP deciding whether a signed support is realized by some
    consistent signal (strict signs on the support and the signed rows,
    exact zeros elsewhere, sup-norm capped at 1 for scale)."""
    phi = as_matrix(phi)
    m, n = phi.shape
    sp = sorted(int(j) for j in s_plus)
    sm = sorted(int(j) for j in s_minus)
    if set(sp) & set(sm):
        raise ValueError("pattern has overlapping positive and negative support")
    support = set(sp) | set(sm)
    rows = []
    strict = []
    for j in sp:
        e = np.zeros(n)
        e[j] = 1.0
        strict.append(len(rows))
        rows.append((e, ">=", 0.0))
    for j in sm:
        e = np.zeros(n)
        e[j] = 1.0
        strict.append(len(rows))
        rows.append((e, "<=", 0.0))
    for j in range(n):
        if j not in support:
            e = np.zeros(n)
            e[j] = 1.0
            rows.append((e, "=", 0.0))
    for i in meas.j_plus:
        strict.append(len(rows))
        rows.append((phi[i], ">=", 0.0))
    for i in meas.j_minus:
        strict.append(len(rows))
        rows.append((phi[i], "<=", 0.0))
    for i in meas.j_zero:
        rows.append((phi[i], "=", 0.0))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        rows.append((e, "<=", 1.0))
        rows.append((e, ">=", -1.0))
    return lp.max_margin_feasibility(rows, strict, cap=1.0)


def membership_P(phi, y, s_plus, s_minus,
                 tol: TolerancePolicy | None = None) -> bool:
    """Whether some consistent signal realizes the signed support exactly.

    Decided at margin_tol resolution: the strict sign requirements must be
    satisfiable with a common margin of at least margin_tol after capping
    the signal's sup norm at 1.
    """
    pol = tol or DEFAULT_TOLERANCES
    meas = y if isinstance(y, SignMeasurement) else SignMeasurement.from_y(y)
    cert = _membership_margin(phi, meas, s_plus, s_minus, pol)
    return cert.t_star >= pol.margin_tol


def pattern_witness(phi, y, s_plus, s_minus,
                    tol: TolerancePolicy | None = None) -> np.ndarray | None:
    """A consistent signal realizing the signed support, or None.

    The returned point maximizes the common strict margin under a sup-norm
    cap of 1, so it sits well inside the open region whenever one exists.
    """
    pol = tol or DEFAULT_TOLERANCES
    meas = y if isinstance(y, SignMeasurement) else SignMeasurement.from_y(y)
    cert = _membership_margin(phi, meas, s_plus, s_minus, pol)
    if cert.t_star < pol.margin_tol or cert.witness is None:
        return None
    return cert.witness.copy()


def patterns_of_measurement(phi, meas: SignMeasurement, k: int,
                            tol: TolerancePolicy | None = None
                            ) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All nonempty signed supports of size at most k realized by
    consistent signals, in (size, support, signs) lexicographic order."""
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    n = phi.shape[1]
    out = []
    for size in range(1, k + 1):
        for supp in combinations(range(n), size):
            for signs in product((1, -1), repeat=size):
                sp = tuple(j for j, s in zip(supp, signs) if s == 1)
                sm = tuple(j for j, s in zip(supp, signs) if s == -1)
                if membership_P(phi, meas, sp, sm, pol):
                    out.append((sp, sm))
    return out


def _tpairs(meas: SignMeasurement):
    """All valid restriction pairs, smallest first, lexicographic within size."""
    jp = [int(i) for i in meas.j_plus]
    jm = [int(i) for i in meas.j_minus]
    for k1 in range(len(jp) + 1):
        for t1 in combinations(jp, k1):
            for k2 in range(len(jm) + 1):
                for t2 in combinations(jm, k2):
                    if len(t1) == len(jp) and len(t2) == len(jm):
                        continue
                    yield TPair(t1=t1, t2=t2)


def _tpair_stack_full_rank(phi, meas: SignMeasurement, pair: TPair,
                           support: tuple[int, ...], tol: TolerancePolicy) -> bool:
    keep_plus = [i for i in meas.j_plus if int(i) not in set(pair.t1)]
    keep_minus = [i for i in meas.j_minus if int(i) not in set(pair.t2)]
    rows = keep_plus + keep_minus + [int(i) for i in meas.j_zero]
    cols = list(support)
    if not cols:
        return False
    stacked = stack_rows([phi[np.ix_(np.array(rows, dtype=int),
                                     np.array(cols, dtype=int))]
                          if rows else np.zeros((0, len(cols)))],
                         cols=len(cols))
    return column_rank(stacked, tol) == len(cols)


def _pattern_pair_check(phi, meas: SignMeasurement, sp, sm,
                        tol: TolerancePolicy, require_all: bool,
                        y_label=None) -> tuple[bool, list[RrspEvidence]]:
    """Quantify dual witnesses over restriction pairs for one pattern.

    require_all=True demands a full-rank pair exists AND every full-rank
    pair admits a witness (the sufficiency shape); False succeeds on the
    first full-rank pair with a witness (the necessity shape).
    """
    support = tuple(sorted(set(sp) | set(sm)))
    evidence: list[RrspEvidence] = []
    found_full_rank = False
    for pair in _tpairs(meas):
        if not _tpair_stack_full_rank(phi, meas, pair, support, tol):
            continue
        found_full_rank = True
        pos_rows = [int(i) for i in meas.j_plus if int(i) not in set(pair.t1)]
        neg_rows = [int(i) for i in meas.j_minus if int(i) not in set(pair.t2)]
        zero_rows = sorted(set(pair.t1) | set(pair.t2))
        holds, witness, margin = _sign_witness_margin(
            phi, list(sp), list(sm), pos_rows, neg_rows, zero_rows, tol)
        ev = RrspEvidence(s_plus=tuple(sp), s_minus=tuple(sm), tpair=pair,
                          y=y_label, margin=margin, holds=holds,
                          note="witness" if holds else "no witness")
        if require_all:
            evidence.append(ev)
            if not holds:
                return False, evidence
        elif holds:
            return True, [ev]
    if require_all:
        if not found_full_rank:
            return False, [RrspEvidence(
                s_plus=tuple(sp), s_minus=tuple(sm), tpair=None, y=y_label,
                margin=-1.0, holds=False, note="no full-rank restriction pair")]
        return True, evidence
    return False, [RrspEvidence(
        s_plus=tuple(sp), s_minus=tuple(sm), tpair=None, y=y_label,
        margin=-1.0, holds=False,
        note="no full-rank restriction pair admits a witness")]


def rrsp_wrt_y(phi, y, k: int, variant: str,
               tol: TolerancePolicy | None = None
               ) -> tuple[bool, list[RrspEvidence]]:
    """Quantified dual-witness property for one fixed measurement.

    variant "sufficient": every realizable pattern of size <= k must have a
    full-rank restriction pair, and every full-rank pair must admit a
    witness; vacuously true when no pattern qualifies.  variant
    "necessary": some realizable pattern has some full-rank pair with a
    witness.  Refuses instances beyond the exhaustive-sweep budget.
    """
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    meas = y if isinstance(y, SignMeasurement) else SignMeasurement.from_y(y)
    if variant not in (SUFFICIENT, NECESSARY):
        raise ValueError(f"variant must be sufficient or necessary, got {variant!r}")
    n = phi.shape[1]
    signed = meas.j_plus.size + meas.j_minus.size
    if signed > WRT_Y_MAX_SIGNED_ROWS or n > WRT_Y_MAX_COLS:
        raise ValueError(
            f"instance beyond exhaustive budget: {signed} signed rows "
            f"(max {WRT_Y_MAX_SIGNED_ROWS}), {n} columns (max {WRT_Y_MAX_COLS})")
    patterns = patterns_of_measurement(phi, meas, k, pol)
    if variant == SUFFICIENT:
        all_evidence: list[RrspEvidence] = []
        for sp, sm in patterns:
            ok, ev = _pattern_pair_check(phi, meas, sp, sm, pol, require_all=True)
            all_evidence.extend(ev)
            if not ok:
                return False, all_evidence
        return True, all_evidence
    for sp, sm in patterns:
        ok, ev = _pattern_pair_check(phi, meas, sp, sm, pol, require_all=False)
        if ok:
            return True, ev
    return False, []


def rrsp_order_k(phi, k: int, variant: str,
                 tol: TolerancePolicy | None = None
                 ) -> tuple[bool, list[RrspEvidence]]:
    """Quantified dual-witness property over every k-sparse measurement.

    variant "sufficient": for every nonempty pattern of size <= k and every
    nonzero k-sparse-realizable measurement whose consistent signals can
    carry that pattern, the restriction-pair test must pass in the
    for-all shape.  variant "necessary": every such pattern needs at least
    one measurement and pair with a witness.  Refuses beyond the
    exhaustive budget (the measurement enumeration is exact for k <= 2).
    """
    pol = tol or DEFAULT_TOLERANCES
    phi = as_matrix(phi)
    m, n = phi.shape
    if variant not in (SUFFICIENT, NECESSARY):
        raise ValueError(f"variant must be sufficient or necessary, got {variant!r}")
    if n > ORDER_K_MAX_COLS or k > ORDER_K_MAX_SPARSITY or m > ORDER_K_MAX_ROWS:
        raise ValueError(
            f"instance beyond exhaustive budget: need columns <= {ORDER_K_MAX_COLS}, "
            f"sparsity <= {ORDER_K_MAX_SPARSITY}, rows <= {ORDER_K_MAX_ROWS}")

    from .oracle import enumerate_Yk  # deferred: oracle imports this module

    yk = enumerate_Yk(phi, k, tol=pol)
    nonzero = [meas for meas in yk.measurements if not meas.is_zero()]

    all_evidence: list[RrspEvidence] = []
    for size in range(1, k + 1):
        for supp in combinations(range(n), size):
            for signs in product((1, -1), repeat=size):
                sp = tuple(j for j, s in zip(supp, signs) if s == 1)
                sm = tuple(j for j, s in zip(supp, signs) if s == -1)
                carriers = [meas for meas in nonzero
                            if membership_P(phi, meas, sp, sm, pol)]
                if variant == SUFFICIENT:
                    for meas in carriers:
                        ok, ev = _pattern_pair_check(
                            phi, meas, sp, sm, pol, require_all=True,
                            y_label=tuple(int(v) for v in meas.y))
                        all_evidence.extend(ev)
                        if not ok:
                            return False, all_evidence
                else:
                    hit = False
                    for meas in carriers:
                        ok, ev = _pattern_pair_check(
                            phi, meas, sp, sm, pol, require_all=False,
                            y_label=tuple(int(v) for v in meas.y))
                        if ok:
                            all_evidence.extend(ev)
                            hit = True
                            break
                    if not hit:
                        return False, [RrspEvidence(
                            s_plus=sp, s_minus=sm, tpair=None, y=None,
                            margin=-1.0, holds=False,
                            note="no measurement carries this pattern with a witness")]
    return True, all_evidence
