"""One-bit compressive sensing: decoding, certificates, audits, oracles.

The package recovers sparse signals from sign-only measurements by an
exact linear-programming reformulation, certifies when the recovered
signal is the unique minimum-l1 solution, audits when the legacy sign
relaxation is trustworthy, and ships small brute-force oracles for
cross-checking every answer on desk-scale instances.
"""

from .certify import (
    NECESSARY,
    NONSTANDARD_PHIX,
    NONSTANDARD_X,
    STANDARD_COND,
    SUFFICIENT,
    CertReport,
    RrspEvidence,
    RrspWitness,
    TPair,
    assemble_H,
    membership_P,
    pattern_witness,
    patterns_of_measurement,
    relaxation_consistency,
    rrsp_at,
    rrsp_order_k,
    rrsp_wrt_y,
    uniqueness_certificate,
    witness_is_valid,
)
from .decoders import (
    BPEncoding,
    BPSolution,
    bp_output_consistent,
    encode_bp_lp,
    one_bit_bp,
    relaxation_gd,
)
from .experiment import (
    ExperimentConfig,
    TrialRecord,
    csv_lines,
    run_experiment,
    summarize,
    summary_json,
    write_csv,
    write_summary,
)
from .linalg import (
    DEFAULT_TOLERANCES,
    TolerancePolicy,
    column_rank,
    null_space_basis,
    rank_profile,
    stack_rows,
)
from .lp import (
    INFEASIBLE,
    OPTIMAL,
    STALLED,
    UNBOUNDED,
    LPProblem,
    LPSolution,
    MarginCertificate,
    alternative_optimum,
    max_margin_feasibility,
    solve,
    to_standard_form,
)
from .oracle import (
    AugmentationTrace,
    SparsestSet,
    YkResult,
    active_set_augmentation,
    enumerate_P,
    enumerate_Yk,
    l0_min,
    lp_vertex_oracle,
)
from .repro import ReproReport, repro_example
from .signmodel import (
    NONSTANDARD,
    STANDARD,
    ActiveSets,
    SignMeasurement,
    SignalVector,
    active_sets,
    is_consistent,
    measure,
    minimal_scaling,
    sign_nonstandard,
    sign_standard,
    signed_support,
)

__version__ = "0.1.0"

__all__ = [
    "active_set_augmentation",
    "active_sets",
    "ActiveSets",
    "alternative_optimum",
    "assemble_H",
    "AugmentationTrace",
    "bp_output_consistent",
    "BPEncoding",
    "BPSolution",
    "CertReport",
    "column_rank",
    "csv_lines",
    "DEFAULT_TOLERANCES",
    "encode_bp_lp",
    "enumerate_P",
    "enumerate_Yk",
    "ExperimentConfig",
    "INFEASIBLE",
    "is_consistent",
    "l0_min",
    "lp_vertex_oracle",
    "LPProblem",
    "LPSolution",
    "MarginCertificate",
    "max_margin_feasibility",
    "measure",
    "membership_P",
    "minimal_scaling",
    "NECESSARY",
    "NONSTANDARD",
    "NONSTANDARD_PHIX",
    "NONSTANDARD_X",
    "null_space_basis",
    "one_bit_bp",
    "OPTIMAL",
    "pattern_witness",
    "patterns_of_measurement",
    "rank_profile",
    "relaxation_consistency",
    "relaxation_gd",
    "repro_example",
    "ReproReport",
    "rrsp_at",
    "rrsp_order_k",
    "rrsp_wrt_y",
    "RrspEvidence",
    "RrspWitness",
    "run_experiment",
    "sign_nonstandard",
    "sign_standard",
    "SignalVector",
    "signed_support",
    "SignMeasurement",
    "solve",
    "SparsestSet",
    "stack_rows",
    "STALLED",
    "STANDARD",
    "STANDARD_COND",
    "SUFFICIENT",
    "summarize",
    "summary_json",
    "to_standard_form",
    "TolerancePolicy",
    "TPair",
    "TrialRecord",
    "UNBOUNDED",
    "uniqueness_certificate",
    "witness_is_valid",
    "write_csv",
    "write_summary",
    "YkResult",
]
