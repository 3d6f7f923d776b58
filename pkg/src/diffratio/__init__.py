"""Monotonicity patterns, limit enclosures and shape-preserving operators
for ratios of sequences, with exact-rational and extended-precision modes.
"""

from ._kernels import BACKEND
from .errors import (
    DiffRatioError,
    DivisorVanishes,
    DomainMismatch,
    DomainNotAtZero,
    DomainTooShort,
    ExactModeRequired,
    HorizonTooSmall,
    HypothesisFailed,
    MixedMode,
    NoDominationCertificate,
    NonPositive,
    PatternMismatch,
    SignViolation,
    SignViolationKind,
    ToleranceAmbiguity,
)
from .seqcore import (
    APPROX_MODE,
    EXACT,
    EXACT_MODE,
    ComparisonPolicy,
    IntInterval,
    Seq,
    SignProfile,
    approx,
    delta,
    diff_ratio,
    load_seq,
    make_seq,
    map_values,
    ratio,
    reflect_index,
    reflect_values,
    save_seq,
    seq_from_dict,
    seq_to_dict,
    shift,
    sign_profile,
)
from .patterns import (
    Direction,
    Endpoint,
    IdentityReport,
    Monotonicity,
    PatternKind,
    PatternReport,
    VerificationResult,
    VerifyStatus,
    check_difference_identity,
    classify,
    discriminate_endpoints,
    predict_ratio_pattern,
    verify_ratio_pattern,
)
from .limits import (
    DEFAULT_HORIZON,
    LimitCase,
    LimitEstimate,
    check_tail_identity,
    estimate_limit,
    parse_generator,
    vanishing_tail_monotonicity,
    weighted_mean_ratio,
)
from .logops import (
    DominationCertificate,
    LogShape,
    LogShapeVerdict,
    TailTransform,
    apply_head_operator,
    apply_tail_operator,
    apply_tail_operator_finite,
    check_head_strict_concavity,
    check_head_tail_conjugation,
    check_semigroup,
    check_tail_shape_preservation,
    log_shape,
)
from .example import (
    DEFAULT_DPS,
    FamilyConfig,
    FigureTable,
    ThresholdTable,
    family_sequences,
    figure_table,
    growth_ratio,
    offset_curve,
    offset_ratio,
    offset_threshold,
    threshold_table,
    transition_check,
)
from .fuzz import FuzzReport, FuzzSpec, instance_stream, run_fuzz, simplest_between

__version__ = "0.1.0"

__all__ = [
    "APPROX_MODE",
    "BACKEND",
    "ComparisonPolicy",
    "DEFAULT_DPS",
    "DEFAULT_HORIZON",
    "DiffRatioError",
    "Direction",
    "DivisorVanishes",
    "DomainMismatch",
    "DomainNotAtZero",
    "DomainTooShort",
    "DominationCertificate",
    "EXACT",
    "EXACT_MODE",
    "Endpoint",
    "ExactModeRequired",
    "FamilyConfig",
    "FigureTable",
    "FuzzReport",
    "FuzzSpec",
    "HorizonTooSmall",
    "HypothesisFailed",
    "IdentityReport",
    "IntInterval",
    "LimitCase",
    "LimitEstimate",
    "LogShape",
    "LogShapeVerdict",
    "MixedMode",
    "Monotonicity",
    "NoDominationCertificate",
    "NonPositive",
    "PatternKind",
    "PatternMismatch",
    "PatternReport",
    "Seq",
    "SignProfile",
    "SignViolation",
    "SignViolationKind",
    "TailTransform",
    "ThresholdTable",
    "ToleranceAmbiguity",
    "VerificationResult",
    "VerifyStatus",
    "approx",
    "apply_head_operator",
    "apply_tail_operator",
    "apply_tail_operator_finite",
    "check_difference_identity",
    "check_head_strict_concavity",
    "check_head_tail_conjugation",
    "check_semigroup",
    "check_tail_identity",
    "check_tail_shape_preservation",
    "classify",
    "delta",
    "diff_ratio",
    "discriminate_endpoints",
    "estimate_limit",
    "family_sequences",
    "figure_table",
    "growth_ratio",
    "instance_stream",
    "load_seq",
    "log_shape",
    "make_seq",
    "map_values",
    "offset_curve",
    "offset_ratio",
    "offset_threshold",
    "parse_generator",
    "predict_ratio_pattern",
    "ratio",
    "reflect_index",
    "reflect_values",
    "run_fuzz",
    "save_seq",
    "seq_from_dict",
    "seq_to_dict",
    "shift",
    "sign_profile",
    "simplest_between",
    "threshold_table",
    "transition_check",
    "vanishing_tail_monotonicity",
    "verify_ratio_pattern",
    "weighted_mean_ratio",
    "__version__",
]
