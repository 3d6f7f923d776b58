"""Log-convexity / log-concavity and the binomial-weighted sum operators.

For positive p, log-convexity means p_n^2 <= p_{n-1} p_{n+1} at every
interior index (equivalently: consecutive ratios p_n/p_{n+1} nonincreasing)
and log-concavity mirrors it; geometric sequences are exactly the both-ways
case. The two operator families,

    tail:  (T_k p)_n = sum_{j>=n} C(j-n+k-1, j-n) p_j
    head:  (H_k p)_n = sum_{j<=n} C(n-j+k-1, n-j) p_j

form semigroups in k, are exchanged by index reflection, and preserve the
respective log shapes; head sums of log-concave sequences are strictly
log-concave, which is where the strictness check below comes from.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from . import _kernels as K
from .errors import (
    DomainNotAtZero,
    DomainTooShort,
    ExactModeRequired,
    HorizonTooSmall,
    HypothesisFailed,
    NonPositive,
    NoDominationCertificate,
)
from .seqcore import (
    EXACT,
    EXACT_MODE,
    ComparisonPolicy,
    IntInterval,
    Seq,
    make_seq,
    reflect_index,
)
from .patterns import VerificationResult, VerifyStatus


class LogShape(enum.Enum):
    LOG_CONVEX = "log_convex"
    LOG_CONCAVE = "log_concave"
    BOTH = "both"
    STRICT_LOG_CONVEX = "strict_log_convex"
    STRICT_LOG_CONCAVE = "strict_log_concave"
    NEITHER = "neither"


_CONVEX_TAGS = {LogShape.LOG_CONVEX, LogShape.STRICT_LOG_CONVEX, LogShape.BOTH}
_CONCAVE_TAGS = {LogShape.LOG_CONCAVE, LogShape.STRICT_LOG_CONCAVE, LogShape.BOTH}


@dataclass(frozen=True)
class LogShapeVerdict:
    """Strongest applicable shape tag, with a witness index when the
    comparisons conflict (first index at which both shapes are ruled out)."""

    tag: LogShape
    witness: int | None

    @property
    def is_log_convex(self) -> bool:
        return self.tag in _CONVEX_TAGS

    @property
    def is_log_concave(self) -> bool:
        return self.tag in _CONCAVE_TAGS

    def to_json_dict(self) -> dict:
        return {"tag": self.tag.value, "witness": self.witness}


def log_shape(p: Seq, policy: ComparisonPolicy = EXACT) -> LogShapeVerdict:
    """Classify a strictly positive sequence by the sign pattern of
    p_n^2 - p_{n-1} p_{n+1} over interior indices."""
    for n, v in p.items():
        if policy.sign(v) <= 0:
            raise NonPositive(n)
    if len(p) < 3:
        raise DomainTooShort("log shape needs at least three points")
    vals = list(p.values)
    cmps = []
    for i in range(1, len(vals) - 1):
        cmps.append(policy.cmp(vals[i] * vals[i], vals[i - 1] * vals[i + 1]))

    convex_ok = all(c <= 0 for c in cmps)
    concave_ok = all(c >= 0 for c in cmps)
    if convex_ok and concave_ok:
        return LogShapeVerdict(LogShape.BOTH, None)
    if convex_ok:
        tag = LogShape.STRICT_LOG_CONVEX if all(c < 0 for c in cmps) else LogShape.LOG_CONVEX
        return LogShapeVerdict(tag, None)
    if concave_ok:
        tag = LogShape.STRICT_LOG_CONCAVE if all(c > 0 for c in cmps) else LogShape.LOG_CONCAVE
        return LogShapeVerdict(tag, None)
    # neither: find where the second shape died
    seen_pos = seen_neg = None
    witness = None
    for i, c in enumerate(cmps):
        if c > 0 and seen_pos is None:
            seen_pos = i
        if c < 0 and seen_neg is None:
            seen_neg = i
        if seen_pos is not None and seen_neg is not None:
            witness = p.domain.a + 1 + max(seen_pos, seen_neg)
            break
    return LogShapeVerdict(LogShape.NEITHER, witness)


def _weights(k: int, length: int) -> list:
    """Binomial weights w[d] = C(d+k-1, d) for d = 0..length-1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    return [math.comb(d + k - 1, d) for d in range(length)]


def apply_head_operator(p: Seq, k: int) -> Seq:
    """Head sums (H_k p)_n = sum_{j=0}^n C(n-j+k-1, n-j) p_j on [0, b].

    k = 1 gives plain partial sums.
    """
    if p.domain.a != 0:
        raise DomainNotAtZero(f"head operator needs domain at 0, got {p.domain}")
    w = _weights(k, len(p))
    return Seq(p.domain, tuple(K.conv_head(list(p.values), w)), p.mode)


def apply_tail_operator_finite(
    p: Seq, k: int, window: IntInterval | None = None
) -> Seq:
    """Tail sums of a finite-support sequence (zero outside its domain).

    Exact: every sum is finite, so no truncation and no remainder. The
    window may extend below p's domain (sums of everything) but not above
    its end, where the result is identically zero anyway.
    """
    if window is None:
        window = p.domain
    w = _weights(k, p.domain.b - min(window.a, p.domain.a) + 1)
    pv = list(p.values)
    inside = K.conv_tail(pv, w)
    vals = []
    for n in window:
        if n > p.domain.b:
            vals.append(pv[0] * 0)
        elif n >= p.domain.a:
            vals.append(inside[n - p.domain.a])
        else:
            vals.append(K.dot_slice(pv, w, p.domain.a - n))
    return Seq(window, tuple(vals), p.mode)


@dataclass(frozen=True)
class DominationCertificate:
    """Caller-asserted geometric bound p_{j+1} <= ratio * p_j for j >= start.

    Validated on the observable range before use; beyond the horizon it is
    an assumption and is recorded as such wherever it is relied on.
    """

    start: int
    ratio: object

    def __post_init__(self):
        if not (0 < self.ratio < 1):
            raise NoDominationCertificate(
                f"domination ratio must be in (0, 1), got {self.ratio}"
            )


@dataclass(frozen=True)
class TailTransform:
    """Truncated tail sums plus per-index remainder bounds."""

    seq: Seq
    remainder_bounds: tuple
    horizon: int
    certificate: DominationCertificate

    def to_json_dict(self) -> dict:
        from .seqcore import seq_to_dict

        d = seq_to_dict(self.seq)
        d["remainder_bounds"] = [str(b) for b in self.remainder_bounds]
        d["horizon"] = self.horizon
        return d


def _geometric_tail_bound(p_h, q, m: int, k: int):
    """Upper bound on sum_{i>=1} C(m+i+k-1, m+i) q^i * p_h.

    Terms are summed exactly until their step ratio drops below
    q' = (1+q)/2 < 1, then capped by the geometric tail t * q'/(1 - q').
    """
    qp = (1 + q) / 2
    total = None
    t = q * math.comb(m + k, m + 1)  # i = 1 term, divided by p_h
    i = 1
    while True:
        total = t if total is None else total + t
        step = q * (m + i + k) / (m + i + 1)
        if step <= qp:
            total = total + t * qp / (1 - qp)
            break
        t = t * step
        i += 1
    return p_h * total


def apply_tail_operator(
    p_gen: Callable,
    k: int,
    window: IntInterval,
    horizon: int,
    policy: ComparisonPolicy = EXACT,
    certificate: DominationCertificate | None = None,
) -> TailTransform:
    """Tail sums of a generated sequence, truncated at ``horizon``.

    Refuses to truncate without a domination certificate; the certificate
    is checked on [start, horizon] and the remainder beyond the horizon is
    bounded by the certified geometric tail, one bound per output index.
    """
    if certificate is None:
        raise NoDominationCertificate(
            "truncating an infinite tail sum needs a domination certificate"
        )
    if horizon < window.b:
        raise HorizonTooSmall(f"horizon {horizon} below window end {window.b}")
    if certificate.start > horizon:
        raise NoDominationCertificate(
            "certificate start beyond the horizon leaves the tail unchecked"
        )
    if window.is_empty:
        raise DomainTooShort("empty output window")
    values = {n: p_gen(n) for n in range(min(window.a, certificate.start), horizon + 1)}
    for n, v in values.items():
        if policy.sign(v) <= 0:
            raise NonPositive(n)
    q = certificate.ratio
    for j in range(max(certificate.start, min(values)), horizon):
        if values[j + 1] > q * values[j]:
            raise NoDominationCertificate(
                f"claimed ratio {q} violated at index {j + 1}"
            )

    p_vals = [values[n] for n in range(window.a, horizon + 1)]
    p_win = Seq(IntInterval(window.a, horizon), tuple(p_vals), _mode_of_values(p_vals))
    truncated = apply_tail_operator_finite(p_win, k, window)
    p_h = values[horizon]
    bounds = tuple(_geometric_tail_bound(p_h, q, horizon - n, k) for n in window)
    return TailTransform(truncated, bounds, horizon, certificate)


def _mode_of_values(vals):
    from .seqcore import scalar_mode

    return scalar_mode(vals[0])


def check_semigroup(
    p: Seq, k1: int, k2: int, kind: str, policy: ComparisonPolicy = EXACT
) -> bool:
    """Exact semigroup identity: applying k1 after k2 equals k1 + k2.

    ``kind`` is "head" or "tail"; tail uses the finite-support reading of
    p so every sum is exact.
    """
    if policy.mode != EXACT_MODE or p.mode != EXACT_MODE:
        raise ExactModeRequired("semigroup checks are exact-only")
    if kind == "head":
        two_step = apply_head_operator(apply_head_operator(p, k2), k1)
        direct = apply_head_operator(p, k1 + k2)
    elif kind == "tail":
        inner = apply_tail_operator_finite(p, k2)
        two_step = apply_tail_operator_finite(inner, k1)
        direct = apply_tail_operator_finite(p, k1 + k2)
    else:
        raise ValueError(f"unknown operator kind {kind!r}")
    return two_step.values == direct.values


def check_head_tail_conjugation(
    p: Seq, k: int, policy: ComparisonPolicy = EXACT
) -> bool:
    """Head sums equal reflected tail sums of the reflection, exactly.

    p lives on [0, b] and is read as zero elsewhere.
    """
    if policy.mode != EXACT_MODE or p.mode != EXACT_MODE:
        raise ExactModeRequired("conjugation checks are exact-only")
    head = apply_head_operator(p, k)
    refl = reflect_index(p)
    tail = apply_tail_operator_finite(refl, k, refl.domain)
    back = reflect_index(tail)
    return head.values == back.values


def _shape_matches(expected: LogShapeVerdict, got: LogShapeVerdict) -> bool:
    if expected.is_log_convex and got.is_log_convex:
        return True
    if expected.is_log_concave and got.is_log_concave:
        return True
    return False


def check_tail_shape_preservation(
    p_gen: Callable,
    k: int,
    window: IntInterval,
    horizon: int,
    policy: ComparisonPolicy = EXACT,
    certificate: DominationCertificate | None = None,
) -> VerificationResult:
    """Verify that tail sums preserve the log shape of the input.

    Comparisons on the transformed values are certified against the
    truncation remainders: the true value lies in [v, v + bound], so a
    shape comparison is only accepted when it holds for every choice in
    those brackets; otherwise the result is indeterminate at that index.
    """
    build = apply_tail_operator(p_gen, k, window, horizon, policy, certificate)
    p_win = make_seq(window.a, [p_gen(n) for n in window])
    p_verdict = log_shape(p_win, policy)
    if p_verdict.tag == LogShape.NEITHER:
        raise HypothesisFailed("input sequence is neither log-convex nor log-concave")

    f = build.seq
    bounds = build.remainder_bounds
    vals = list(f.values)
    if len(vals) < 3:
        raise DomainTooShort("shape check needs at least three transformed points")

    want_convex = p_verdict.is_log_convex
    want_concave = p_verdict.is_log_concave
    witness = None
    for i in range(1, len(vals) - 1):
        lo_sq = vals[i] * vals[i]
        hi_sq = (vals[i] + bounds[i]) * (vals[i] + bounds[i])
        lo_pr = vals[i - 1] * vals[i + 1]
        hi_pr = (vals[i - 1] + bounds[i - 1]) * (vals[i + 1] + bounds[i + 1])
        if want_convex and not policy.le(hi_sq, lo_pr):
            want_convex = False
        if want_concave and not policy.le(hi_pr, lo_sq):
            want_concave = False
        if not (want_convex or want_concave):
            witness = window.a + i
            break

    if want_convex or want_concave:
        status, reason = VerifyStatus.CONSISTENT, None
    else:
        # cannot separate a genuine failure from truncation slack
        status = VerifyStatus.INDETERMINATE
        reason = "shape not certifiable within the truncation remainders"
    return VerificationResult(
        status, reason, (p_verdict.tag,), None, None, None,
        (witness,) if witness is not None else (), policy.mode, 0,
    )


def check_head_strict_concavity(
    p: Seq, k: int, policy: ComparisonPolicy = EXACT
) -> VerificationResult:
    """Verify that head sums of a log-concave positive sequence are
    strictly log-concave, and check the base inequality at index 1:

        g_0 g_1 (r_1 - r_0) > p_1^2 - p_0 p_2 >= 0

    with f the plain partial sums, g its shift, r = f/g.
    """
    verdict = log_shape(p, policy)
    if not verdict.is_log_concave:
        raise HypothesisFailed("input sequence is not log-concave")
    transformed = apply_head_operator(p, k)
    t_verdict = log_shape(transformed, policy)

    sums = apply_head_operator(p, 1)
    f0, f1, f2 = sums.values[0], sums.values[1], sums.values[2]
    # g_0 g_1 (r_1 - r_0) with g_n = f_{n+1} collapses to f_1^2 - f_0 f_2
    base_lhs = f1 * f1 - f0 * f2
    base_rhs = p.values[1] * p.values[1] - p.values[0] * p.values[2]
    base_ok = (
        policy.cmp(base_lhs, base_rhs) > 0 and policy.sign(base_rhs) >= 0
    )

    ok = t_verdict.tag == LogShape.STRICT_LOG_CONCAVE and base_ok
    return VerificationResult(
        VerifyStatus.CONSISTENT if ok else VerifyStatus.VIOLATED,
        None if ok else "strict concavity or base inequality failed",
        (LogShape.STRICT_LOG_CONCAVE,),
        None, None, None,
        () if ok else (p.domain.a + 1,),
        policy.mode,
        0,
    )
