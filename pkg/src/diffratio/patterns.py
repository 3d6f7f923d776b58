"""Monotonicity-pattern classification for sequence ratios.

The central fact being exercised: if rho = (delta f)/(delta g) is weakly
monotone and g, delta g keep constant nonzero signs, then r = f/g is
piecewise monotone with at most one turn, and the turn direction is a pure
function of rho's direction and the sign of g * delta g:

    rho nondecreasing, g*dg > 0  ->  r falls then rises   (DownUp)
    rho nonincreasing, g*dg > 0  ->  r rises then falls   (UpDown)
    rho nondecreasing, g*dg < 0  ->  r rises then falls   (UpDown)
    rho nonincreasing, g*dg < 0  ->  r falls then rises   (DownUp)

Everything here works on finite windows with explicit comparison policies;
degenerate monotone sequences count as both turn shapes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _kernels as K
from .errors import (
    DivisorVanishes,
    DomainMismatch,
    DomainTooShort,
    PatternMismatch,
    SignViolation,
)
from .seqcore import (
    APPROX_MODE,
    EXACT,
    EXACT_MODE,
    ComparisonPolicy,
    IntInterval,
    Seq,
    SignProfile,
    delta,
    diff_ratio,
    ratio,
    sign_profile,
)


class PatternKind(enum.Enum):
    DOWN_UP = "down_up"
    UP_DOWN = "up_down"
    MONOTONE = "monotone"
    OTHER = "other"


class Monotonicity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NONDECREASING = "nondecreasing"
    NONINCREASING = "nonincreasing"
    CONSTANT = "constant"


class Direction(enum.Enum):
    UP = "up"      # nondecreasing
    DOWN = "down"  # nonincreasing


class Endpoint(enum.Enum):
    AT_LEFT_END = "at_left_end"
    AT_RIGHT_END = "at_right_end"
    INTERIOR = "interior"


class VerifyStatus(enum.Enum):
    CONSISTENT = "consistent"
    VIOLATED = "violated"
    HYPOTHESIS_FAILED = "hypothesis_failed"
    INDETERMINATE = "indeterminate"


_STRONGEST = (
    Monotonicity.CONSTANT,
    Monotonicity.INCREASING,
    Monotonicity.DECREASING,
    Monotonicity.NONDECREASING,
    Monotonicity.NONINCREASING,
)


@dataclass(frozen=True)
class PatternReport:
    """Result of classifying one sequence.

    For the two turn shapes, k is the last index whose backward difference
    keeps the entering sign (weakly), ell the last index where it does so
    strictly, and [ell, k] the flat stretch between the strict phases; the
    sequence is constant there. For monotone sequences, ``monotonicity`` is
    the strongest applicable tag and ``tags`` the full set.
    """

    kind: PatternKind
    monotonicity: Monotonicity | None
    tags: frozenset
    k: int | None
    ell: int | None
    plateau: IntInterval | None
    eps_band_hits: int

    def phases_closed(self, domain: IntInterval) -> tuple:
        """Phase split with the turn index shared: ([a,k], [k,b])."""
        if self.k is None:
            raise PatternMismatch("no turn index on this report")
        return (IntInterval(domain.a, self.k), IntInterval(self.k, domain.b))

    def phases_half_open(self, domain: IntInterval) -> tuple:
        """Phase split with disjoint halves: ([a,k], [k+1,b])."""
        if self.k is None:
            raise PatternMismatch("no turn index on this report")
        return (IntInterval(domain.a, self.k), IntInterval(self.k + 1, domain.b))

    def to_json_dict(self) -> dict:
        return {
            "pattern": self.kind.value,
            "monotonicity": self.monotonicity.value if self.monotonicity else None,
            "tags": sorted(t.value for t in self.tags),
            "k": self.k,
            "ell": self.ell,
            "plateau": [self.plateau.a, self.plateau.b] if self.plateau else None,
            "eps_band_hits": self.eps_band_hits,
        }


def _monotone_tags(signs: list) -> frozenset:
    tags = set()
    if all(s >= 0 for s in signs):
        tags.add(Monotonicity.NONDECREASING)
        if all(s > 0 for s in signs):
            tags.add(Monotonicity.INCREASING)
    if all(s <= 0 for s in signs):
        tags.add(Monotonicity.NONINCREASING)
        if all(s < 0 for s in signs):
            tags.add(Monotonicity.DECREASING)
    if all(s == 0 for s in signs):
        tags.add(Monotonicity.CONSTANT)
    return frozenset(tags)


def _three_blocks(signs: list, neg: int, pos: int) -> tuple | None:
    """Match the sign string against neg-block, zero-block, pos-block.

    Returns (last index of strict block, last index of flat block) as
    offsets into ``signs``, or None if the shape does not decompose.
    """
    i = 0
    n = len(signs)
    while i < n and signs[i] == neg:
        i += 1
    strict_end = i - 1
    while i < n and signs[i] == 0:
        i += 1
    flat_end = i - 1
    while i < n and signs[i] == pos:
        i += 1
    if i != n:
        return None
    return strict_end, flat_end


def classify(s: Seq, policy: ComparisonPolicy = EXACT) -> PatternReport:
    """Classify a sequence as monotone, one of the two turn shapes, or other.

    A turn shape is reported only when the backward-difference signs form
    three clean blocks (strict entering phase, flat phase, strict leaving
    phase); that is exactly the shape the main result guarantees, and it is
    what makes ell, k and the plateau well defined. In approx mode,
    differences inside the eps band count as zero and their number is
    reported so fragile classifications are visible.
    """
    if len(s) == 1:
        return PatternReport(
            PatternKind.MONOTONE, Monotonicity.CONSTANT,
            frozenset({Monotonicity.CONSTANT}), None, None, None, 0,
        )
    d = K.pairwise_diff(list(s.values))
    signs = K.sign_list(d, policy.eps)
    hits = signs.count(0) if policy.mode == APPROX_MODE else 0
    a = s.domain.a

    tags = _monotone_tags(signs)
    if tags:
        strongest = next(t for t in _STRONGEST if t in tags)
        return PatternReport(
            PatternKind.MONOTONE, strongest, tags, None, None, None, hits
        )

    down_up = _three_blocks(signs, -1, 1)
    if down_up is not None:
        strict_end, flat_end = down_up
        ell = a + 1 + strict_end
        k = a + 1 + flat_end
        return PatternReport(
            PatternKind.DOWN_UP, None, frozenset(), k, ell,
            IntInterval(ell, k), hits,
        )
    up_down = _three_blocks(signs, 1, -1)
    if up_down is not None:
        strict_end, flat_end = up_down
        ell = a + 1 + strict_end
        k = a + 1 + flat_end
        return PatternReport(
            PatternKind.UP_DOWN, None, frozenset(), k, ell,
            IntInterval(ell, k), hits,
        )
    return PatternReport(PatternKind.OTHER, None, frozenset(), None, None, None, hits)


def predict_ratio_pattern(direction: Direction, g_dg_sign: int) -> PatternKind:
    """Predicted turn shape of f/g from rho's direction and sign(g * dg)."""
    if g_dg_sign not in (1, -1):
        raise ValueError("g_dg_sign must be +1 or -1")
    if direction == Direction.UP:
        return PatternKind.DOWN_UP if g_dg_sign > 0 else PatternKind.UP_DOWN
    return PatternKind.UP_DOWN if g_dg_sign > 0 else PatternKind.DOWN_UP


def directions_of(report: PatternReport) -> tuple:
    """Weak monotone directions a classified sequence supports."""
    dirs = []
    if Monotonicity.NONDECREASING in report.tags:
        dirs.append(Direction.UP)
    if Monotonicity.NONINCREASING in report.tags:
        dirs.append(Direction.DOWN)
    return tuple(dirs)


@dataclass(frozen=True)
class VerificationResult:
    status: VerifyStatus
    reason: str | None
    predicted: tuple
    observed: PatternReport | None
    rho_report: PatternReport | None
    profile: SignProfile | None
    witnesses: tuple
    mode: str
    eps_band_hits: int

    @property
    def hypotheses_hold(self) -> bool:
        return self.status != VerifyStatus.HYPOTHESIS_FAILED

    def to_json_dict(self) -> dict:
        return {
            "status": self.status.value,
            "reason": self.reason,
            "predicted": [p.value for p in self.predicted],
            "observed": self.observed.to_json_dict() if self.observed else None,
            "witnesses": list(self.witnesses),
            "mode": self.mode,
            "eps_band_hits": self.eps_band_hits,
        }


def _observed_matches(pred: PatternKind, obs: PatternReport) -> bool:
    # Any monotone sequence is a degenerate case of either turn shape
    # (turn at an endpoint), so only the opposite turn or a shapeless
    # sign string contradicts a prediction.
    return obs.kind == pred or obs.kind == PatternKind.MONOTONE


def _sign_flip_witnesses(r: Seq, policy: ComparisonPolicy) -> tuple:
    d = K.pairwise_diff(list(r.values))
    signs = K.sign_list(d, policy.eps)
    a = r.domain.a + 1
    out = []
    for i in range(1, len(signs)):
        if signs[i] != 0 and signs[i - 1] != 0 and signs[i] != signs[i - 1]:
            out.append(a + i)
    return tuple(out)


def verify_ratio_pattern(
    f: Seq, g: Seq, policy: ComparisonPolicy = EXACT
) -> VerificationResult:
    """Check the observed shape of f/g against the predicted one.

    Hypothesis failures (g or delta g vanishing or changing sign, rho not
    weakly monotone) make the rule inapplicable and are reported as such,
    never as violations. A violation -- which no valid input can produce --
    carries the indices where the difference signs of r flip.
    """
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    if len(f) < 2:
        raise DomainTooShort("need at least two points")
    mode = policy.mode

    def hypothesis_failure(reason, rho_rep=None, profile=None):
        return VerificationResult(
            VerifyStatus.HYPOTHESIS_FAILED, reason, (), None, rho_rep,
            profile, (), mode, 0,
        )

    try:
        profile = sign_profile(g, policy)
    except SignViolation as exc:
        return hypothesis_failure(str(exc))

    rho = diff_ratio(f, g, policy)
    rho_report = classify(rho, policy)
    dirs = directions_of(rho_report)
    if not dirs:
        return hypothesis_failure(
            "difference ratio is not weakly monotone", rho_report, profile
        )

    predicted = tuple(
        predict_ratio_pattern(d, profile.product) for d in dirs
    )
    r = ratio(f, g, policy)
    observed = classify(r, policy)
    hits = observed.eps_band_hits + rho_report.eps_band_hits

    if any(_observed_matches(p, observed) for p in predicted):
        return VerificationResult(
            VerifyStatus.CONSISTENT, None, predicted, observed, rho_report,
            profile, (), mode, hits,
        )
    return VerificationResult(
        VerifyStatus.VIOLATED,
        "observed pattern contradicts prediction",
        predicted, observed, rho_report, profile,
        _sign_flip_witnesses(r, policy), mode, hits,
    )


def discriminate_endpoints(
    r: Seq, pattern: PatternKind, policy: ComparisonPolicy = EXACT
) -> Endpoint:
    """Locate the turn of a turn-shaped sequence from its two end steps.

    For a falling-then-rising sequence, a strictly rising first step means
    the falling phase is empty (turn at the left end) and a strictly
    falling last step means the rising phase is empty (turn at the right
    end); otherwise the turn is interior. Mirrored for the other shape.
    """
    if pattern not in (PatternKind.DOWN_UP, PatternKind.UP_DOWN):
        raise PatternMismatch("endpoint discrimination needs a turn shape")
    if len(r) < 2:
        raise DomainTooShort("need at least two points")
    obs = classify(r, policy)
    if not _observed_matches(pattern, obs):
        raise PatternMismatch(f"sequence is {obs.kind.value}, not {pattern.value}")
    first = policy.cmp(r.values[1], r.values[0])
    last = policy.cmp(r.values[-2], r.values[-1])
    if pattern == PatternKind.DOWN_UP:
        if first > 0:
            return Endpoint.AT_LEFT_END
        if last > 0:
            return Endpoint.AT_RIGHT_END
    else:
        if first < 0:
            return Endpoint.AT_LEFT_END
        if last < 0:
            return Endpoint.AT_RIGHT_END
    return Endpoint.INTERIOR


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of evaluating equivalent expressions side by side."""

    expressions: tuple
    residual: object
    exact_equal: bool | None

    def to_json_dict(self) -> dict:
        return {
            "expressions": [str(e) for e in self.expressions],
            "residual": str(self.residual),
            "exact_equal": self.exact_equal,
        }


def check_difference_identity(
    f: Seq, g: Seq, n: int, policy: ComparisonPolicy = EXACT
) -> IdentityReport:
    """Evaluate the three equivalent forms of the weighted ratio difference
    at index n:

        g_n g_{n-1} (r_n - r_{n-1})
        (rho_n - r_n) g_n (g_n - g_{n-1})
        (rho_n - r_{n-1}) g_{n-1} (g_n - g_{n-1})

    In exact mode the triple equality is certified; in approx mode the
    maximum pairwise discrepancy is reported.
    """
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    if n not in f.domain or n == f.domain.a:
        raise DomainTooShort(f"index {n} has no predecessor in {f.domain}")
    window = IntInterval(n - 1, n)
    fw, gw = f.restrict(window), g.restrict(window)
    for point, val in gw.items():
        if policy.is_zero(val):
            raise DivisorVanishes(point)
    dg = gw.values[1] - gw.values[0]
    if policy.is_zero(dg):
        raise DivisorVanishes(n)
    lhs_list, mid_list, rhs_list = K.identity_rows(list(fw.values), list(gw.values))
    exprs = (lhs_list[0], mid_list[0], rhs_list[0])
    diffs = [abs(exprs[i] - exprs[j]) for i in range(3) for j in range(i + 1, 3)]
    residual = max(diffs)
    exact_equal = (residual == 0) if policy.mode == EXACT_MODE else None
    return IdentityReport(exprs, residual, exact_equal)
