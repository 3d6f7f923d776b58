"""Limit transfer from difference ratios to plain ratios on finite windows.

The driving facts:

* Between any two indices, (f_n - f_m)/(g_n - g_m) is a |delta g|-weighted
  mean of the difference ratio over (m, n], hence lies between its minimum
  and maximum there.
* When |g| grows without bound, or when f and g both tend to 0, the ratio
  f/g inherits the limit of the difference ratio; in the vanishing case it
  also inherits its monotonicity.

Everything is computed on explicit finite windows. The limit hypotheses
themselves (unbounded g, vanishing tails, existence of the limit) cannot be
certified from finitely many values, so they are taken as caller assertions
and echoed in the result.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import _kernels as K
from .errors import (
    DomainMismatch,
    DomainTooShort,
    HorizonTooSmall,
    HypothesisFailed,
    MixedMode,
)
from .seqcore import (
    APPROX_MODE,
    EXACT,
    EXACT_MODE,
    ComparisonPolicy,
    IntInterval,
    Seq,
    delta,
    diff_ratio,
    make_seq,
    ratio,
    sign_profile,
)
from .patterns import (
    IdentityReport,
    Monotonicity,
    VerificationResult,
    VerifyStatus,
    classify,
)

DEFAULT_HORIZON = {EXACT_MODE: 64, APPROX_MODE: 1024}

# Safety factor on the extrapolated tail variation; covers geometric decay
# exactly and smooth power-law decay with room to spare.
_TAIL_SAFETY = 3
_DECAY_CLAMP = Fraction(19, 20)  # no margin when variations decay slower


class LimitCase(enum.Enum):
    G_UNBOUNDED = "g_unbounded"
    BOTH_VANISH = "both_vanish"


def _sign_policy(policy: ComparisonPolicy) -> ComparisonPolicy:
    # Hypothesis sign checks use true trichotomy: a vanishing tail drops
    # below any absolute eps while staying genuinely one-signed, and the
    # stored floating values carry their correct signs.
    if policy.eps == 0:
        return policy
    return ComparisonPolicy(policy.mode, 0)


def weighted_mean_ratio(
    f: Seq, g: Seq, m: int, n: int, policy: ComparisonPolicy = EXACT
):
    """(f_n - f_m)/(g_n - g_m), computed two ways.

    The difference-quotient form and the |delta g|-weighted mean of the
    difference ratio over (m, n] must agree; both are evaluated and their
    agreement is checked before the value is returned.
    """
    value, _, _ = _mean_with_enclosure(f, g, m, n, policy)
    return value


def _mean_with_enclosure(f, g, m, n, policy):
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    if not (m in f.domain and n in f.domain and m < n):
        raise DomainTooShort(f"need m < n inside {f.domain}, got {m}, {n}")
    window = IntInterval(m, n)
    fw, gw = f.restrict(window), g.restrict(window)
    sign_profile(gw, _sign_policy(policy))  # constant signs, one-signed weights
    dg = K.pairwise_diff(list(gw.values))
    rho = K.pointwise_div(K.pairwise_diff(list(fw.values)), dg)

    denom = gw.values[-1] - gw.values[0]
    quotient = (fw.values[-1] - fw.values[0]) / denom

    weights = [abs(d) for d in dg]
    mean = K.dot_slice(rho, weights, 0) / sum(weights)

    gap = abs(quotient - mean)
    if policy.mode == EXACT_MODE:
        if gap != 0:
            raise ArithmeticError("weighted-mean forms disagree")  # unreachable
    else:
        scale = max(abs(quotient), abs(mean), 1)
        if gap > _approx_gap_tol(quotient) * scale:
            raise ArithmeticError(f"weighted-mean forms disagree by {gap}")
    lo, hi = K.minmax(rho)
    return quotient, lo, hi


def _approx_gap_tol(sample):
    if isinstance(sample, mpmath.mpf):
        return mpmath.mpf(10) ** (8 - mpmath.mp.dps)
    return 1e-8


@dataclass(frozen=True)
class LimitEstimate:
    """Finite-window limit estimate with a bracketing interval.

    ``value`` is the between-windows mean over the tightest tail window
    used, and always lies inside ``window_enclosure`` = [min, max] of the
    difference ratio there. ``enclosure`` widens that by a margin
    extrapolated from the decay of the difference ratio's variation, so
    that (under the recorded assumptions) it also brackets the limit.
    ``margin`` is None when the variations show no decay; ``diverging``
    flags a heuristic diagnosis of an infinite limit.
    """

    value: object
    enclosure: tuple
    window_enclosure: tuple
    margin: object | None
    horizon: int
    window_start: int
    case: LimitCase
    mode: str
    assumptions: tuple
    diverging: str | None
    consistency_residual: object | None = None
    consistency_bound: object | None = None

    def to_json_dict(self) -> dict:
        return {
            "value": str(self.value),
            "enclosure": {"lo": str(self.enclosure[0]), "hi": str(self.enclosure[1])},
            "window_enclosure": {
                "lo": str(self.window_enclosure[0]),
                "hi": str(self.window_enclosure[1]),
            },
            "margin": None if self.margin is None else str(self.margin),
            "horizon": self.horizon,
            "window_start": self.window_start,
            "case": self.case.value,
            "mode": self.mode,
            "assumptions": list(self.assumptions),
            "diverging": self.diverging,
        }


def _build_window(gen: Callable, start: int, horizon: int) -> Seq:
    return make_seq(start, [gen(n) for n in range(start, horizon + 1)])


def _tail_margin(rho: Seq, policy):
    """Extrapolated bound on the variation of rho beyond the horizon.

    Splits the window tail into octave blocks of length span//8, reads the
    decay rate lam of the block variations, and returns
    _TAIL_SAFETY * TV_last * lam/(1-lam). None when no decay is in
    evidence (lam beyond the clamp, or growth).
    """
    h = rho.domain.b
    span = len(rho) - 1
    q = max(1, span // 8)
    if h - 2 * q < rho.domain.a:
        return None, "window too short to estimate tail decay"
    tv_last = abs(rho[h] - rho[h - q])
    tv_prev = abs(rho[h - q] - rho[h - 2 * q])
    if tv_last == 0 and tv_prev == 0:
        return 0 * rho[h], None
    if tv_prev == 0 or tv_last >= tv_prev:
        return None, "difference-ratio variation is not decaying"
    lam = tv_last / tv_prev
    clamp = _DECAY_CLAMP if isinstance(lam, Fraction) else float(_DECAY_CLAMP)
    if lam >= clamp:
        return None, "difference-ratio variation decays too slowly to bound"
    margin = _TAIL_SAFETY * tv_last * lam / (1 - lam)
    return margin, None


def _diverging_direction(rho: Seq, report, policy) -> str | None:
    # Heuristic only: monotone rho whose block variations grow and whose
    # last value dwarfs the mid-window one is flagged as diverging.
    tags = report.tags
    if Monotonicity.NONDECREASING not in tags and Monotonicity.NONINCREASING not in tags:
        return None
    h = rho.domain.b
    mid = rho[(rho.domain.a + h) // 2]
    last = rho[h]
    if abs(last) < 2 * abs(mid) + 1:
        return None
    span = len(rho) - 1
    q = max(1, span // 8)
    if h - 2 * q < rho.domain.a:
        return None
    tv_last = abs(rho[h] - rho[h - q])
    tv_prev = abs(rho[h - q] - rho[h - 2 * q])
    if tv_last < tv_prev:
        return None
    return "+inf" if Monotonicity.NONDECREASING in tags else "-inf"


def estimate_limit(
    f_gen: Callable,
    g_gen: Callable,
    case: LimitCase,
    horizon: int | None = None,
    policy: ComparisonPolicy = EXACT,
    start: int = 0,
) -> LimitEstimate:
    """Estimate lim f/g from values on [start, horizon].

    The unbounded-g and vanishing-tails hypotheses distinguish the two
    cases but are caller assertions; they are echoed in ``assumptions``.
    In the vanishing case the direct ratio at the window start is compared
    against the between-windows mean and the residual is checked against
    its triangle-inequality bound.
    """
    if horizon is None:
        horizon = DEFAULT_HORIZON[policy.mode]
    if horizon - start < 3:
        raise HorizonTooSmall(f"horizon {horizon} leaves fewer than 4 points")
    f = _build_window(f_gen, start, horizon)
    g = _build_window(g_gen, start, horizon)
    if f.mode != g.mode:
        raise MixedMode("generators disagree on scalar mode")
    if f.mode != policy.mode:
        raise MixedMode(
            f"{f.mode} generators under a {policy.mode} policy"
        )
    sign_profile(g, _sign_policy(policy))
    rho = diff_ratio(f, g, _sign_policy(policy))
    rho_report = classify(rho, policy)

    assumptions = [
        "limit of the difference ratio exists",
        "tail variation keeps decaying at most at the observed rate",
    ]
    if case == LimitCase.G_UNBOUNDED:
        assumptions.insert(0, "|g| grows without bound")
    else:
        assumptions.insert(0, "f and g both tend to zero")

    # Dyadic schedule of window starts; keep the tightest enclosure.
    best = None
    m = start
    while True:
        window_len = horizon - m
        lo, hi = K.minmax(
            [rho[j] for j in range(m + 1, horizon + 1)]
        )
        width = hi - lo
        if best is None or width < best[0]:
            value = (f[horizon] - f[m]) / (g[horizon] - g[m])
            best = (width, m, lo, hi, value)
        next_len = window_len // 2
        if next_len < 3:
            break
        m = horizon - next_len
    _, m_star, win_lo, win_hi, value = best

    margin, margin_note = _tail_margin(rho, policy)
    if margin_note is not None:
        assumptions.append(f"no tail margin: {margin_note}")
    if margin is None:
        lo, hi = win_lo, win_hi
    else:
        # One-sided when rho is monotone: the remaining approach to the
        # limit continues in the observed direction, so the margin extends
        # the enclosure only that way.
        anchor = rho[horizon]
        tags = rho_report.tags
        down_only = Monotonicity.NONINCREASING in tags
        up_only = Monotonicity.NONDECREASING in tags
        if down_only and not up_only:
            lo, hi = min(win_lo, anchor - margin), win_hi
            assumptions.append("difference ratio stays nonincreasing beyond the horizon")
        elif up_only and not down_only:
            lo, hi = win_lo, max(win_hi, anchor + margin)
            assumptions.append("difference ratio stays nondecreasing beyond the horizon")
        else:
            lo = min(win_lo, anchor - margin)
            hi = max(win_hi, anchor + margin)

    diverging = _diverging_direction(rho, rho_report, policy)

    residual = bound = None
    if case == LimitCase.BOTH_VANISH:
        direct = f[m_star] / g[m_star]
        residual = abs(direct - value)
        bound = (abs(f[horizon]) + abs(value) * abs(g[horizon])) / abs(
            g[m_star] - g[horizon]
        )
        if residual > bound:
            raise ArithmeticError(
                "vanishing-tail consistency residual exceeds its bound"
            )  # unreachable for valid inputs

    return LimitEstimate(
        value=value,
        enclosure=(lo, hi),
        window_enclosure=(win_lo, win_hi),
        margin=margin,
        horizon=horizon,
        window_start=m_star,
        case=case,
        mode=policy.mode,
        assumptions=tuple(assumptions),
        diverging=diverging,
        consistency_residual=residual,
        consistency_bound=bound,
    )


def check_tail_identity(
    f: Seq, g: Seq, n: int, horizon: int, policy: ComparisonPolicy = EXACT
) -> IdentityReport:
    """Compare g_n g_{n-1} (r_n - r_{n-1}) against the truncated sum

        sum_{j=n}^{horizon} dg_n dg_j (rho_j - rho_n)

    which converges to it when f and g vanish at infinity. The report
    carries both values and the truncation residual |lhs - sum|.
    """
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    if horizon > f.domain.b:
        raise HorizonTooSmall(
            f"horizon {horizon} beyond available data {f.domain}"
        )
    if n <= f.domain.a or n > horizon:
        raise DomainTooShort(f"need {f.domain.a} < n <= horizon, got n={n}")
    sign_profile(g.restrict(IntInterval(f.domain.a, horizon)), _sign_policy(policy))

    r_n = f[n] / g[n]
    r_p = f[n - 1] / g[n - 1]
    lhs = g[n] * g[n - 1] * (r_n - r_p)

    dg_n = g[n] - g[n - 1]
    rho_n = (f[n] - f[n - 1]) / dg_n
    total = None
    for j in range(n, horizon + 1):
        dg_j = g[j] - g[j - 1]
        rho_j = (f[j] - f[j - 1]) / dg_j
        term = dg_n * dg_j * (rho_j - rho_n)
        total = term if total is None else total + term
    residual = abs(lhs - total)
    exact_equal = (residual == 0) if policy.mode == EXACT_MODE else None
    return IdentityReport((lhs, total), residual, exact_equal)


def vanishing_tail_monotonicity(
    f: Seq,
    g: Seq,
    policy: ComparisonPolicy = EXACT,
    drop_tail: int = 0,
) -> VerificationResult:
    """Check that r = f/g inherits the weak monotone direction of the
    difference ratio, for sequences asserted to vanish at infinity.

    ``drop_tail`` excludes that many trailing points of r from the check
    (approx mode only) where truncation noise dominates.
    """
    if drop_tail and policy.mode == EXACT_MODE:
        raise ValueError("drop_tail applies to approx mode only")
    try:
        sign_profile(g, _sign_policy(policy))
    except Exception as exc:
        raise HypothesisFailed(str(exc)) from exc
    rho = diff_ratio(f, g, _sign_policy(policy))
    rho_report = classify(rho, policy)
    rho_dirs = {
        t
        for t in rho_report.tags
        if t in (Monotonicity.NONDECREASING, Monotonicity.NONINCREASING)
    }
    if not rho_dirs:
        raise HypothesisFailed("difference ratio is not weakly monotone")

    r = ratio(f, g, _sign_policy(policy))
    if drop_tail:
        if len(r) - drop_tail < 2:
            raise DomainTooShort("drop_tail leaves fewer than two points")
        r = r.restrict(IntInterval(r.domain.a, r.domain.b - drop_tail))
    r_report = classify(r, policy)
    ok = bool(rho_dirs & r_report.tags)
    return VerificationResult(
        VerifyStatus.CONSISTENT if ok else VerifyStatus.VIOLATED,
        None if ok else "ratio does not inherit the monotone direction",
        tuple(sorted(rho_dirs, key=lambda d: d.value)),
        r_report,
        rho_report,
        None,
        (),
        policy.mode,
        r_report.eps_band_hits + rho_report.eps_band_hits,
    )


# ---------------------------------------------------------------------------
# generator specs (shared with the command line)

# atom forms: geom:p/q  poly:c0,c1,...  factorial  npow_over_e
# atoms may be summed with '+': "geom:1/2+geom:1/3"


def _parse_atom(atom: str, mode: str):
    kind, _, arg = atom.partition(":")
    kind = kind.strip()
    if kind == "geom":
        t = Fraction(arg)
        if mode == EXACT_MODE:
            return lambda n: t ** n
        return lambda n: mpmath.mpf(t.numerator) ** n / mpmath.mpf(t.denominator) ** n
    if kind == "poly":
        coeffs = [Fraction(c) for c in arg.split(",")]
        if mode == EXACT_MODE:
            return lambda n: sum(c * Fraction(n) ** i for i, c in enumerate(coeffs))
        mcoeffs = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        return lambda n: sum(c * mpmath.mpf(n) ** i for i, c in enumerate(mcoeffs))
    if kind == "factorial":
        if mode == EXACT_MODE:
            return lambda n: Fraction(math.factorial(n))
        return lambda n: mpmath.factorial(n)
    if kind == "npow_over_e":
        if mode == EXACT_MODE:
            raise ValueError("npow_over_e is irrational; use approx mode")
        return lambda n: mpmath.mpf(1) if n == 0 else (n / mpmath.e) ** n
    raise ValueError(f"unknown generator {atom!r}")


def parse_generator(spec: str, mode: str = EXACT_MODE) -> Callable:
    """Turn a generator spec string into a callable n -> scalar."""
    atoms = [_parse_atom(a, mode) for a in spec.split("+")]
    if len(atoms) == 1:
        return atoms[0]

    def gen(n):
        total = atoms[0](n)
        for a in atoms[1:]:
            total = total + a(n)
        return total

    return gen
