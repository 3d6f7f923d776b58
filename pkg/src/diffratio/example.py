"""Worked family of ratio sequences: factorials over scaled powers.

The family is r = (alpha + partial sums of j!) / (partial sums of (j/e)^j),
with (0/e)^0 read as 1. Its slope ratio rho_n = n! e^n / n^n grows without
bound, and raising alpha moves the turning point of r to the right. The
threshold offsets alpha_k mark exactly where the turn passes index k, and
the figure data reproduces the normalized curves r_n / r_k - 0.97.

Everything here is floating-point by necessity (e is irrational), computed
with mpmath at a configurable number of decimal digits. Strict inequalities
are only ever reported when the margin clears a guard band of 10^3 units of
roundoff; anything closer raises ToleranceAmbiguity instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import ToleranceAmbiguity
from .patterns import PatternKind, VerificationResult, VerifyStatus, classify
from .seqcore import Seq, approx, make_seq

DEFAULT_DPS = 40
_GUARD_ULPS = 1000


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


def _band(x, y):
    # guard band scales with magnitude but never collapses below eps
    return _GUARD_ULPS * mp.eps * max(1, abs(x), abs(y))


def guarded_sign(x, y) -> int:
    """Sign of x - y, snapped to 0 inside the guard band."""
    d = x - y
    if abs(d) <= _band(x, y):
        return 0
    return 1 if d > 0 else -1


def strict_sign(x, y) -> int:
    """Sign of x - y where a zero would be meaningless noise."""
    s = guarded_sign(x, y)
    if s == 0:
        raise ToleranceAmbiguity(
            f"margin {mp.nstr(x - y, 8)} inside the guard band at working precision"
        )
    return s


@dataclass(frozen=True)
class FamilyConfig:
    """One member of the family: offset, window end, working digits."""

    alpha: object
    span: int
    dps: int = DEFAULT_DPS

    def __post_init__(self):
        if self.span < 1:
            raise ValueError("span must be at least 1")
        if _to_mpf(self.alpha) < 0:
            raise ValueError("offset must be nonnegative")


@dataclass(frozen=True)
class FamilyData:
    span: int
    dps: int
    p: Seq
    q: Seq
    f0: Seq
    g: Seq
    rho: tuple  # rho[n] = p_n/q_n; entry 0 kept for alignment only


def family_sequences(span: int, dps: int = DEFAULT_DPS) -> FamilyData:
    """Build p, q and their running sums f0, g on [0, span]."""
    if span < 1:
        raise ValueError("span must be at least 1")
    with mp.workdps(dps):
        p = [mp.factorial(j) for j in range(span + 1)]
        q = [mp.mpf(1)]
        for j in range(1, span + 1):
            q.append(mp.exp(j * (mp.log(j) - 1)))
        f0, g, sp, sq = [], [], mp.mpf(0), mp.mpf(0)
        for j in range(span + 1):
            sp += p[j]
            sq += q[j]
            f0.append(sp)
            g.append(sq)
        rho = tuple(p[j] / q[j] for j in range(span + 1))
    return FamilyData(
        span, dps,
        make_seq(0, p), make_seq(0, q), make_seq(0, f0), make_seq(0, g),
        rho,
    )


def growth_ratio(n: int, dps: int = DEFAULT_DPS):
    """rho_n = n! e^n / n^n by two routes that must agree to 8 ulps.

    The log-space route exp(lgamma(n+1) + n - n log n) stays bounded for
    any n; the direct route is the one returned.
    """
    with mp.workdps(dps):
        if n == 0:
            return mp.mpf(1)
        direct = mp.factorial(n) / mp.exp(n * (mp.log(n) - 1))
        logged = mp.exp(mp.loggamma(n + 1) + n - n * mp.log(n))
        if abs(direct - logged) > 8 * mp.eps * max(1, abs(direct)):
            raise ToleranceAmbiguity(
                f"growth ratio routes disagree at n={n} beyond 8 ulps"
            )
        return direct


def offset_ratio(alpha, span: int, dps: int = DEFAULT_DPS) -> Seq:
    """The ratio sequence (alpha + f0)/g on [0, span].

    Computed directly and as r0 + alpha/g; the two must agree to 8 ulps
    pointwise, otherwise the working precision is not trustworthy here.
    """
    cfg = FamilyConfig(alpha, span, dps)
    fam = family_sequences(span, dps)
    with mp.workdps(dps):
        a = _to_mpf(cfg.alpha)
        vals = []
        for n in range(span + 1):
            f0n = fam.f0[n]
            gn = fam.g[n]
            direct = (a + f0n) / gn
            shifted = f0n / gn + a / gn
            if abs(direct - shifted) > 8 * mp.eps * max(1, abs(direct)):
                raise ToleranceAmbiguity(
                    f"offset ratio routes disagree at n={n} beyond 8 ulps"
                )
            vals.append(direct)
    return make_seq(0, vals)


def offset_threshold(k: int, dps: int = DEFAULT_DPS):
    """The offset alpha_k = (rho_k - r_k) g_k at which the turn sits at k.

    alpha_0 is 0 by convention. Self-checks that the ratio sequence built
    with the returned offset really lands on rho_k at index k.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return mp.mpf(0)
    fam = family_sequences(k, dps)
    with mp.workdps(dps):
        r0_k = fam.f0[k] / fam.g[k]
        alpha = (fam.rho[k] - r0_k) * fam.g[k]
        landed = (alpha + fam.f0[k]) / fam.g[k]
        if abs(landed - fam.rho[k]) > _band(landed, fam.rho[k]):
            raise ToleranceAmbiguity(
                f"threshold self-check failed at k={k}: offset does not land on rho"
            )
    return alpha


@dataclass(frozen=True)
class ThresholdTable:
    """alpha_k for k = 0..max_k, already validated to be strictly
    increasing with alpha_0 = 0."""

    dps: int
    entries: tuple  # ((k, alpha_k), ...)

    def to_json_dict(self) -> dict:
        return {
            "dps": self.dps,
            "entries": [
                {"k": k, "alpha": mp.nstr(a, min(self.dps, 30))}
                for k, a in self.entries
            ],
        }


def threshold_table(max_k: int, dps: int = DEFAULT_DPS) -> ThresholdTable:
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    entries = [(k, offset_threshold(k, dps)) for k in range(max_k + 1)]
    with mp.workdps(dps):
        for (_, prev), (k, cur) in zip(entries, entries[1:]):
            if strict_sign(cur, prev) != 1:
                raise ArithmeticError(
                    f"threshold table lost monotonicity at k={k}"
                )
    return ThresholdTable(dps, tuple(entries))


def transition_check(
    k: int, span: int = 30, dps: int = DEFAULT_DPS
) -> VerificationResult:
    """Verify the three transition facts around threshold k (1 <= k < span).

    (a) At alpha_k the ratio strictly falls through k-1, pauses on the
        two-point plateau {k-1, k}, then strictly rises.
    (b) Strictly between alpha_k and alpha_{k+1} the ratio is a strict V
        with its minimum at k.
    (c) At probes alpha_k/2, alpha_k, 2*alpha_k the three comparisons
        "step up at k", "slope ratio above r at k", "alpha at most
        alpha_k" carry the same sign, and the chain from "alpha at most
        alpha_k" through "step up at k+1" to "alpha below alpha_{k+1}"
        holds link by link.

    Raises ToleranceAmbiguity when any strict claim sits inside the guard
    band; that is a precision problem, not a verdict.
    """
    if not 1 <= k < span:
        raise ValueError("need 1 <= k < span")
    fam = family_sequences(span, dps)
    a_k = offset_threshold(k, dps)
    a_next = offset_threshold(k + 1, dps)
    problems = []
    band_hits = 0

    with mp.workdps(dps):
        r_at = offset_ratio(a_k, span, dps)
        r = list(r_at.values)
        for n in range(1, k):
            if strict_sign(r[n], r[n - 1]) != -1:
                problems.append(f"threshold:fall@{n}")
        if guarded_sign(r[k], r[k - 1]) != 0:
            problems.append("threshold:plateau")
        else:
            band_hits += 1
        for n in range(k + 1, span + 1):
            if strict_sign(r[n], r[n - 1]) != 1:
                problems.append(f"threshold:rise@{n}")

        mid = (a_k + a_next) / 2
        rm = list(offset_ratio(mid, span, dps).values)
        for n in range(1, k + 1):
            if strict_sign(rm[n], rm[n - 1]) != -1:
                problems.append(f"midpoint:fall@{n}")
        for n in range(k + 1, span + 1):
            if strict_sign(rm[n], rm[n - 1]) != 1:
                problems.append(f"midpoint:rise@{n}")

        for probe in (a_k / 2, a_k, 2 * a_k):
            rr = list(offset_ratio(probe, span, dps).values)
            s_step = guarded_sign(rr[k], rr[k - 1])
            s_over = guarded_sign(fam.rho[k], rr[k])
            s_thr = guarded_sign(a_k, probe)
            at_threshold = probe == a_k
            if not at_threshold and 0 in (s_step, s_over, s_thr):
                raise ToleranceAmbiguity(
                    "strict probe comparison inside the guard band"
                )
            band_hits += (s_step, s_over, s_thr).count(0)
            if not s_step == s_over == s_thr:
                problems.append(f"probe:equivalence@{mp.nstr(probe, 8)}")
            s_up = guarded_sign(rr[k + 1], rr[k])
            s_room = guarded_sign(a_next, probe)
            if s_thr >= 0 and s_step < 0:
                problems.append(f"probe:chain-entry@{mp.nstr(probe, 8)}")
            if s_step >= 0:
                if s_up == 0:
                    raise ToleranceAmbiguity(
                        "strict step at k+1 inside the guard band"
                    )
                if s_up < 0:
                    problems.append(f"probe:chain-step@{mp.nstr(probe, 8)}")
            if s_up > 0:
                if s_room == 0:
                    raise ToleranceAmbiguity(
                        "probe offset indistinguishable from the next threshold"
                    )
                if s_room < 0:
                    problems.append(f"probe:chain-room@{mp.nstr(probe, 8)}")

        observed = classify(r_at, approx(mp.mpf(10) ** (10 - dps)))

    ok = not problems
    return VerificationResult(
        VerifyStatus.CONSISTENT if ok else VerifyStatus.VIOLATED,
        None if ok else "; ".join(problems),
        (PatternKind.DOWN_UP,),
        observed,
        None,
        None,
        tuple(problems),
        "approx",
        band_hits,
    )


@dataclass(frozen=True)
class FigureTable:
    """Normalized curves r_n/r_k - offset, one column per k."""

    span: int
    offset: object
    labels: tuple       # column labels, e.g. "k=3"
    columns: tuple      # one tuple of mpf per label, indexed by n

    def to_csv(self) -> str:
        lines = ["n," + ",".join(self.labels)]
        for n in range(self.span + 1):
            row = [str(n)] + [mp.nstr(col[n], 17) for col in self.columns]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "span": self.span,
            "offset": mp.nstr(self.offset, 17),
            "columns": {
                lab: [mp.nstr(v, 17) for v in col]
                for lab, col in zip(self.labels, self.columns)
            },
        }

    def to_svg(self, width: int = 640, height: int = 420) -> str:
        pad = 48
        lo = min(min(c) for c in self.columns)
        hi = max(max(c) for c in self.columns)
        if hi <= lo:
            hi = lo + 1
        room = (hi - lo) * mp.mpf("0.05")
        lo, hi = lo - room, hi + room

        def sx(n):
            return pad + (width - 2 * pad) * n / self.span

        def sy(v):
            return height - pad - (height - 2 * pad) * float((v - lo) / (hi - lo))

        palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                   "#8c564b", "#17becf"]
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
            f'y2="{height - pad}" stroke="#333"/>',
            f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" '
            f'stroke="#333"/>',
        ]
        for n in (0, self.span // 2, self.span):
            parts.append(
                f'<text x="{sx(n):.1f}" y="{height - pad + 16}" '
                f'font-size="11" text-anchor="middle">{n}</text>'
            )
        for v in (lo + room, (lo + hi) / 2, hi - room):
            parts.append(
                f'<text x="{pad - 6}" y="{sy(v):.1f}" font-size="11" '
                f'text-anchor="end">{mp.nstr(v, 3)}</text>'
            )
        for i, (lab, col) in enumerate(zip(self.labels, self.columns)):
            color = palette[i % len(palette)]
            pts = " ".join(
                f"{sx(n):.2f},{sy(col[n]):.2f}" for n in range(self.span + 1)
            )
            parts.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{pts}"/>'
            )
            parts.append(
                f'<rect x="{width - pad - 76}" y="{pad + 18 * i}" width="10" '
                f'height="10" fill="{color}"/>'
            )
            parts.append(
                f'<text x="{width - pad - 62}" y="{pad + 18 * i + 9}" '
                f'font-size="11">{lab}</text>'
            )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def figure_table(
    ks=(0, 1, 3, 5, 7),
    span: int = 30,
    dps: int = DEFAULT_DPS,
    offset="0.97",
) -> FigureTable:
    """Curves r_n^{(alpha_k)} / r_k^{(alpha_k)} - offset for each k.

    For k >= 1 the column equals 1 - offset at both n = k-1 and n = k
    (the two-point plateau); the k = 0 column is increasing throughout.
    """
    ks = tuple(ks)
    if any(not 0 <= k < span for k in ks):
        raise ValueError("every k must satisfy 0 <= k < span")
    with mp.workdps(dps):
        off = _to_mpf(offset)
        cols = []
        for k in ks:
            a_k = offset_threshold(k, dps)
            r = list(offset_ratio(a_k, span, dps).values)
            norm = r[k]
            cols.append(tuple(v / norm - off for v in r))
    return FigureTable(span, off, tuple(f"k={k}" for k in ks), tuple(cols))


def offset_curve(
    alpha, span: int = 30, dps: int = DEFAULT_DPS, offset="0.97"
) -> FigureTable:
    """Single normalized curve for an arbitrary offset, scaled by its
    minimum so the floor sits at 1 - offset like the threshold curves."""
    with mp.workdps(dps):
        off = _to_mpf(offset)
        r = list(offset_ratio(alpha, span, dps).values)
        norm = min(r)
        col = tuple(v / norm - off for v in r)
        label = f"alpha={mp.nstr(_to_mpf(alpha), 8)}"
    return FigureTable(span, off, (label,), (col,))
