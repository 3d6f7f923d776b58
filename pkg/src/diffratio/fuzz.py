"""Randomized search for counterexamples to the turn-shape rule.

Instances are built in exact rationals so a violation can never be
floating-point noise. The canonical builder produces the nondecreasing
slope-ratio, positive increasing-denominator case; the other three cases
come from negating values and reflecting the index, which is also how the
result itself reduces them to one. A deliberate share of instances is
engineered to land the ratio exactly on a constant and hold it there, so
the flat phase of the shape is exercised with honest multi-point plateaus
rather than by luck (random rationals never collide).

Everything derives from one 64-bit seed through counter-based splitting:
instance i is generated from mix(seed, i) alone, so the stream is
identical under any evaluation order and any failure replays from the
report.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .patterns import VerifyStatus, verify_ratio_pattern
from .seqcore import (
    Seq,
    diff_ratio,
    make_seq,
    ratio,
    reflect_index,
    reflect_values,
    shift,
)

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def subseed(seed: int, counter: int) -> int:
    """Independent per-instance seed; depends only on (seed, counter)."""
    return _splitmix64((seed & _MASK64) ^ _splitmix64(counter & _MASK64))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The smallest-denominator rational strictly inside (lo, hi).

    Stern-Brocot descent; keeps engineered instances from accumulating
    huge denominators.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = lo.numerator // lo.denominator
    if n + 1 < hi:
        return Fraction(n + 1)
    frac = lo - n
    if frac == 0:
        # want 1/q < hi - n with q minimal
        return n + Fraction(1, (1 // (hi - n)) + 1)
    return n + 1 / simplest_between(1 / (hi - n), 1 / frac)


def _pick_between(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    """A simple rational from a random sixteenth of (lo, hi)."""
    i = rng.randrange(16)
    step = (hi - lo) / 16
    return simplest_between(lo + i * step, lo + (i + 1) * step)


def _pos_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 6))


@dataclass(frozen=True)
class FuzzSpec:
    instances: int = 1000
    max_len: int = 40
    rho_direction: str = "either"  # up | down | either
    g_sign: str = "either"         # pos | neg | either (sign of g * delta g)
    seed: int = 0

    def __post_init__(self):
        if self.instances < 1:
            raise ValueError("instances must be positive")
        if self.max_len < 4:
            raise ValueError("max_len must be at least 4")
        if self.rho_direction not in ("up", "down", "either"):
            raise ValueError(f"bad rho_direction {self.rho_direction!r}")
        if self.g_sign not in ("pos", "neg", "either"):
            raise ValueError(f"bad g_sign {self.g_sign!r}")

    def rows(self) -> tuple:
        """Table rows compatible with the requested directions."""
        by_dir = {"up": (1, 3), "down": (2, 4), "either": (1, 2, 3, 4)}
        by_sign = {"pos": (1, 2), "neg": (3, 4), "either": (1, 2, 3, 4)}
        rows = tuple(
            r for r in by_dir[self.rho_direction] if r in by_sign[self.g_sign]
        )
        if not rows:
            raise ValueError("no table row matches the requested constraints")
        return rows

    def to_json_dict(self) -> dict:
        return {
            "instances": self.instances,
            "max_len": self.max_len,
            "rho_direction": self.rho_direction,
            "g_sign": self.g_sign,
            "seed": self.seed,
        }


def _build_plateau(rng: random.Random, points: int):
    """Canonical instance whose ratio lands exactly on a constant.

    The landing step solves for the slope ratio that puts f_s = C g_s,
    with the denominator step chosen twice as large as the minimum that
    keeps the slope ratio nondecreasing; the landed value then sits at
    the midpoint of (previous slope ratio, C).
    """
    steps = points - 1
    plat = rng.randint(1, max(1, steps - 1))
    fall = rng.randint(0, steps - plat)
    rise = steps - plat - fall

    rho_prev = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
    g = [Fraction(rng.randint(1, 6), rng.randint(1, 3))]
    if fall == 0:
        c = rho_prev + _pos_rational(rng)
        f = [c * g[0]]
    else:
        f = [(rho_prev + _pos_rational(rng)) * g[0]]
        for _ in range(fall - 1):
            r_last = f[-1] / g[-1]
            rho_n = _pick_between(rng, rho_prev, r_last)
            dg = _pos_rational(rng)
            g.append(g[-1] + dg)
            f.append(f[-1] + rho_n * dg)
            rho_prev = rho_n
        r_last = f[-1] / g[-1]
        c = _pick_between(rng, rho_prev, r_last)
        dg = 2 * (r_last - c) * g[-1] / (c - rho_prev)
        rho_n = (c + rho_prev) / 2
        g.append(g[-1] + dg)
        f.append(f[-1] + rho_n * dg)
        assert f[-1] == c * g[-1]
        rho_prev = rho_n
    for _ in range(plat):
        dg = _pos_rational(rng)
        g.append(g[-1] + dg)
        f.append(f[-1] + c * dg)
    rho_prev = c
    for _ in range(rise):
        rho_n = rho_prev + _pos_rational(rng)
        dg = _pos_rational(rng)
        g.append(g[-1] + dg)
        f.append(f[-1] + rho_n * dg)
        rho_prev = rho_n
    return f, g


def _build_generic(rng: random.Random, points: int):
    rho = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    g = [Fraction(rng.randint(1, 6), rng.randint(1, 3))]
    f = [g[0] * Fraction(rng.randint(-9, 9), rng.randint(1, 4))]
    for _ in range(points - 1):
        dg = _pos_rational(rng)
        g.append(g[-1] + dg)
        f.append(f[-1] + rho * dg)
        rho = rho + Fraction(rng.randint(0, 8), rng.randint(1, 5))
    return f, g


def _build_constant(rng: random.Random, points: int):
    c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    g = [Fraction(rng.randint(1, 6), rng.randint(1, 3))]
    if rng.random() < 0.4:
        f = [c * g[0]]          # ratio locked to c from the start
    else:
        f = [c * g[0] + _pos_rational(rng)]
    for _ in range(points - 1):
        dg = _pos_rational(rng)
        g.append(g[-1] + dg)
        f.append(f[-1] + c * dg)
    return f, g


def _canonical(rng: random.Random, max_len: int):
    points = rng.randint(4, max_len)
    u = rng.random()
    if u < 0.45:
        kind = "plateau"
        f, g = _build_plateau(rng, points)
    elif u < 0.80:
        kind = "generic"
        f, g = _build_generic(rng, points)
    else:
        kind = "constant"
        f, g = _build_constant(rng, points)
    return make_seq(0, f), make_seq(0, g), kind


def to_row(f: Seq, g: Seq, row: int) -> tuple:
    """Map a canonical (row 1) instance to any table row.

    Value negation swaps the slope-ratio direction; index reflection
    (shifted back to start at 0) flips the denominator's step sign.
    """
    if row == 1:
        return f, g
    if row == 2:
        return reflect_values(f), g
    b = f.domain.b
    fr = shift(reflect_index(f), b)
    gr = shift(reflect_index(g), b)
    if row == 4:
        return fr, gr
    if row == 3:
        return reflect_values(fr), gr
    raise ValueError(f"row must be 1..4, got {row}")


def instance_stream(spec: FuzzSpec):
    """Yield (index, row, kind, f, g) deterministically from the spec."""
    rows = spec.rows()
    for i in range(spec.instances):
        rng = random.Random(subseed(spec.seed, i))
        f, g, kind = _canonical(rng, spec.max_len)
        row = rows[i % len(rows)]
        f, g = to_row(f, g, row)
        if rng.random() < 0.25:
            # joint negation: same ratio, same row, opposite g sign
            f = reflect_values(f)
            g = reflect_values(g)
        yield i, row, kind, f, g


@dataclass(frozen=True)
class FuzzReport:
    spec: FuzzSpec
    instances: int
    violations: int
    hypothesis_failures: int
    constancy_violations: int
    plateau_count: int
    row_counts: dict
    first_failure: dict | None
    elapsed_s: float

    @property
    def clean(self) -> bool:
        return (
            self.violations == 0
            and self.hypothesis_failures == 0
            and self.constancy_violations == 0
        )

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec.to_json_dict(),
            "instances": self.instances,
            "violations": self.violations,
            "hypothesis_failures": self.hypothesis_failures,
            "constancy_violations": self.constancy_violations,
            "plateau_count": self.plateau_count,
            "row_counts": {str(k): v for k, v in sorted(self.row_counts.items())},
            "first_failure": self.first_failure,
            "elapsed_s": round(self.elapsed_s, 3),
        }


def _failure_record(i, row, kind, f, g, reason) -> dict:
    return {
        "index": i,
        "row": row,
        "kind": kind,
        "f": [str(v) for v in f.values],
        "g": [str(v) for v in g.values],
        "start": f.domain.a,
        "reason": reason,
    }


def run_fuzz(spec: FuzzSpec) -> FuzzReport:
    """Run the corpus; the rule itself is the property under test.

    Checks per instance: the verifier must report consistency, and any
    reported plateau must pin both the ratio and the slope ratio to one
    constant across its interior, exactly.
    """
    t0 = time.perf_counter()
    violations = hypothesis_failures = constancy = plateaus = 0
    row_counts: dict = {}
    first_failure = None

    for i, row, kind, f, g in instance_stream(spec):
        row_counts[row] = row_counts.get(row, 0) + 1
        res = verify_ratio_pattern(f, g)
        if res.status == VerifyStatus.VIOLATED:
            violations += 1
            if first_failure is None:
                first_failure = _failure_record(i, row, kind, f, g, res.reason)
            continue
        if res.status != VerifyStatus.CONSISTENT:
            hypothesis_failures += 1
            if first_failure is None:
                first_failure = _failure_record(i, row, kind, f, g, res.reason)
            continue
        rep = res.observed
        if rep.plateau is not None and rep.k > rep.ell:
            plateaus += 1
            r = ratio(f, g)
            rho = diff_ratio(f, g)
            const = r[rep.ell]
            ok = all(
                rho[n] == const and r[n] == const
                for n in range(rep.ell + 1, rep.k + 1)
            )
            if not ok:
                constancy += 1
                if first_failure is None:
                    first_failure = _failure_record(
                        i, row, kind, f, g, "plateau constant drifted"
                    )
        elif rep.kind.name == "MONOTONE" and "CONSTANT" in {
            t.name for t in rep.tags
        }:
            # fully flat ratio: every interior step is plateau
            plateaus += 1
            r = ratio(f, g)
            rho = diff_ratio(f, g)
            const = r[r.domain.a]
            ok = all(v == const for v in r.values) and all(
                v == const for v in rho.values
            )
            if not ok:
                constancy += 1
                if first_failure is None:
                    first_failure = _failure_record(
                        i, row, kind, f, g, "flat ratio not constant"
                    )

    return FuzzReport(
        spec,
        spec.instances,
        violations,
        hypothesis_failures,
        constancy,
        plateaus,
        row_counts,
        first_failure,
        time.perf_counter() - t0,
    )
