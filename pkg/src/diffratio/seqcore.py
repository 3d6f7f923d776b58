"""Finite sequences on integer intervals, comparison policies, and the
elementary operations everything else is built from.

A sequence is a tuple of scalars attached to a closed integer interval
[a, b]. Scalars come in two representation modes that are never mixed:

* exact     -- arbitrary-precision rationals (``fractions.Fraction``; plain
               ints are normalized to Fraction on construction),
* approx    -- floating values (``float`` or ``mpmath.mpf``) compared
               through an explicit tolerance.

Every comparison made on behalf of a sequence goes through a
:class:`ComparisonPolicy` so that exact and tolerance-based reasoning stay
clearly separated.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import mpmath

from . import _kernels as K
from .errors import (
    DivisorVanishes,
    DomainMismatch,
    DomainTooShort,
    MixedMode,
    SignViolation,
    SignViolationKind,
)

Scalar = Fraction | float | mpmath.mpf

EXACT_MODE = "exact"
APPROX_MODE = "approx"


def scalar_mode(v) -> str:
    """Representation mode of a single scalar; TypeError on non-numbers."""
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return EXACT_MODE
    if isinstance(v, (float, mpmath.mpf)):
        return APPROX_MODE
    raise TypeError(f"unsupported scalar type {type(v).__name__}")


# ---------------------------------------------------------------------------
# comparison policy


@dataclass(frozen=True)
class ComparisonPolicy:
    """How scalars are compared.

    Exact mode gives the true trichotomy on rationals (eps is 0). Approx
    mode treats x and y as equal when |x - y| <= eps and orders them only
    when the gap exceeds eps.
    """

    mode: str
    eps: Scalar = 0

    def __post_init__(self):
        if self.mode not in (EXACT_MODE, APPROX_MODE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == EXACT_MODE and self.eps != 0:
            raise ValueError("exact mode admits no tolerance")
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")

    def sign(self, x) -> int:
        if abs(x) <= self.eps:
            return 0
        return 1 if x > 0 else -1

    def cmp(self, x, y) -> int:
        return self.sign(x - y)

    def eq(self, x, y) -> bool:
        return self.cmp(x, y) == 0

    def lt(self, x, y) -> bool:
        return self.cmp(x, y) < 0

    def le(self, x, y) -> bool:
        return self.cmp(x, y) <= 0

    def is_zero(self, x) -> bool:
        return abs(x) <= self.eps


EXACT = ComparisonPolicy(EXACT_MODE, 0)


def approx(eps: float = 1e-12) -> ComparisonPolicy:
    return ComparisonPolicy(APPROX_MODE, eps)


# ---------------------------------------------------------------------------
# integer intervals


@dataclass(frozen=True, order=True)
class IntInterval:
    """Closed integer interval [a, b]; empty when a > b."""

    a: int
    b: int

    def __post_init__(self):
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise TypeError("interval endpoints must be ints")

    @property
    def is_empty(self) -> bool:
        return self.a > self.b

    def __len__(self) -> int:
        return 0 if self.is_empty else self.b - self.a + 1

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.a, self.b + 1))

    def __contains__(self, n) -> bool:
        return isinstance(n, int) and self.a <= n <= self.b

    def __repr__(self) -> str:
        return f"[{self.a}, {self.b}]"


# ---------------------------------------------------------------------------
# sequences


@dataclass(frozen=True)
class Seq:
    """Scalar values on a closed integer interval.

    Construct through :func:`make_seq` (which validates and normalizes);
    the raw constructor trusts its arguments and is meant for internal use
    where the mode is already known.
    """

    domain: IntInterval
    values: tuple
    mode: str

    def __post_init__(self):
        if len(self.values) != len(self.domain):
            raise DomainMismatch(
                f"{len(self.values)} values on domain {self.domain}"
            )

    def __getitem__(self, n: int):
        """Value at absolute index n."""
        if n not in self.domain:
            raise IndexError(f"index {n} outside {self.domain}")
        return self.values[n - self.domain.a]

    def __len__(self) -> int:
        return len(self.values)

    def items(self) -> Iterable[tuple[int, Scalar]]:
        return zip(self.domain, self.values)

    @property
    def first(self):
        return self.values[0]

    @property
    def last(self):
        return self.values[-1]

    def restrict(self, sub: IntInterval) -> "Seq":
        if sub.a < self.domain.a or sub.b > self.domain.b:
            raise DomainMismatch(f"{sub} is not inside {self.domain}")
        off = self.domain.a
        return Seq(sub, self.values[sub.a - off : sub.b - off + 1], self.mode)


def make_seq(a: int, values: Iterable) -> Seq:
    """Build a sequence starting at index a, validating homogeneity.

    Ints are normalized to Fraction. Mixing rationals with floats raises
    MixedMode: coercion between representation modes is never silent.
    """
    vals = list(values)
    if not vals:
        raise DomainTooShort("a sequence needs at least one value")
    modes = {scalar_mode(v) for v in vals}
    if len(modes) > 1:
        raise MixedMode("exact and floating scalars in one sequence")
    mode = modes.pop()
    if mode == EXACT_MODE:
        vals = [v if isinstance(v, Fraction) else Fraction(v) for v in vals]
    return Seq(IntInterval(a, a + len(vals) - 1), tuple(vals), mode)


def _join_mode(f: Seq, g: Seq) -> str:
    if f.mode != g.mode:
        raise MixedMode(f"cannot combine {f.mode} with {g.mode} sequences")
    return f.mode


# ---------------------------------------------------------------------------
# elementary operations


def delta(f: Seq) -> Seq:
    """Backward differences f_n - f_{n-1} on [a+1, b]."""
    if len(f) < 2:
        raise DomainTooShort(f"need at least two points, got {f.domain}")
    vals = K.pairwise_diff(list(f.values))
    return Seq(IntInterval(f.domain.a + 1, f.domain.b), tuple(vals), f.mode)


def ratio(f: Seq, g: Seq, policy: ComparisonPolicy = EXACT) -> Seq:
    """Pointwise ratio f/g; DivisorVanishes at the first too-small g."""
    mode = _join_mode(f, g)
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    gv = list(g.values)
    bad = K.find_small(gv, policy.eps)
    if bad >= 0:
        raise DivisorVanishes(g.domain.a + bad)
    return Seq(f.domain, tuple(K.pointwise_div(list(f.values), gv)), mode)


def diff_ratio(f: Seq, g: Seq, policy: ComparisonPolicy = EXACT) -> Seq:
    """Ratio of backward differences (delta f)/(delta g) on [a+1, b]."""
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    return ratio(delta(f), delta(g), policy)


class Sign(enum.IntEnum):
    POSITIVE = 1
    NEGATIVE = -1


@dataclass(frozen=True)
class SignProfile:
    """Constant signs of a sequence and of its differences."""

    seq_sign: Sign
    delta_sign: Sign

    @property
    def product(self) -> int:
        """Sign of g_n * (delta g)_n, constant across the window."""
        return int(self.seq_sign) * int(self.delta_sign)


def _constant_sign(vals: list, policy: ComparisonPolicy, a: int,
                   vanish: SignViolationKind, flip: SignViolationKind) -> Sign:
    signs = K.sign_list(vals, policy.eps)
    first = signs[0]
    for i, s in enumerate(signs):
        if s == 0:
            raise SignViolation(vanish, a + i)
        if s != first:
            raise SignViolation(flip, a + i)
    return Sign(first)


def sign_profile(g: Seq, policy: ComparisonPolicy = EXACT) -> SignProfile:
    """Verify that g and delta g each keep one nonzero sign.

    Raises SignViolation naming the offending index and failure kind;
    this is the standing hypothesis behind every pattern statement here.
    """
    if len(g) < 2:
        raise DomainTooShort("sign profile needs at least two points")
    s = _constant_sign(
        list(g.values), policy, g.domain.a,
        SignViolationKind.SEQ_VANISHES, SignViolationKind.SEQ_CHANGES_SIGN,
    )
    d = _constant_sign(
        K.pairwise_diff(list(g.values)), policy, g.domain.a + 1,
        SignViolationKind.DELTA_VANISHES, SignViolationKind.DELTA_CHANGES_SIGN,
    )
    return SignProfile(s, d)


def reflect_index(f: Seq) -> Seq:
    """Index reflection n -> -n; domain [a, b] becomes [-b, -a]."""
    dom = IntInterval(-f.domain.b, -f.domain.a)
    return Seq(dom, tuple(reversed(f.values)), f.mode)


def reflect_values(f: Seq) -> Seq:
    """Value negation f -> -f on the same domain."""
    return Seq(f.domain, tuple(-v for v in f.values), f.mode)


def shift(f: Seq, d: int) -> Seq:
    """Re-index by n -> n + d; values unchanged."""
    dom = IntInterval(f.domain.a + d, f.domain.b + d)
    return Seq(dom, f.values, f.mode)


# ---------------------------------------------------------------------------
# file format

# {"a": <int>, "values": ["p/q" | "p" | decimal literal, ...]}
# Rational literals make an exact sequence, decimal literals a floating one;
# one file must stay in one mode.


def _parse_value(text: str):
    t = text.strip()
    if "/" in t:
        num, _, den = t.partition("/")
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(t))
    except ValueError:
        pass
    try:
        return float(t)
    except ValueError:
        raise ValueError(f"unparseable sequence value {text!r}") from None


def seq_from_dict(data: dict) -> Seq:
    try:
        a = data["a"]
        raw = data["values"]
    except (KeyError, TypeError):
        raise ValueError("sequence object needs keys 'a' and 'values'") from None
    if not isinstance(a, int):
        raise ValueError("'a' must be an integer")
    if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
        raise ValueError("'values' must be a list of strings")
    return make_seq(a, [_parse_value(v) for v in raw])


def seq_to_dict(f: Seq) -> dict:
    if f.mode == EXACT_MODE:
        vals = [str(v) for v in f.values]
    else:
        vals = [
            mpmath.nstr(v, mpmath.mp.dps) if isinstance(v, mpmath.mpf) else repr(v)
            for v in f.values
        ]
    return {"a": f.domain.a, "values": vals}


def load_seq(path) -> Seq:
    with open(path, "r", encoding="utf-8") as fh:
        return seq_from_dict(json.load(fh))


def save_seq(f: Seq, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(seq_to_dict(f), fh)
        fh.write("\n")


def map_values(f: Seq, fn: Callable) -> Seq:
    """Apply fn to every value, revalidating the result mode."""
    return make_seq(f.domain.a, [fn(v) for v in f.values])
