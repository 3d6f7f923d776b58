"""Pure-Python kernel loops.

Mirror of the compiled kernels in ``_fastkern.pyx``; same names, same
semantics. All functions take plain lists of Python number objects
(Fraction, int, float, mpmath.mpf) and do no validation of their own.
"""

from __future__ import annotations

BACKEND = "pure"


def pairwise_diff(vals):
    return [vals[i] - vals[i - 1] for i in range(1, len(vals))]


def pointwise_div(num, den):
    return [a / b for a, b in zip(num, den)]


def find_small(vals, eps):
    """Index of the first entry with |v| <= eps, or -1."""
    for i, v in enumerate(vals):
        if abs(v) <= eps:
            return i
    return -1


def sign_list(vals, eps):
    out = []
    for v in vals:
        if abs(v) <= eps:
            out.append(0)
        elif v > 0:
            out.append(1)
        else:
            out.append(-1)
    return out


def cumsum(vals):
    out = []
    acc = None
    for v in vals:
        acc = v if acc is None else acc + v
        out.append(acc)
    return out


def build_from_slopes(start, slopes, dg):
    """f with f[0] = start and f[i] = f[i-1] + slopes[i-1]*dg[i-1]."""
    out = [start]
    acc = start
    for s, d in zip(slopes, dg):
        acc = acc + s * d
        out.append(acc)
    return out


def conv_head(p, w):
    """out[n] = sum_{j<=n} w[n-j]*p[j]; len(w) >= len(p)."""
    n_len = len(p)
    out = []
    for n in range(n_len):
        acc = w[n] * p[0]
        for j in range(1, n + 1):
            acc = acc + w[n - j] * p[j]
        out.append(acc)
    return out


def conv_tail(p, w):
    """out[i] = sum_{d>=0, i+d<len(p)} w[d]*p[i+d]; len(w) >= len(p)."""
    n_len = len(p)
    out = []
    for i in range(n_len):
        acc = w[0] * p[i]
        for d in range(1, n_len - i):
            acc = acc + w[d] * p[i + d]
        out.append(acc)
    return out


def dot_slice(p, w, w_start):
    """sum_i p[i] * w[w_start + i]."""
    acc = None
    for i, v in enumerate(p):
        t = v * w[w_start + i]
        acc = t if acc is None else acc + t
    return acc


def identity_rows(f, g):
    """The three equivalent products tied to the ratio difference, one row
    per interior index:

        lhs[n] = g[n]*g[n-1]*(r[n]-r[n-1])
        mid[n] = (rho[n]-r[n])*g[n]*dg[n]
        rhs[n] = (rho[n]-r[n-1])*g[n-1]*dg[n]

    Caller guarantees g and dg nonvanishing.
    """
    lhs, mid, rhs = [], [], []
    r_prev = f[0] / g[0]
    for n in range(1, len(f)):
        gn = g[n]
        gp = g[n - 1]
        dg = gn - gp
        rn = f[n] / gn
        rho = (f[n] - f[n - 1]) / dg
        lhs.append(gn * gp * (rn - r_prev))
        mid.append((rho - rn) * gn * dg)
        rhs.append((rho - r_prev) * gp * dg)
        r_prev = rn
    return lhs, mid, rhs


def minmax(vals):
    lo = hi = vals[0]
    for v in vals:
        if v < lo:
            lo = v
        elif v > hi:
            hi = v
    return lo, hi
