# cython: language_level=3
# cython: boundscheck=False
"""Compiled kernel loops.

Same contract as ``_purekern``: lists of arbitrary Python number objects in,
lists out. The win over the pure version is loop and dispatch overhead, not
the arithmetic itself, which stays in the objects (Fraction, float, mpf).
"""

BACKEND = "fast"


cpdef list pairwise_diff(list vals):
    cdef Py_ssize_t i, n = len(vals)
    cdef list out = []
    for i in range(1, n):
        out.append(vals[i] - vals[i - 1])
    return out


cpdef list pointwise_div(list num, list den):
    cdef Py_ssize_t i, n = len(num)
    cdef list out = []
    for i in range(n):
        out.append(num[i] / den[i])
    return out


cpdef Py_ssize_t find_small(list vals, object eps):
    cdef Py_ssize_t i, n = len(vals)
    for i in range(n):
        if abs(vals[i]) <= eps:
            return i
    return -1


cpdef list sign_list(list vals, object eps):
    cdef Py_ssize_t i, n = len(vals)
    cdef list out = []
    cdef object v
    for i in range(n):
        v = vals[i]
        if abs(v) <= eps:
            out.append(0)
        elif v > 0:
            out.append(1)
        else:
            out.append(-1)
    return out


cpdef list cumsum(list vals):
    cdef Py_ssize_t i, n = len(vals)
    cdef list out = []
    cdef object acc = None
    for i in range(n):
        acc = vals[i] if acc is None else acc + vals[i]
        out.append(acc)
    return out


cpdef list build_from_slopes(object start, list slopes, list dg):
    cdef Py_ssize_t i, n = len(slopes)
    cdef list out = [start]
    cdef object acc = start
    for i in range(n):
        acc = acc + slopes[i] * dg[i]
        out.append(acc)
    return out


cpdef list conv_head(list p, list w):
    cdef Py_ssize_t n, j, n_len = len(p)
    cdef list out = []
    cdef object acc
    for n in range(n_len):
        acc = w[n] * p[0]
        for j in range(1, n + 1):
            acc = acc + w[n - j] * p[j]
        out.append(acc)
    return out


cpdef list conv_tail(list p, list w):
    cdef Py_ssize_t i, d, n_len = len(p)
    cdef list out = []
    cdef object acc
    for i in range(n_len):
        acc = w[0] * p[i]
        for d in range(1, n_len - i):
            acc = acc + w[d] * p[i + d]
        out.append(acc)
    return out


cpdef object dot_slice(list p, list w, Py_ssize_t w_start):
    cdef Py_ssize_t i, n = len(p)
    cdef object acc = None, t
    for i in range(n):
        t = p[i] * w[w_start + i]
        acc = t if acc is None else acc + t
    return acc


cpdef tuple identity_rows(list f, list g):
    cdef Py_ssize_t n, n_len = len(f)
    cdef list lhs = [], mid = [], rhs = []
    cdef object gn, gp, dg, rn, rho, r_prev
    r_prev = f[0] / g[0]
    for n in range(1, n_len):
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


cpdef tuple minmax(list vals):
    cdef Py_ssize_t i, n = len(vals)
    cdef object lo = vals[0], hi = vals[0], v
    for i in range(n):
        v = vals[i]
        if v < lo:
            lo = v
        elif v > hi:
            hi = v
    return lo, hi
