"""Hot inner loops, with a numba path and a pure-numpy path.

Each kernel is written twice: a scalar-loop body that numba compiles with
``njit`` and a vectorized numpy body. ``MATFUN_DISABLE_NUMBA=1`` (or numba
missing) selects the numpy bodies at import time. ``JIT`` and ``NUMPY`` hold
both families so tests and ``benchmarks/bench_kernels.py`` can compare them
side by side.

All arrays are complex128, polynomial coefficients ascending.
"""

import cmath
import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLE_NUMBA = os.environ.get("MATFUN_DISABLE_NUMBA", "").strip() not in ("", "0")
USE_NUMBA = numba is not None and not DISABLE_NUMBA

_EPS = np.finfo(np.float64).eps


# ---------------------------------------------------------------------------
# loop bodies (compiled by numba when available)


def smith_div(a, b):
    # Smith's algorithm: scale by the larger component of b to avoid overflow.
    br = b.real
    bi = b.imag
    if abs(br) >= abs(bi):
        if br == 0.0:
            return complex(a.real / br, a.imag / br)
        r = bi / br
        d = br + bi * r
        return complex((a.real + a.imag * r) / d, (a.imag - a.real * r) / d)
    r = br / bi
    d = br * r + bi
    return complex((a.real * r + a.imag) / d, (a.imag * r - a.real) / d)


def _loop_horner(p, x):
    acc = 0j
    for k in range(p.shape[0] - 1, -1, -1):
        acc = acc * x + p[k]
    return acc


def _loop_taylor_coeffs(p, c, order):
    n = p.shape[0]
    out = np.zeros(order + 1, dtype=np.complex128)
    b = p.copy()
    m = n
    for j in range(order + 1):
        if m == 0:
            break
        # synthetic division of b by (x - c): remainder b(c), quotient in place
        acc = b[m - 1]
        for k in range(m - 2, -1, -1):
            nxt = b[k] + acc * c
            b[k + 1] = acc
            acc = nxt
        out[j] = acc
        for k in range(m - 1):
            b[k] = b[k + 1]
        m -= 1
    return out


def _loop_series_mul(a, b):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        acc = 0j
        for j in range(k + 1):
            acc += a[j] * b[k - j]
        out[k] = acc
    return out


def _loop_series_div(a, b):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    b0 = b[0]
    for k in range(n):
        acc = a[k]
        for j in range(1, k + 1):
            acc -= b[j] * out[k - j]
        out[k] = _div(acc, b0)
    return out


def _loop_series_exp(a):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    out[0] = cmath.exp(a[0])
    for k in range(1, n):
        acc = 0j
        for j in range(1, k + 1):
            acc += j * a[j] * out[k - j]
        out[k] = acc / k
    return out


def _loop_series_sincos(a):
    n = a.shape[0]
    s = np.zeros(n, dtype=np.complex128)
    c = np.zeros(n, dtype=np.complex128)
    s[0] = cmath.sin(a[0])
    c[0] = cmath.cos(a[0])
    for k in range(1, n):
        acc_s = 0j
        acc_c = 0j
        for j in range(1, k + 1):
            acc_s += j * a[j] * c[k - j]
            acc_c += j * a[j] * s[k - j]
        s[k] = acc_s / k
        c[k] = -acc_c / k
    return s, c


def _loop_confluent_dd(z, taylor):
    # taylor[i, k]: k-th Taylor coefficient at z[i], shape (n, n); repeated
    # nodes must be contiguous in z
    n = z.shape[0]
    col = taylor[:, 0].copy()
    out = np.zeros(n, dtype=np.complex128)
    out[0] = col[0]
    for k in range(1, n):
        for i in range(n - k):
            if z[i + k] == z[i]:
                col[i] = taylor[i, k]
            else:
                col[i] = (col[i + 1] - col[i]) / (z[i + k] - z[i])
        out[k] = col[0]
    return out


def _loop_newton_to_monomial(d, z):
    n = d.shape[0]
    c = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return c
    c[0] = d[n - 1]
    deg = 0
    for k in range(n - 2, -1, -1):
        zk = z[k]
        # c <- c * (x - zk) + d[k]
        c[deg + 1] = c[deg]
        for j in range(deg, 0, -1):
            c[j] = c[j - 1] - zk * c[j]
        c[0] = d[k] - zk * c[0]
        deg += 1
    return c


def _loop_aberth(p, z0, max_iters, freeze):
    # freeze=True stops updating a root once |p(z)| is at rounding level;
    # freeze=False keeps every root moving so none can stall inside the
    # rounding disc of a multiple root, and tests convergence at the end
    n = z0.shape[0]
    z = z0.copy()
    done = np.zeros(n, dtype=np.bool_)
    absp = np.abs(p)
    step = np.zeros(n, dtype=np.complex128)
    iters = 0
    for it in range(max_iters):
        iters = it + 1
        n_done = 0
        for i in range(n):
            if freeze and done[i]:
                step[i] = 0j
                n_done += 1
                continue
            zi = z[i]
            val = 0j
            der = 0j
            mag = 0.0
            azi = abs(zi)
            for k in range(p.shape[0] - 1, -1, -1):
                der = der * zi + val
                val = val * zi + p[k]
                mag = mag * azi + absp[k]
            if abs(val) <= 8.0 * p.shape[0] * 2.220446049250313e-16 * mag:
                done[i] = True
                if freeze:
                    step[i] = 0j
                    n_done += 1
                    continue
            elif not freeze:
                done[i] = False
            s = 0j
            for j in range(n):
                if j != i:
                    s += 1.0 / (zi - z[j])
            if der == 0j:
                step[i] = 1e-8 * (1.0 + azi)
                continue
            ratio = val / der
            step[i] = ratio / (1.0 - ratio * s)
        if n_done == n:
            break
        moved = 0.0
        for i in range(n):
            z[i] = z[i] - step[i]
            moved = max(moved, abs(step[i]) / (1.0 + abs(z[i])))
        if not freeze and moved <= 4.0 * 2.220446049250313e-16:
            break
    return z, done, iters


# ---------------------------------------------------------------------------
# numpy bodies


def _np_horner(p, x):
    return complex(np.polyval(p[::-1], x)) if p.shape[0] else 0j


def _np_taylor_coeffs(p, c, order):
    n = p.shape[0]
    out = np.zeros(order + 1, dtype=np.complex128)
    if n == 0:
        return out
    powers = np.power(complex(c), np.arange(n))
    for j in range(min(order, n - 1) + 1):
        # sum over i >= j of C(i, j) c^(i-j) p_i
        binom = np.array([math.comb(i, j) for i in range(j, n)], dtype=np.float64)
        out[j] = np.dot(binom * powers[: n - j], p[j:])
    return out


def _np_series_mul(a, b):
    return np.convolve(a, b)[: a.shape[0]].astype(np.complex128)


def _np_series_div(a, b):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        acc = a[k] - np.dot(b[1 : k + 1], out[k - 1 :: -1][:k]) if k else a[0]
        out[k] = smith_div(complex(acc), complex(b[0]))
    return out


def _np_series_exp(a):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    out[0] = np.exp(a[0])
    ja = np.arange(n) * a
    for k in range(1, n):
        out[k] = np.dot(ja[1 : k + 1], out[k - 1 :: -1][:k]) / k
    return out


def _np_series_sincos(a):
    n = a.shape[0]
    s = np.zeros(n, dtype=np.complex128)
    c = np.zeros(n, dtype=np.complex128)
    s[0] = np.sin(a[0])
    c[0] = np.cos(a[0])
    ja = np.arange(n) * a
    for k in range(1, n):
        s[k] = np.dot(ja[1 : k + 1], c[k - 1 :: -1][:k]) / k
        c[k] = -np.dot(ja[1 : k + 1], s[k - 1 :: -1][:k]) / k
    return s, c


def _np_confluent_dd(z, taylor):
    n = z.shape[0]
    col = taylor[:, 0].copy()
    out = np.zeros(n, dtype=np.complex128)
    if n == 0:
        return out
    out[0] = col[0]
    for k in range(1, n):
        same = z[k:] == z[: n - k]
        num = col[1 : n - k + 1] - col[: n - k]
        den = np.where(same, 1.0, z[k:] - z[: n - k])
        col[: n - k] = np.where(same, taylor[: n - k, k], num / den)
        out[k] = col[0]
    return out


def _np_newton_to_monomial(d, z):
    n = d.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.complex128)
    c = np.array([d[n - 1]], dtype=np.complex128)
    for k in range(n - 2, -1, -1):
        shifted = np.concatenate(([0j], c))
        shifted[:-1] -= z[k] * c
        shifted[0] += d[k]
        c = shifted
    return c


def _np_aberth(p, z0, max_iters, freeze):
    n = z0.shape[0]
    z = z0.copy()
    done = np.zeros(n, dtype=bool)
    rev = p[::-1]
    drev = (p[1:] * np.arange(1, p.shape[0]))[::-1]
    absrev = np.abs(rev)
    thresh = 8.0 * p.shape[0] * _EPS
    iters = 0
    for it in range(max_iters):
        iters = it + 1
        val = np.polyval(rev, z)
        mag = np.polyval(absrev, np.abs(z))
        small = np.abs(val) <= thresh * mag
        done = (done | small) if freeze else small
        if freeze and done.all():
            break
        der = np.polyval(drev, z) if drev.shape[0] else np.zeros(n, dtype=np.complex128)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        flat = der == 0
        ratio = val / np.where(flat, 1.0, der)
        step = ratio / (1.0 - ratio * s)
        step = np.where(flat, 1e-8 * (1.0 + np.abs(z)), step)
        if freeze:
            z = np.where(done, z, z - step)
        else:
            z = z - step
            if np.max(np.abs(step) / (1.0 + np.abs(z))) <= 4.0 * _EPS:
                break
    if not freeze:
        val = np.polyval(rev, z)
        done = np.abs(val) <= thresh * np.polyval(absrev, np.abs(z))
    return z, done, iters


# ---------------------------------------------------------------------------

_LOOP = {
    "horner": _loop_horner,
    "taylor_coeffs": _loop_taylor_coeffs,
    "series_mul": _loop_series_mul,
    "series_div": _loop_series_div,
    "series_exp": _loop_series_exp,
    "series_sincos": _loop_series_sincos,
    "confluent_dd": _loop_confluent_dd,
    "newton_to_monomial": _loop_newton_to_monomial,
    "aberth": _loop_aberth,
}

NUMPY = {
    "horner": _np_horner,
    "taylor_coeffs": _np_taylor_coeffs,
    "series_mul": _np_series_mul,
    "series_div": _np_series_div,
    "series_exp": _np_series_exp,
    "series_sincos": _np_series_sincos,
    "confluent_dd": _np_confluent_dd,
    "newton_to_monomial": _np_newton_to_monomial,
    "aberth": _np_aberth,
}

# loop bodies resolve _div when numba compiles them lazily on first call
_div = smith_div
JIT = {}
if numba is not None:
    _div = numba.njit(cache=True)(smith_div)
    for _name, _fn in _LOOP.items():
        JIT[_name] = numba.njit(cache=True)(_fn)

ACTIVE = JIT if USE_NUMBA else NUMPY

horner = ACTIVE["horner"]
taylor_coeffs = ACTIVE["taylor_coeffs"]
series_mul = ACTIVE["series_mul"]
series_div = ACTIVE["series_div"]
series_exp = ACTIVE["series_exp"]
series_sincos = ACTIVE["series_sincos"]
confluent_dd = ACTIVE["confluent_dd"]
newton_to_monomial = ACTIVE["newton_to_monomial"]
aberth = ACTIVE["aberth"]

