"""Test-only references, independent of the package's own algorithms."""

import math

import numpy as np


def expm_taylor(A, terms=30):
    """exp(A) by truncated Taylor series with scaling and squaring."""
    A = np.asarray(A, dtype=np.complex128)
    norm = np.linalg.norm(A, 1)
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    B = A / 2**s
    E = np.eye(A.shape[0], dtype=np.complex128)
    T = E.copy()
    for k in range(1, terms):
        T = T @ B / k
        E = E + T
    for _ in range(s):
        E = E @ E
    return E


def gauss_inverse(A):
    """Gauss-Jordan elimination with partial pivoting."""
    A = np.array(A, dtype=np.complex128)
    n = A.shape[0]
    M = np.hstack([A, np.eye(n, dtype=np.complex128)])
    for col in range(n):
        piv = col + int(np.argmax(np.abs(M[col:, col])))
        M[[col, piv]] = M[[piv, col]]
        M[col] /= M[col, col]
        for r in range(n):
            if r != col:
                M[r] -= M[r, col] * M[col]
    return M[:, n:]


def rk4(A, y0, t, h=1e-4):
    """Classical fourth-order Runge-Kutta for y' = A y."""
    A = np.asarray(A, dtype=np.complex128)
    y = np.array(y0, dtype=np.complex128)
    steps = int(round(t / h))
    h = t / steps
    for _ in range(steps):
        k1 = A @ y
        k2 = A @ (y + 0.5 * h * k1)
        k3 = A @ (y + 0.5 * h * k2)
        k4 = A @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def confluent_solve(nodes):
    """Monomial coefficients from raw derivative conditions by a dense solve.

    ``nodes``: list of (lambda, [f(lambda), f'(lambda), ...]).
    """
    n = sum(len(d) for _, d in nodes)
    V = np.zeros((n, n), dtype=np.complex128)
    rhs = np.zeros(n, dtype=np.complex128)
    row = 0
    for lam, derivs in nodes:
        for m, c in enumerate(derivs):
            for i in range(m, n):
                V[row, i] = math.perm(i, m) * lam ** (i - m)
            rhs[row] = c
            row += 1
    return np.linalg.solve(V, rhs)


def poly_derivs(coeffs, x, count):
    """Raw derivatives p(x), p'(x), ... of an ascending coefficient list."""
    c = np.array(coeffs, dtype=np.complex128)
    out = []
    for _ in range(count):
        out.append(np.polyval(c[::-1], x) if c.size else 0j)
        c = c[1:] * np.arange(1, c.size)
    return out


def random_P(rng, n, kappa):
    """Complex matrix with 2-norm condition number kappa."""
    Q1, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    Q2, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return Q1 @ np.diag(np.geomspace(1.0, kappa, n)) @ Q2


def jordan_matrix(blocks):
    n = sum(k for _, k in blocks)
    J = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for lam, k in blocks:
        for r in range(k):
            J[pos + r, pos + r] = lam
            if r + 1 < k:
                J[pos + r, pos + r + 1] = 1.0
        pos += k
    return J


def random_case(rng, nmax=8, kappa_max=100.0):
    """P J P^-1 with random Jordan structure: distinct eigenvalues in the box
    [-2, 2]^2 at least 0.5 apart, random block partition, cond(P) <= kappa_max.

    Returns (A, blocks, eigenvalues, algebraic multiplicities).
    """
    n = int(rng.integers(2, nmax + 1))
    k = int(rng.integers(1, n + 1))
    lams = []
    while len(lams) < k:
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if all(abs(z - w) >= 0.5 for w in lams):
            lams.append(z)
    # every eigenvalue gets >= 1, the rest distributed at random
    sizes = [1] * k
    for _ in range(n - k):
        sizes[int(rng.integers(k))] += 1
    blocks = []
    for lam, m in zip(lams, sizes):
        left = m
        while left:
            b = int(rng.integers(1, left + 1))
            blocks.append((lam, b))
            left -= b
    kappa = float(np.exp(rng.uniform(0, np.log(kappa_max))))
    P = random_P(rng, n, kappa)
    A = P @ jordan_matrix(blocks) @ np.linalg.inv(P)
    return A, blocks, lams, sizes


def suite(seed, count, **kw):
    rng = np.random.default_rng(seed)
    return [random_case(rng, **kw) for _ in range(count)]


def match_spectrum(got_pairs, want_pairs):
    """Pair each expected eigenvalue with the nearest reported one.

    Returns (multiplicities equal, max eigenvalue error).
    """
    if len(got_pairs) != len(want_pairs):
        return False, np.inf
    worst = 0.0
    used = set()
    for lam, m in want_pairs:
        k = min((i for i in range(len(got_pairs)) if i not in used),
                key=lambda i: abs(got_pairs[i][0] - lam))
        used.add(k)
        if got_pairs[k][1] != m:
            return False, np.inf
        worst = max(worst, abs(got_pairs[k][0] - lam))
    return True, worst
