"""Default tolerances.

``MATFUN_TOL`` is read on every lookup and multiplies every default below,
so ``MATFUN_TOL=10`` loosens all checks tenfold and ``MATFUN_TOL=0.1``
tightens them.
"""

import os

DEFAULTS = {
    # scalar: |den(c)| < pole * (1 + |c|)
    "pole": 1e-12,
    # poly: trailing coefficients below trim * max|coeff| are dropped
    "trim": 1e-12,
    # poly: Euclid remainder treated as zero below gcd * running scale
    "gcd": 1e-10,
    # interp: nodes closer than node_sep * (1 + max|lambda|) collide
    "node_sep": 1e-9,
    # interp: post-hoc residual of the defining conditions, relative to data
    "cond": 1e-6,
    # interp: |c-coefficient| in extend_one_point below this is degenerate
    "degenerate": 1e-14,
    # spectral: two roots closer than cluster * (1 + max|lambda|) are one eigenvalue
    "cluster": 1e-6,
    # spectral: backward error assumed when judging whether a root cluster is one
    # multiple root (clusters of an m-fold root have radius ~ split_eta^(1/m))
    "split_eta": 1e-10,
    # spectral: relative size of p^(j)(lambda)/j! counted as vanishing
    "deriv_vanish": 1e-7,
    # matfun: identity residuals <= matrix * (1 + ||A||_F)^max(m)
    "matrix": 1e-8,
    # matfun / jordan: singular values above rank * sigma_max count
    "rank": 1e-8,
    # jordan: ||AP - PJ||_F <= jordan * ||A||_F * cond(P)
    "jordan": 1e-6,
}

MAX_NODES = 64
MAX_ITERS = 200


def tol_factor():
    raw = os.environ.get("MATFUN_TOL")
    if not raw:
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"MATFUN_TOL must be a positive number, got {raw!r}") from None
    if not value > 0.0:
        raise ValueError(f"MATFUN_TOL must be a positive number, got {raw!r}")
    return value


def tol(name):
    return DEFAULTS[name] * tol_factor()
