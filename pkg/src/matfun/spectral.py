"""Eigenvalues with multiplicities from the characteristic polynomial.

Pipeline for a polynomial p of degree n:

1. square-free part s = p / gcd(p, p');
2. Aberth-Ehrlich on s gives one seed per distinct root, and Aberth on p
   itself gives all n roots, which for a multiple root come out as a small
   cluster;
3. every root of p joins its nearest seed; the cluster sizes are the
   multiplicities and each eigenvalue is refined by Newton's method on
   p^(m-1), where an m-fold root is simple;
4. the multiplicity implied by vanishing derivatives at the refined root is
   cross-checked against the cluster size; on disagreement the cluster size
   is kept and a warning is attached.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._config import MAX_ITERS, tol
from ._text import format_complex, parse_complex
from .errors import DimensionMismatch, InconsistentMultiplicities, InvalidInput, NoConvergence
from .poly import Polynomial, poly_bezout, poly_divmod


@dataclass(frozen=True, eq=False)
class SpectrumEstimate:
    eigenvalues: tuple
    multiplicities: tuple
    char_poly: Polynomial = None
    warnings: tuple = field(default=())

    def __post_init__(self):
        ev = tuple(complex(v) for v in self.eigenvalues)
        ms = tuple(int(m) for m in self.multiplicities)
        if len(ev) != len(ms):
            raise InvalidInput("eigenvalues and multiplicities differ in length")
        if any(m < 1 for m in ms):
            raise InvalidInput("multiplicities must be >= 1")
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "multiplicities", ms)
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def dim(self):
        return sum(self.multiplicities)

    @property
    def nodes(self):
        return list(zip(self.eigenvalues, self.multiplicities))

    def to_json(self):
        out = {
            "eigenvalues": [
                {"value": format_complex(v), "multiplicity": m} for v, m in self.nodes
            ]
        }
        if self.char_poly is not None:
            out["char_poly"] = self.char_poly.to_json()
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            items = obj["eigenvalues"]
            pairs = [(parse_complex(it["value"]), int(it["multiplicity"])) for it in items]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed spectrum JSON: {exc}") from None
        return spectrum_from_pairs(pairs)


def spectrum_from_pairs(pairs, n=None):
    """User-supplied spectrum; checks distinctness and, if given, the dimension."""
    from .interp import _check_distinct

    pairs = [(complex(v), int(m)) for v, m in pairs]
    if not pairs:
        raise InvalidInput("empty spectrum")
    _check_distinct([v for v, _ in pairs])
    est = SpectrumEstimate([v for v, _ in pairs], [m for _, m in pairs])
    if n is not None and est.dim != n:
        raise DimensionMismatch(f"spectrum multiplicities sum to {est.dim}, matrix has size {n}")
    return est


def as_matrix(A):
    A = np.array(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInput("matrix entries must be finite")
    return A


def characteristic_polynomial(A):
    """Monic det(xI - A) by the Faddeev-LeVerrier recurrence."""
    A = as_matrix(A)
    n = A.shape[0]
    c = np.zeros(n + 1, dtype=np.complex128)
    c[n] = 1.0
    M = np.zeros_like(A)
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        M = A @ M + c[n - k + 1] * eye
        c[n - k] = -np.trace(A @ M) / k
    return Polynomial(c, trim=False)


def _aberth_roots(p, seeds=None):
    """All roots of a monic polynomial (ascending coefficients).

    With ``seeds`` (the distinct roots, from the square-free part) a result
    leaving some seed without a nearest root is rejected: an approximation
    stalled inside the rounding disc of a multiple root.  The iteration then
    continues without freezing so that the surplus root is pushed out.
    """
    c = p.coeffs
    # exact zero roots: the rounding-level stopping test never fires at z = 0
    zeros = int(np.argmax(c != 0))
    if zeros:
        if seeds is not None:
            seeds = np.delete(seeds, np.argmin(np.abs(seeds)))
        rest = _aberth_roots(Polynomial(c[zeros:], trim=False), seeds) if c.shape[0] - zeros > 1 else []
        return np.concatenate([np.zeros(zeros, dtype=np.complex128), rest])
    n = c.shape[0] - 1
    if n == 1:
        return np.array([-c[0] / c[1]])
    center = -c[n - 1] / (n * c[n])
    shifted = _kernels.taylor_coeffs(c, center, n)
    radius = abs(shifted[0]) ** (1.0 / n)
    if radius == 0.0 or not np.isfinite(radius):
        # Fujiwara bound on |root - center|
        radius = 2.0 * max(abs(shifted[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    if radius == 0.0:
        radius = 1e-8 * (1.0 + abs(center))
    angles = 2.0 * np.pi * np.arange(n) / n + 0.7
    z = (center + radius * np.exp(1j * angles)).astype(np.complex128)
    for _ in range(3):
        z, done, _ = _kernels.aberth(c, z, MAX_ITERS, True)
        if not np.all(done):
            break
        if seeds is None or not _orphaned(z, seeds):
            return z
        z, _, _ = _kernels.aberth(c, z, MAX_ITERS // 4, False)
    raise NoConvergence(f"Aberth iteration did not converge in {MAX_ITERS} steps")


def _orphaned(roots, seeds):
    owner = np.argmin(np.abs(roots[:, None] - seeds[None, :]), axis=1)
    return np.unique(owner).shape[0] < seeds.shape[0]


def _vanishing_order(p, lam, limit):
    """Largest q <= limit with |p^(j)(lam)/j!| negligible for every j < q."""
    c = p.coeffs
    n = c.shape[0]
    taylor = p.taylor(lam, limit)
    mags = np.abs(c)
    q = 0
    for j in range(min(limit, n - 1) + 1):
        scale = sum(math.comb(i, j) * mags[i] * abs(lam) ** (i - j) for i in range(j, n))
        if abs(taylor[j]) <= tol("deriv_vanish") * scale:
            q = j + 1
        else:
            break
    return q


def _refine(p, lam, m, reach):
    """Newton on p^(m-1), whose root at an m-fold root of p is simple.

    Steps never leave the disc of radius ``reach`` around the start, so the
    iteration cannot jump to a neighbouring critical point.
    """
    g = p.derivative(m - 1) if m > 1 else p
    dg = g.derivative()
    best, best_val = lam, abs(g(lam))
    z = lam
    for _ in range(8):
        d = dg(z)
        if d == 0:
            break
        z = z - g(z) / d
        if abs(z - lam) > reach:
            break
        val = abs(g(z))
        if val < best_val:
            best, best_val = z, val
        else:
            break
    return best


def _split_radius(p, lam, others, m):
    """Radius an m-fold root at lam splits into under relative backward error eta.

    p is monic, so with the cluster collapsed onto lam its m-th Taylor
    coefficient there is prod (lam - r) over the roots ``others`` outside it.
    """
    c = p.coeffs
    mags = np.abs(c)
    size = float(np.sum(mags * abs(lam) ** np.arange(c.shape[0])))
    lead = float(np.prod(np.abs(lam - np.asarray(others)))) if len(others) else 1.0
    if lead == 0.0:
        # a root outside the cluster sits at its centre
        return 0.0
    return (tol("split_eta") * size / lead) ** (1.0 / m)


def _comparable(a, b):
    # the pieces of one split multiple root sit about as far apart as they are wide
    wide = 0.0
    for cl in (a, b):
        if len(cl) > 1:
            center = complex(np.mean(cl))
            wide = max(wide, max(abs(r - center) for r in cl))
    if wide == 0.0:
        return True
    gap = abs(complex(np.mean(a)) - complex(np.mean(b)))
    return gap <= 4.0 * wide


def find_roots_with_multiplicity(p, cluster_tol=None):
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree < 1:
        raise InvalidInput("need a polynomial of degree >= 1")
    p = p.monic()
    n = p.degree
    g, _, _ = poly_bezout(p, p.derivative())
    s = poly_divmod(p, g)[0].monic() if g.degree > 0 else p
    seeds = _aberth_roots(s)
    roots = _aberth_roots(p, seeds) if s.degree < n else seeds

    # every root of p joins its nearest seed
    owner = np.argmin(np.abs(roots[:, None] - seeds[None, :]), axis=1)
    clusters = [list(roots[owner == k]) for k in range(seeds.shape[0]) if np.any(owner == k)]
    # boxed once so that cluster membership can be tested by identity
    members = [r for cl in clusters for r in cl]

    big = max(abs(r) for r in roots)
    ctol = (tol("cluster") if cluster_tol is None else cluster_tol) * (1.0 + big)
    warnings = []

    def plausible(cl):
        # could these roots be one perturbed len(cl)-fold root?
        if len(cl) == 1:
            return 0.0
        center = complex(np.mean(cl))
        spread = max(abs(r - center) for r in cl)
        if spread <= ctol:
            return 0.0
        inside = {id(r) for r in cl}
        others = [r for r in members if id(r) not in inside]
        # a split multiple root leaves no other root inside its disc
        if any(abs(r - center) < spread for r in others):
            return np.inf
        radius = _split_radius(p, center, others, len(cl))
        return spread / radius if radius > 0.0 else np.inf

    # a seed can wrongly collect a neighbouring simple root: dissolve clusters
    # whose spread no single multiple root explains
    checked = []
    for cl in clusters:
        if plausible(cl) <= 1.0:
            checked.append(cl)
        else:
            warnings.append("split a root cluster the gcd step had joined")
            checked.extend([r] for r in cl)
    clusters = checked

    # and can leave one multiple root as several nearby seeds
    while len(clusters) > 1:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                if not _comparable(clusters[a], clusters[b]):
                    continue
                score = plausible(clusters[a] + clusters[b])
                if score <= 1.0 and (best is None or score < best[0]):
                    best = (score, a, b)
        if best is None:
            break
        _, a, b = best
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
        warnings.append("merged root clusters the gcd step had left apart")

    eigs, mults = [], []
    for cl in clusters:
        m = len(cl)
        center = complex(np.mean(cl))
        reach = 2.0 * max(abs(r - center) for r in cl) + 1e-12 * (1.0 + abs(center))
        lam = _refine(p, center, m, reach)
        q = _vanishing_order(p, lam, m)
        if q != m:
            warnings.append(
                f"eigenvalue {format_complex(lam)}: derivative test suggests multiplicity {q}, "
                f"cluster has {m}; keeping {m}"
            )
        eigs.append(lam)
        mults.append(m)

    if not np.any(p.coeffs.imag):
        snap = 1e-13
        eigs = [complex(v.real, 0.0) if abs(v.imag) <= snap * (1.0 + abs(v)) else v for v in eigs]
    if sum(mults) != n:
        raise InconsistentMultiplicities(f"multiplicities sum to {sum(mults)}, degree is {n}")
    order = sorted(range(len(eigs)), key=lambda k: (eigs[k].real, eigs[k].imag))
    return SpectrumEstimate(
        [eigs[k] for k in order], [mults[k] for k in order], p, tuple(dict.fromkeys(warnings))
    )


def spectrum_of(A, cluster_tol=None):
    return find_roots_with_multiplicity(characteristic_polynomial(A), cluster_tol=cluster_tol)
