"""Functions of square matrices through interpolation at the spectrum.

For a function f and a matrix A with eigenvalues λ_i of multiplicities m_i,
f(A) = L(A) where L interpolates f and its first m_i - 1 derivatives at each
λ_i. Nothing here forms a Jordan basis.
"""

from dataclasses import dataclass

import numpy as np

from ._config import tol
from ._text import format_complex, parse_complex
from .errors import (
    DimensionMismatch,
    IdentityCheckFailed,
    InvalidInput,
    PoleAtEigenvalue,
    PoleAtNode,
    SingularMatrix,
)
from .interp import hermite_from_function, newton_form, principal_resolvent, spec_from_function
from .poly import Polynomial
from .scalar import RECIPROCAL, ScaledExp, as_function, jet_of, pole_tol
from .spectral import SpectrumEstimate, as_matrix, spectrum_from_pairs, spectrum_of


def matrix_to_json(M):
    M = np.asarray(M)
    return {"rows": [[format_complex(x) for x in row] for row in M]}


def matrix_from_json(obj):
    try:
        rows = obj["rows"]
        M = [[parse_complex(x) for x in row] for row in rows]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed matrix JSON: {exc}") from None
    if not M or any(len(r) != len(M) for r in M):
        raise DimensionMismatch("matrix JSON must hold a non-empty square array of rows")
    return as_matrix(M)


def poly_at_matrix(p, A):
    """p(A) by Horner's rule."""
    A = as_matrix(A)
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    n = A.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    if p.is_zero():
        return np.zeros_like(A)
    c = p.coeffs
    R = c[-1] * eye
    for k in range(c.shape[0] - 2, -1, -1):
        R = R @ A
        R[np.diag_indices(n)] += c[k]
    return R


def newton_at_matrix(d, z, A):
    """Newton-form evaluation sum_k d[k] prod_{j<k} (A - z[j] I)."""
    A = as_matrix(A)
    n = A.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    R = d[-1] * eye
    for k in range(len(d) - 2, -1, -1):
        R = R @ (A - z[k] * eye)
        R[np.diag_indices(n)] += d[k]
    return R


def resolve_spectrum(A, spectrum=None):
    """Use the supplied spectrum (checked against the size of A) or compute one."""
    A = as_matrix(A)
    if spectrum is None:
        return spectrum_of(A)
    if not isinstance(spectrum, SpectrumEstimate):
        spectrum = spectrum_from_pairs(spectrum)
    if spectrum.dim != A.shape[0]:
        raise DimensionMismatch(
            f"spectrum multiplicities sum to {spectrum.dim}, matrix has size {A.shape[0]}"
        )
    return spectrum


def _at_spectrum(fn, *args):
    # a pole at an interpolation node is a pole at an eigenvalue here
    try:
        return fn(*args)
    except PoleAtEigenvalue:
        raise
    except PoleAtNode as exc:
        raise PoleAtEigenvalue(str(exc)) from None


def apply_function(f, A, spectrum=None, *, basis="monomial"):
    """f(A) as L(A), L the interpolant of f at the eigenvalues of A.

    ``basis="newton"`` evaluates L in Newton form, as products of
    ``(A - λ_j I)``, instead of by Horner's rule on monomial coefficients.
    """
    A = as_matrix(A)
    f = as_function(f)
    spectrum = resolve_spectrum(A, spectrum)
    if basis == "monomial":
        L = _at_spectrum(hermite_from_function, f, spectrum.nodes)
        return poly_at_matrix(L, A)
    if basis == "newton":
        spec = _at_spectrum(spec_from_function, f, spectrum.nodes)
        d, z = newton_form(spec)
        return newton_at_matrix(d, z, A)
    raise InvalidInput(f"unknown evaluation basis {basis!r}")


def inverse_via_interp(A, spectrum=None, *, return_residual=False):
    """A^-1 as L(A) with L interpolating 1/x; optionally also ||A X - I||_F."""
    A = as_matrix(A)
    spectrum = resolve_spectrum(A, spectrum)
    for lam in spectrum.eigenvalues:
        if abs(lam) < pole_tol(lam):
            raise SingularMatrix(f"0 is an eigenvalue (found {format_complex(lam)})")
    X = apply_function(RECIPROCAL, A, spectrum)
    if return_residual:
        res = float(np.linalg.norm(A @ X - np.eye(A.shape[0]), "fro"))
        return X, res
    return X


def matrix_exp(A, t=1.0, spectrum=None):
    """exp(tA), interpolating x -> exp(t x) at the eigenvalues of A."""
    A = as_matrix(A)
    t = complex(t)
    if t == 0:
        return np.eye(A.shape[0], dtype=np.complex128)
    return apply_function(ScaledExp(t), A, spectrum)


def matrix_tol(A, spectrum):
    A = as_matrix(A)
    big = max(spectrum.multiplicities)
    return tol("matrix") * (1.0 + float(np.linalg.norm(A, "fro"))) ** big


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    spectrum: SpectrumEstimate
    resolvents: tuple
    nilpotent_parts: tuple

    def to_json(self):
        out = self.spectrum.to_json()
        out["resolvents"] = [matrix_to_json(L) for L in self.resolvents]
        out["nilpotent_parts"] = [matrix_to_json(N) for N in self.nilpotent_parts]
        return out


@dataclass(frozen=True)
class IdentityReport:
    """Frobenius residuals of the resolvent identities, with the size each is measured against."""

    partition: float
    products: float
    idempotence: float
    nilpotence: float
    partition_scale: float
    products_scale: float
    idempotence_scale: float
    nilpotence_scale: float

    def relative(self):
        return {
            "partition": self.partition / max(self.partition_scale, 1.0),
            "products": self.products / max(self.products_scale, 1.0),
            "idempotence": self.idempotence / max(self.idempotence_scale, 1.0),
            "nilpotence": self.nilpotence / max(self.nilpotence_scale, 1.0),
        }

    def worst(self):
        return max(self.relative().values())

    def to_json(self):
        return {
            "residuals": {
                "partition": self.partition,
                "products": self.products,
                "idempotence": self.idempotence,
                "nilpotence": self.nilpotence,
            },
            "relative": self.relative(),
        }


def verify_resolvent_identities(decomp, A):
    """Residuals of: sum L_i = I, L_i L_j = 0, L_i^2 = L_i, (A - λ_i I)^m_i L_i = 0.

    Each residual is the worst over i (and j); its scale is the norm the
    terms being cancelled are built from.
    """
    A = as_matrix(A)
    n = A.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    Ls = decomp.resolvents
    norms = [float(np.linalg.norm(L, "fro")) for L in Ls]

    total = np.zeros_like(A)
    for L in Ls:
        total = total + L
    partition = float(np.linalg.norm(total - eye, "fro"))
    partition_scale = sum(norms)

    products = products_scale = 0.0
    idem = idem_scale = 0.0
    nil = nil_scale = 0.0
    spec = decomp.spectrum
    for i, (lam, m) in enumerate(spec.nodes):
        Li = Ls[i]
        for j in range(len(Ls)):
            if j != i:
                r = float(np.linalg.norm(Li @ Ls[j], "fro"))
                if r >= products:
                    products, products_scale = r, norms[i] * norms[j]
        r = float(np.linalg.norm(Li @ Li - Li, "fro"))
        if r >= idem:
            idem, idem_scale = r, norms[i] ** 2
        shifted = A - lam * eye
        acc = Li
        for _ in range(m):
            acc = shifted @ acc
        r = float(np.linalg.norm(acc, "fro"))
        if r >= nil:
            nil = r
            nil_scale = float(np.linalg.norm(shifted, 2)) ** m * norms[i]
    return IdentityReport(
        partition, products, idem, nil, partition_scale, products_scale, idem_scale, nil_scale
    )


def resolvents_at_matrix(A, spectrum=None):
    """Principal resolvents L_i(A): projectors onto the generalized eigenspaces."""
    A = as_matrix(A)
    spectrum = resolve_spectrum(A, spectrum)
    eye = np.eye(A.shape[0], dtype=np.complex128)
    nodes = spectrum.nodes
    resolvents = tuple(poly_at_matrix(principal_resolvent(nodes, i), A) for i in range(len(nodes)))
    nilpotent = tuple((A - lam * eye) @ L for (lam, _), L in zip(nodes, resolvents))
    decomp = SpectralDecomposition(spectrum, resolvents, nilpotent)
    report = verify_resolvent_identities(decomp, A)
    limit = matrix_tol(A, spectrum)
    if report.worst() > limit:
        raise IdentityCheckFailed(
            f"resolvent identities violated: {report.relative()} exceeds {limit:.3g}; "
            "the spectrum is probably inaccurate"
        )
    return decomp


def taylor_resolvent_apply(f, A, decomp):
    """f(A) = sum_i T_i(A) L_i(A), T_i the degree m_i - 1 Taylor polynomial of f at λ_i."""
    A = as_matrix(A)
    f = as_function(f)
    eye = np.eye(A.shape[0], dtype=np.complex128)
    out = np.zeros_like(A)
    for (lam, m), L in zip(decomp.spectrum.nodes, decomp.resolvents):
        jet = _at_spectrum(jet_of, f, lam, m - 1).coeffs
        shifted = A - lam * eye
        term = jet[0] * L
        power = L
        for p in range(1, m):
            power = shifted @ power
            term = term + jet[p] * power
        out = out + term
    return out
