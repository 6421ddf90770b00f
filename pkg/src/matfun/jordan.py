"""Jordan normal form assembled from resolvent projectors.

Each resolvent L_i(A) projects onto the generalized eigenspace E_i, so an
orthonormal basis of its range gives E_i directly. Inside E_i the nilpotent
N = A - λ_i I is split into cycles v, Nv, ..., N^(p-1) v, longest first.
"""

from dataclasses import dataclass

import numpy as np

from ._config import tol
from ._text import format_complex, format_real
from .errors import DependentCycles, RankMismatch, VerificationFailed
from .matrix_functions import matrix_to_json, resolvents_at_matrix
from .spectral import as_matrix


def _orth(M, cut):
    """Orthonormal basis of the column space of M (singular values > cut)."""
    if M.shape[1] == 0:
        return M
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    return U[:, : int(np.sum(s > cut))]


def _complement(M, n, cut):
    """Orthonormal basis of the orthogonal complement of span(M) in C^n."""
    if M.shape[1] == 0:
        return np.eye(n, dtype=np.complex128)
    U, s, _ = np.linalg.svd(M, full_matrices=True)
    return U[:, int(np.sum(s > cut)) :]


def _null(M, cut):
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    return Vh[int(np.sum(s > cut)) :].conj().T


def generalized_eigenspace_basis(A, decomp, i):
    """Orthonormal basis (as columns) of the range of the i-th resolvent."""
    L = decomp.resolvents[i]
    m = decomp.spectrum.multiplicities[i]
    U, s, _ = np.linalg.svd(L)
    rank = int(np.sum(s > tol("rank") * s[0])) if s[0] > 0 else 0
    if rank != m:
        raise RankMismatch(
            f"resolvent {i} has numerical rank {rank}, eigenvalue multiplicity is {m}"
        )
    return U[:, :m]


def _kernel_chain(N, cut):
    """Bases K[g] of ker N^g for g = 0, 1, ... until the whole space.

    ker N^g = {v : N v in ker N^(g-1)}, found one power at a time so every
    rank decision is taken on N itself rather than on its powers.
    """
    d = N.shape[0]
    chain = [np.zeros((d, 0), dtype=np.complex128)]
    while chain[-1].shape[1] < d:
        comp = _complement(chain[-1], d, 0.5)
        nxt = _null(comp.conj().T @ N, cut)
        if nxt.shape[1] <= chain[-1].shape[1]:
            raise DependentCycles("nilpotent part does not reach the whole generalized eigenspace")
        chain.append(nxt)
    return chain


def _cycles_once(N, chain, cut, rotate):
    d = N.shape[0]
    top = len(chain) - 1
    cycles = []
    # vectors of grade g already covered by longer cycles
    covered = {g: [] for g in range(1, top + 1)}
    for g in range(top, 0, -1):
        have = [chain[g - 1]] + [v[:, None] for v in covered[g]]
        M = _orth(np.hstack(have), cut)
        need = chain[g].shape[1] - M.shape[1]
        if need < 0:
            raise DependentCycles(f"grade {g}: lower grades already exceed the kernel")
        if need == 0:
            continue
        P = chain[g] - M @ (M.conj().T @ chain[g])
        U, s, _ = np.linalg.svd(P, full_matrices=False)
        if s.shape[0] < need or s[need - 1] <= cut:
            raise DependentCycles(f"grade {g}: no {need} independent new chain heads")
        heads = U[:, :need]
        if rotate is not None:
            heads = heads @ rotate(need)
        for k in range(need):
            v = heads[:, k]
            cyc = [v]
            for h in range(g - 1, 0, -1):
                cyc.append(N @ cyc[-1])
                covered[h].append(cyc[-1])
            cycles.append(cyc)
    basis = np.column_stack([v for cyc in cycles for v in cyc])
    if basis.shape[1] != d:
        raise DependentCycles(f"cycles span {basis.shape[1]} vectors, space has dimension {d}")
    s = np.linalg.svd(basis, compute_uv=False)
    if s[-1] <= cut * s[0]:
        raise DependentCycles("union of cycles is numerically dependent")
    return cycles


def cycle_basis(A, lam, subspace, *, attempts=3):
    """Cycles of generalized eigenvectors spanning ``subspace`` (orthonormal columns).

    Each cycle is listed from its head v down to the eigenvector N^(p-1) v.
    """
    A = as_matrix(A)
    B = np.asarray(subspace, dtype=np.complex128)
    n = A.shape[0]
    N = B.conj().T @ (A - lam * np.eye(n)) @ B
    cut = tol("jordan") * (1.0 + float(np.linalg.norm(A, "fro")))
    chain = _kernel_chain(N, cut)
    rng = np.random.default_rng(0)

    def rotate(k):
        Q, _ = np.linalg.qr(rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)))
        return Q

    last = None
    for attempt in range(attempts):
        try:
            local = _cycles_once(N, chain, cut, None if attempt == 0 else rotate)
            return [[B @ v for v in cyc] for cyc in local]
        except DependentCycles as exc:
            last = exc
    raise last


@dataclass(frozen=True, eq=False)
class JordanForm:
    P: np.ndarray
    J: np.ndarray
    blocks: tuple
    residual: float

    def to_json(self):
        return {
            "blocks": [{"lambda": format_complex(lam), "size": k} for lam, k in self.blocks],
            "P": matrix_to_json(self.P),
            "J": matrix_to_json(self.J),
            "residual": format_real(self.residual),
        }


def jordan_form(A, spectrum=None):
    """A = P J P^-1 with eigenvector-first cycles as the columns of P.

    Blocks are ordered by eigenvalue (real part, then imaginary part) and,
    for one eigenvalue, by decreasing size.
    """
    A = as_matrix(A)
    n = A.shape[0]
    decomp = resolvents_at_matrix(A, spectrum)
    eigs = decomp.spectrum.eigenvalues
    order = sorted(range(len(eigs)), key=lambda i: (eigs[i].real, eigs[i].imag))
    cols, blocks = [], []
    for i in order:
        lam = eigs[i]
        basis = generalized_eigenspace_basis(A, decomp, i)
        cycles = sorted(cycle_basis(A, lam, basis), key=len, reverse=True)
        for cyc in cycles:
            cols.extend(reversed(cyc))
            blocks.append((lam, len(cyc)))
    P = np.column_stack(cols)
    J = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for lam, k in blocks:
        for r in range(k):
            J[pos + r, pos + r] = lam
            if r + 1 < k:
                J[pos + r, pos + r + 1] = 1.0
        pos += k
    residual = float(np.linalg.norm(A @ P - P @ J, "fro"))
    limit = tol("jordan") * float(np.linalg.norm(A, "fro")) * float(np.linalg.cond(P))
    if residual > limit:
        raise VerificationFailed(f"||AP - PJ||_F = {residual:.3g} exceeds {limit:.3g}")
    return JordanForm(P, J, tuple(blocks), residual)
