import numpy as np
import pytest

from oracles import jordan_matrix, random_P, suite

from matfun._text import parse_complex
from matfun.errors import RankMismatch
from matfun.jordan import cycle_basis, generalized_eigenspace_basis, jordan_form
from matfun.matrix_functions import SpectralDecomposition, resolvents_at_matrix

PAPER_A = np.array([[9, -15, -25], [1, 0, 0], [0, 1, 0]], dtype=complex)


def index_of(decomp, lam):
    return int(np.argmin([abs(v - lam) for v in decomp.spectrum.eigenvalues]))


def block_multiset(blocks, digits=6):
    return sorted((round(l.real, digits), round(l.imag, digits), k) for l, k in blocks)


def test_eigenspaces_of_diagonal():
    A = np.diag([1.0, 4.0, 1.0])
    d = resolvents_at_matrix(A)
    B = generalized_eigenspace_basis(A, d, index_of(d, 1.0))
    assert B.shape == (3, 2)
    # spans e1, e3
    assert np.linalg.norm(B[1]) < 1e-14


def test_eigenspace_paper_lambda_five():
    d = resolvents_at_matrix(PAPER_A)
    B = generalized_eigenspace_basis(PAPER_A, d, index_of(d, 5))
    assert B.shape == (3, 2)
    N = PAPER_A - 5 * np.eye(3)
    assert np.linalg.norm(N @ N @ B, axis=0).max() <= 1e-8


def test_eigenspace_of_jordan_block_is_everything():
    J = jordan_matrix([(2, 3)])
    d = resolvents_at_matrix(J)
    B = generalized_eigenspace_basis(J, d, 0)
    assert np.linalg.matrix_rank(B) == 3


def test_rank_mismatch():
    A = np.diag([1.0, 2.0])
    d = resolvents_at_matrix(A)
    fake = SpectralDecomposition(d.spectrum, (np.eye(2), d.resolvents[1]), d.nilpotent_parts)
    with pytest.raises(RankMismatch):
        generalized_eigenspace_basis(A, fake, 0)


def test_cycles_of_j2_plus_j1():
    J = jordan_matrix([(3, 2), (3, 1)])
    cycles = cycle_basis(J, 3, np.eye(3))
    assert sorted(len(c) for c in cycles) == [1, 2]
    N = J - 3 * np.eye(3)
    for c in cycles:
        assert np.linalg.norm(N @ c[-1]) < 1e-12


def test_cycles_paper_lambda_five():
    d = resolvents_at_matrix(PAPER_A)
    i = index_of(d, 5)
    cycles = cycle_basis(PAPER_A, d.spectrum.eigenvalues[i], generalized_eigenspace_basis(PAPER_A, d, i))
    assert [len(c) for c in cycles] == [2]
    assert np.linalg.matrix_rank(PAPER_A - 5 * np.eye(3)) == 2


def test_cycles_diagonalizable():
    A = np.diag([2.0, 2.0, 2.0])
    assert [len(c) for c in cycle_basis(A, 2.0, np.eye(3))] == [1, 1, 1]


def test_jordan_paper():
    jf = jordan_form(PAPER_A)
    assert block_multiset(jf.blocks) == block_multiset([(5, 2), (-1, 1)])
    # ordered by eigenvalue: -1 before 5
    assert [k for _, k in jf.blocks] == [1, 2]
    assert np.linalg.norm(PAPER_A @ jf.P - jf.P @ jf.J) <= 1e-9


def test_jordan_diagonal():
    jf = jordan_form(np.diag([3.0, 3.0, 7.0]))
    assert block_multiset(jf.blocks) == [(3, 0, 1), (3, 0, 1), (7, 0, 1)]


def test_jordan_nilpotent():
    jf = jordan_form([[0, 1], [0, 0]])
    assert block_multiset(jf.blocks) == [(0, 0, 2)]
    np.testing.assert_allclose(jf.J, [[0, 1], [0, 0]], atol=1e-15)


def test_j_is_exactly_block_jordan():
    jf = jordan_form(PAPER_A)
    J = jf.J.copy()
    pos = 0
    for lam, k in jf.blocks:
        for r in range(k):
            assert J[pos + r, pos + r] == lam
            if r + 1 < k:
                assert J[pos + r, pos + r + 1] == 1
                J[pos + r, pos + r + 1] = 0
            J[pos + r, pos + r] = 0
        pos += k
    assert not np.any(J)


def test_eigenvalue_then_size_ordering():
    P = random_P(np.random.default_rng(0), 6, 5.0)
    A = P @ jordan_matrix([(1, 1), (-1, 1), (1, 3), (0.5j, 1)]) @ np.linalg.inv(P)
    sizes = [(round(l.real, 6), round(l.imag, 6), k) for l, k in jordan_form(A).blocks]
    assert sizes == [(-1, 0, 1), (0, 0.5, 1), (1, 0, 3), (1, 0, 1)]


@pytest.mark.parametrize("seed", [11, 12])
def test_random_block_recovery_and_reconstruction(seed):
    for A, blocks, lams, sizes in suite(seed, 50):
        jf = jordan_form(A)
        assert block_multiset(jf.blocks, 4) == block_multiset(blocks, 4)
        rec = jf.P @ jf.J @ np.linalg.inv(jf.P)
        assert np.linalg.norm(A - rec) <= 1e-6 * np.linalg.norm(A)
        # V is the direct sum of the generalized eigenspaces
        d = resolvents_at_matrix(A)
        V = np.hstack([generalized_eigenspace_basis(A, d, i) for i in range(len(d.resolvents))])
        assert abs(np.linalg.det(V)) > 1e-6


def test_json_shape():
    obj = jordan_form(np.diag([2.0, 1.0])).to_json()
    assert [b["size"] for b in obj["blocks"]] == [1, 1]
    lams = [parse_complex(b["lambda"]) for b in obj["blocks"]]
    assert lams == pytest.approx([1, 2], abs=1e-12)
    assert set(obj) == {"blocks", "P", "J", "residual"}
