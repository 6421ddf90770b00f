import numpy as np
import pytest

from oracles import expm_taylor, gauss_inverse, jordan_matrix, random_P, suite

from matfun.errors import DimensionMismatch, IdentityCheckFailed, InvalidInput, PoleAtEigenvalue, SingularMatrix
from matfun.matrix_functions import (
    apply_function,
    inverse_via_interp,
    matrix_exp,
    matrix_from_json,
    matrix_to_json,
    newton_at_matrix,
    poly_at_matrix,
    resolvents_at_matrix,
    taylor_resolvent_apply,
    verify_resolvent_identities,
)
from matfun.interp import newton_form, spec_from_function
from matfun.poly import Polynomial, poly_divmod, poly_from_roots
from matfun.scalar import COS, EXP, RECIPROCAL, SIN, Power, PolynomialFunction, Rational
from matfun.spectral import characteristic_polynomial, spectrum_from_pairs, spectrum_of

PAPER_A = np.array([[9, -15, -25], [1, 0, 0], [0, 1, 0]], dtype=complex)
PAPER_INV = np.array([[0, 1, 0], [0, 0, 1], [-1 / 25, 9 / 25, -3 / 5]])
# exp(A) for the paper matrix, 20 digits from a 40-digit mpmath expm
PAPER_EXP = np.array(
    [
        [762.68895315049564098, -2432.42896291477529, -3194.7500366240994887],
        [127.79000146496397955, -387.42106003418017495, -515.57894094031559682],
        [20.623157637612623873, -57.818417273549635309, -78.07369546999081686],
    ]
)
# exact resolvents of the paper matrix: (A - 5I)^2 / 36 and I minus it
L_MINUS_ONE = np.array([[1, -10, 25], [-1, 10, -25], [1, -10, 25]]) / 36


def rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


def test_poly_at_matrix_rotation():
    J = np.array([[0, -1], [1, 0]])
    np.testing.assert_allclose(poly_at_matrix(Polynomial([1, 0, 1]), J), np.zeros((2, 2)), atol=1e-15)


def test_poly_at_matrix_paper_product():
    p = poly_from_roots([(5, 1), (-1, 1)])
    want = [[25, -100, -125], [5, -20, -25], [1, -4, -5]]
    np.testing.assert_allclose(poly_at_matrix(p, PAPER_A), want, atol=1e-12)


def test_poly_at_matrix_cayley_hamilton_reduction():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((3, 3))
    p = Polynomial(rng.standard_normal(10))
    r = poly_divmod(p, characteristic_polynomial(A))[1]
    direct, reduced = poly_at_matrix(p, A), poly_at_matrix(r, A)
    assert np.linalg.norm(direct - reduced) <= 1e-7 * max(1.0, np.linalg.norm(direct))


def test_poly_at_matrix_zero_and_shape():
    assert not np.any(poly_at_matrix(Polynomial(), np.eye(2)))
    with pytest.raises(DimensionMismatch):
        poly_at_matrix(Polynomial([1]), np.zeros((2, 3)))


def test_newton_and_monomial_evaluations_agree():
    spec = spec_from_function(EXP, spectrum_of(PAPER_A).nodes)
    d, z = newton_form(spec)
    np.testing.assert_allclose(newton_at_matrix(d, z, PAPER_A), PAPER_EXP, rtol=1e-10)
    np.testing.assert_allclose(apply_function(EXP, PAPER_A, basis="newton"), PAPER_EXP, rtol=1e-10)
    with pytest.raises(InvalidInput):
        apply_function(EXP, PAPER_A, basis="chebyshev")


def test_apply_reciprocal_paper():
    np.testing.assert_allclose(apply_function(RECIPROCAL, PAPER_A), PAPER_INV, atol=1e-12)


def test_apply_low_degree_polynomial_is_itself():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((4, 4))
    p = Polynomial(rng.standard_normal(3))
    np.testing.assert_allclose(apply_function(PolynomialFunction(p), A), poly_at_matrix(p, A), atol=1e-10)


def test_apply_exp_with_forced_double_eigenvalue():
    rng = np.random.default_rng(3)
    P = random_P(rng, 5, 10.0)
    A = P @ jordan_matrix([(0.5, 2), (-1, 1), (1j, 1), (1.5, 1)]) @ np.linalg.inv(P)
    assert rel(apply_function(EXP, A), expm_taylor(A)) <= 1e-8


def test_apply_pole_at_eigenvalue():
    with pytest.raises(PoleAtEigenvalue):
        apply_function(Rational(Polynomial([1]), Polynomial([-5, 1])), PAPER_A)
    with pytest.raises(PoleAtEigenvalue):
        apply_function(Power(-1), np.diag([0.0, 1.0]))


def test_supplied_spectrum_is_used_and_checked():
    spec = spectrum_from_pairs([(5, 2), (-1, 1)])
    np.testing.assert_allclose(apply_function(RECIPROCAL, PAPER_A, spec), PAPER_INV, atol=1e-12)
    np.testing.assert_allclose(apply_function(RECIPROCAL, PAPER_A, [(5, 2), (-1, 1)]), PAPER_INV, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        apply_function(EXP, PAPER_A, [(5, 2)])


def test_inverse_examples():
    X, res = inverse_via_interp(PAPER_A, return_residual=True)
    np.testing.assert_allclose(X, PAPER_INV, atol=1e-12)
    assert res < 1e-12
    np.testing.assert_allclose(inverse_via_interp(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(inverse_via_interp(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]), atol=1e-15)


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        inverse_via_interp([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrix):
        inverse_via_interp([[0, 1], [0, 0]])


def test_exp_examples():
    rng = np.random.default_rng(4)
    A = rng.standard_normal((4, 4))
    assert np.array_equal(matrix_exp(A, 0), np.eye(4))
    np.testing.assert_allclose(matrix_exp([[0, 1], [0, 0]], 1), [[1, 1], [0, 1]], atol=1e-15)
    assert rel(matrix_exp(PAPER_A, 1), PAPER_EXP) <= 1e-12
    assert rel(matrix_exp(PAPER_A, 1), expm_taylor(PAPER_A)) <= 1e-8


def test_resolvents_single_eigenvalue_is_identity():
    d = resolvents_at_matrix(jordan_matrix([(2, 3)]))
    assert len(d.resolvents) == 1
    np.testing.assert_allclose(d.resolvents[0], np.eye(3), atol=1e-15)


def test_resolvents_paper():
    d = resolvents_at_matrix(PAPER_A)
    (i_m1,) = [i for i, v in enumerate(d.spectrum.eigenvalues) if abs(v + 1) < 1e-6]
    np.testing.assert_allclose(d.resolvents[i_m1], L_MINUS_ONE, atol=1e-10)
    np.testing.assert_allclose(sum(d.resolvents), np.eye(3), atol=1e-12)
    ranks = sorted(np.linalg.matrix_rank(L, tol=1e-8 * np.linalg.norm(L, 2)) for L in d.resolvents)
    assert ranks == [1, 2]


def test_resolvents_diagonal():
    d = resolvents_at_matrix(np.diag([1.0, 2.0]))
    np.testing.assert_allclose(d.resolvents[0], np.diag([1, 0]), atol=1e-15)
    np.testing.assert_allclose(d.resolvents[1], np.diag([0, 1]), atol=1e-15)


def test_identity_reports():
    r = verify_resolvent_identities(resolvents_at_matrix(PAPER_A), PAPER_A)
    assert max(r.partition, r.products, r.idempotence, r.nilpotence) <= 1e-9
    r = verify_resolvent_identities(resolvents_at_matrix(np.diag([1.0, 3.0, 3.0])), np.diag([1.0, 3.0, 3.0]))
    assert max(r.partition, r.products, r.idempotence, r.nilpotence) <= 1e-14


def test_jordan_block_nilpotency_index():
    J = jordan_matrix([(0.7, 3)])
    d = resolvents_at_matrix(J)
    r = verify_resolvent_identities(d, J)
    assert max(r.partition, r.products, r.idempotence, r.nilpotence) <= 1e-10
    N = J - 0.7 * np.eye(3)
    assert np.linalg.norm(N @ N @ d.resolvents[0]) > 0.5


def test_wrong_spectrum_fails_identity_check():
    # the right multiplicities at a wrong eigenvalue location
    with pytest.raises(IdentityCheckFailed):
        resolvents_at_matrix(PAPER_A, [(5.1, 2), (-1, 1)])


def test_taylor_resolvent_single_eigenvalue_is_taylor_formula():
    J = jordan_matrix([(0.3, 3)])
    d = resolvents_at_matrix(J)
    N = J - 0.3 * np.eye(3)
    e = np.exp(0.3)
    want = e * (np.eye(3) + N + N @ N / 2)
    np.testing.assert_allclose(taylor_resolvent_apply(EXP, J, d), want, atol=1e-14)


def test_taylor_resolvent_paper_inverse():
    d = resolvents_at_matrix(PAPER_A)
    np.testing.assert_allclose(taylor_resolvent_apply(RECIPROCAL, PAPER_A, d), PAPER_INV, atol=1e-10)


def test_taylor_resolvent_pole():
    d = resolvents_at_matrix(np.diag([0.0, 1.0]))
    with pytest.raises(PoleAtEigenvalue):
        taylor_resolvent_apply(RECIPROCAL, np.diag([0.0, 1.0]), d)


def test_two_paths_random_with_multiplicities_two_two():
    rng = np.random.default_rng(8)
    P = random_P(rng, 4, 20.0)
    A = P @ jordan_matrix([(1 + 1j, 2), (-0.5, 1), (-0.5, 1)]) @ np.linalg.inv(P)
    d = resolvents_at_matrix(A)
    assert rel(taylor_resolvent_apply(EXP, A, d), apply_function(EXP, A, d.spectrum)) <= 1e-8


@pytest.fixture(scope="module")
def cases():
    return suite(seed=2024, count=40)


def test_property_two_paths(cases):
    for A, *_ in cases:
        d = resolvents_at_matrix(A)
        for f in (EXP, SIN, COS):
            a = apply_function(f, A, d.spectrum)
            assert rel(taylor_resolvent_apply(f, A, d), a) <= 1e-8


def test_property_inverse_residual(cases):
    for A, *_ in cases:
        if min(abs(v) for v in spectrum_of(A).eigenvalues) < 0.1:
            continue
        X, res = inverse_via_interp(A, return_residual=True)
        assert res <= 1e-8 * np.linalg.cond(A)
        assert rel(X, gauss_inverse(A)) <= 1e-8 * np.linalg.cond(A)


def test_property_exp_group_law(cases):
    for A, *_ in cases[:15]:
        spec = spectrum_of(A)
        s, t = 0.3, -0.7
        lhs = matrix_exp(A, s + t, spec)
        rhs = matrix_exp(A, s, spec) @ matrix_exp(A, t, spec)
        assert rel(lhs, rhs) <= 1e-7


def test_property_cayley_hamilton(cases):
    for A, *_ in cases:
        p = characteristic_polynomial(A)
        n = A.shape[0]
        assert np.linalg.norm(poly_at_matrix(p, A)) <= 1e-8 * (1 + np.linalg.norm(A)) ** n


def test_property_projector_ranks(cases):
    for A, *_ in cases:
        d = resolvents_at_matrix(A)
        for L, m in zip(d.resolvents, d.spectrum.multiplicities):
            s = np.linalg.svd(L, compute_uv=False)
            assert int(np.sum(s > 1e-8 * s[0])) == m


def test_matrix_json_round_trip():
    obj = matrix_to_json(PAPER_A)
    assert obj == {"rows": [["9", "-15", "-25"], ["1", "0", "0"], ["0", "1", "0"]]}
    np.testing.assert_array_equal(matrix_from_json(obj), PAPER_A)
    with pytest.raises(DimensionMismatch):
        matrix_from_json({"rows": [["1", "2"]]})
    with pytest.raises(InvalidInput):
        matrix_from_json({"cols": []})
