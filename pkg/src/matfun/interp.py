"""Hermite-Lagrange interpolation with multiple nodes.

The main constructor works in Newton form with confluent divided differences:
nodes are ordered by descending multiplicity (then real part, then imaginary
part) and repeated ``multiplicity`` times, and a divided difference over a
run of equal nodes is the stored Taylor coefficient. A dense confluent
Vandermonde solve (:func:`hermite_solve_dense`) is kept alongside as an
independent cross-check.

Node data are always stored jet-scaled: ``data[m] = c^(m) / m!``.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._config import MAX_NODES, tol
from .errors import (
    DegenerateCondition,
    IllConditioned,
    InvalidInput,
    NodeCollision,
    NodesTooClose,
    NonRealInput,
)
from .poly import Polynomial, poly_bezout, poly_divmod, poly_from_roots
from .scalar import as_function, jet_of


@dataclass(frozen=True, eq=False)
class InterpolationNode:
    value: complex
    multiplicity: int
    data: np.ndarray

    def __post_init__(self):
        m = int(self.multiplicity)
        if m < 1:
            raise InvalidInput("node multiplicity must be >= 1")
        data = np.array(self.data, dtype=np.complex128).ravel()
        if data.shape[0] != m:
            raise InvalidInput(f"node {self.value} has multiplicity {m} but {data.shape[0]} data values")
        if not np.all(np.isfinite(data)):
            raise InvalidInput("interpolation data must be finite")
        data.setflags(write=False)
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "multiplicity", m)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_derivatives(cls, value, derivatives):
        """Build a node from raw derivative values f(λ), f'(λ), f''(λ), ..."""
        d = np.array(derivatives, dtype=np.complex128).ravel()
        fact = np.array([math.factorial(k) for k in range(d.shape[0])], dtype=np.float64)
        return cls(value, d.shape[0], d / fact)


def node_sep_tol(values):
    big = max((abs(v) for v in values), default=0.0)
    return tol("node_sep") * (1.0 + big)


def _check_distinct(values, exc=NodesTooClose):
    sep = node_sep_tol(values)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) <= sep:
                raise exc(f"nodes {values[i]} and {values[j]} are closer than {sep:.3g}")


@dataclass(frozen=True, eq=False)
class InterpolationSpec:
    nodes: tuple

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if not nodes:
            raise InvalidInput("an interpolation problem needs at least one node")
        _check_distinct([nd.value for nd in nodes])
        object.__setattr__(self, "nodes", nodes)

    @property
    def degree_bound(self):
        """n = sum of multiplicities; the solution has degree < n."""
        return sum(nd.multiplicity for nd in self.nodes)

    def pairs(self):
        return [(nd.value, nd.multiplicity) for nd in self.nodes]


def _normalize_pairs(nodes):
    out = []
    for item in nodes:
        if isinstance(item, InterpolationNode):
            out.append((item.value, item.multiplicity))
        else:
            value, mult = item
            if int(mult) < 1:
                raise InvalidInput("node multiplicity must be >= 1")
            out.append((complex(value), int(mult)))
    return out


def _ordered(nodes):
    return sorted(nodes, key=lambda nd: (-nd.multiplicity, nd.value.real, nd.value.imag))


def newton_form(spec):
    """Return ``(d, z)``: Newton coefficients and the repeated node sequence,
    so that ``L(x) = sum_k d[k] * prod_{j<k} (x - z[j])``."""
    nodes = _ordered(spec.nodes)
    n = spec.degree_bound
    if n > MAX_NODES:
        raise InvalidInput(f"total multiplicity {n} exceeds the limit of {MAX_NODES}")
    z = np.empty(n, dtype=np.complex128)
    taylor = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for nd in nodes:
        m = nd.multiplicity
        z[pos : pos + m] = nd.value
        taylor[pos : pos + m, :m] = nd.data
        pos += m
    return _kernels.confluent_dd(z, taylor), z


def lagrange_explicit(values, data):
    """Simple-node formula: sum_j c_j prod_{i != j} (x - λ_i) / (λ_j - λ_i)."""
    values = np.asarray(values, dtype=np.complex128)
    data = np.asarray(data, dtype=np.complex128)
    n = values.shape[0]
    full = poly_from_roots([(v, 1) for v in values]).coeffs
    out = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        # full / (x - λ_j) by synthetic division; the remainder is exactly zero
        q = np.zeros(n, dtype=np.complex128)
        acc = full[n]
        for k in range(n - 1, -1, -1):
            q[k] = acc
            acc = full[k] + acc * values[j]
        w = np.prod(values[j] - np.delete(values, j))
        out += (data[j] / w) * q
    return out


def _residual_spec(coeffs, spec):
    """Data minus the jets of ``coeffs`` at every node, as a spec of the same shape."""
    out = []
    for nd in spec.nodes:
        got = _kernels.taylor_coeffs(coeffs, nd.value, nd.multiplicity - 1)
        out.append(InterpolationNode(nd.value, nd.multiplicity, nd.data - got))
    return InterpolationSpec(tuple(out))


def _residual(coeffs, spec):
    return max(float(np.max(np.abs(nd.data))) for nd in _residual_spec(coeffs, spec).nodes)


def _solve_once(spec):
    if all(nd.multiplicity == 1 for nd in spec.nodes):
        return lagrange_explicit([nd.value for nd in spec.nodes], [nd.data[0] for nd in spec.nodes])
    d, z = newton_form(spec)
    return _kernels.newton_to_monomial(d, z)


def hermite_solve(spec, *, check=True):
    """Unique polynomial of degree < n matching every node's jet data.

    One step of residual correction follows the Newton (or explicit) solve;
    it removes most of the rounding the monomial conversion introduces.
    """
    if not isinstance(spec, InterpolationSpec):
        spec = InterpolationSpec(tuple(spec))
    if spec.degree_bound > MAX_NODES:
        raise InvalidInput(f"total multiplicity {spec.degree_bound} exceeds the limit of {MAX_NODES}")
    coeffs = _solve_once(spec)
    coeffs = coeffs + _solve_once(_residual_spec(coeffs, spec))
    if check:
        scale = max(float(np.max(np.abs(nd.data))) for nd in spec.nodes)
        res = _residual(coeffs, spec)
        if res > tol("cond") * max(scale, 1e-300) and res > 0.0:
            raise IllConditioned(f"interpolation conditions violated by {res:.3g} (data scale {scale:.3g})")
    return Polynomial(coeffs)


def confluent_vandermonde(spec):
    """Rows are the jet-scaled derivative conditions on the monomial basis."""
    n = spec.degree_bound
    V = np.zeros((n, n), dtype=np.complex128)
    rhs = np.zeros(n, dtype=np.complex128)
    row = 0
    for nd in spec.nodes:
        for m in range(nd.multiplicity):
            for i in range(m, n):
                V[row, i] = math.comb(i, m) * nd.value ** (i - m)
            rhs[row] = nd.data[m]
            row += 1
    return V, rhs


def hermite_solve_dense(spec):
    """Cross-check path: solve the confluent Vandermonde system directly."""
    if not isinstance(spec, InterpolationSpec):
        spec = InterpolationSpec(tuple(spec))
    V, rhs = confluent_vandermonde(spec)
    return Polynomial(np.linalg.solve(V, rhs))


def spec_from_function(f, nodes):
    f = as_function(f)
    pairs = _normalize_pairs(nodes)
    return InterpolationSpec(
        tuple(InterpolationNode(v, m, jet_of(f, v, m - 1).coeffs) for v, m in pairs)
    )


def hermite_from_function(f, nodes):
    """Interpolation polynomial of ``f`` (FunctionSpec, Polynomial or
    descriptor) at ``(value, multiplicity)`` nodes."""
    return hermite_solve(spec_from_function(f, nodes))


def extension_coefficient(L0, existing, new_node, target_value, target_order=0):
    """The constant c in L = L0 + c * prod (x - λ_j)^m_j.

    ``target_value`` is the raw derivative value required at ``new_node`` of
    order ``target_order``: order 0 for a fresh node, or the current
    multiplicity of an existing node to raise it by one.
    """
    pairs = _normalize_pairs(existing)
    new_node = complex(new_node)
    order = int(target_order)
    sep = node_sep_tol([v for v, _ in pairs] + [new_node])
    match = [m for v, m in pairs if abs(v - new_node) <= sep]
    if match:
        if order != match[0]:
            raise InvalidInput(
                f"raising node {new_node} needs a condition of order {match[0]}, got {order}"
            )
        new_node = next(v for v, _ in pairs if abs(v - new_node) <= sep)
    elif order != 0:
        raise InvalidInput("a fresh node takes a value condition (order 0)")
    W = poly_from_roots(pairs)
    scale = math.factorial(order)
    w = W.taylor(new_node, order)[order] * scale
    have = L0.taylor(new_node, order)[order] * scale if not L0.is_zero() else 0j
    w_scale = float(np.sum(np.abs(W.coeffs))) * (1.0 + abs(new_node)) ** max(W.degree, 0) * scale
    if abs(w) <= tol("degenerate") * w_scale:
        raise DegenerateCondition(f"new condition at {new_node} does not determine c")
    return (complex(target_value) - have) / w


def extend_one_point(L0, existing, new_node, target_value, target_order=0):
    """Add one interpolation condition to a known interpolant ``L0``."""
    c = extension_coefficient(L0, existing, new_node, target_value, target_order)
    return L0 + poly_from_roots(_normalize_pairs(existing)) * c


def _quotient_spec(Q, divisor, nodes):
    """Jets of Q / divisor at each node, by jet division."""
    out = []
    for v, m in nodes:
        num = jet_of(Q, v, m - 1)
        den = divisor.taylor(v, m - 1)
        out.append(InterpolationNode(v, m, _kernels.series_div(num.coeffs, den)))
    return out


def _product_spec(Q, factor, nodes):
    out = []
    for v, m in nodes:
        num = jet_of(Q, v, m - 1)
        out.append(InterpolationNode(v, m, _kernels.series_mul(num.coeffs, factor.taylor(v, m - 1))))
    return out


def merge_union(Q, set1, set2, *, method="jet"):
    """Interpolant of Q on set1 ∪ set2 assembled from the two halves:

        L = [Q / T2]_1 * T2 + [Q / T1]_2 * T1

    with T1, T2 the node polynomials of each set and [.]_k interpolation on
    set k. ``method="jet"`` interpolates the quotients through jet division;
    ``method="bezout"`` replaces 1/T2 (resp. 1/T1) by its inverse modulo T1
    (resp. T2) from the extended Euclidean algorithm.
    """
    Q = as_function(Q)
    p1, p2 = _normalize_pairs(set1), _normalize_pairs(set2)
    if not p1 and not p2:
        raise InvalidInput("both node sets are empty")
    values = [v for v, _ in p1 + p2]
    _check_distinct([v for v, _ in p1])
    _check_distinct([v for v, _ in p2])
    _check_distinct(values, exc=NodeCollision)
    T1, T2 = poly_from_roots(p1), poly_from_roots(p2)
    if method == "jet":
        part1 = hermite_solve(InterpolationSpec(tuple(_quotient_spec(Q, T2, p1)))) if p1 else Polynomial()
        part2 = hermite_solve(InterpolationSpec(tuple(_quotient_spec(Q, T1, p2)))) if p2 else Polynomial()
    elif method == "bezout":
        # u*T2 + v*T1 = 1, so u inverts T2 modulo T1 and v inverts T1 modulo T2
        _, u, v = poly_bezout(T2, T1)
        part1 = hermite_solve(InterpolationSpec(tuple(_product_spec(Q, u, p1)))) if p1 else Polynomial()
        part2 = hermite_solve(InterpolationSpec(tuple(_product_spec(Q, v, p2)))) if p2 else Polynomial()
    else:
        raise InvalidInput(f"unknown merge method {method!r}")
    return part1 * T2 + part2 * T1


def principal_resolvent(nodes, i):
    """The interpolant with value 1 at node i and every other datum zero.

    Closed form: the degree m_i - 1 Taylor polynomial at λ_i of
    1 / prod_{j != i} (x - λ_j)^m_j, multiplied by that same product.
    """
    pairs = _normalize_pairs(nodes)
    if not 0 <= i < len(pairs):
        raise InvalidInput(f"resolvent index {i} out of range for {len(pairs)} nodes")
    _check_distinct([v for v, _ in pairs])
    lam, m = pairs[i]
    others = poly_from_roots(pairs[:i] + pairs[i + 1 :])
    one = np.zeros(m, dtype=np.complex128)
    one[0] = 1.0
    taylor = _kernels.series_div(one, others.taylor(lam, m - 1))
    local = _kernels.newton_to_monomial(taylor, np.full(m, lam, dtype=np.complex128))
    return Polynomial(local) * others


def principal_resolvents(nodes):
    pairs = _normalize_pairs(nodes)
    return [principal_resolvent(pairs, i) for i in range(len(pairs))]


@dataclass(frozen=True)
class RemainderBound:
    x0: float
    bound: float
    actual_error: float
    holds: bool


def remainder_bound_check(f, nodes, x0, deriv_sup):
    """Compare f(x0) - L(x0) with deriv_sup / n! * prod |x0 - λ_j|^m_j."""
    f = as_function(f)
    pairs = _normalize_pairs(nodes)
    x0 = complex(x0)
    if x0.imag != 0.0 or any(v.imag != 0.0 for v, _ in pairs):
        raise NonRealInput("the remainder bound needs real nodes and a real x0")
    if not deriv_sup >= 0.0:
        raise InvalidInput("deriv_sup must be non-negative")
    n = sum(m for _, m in pairs)
    L = hermite_from_function(f, pairs)
    fx = jet_of(f, x0, 0).coeffs[0]
    err = fx - L(x0)
    if abs(err.imag) > 1e-9 * (1.0 + abs(err.real)):
        raise NonRealInput("f takes non-real values on the real axis")
    prod = 1.0
    for v, m in pairs:
        prod *= abs(x0.real - v.real) ** m
    bound = float(deriv_sup) / math.factorial(n) * prod
    slack = 64 * np.finfo(float).eps * (bound + abs(fx) + abs(L(x0)))
    return RemainderBound(x0.real, bound, float(err.real), bool(abs(err.real) <= bound + slack))


def sample_deriv_sup(f, nodes, x0, samples=1024):
    """max |f^(n)| over `samples` evenly spaced points of the hull of nodes ∪ {x0}."""
    f = as_function(f)
    pairs = _normalize_pairs(nodes)
    n = sum(m for _, m in pairs)
    pts = [v.real for v, _ in pairs] + [complex(x0).real]
    grid = np.linspace(min(pts), max(pts), samples)
    fact = math.factorial(n)
    return max(abs(jet_of(f, x, n).coeffs[n]) * fact for x in grid)


def interp_equals_remainder(Q, nodes, atol=1e-8):
    """Cross-check: the interpolant of a polynomial Q at the nodes is the
    remainder of Q modulo T = prod (x - λ_j)^m_j.

    Returns ``(L, R, agree)``.
    """
    if not isinstance(Q, Polynomial):
        raise InvalidInput("the remainder cross-check needs a polynomial Q")
    pairs = _normalize_pairs(nodes)
    L = hermite_from_function(Q, pairs)
    R = poly_divmod(Q, poly_from_roots(pairs))[1]
    # R can be far larger than Q when T has clustered roots
    scale = max(1.0, Q.norm(), R.norm())
    return L, R, bool(L.allclose(R, atol=atol * scale))
