"""Dense univariate polynomials over the complex numbers.

Coefficients are stored ascending (constant term first). The zero polynomial
has an empty coefficient array and ``degree == -1``.
"""

import numpy as np

from . import _kernels
from ._config import tol
from ._text import format_complex, parse_complex
from .errors import DivisionByZeroPolynomial, InvalidInput


def _trim(c, scale=None):
    """Drop trailing coefficients that are negligible against ``scale``."""
    if c.shape[0] == 0:
        return c
    if scale is None:
        scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        return c[:0]
    cut = tol("trim") * scale
    keep = c.shape[0]
    while keep > 0 and abs(c[keep - 1]) <= cut:
        keep -= 1
    return c[:keep]


def _norm(c):
    return float(np.max(np.abs(c))) if c.shape[0] else 0.0


class Polynomial:
    """Immutable dense polynomial with complex coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(), *, trim=True, scale=None):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(c)):
            raise InvalidInput("polynomial coefficients must be finite")
        if trim:
            c = _trim(c, scale)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def x(cls):
        return cls([0.0, 1.0])

    @classmethod
    def from_roots(cls, roots):
        return poly_from_roots(roots)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    @property
    def lead(self):
        if self.is_zero():
            raise InvalidInput("zero polynomial has no leading coefficient")
        return complex(self.coeffs[-1])

    def is_zero(self):
        return self.coeffs.shape[0] == 0

    def norm(self):
        """Max coefficient modulus."""
        return _norm(self.coeffs)

    def monic(self):
        return Polynomial(self.coeffs / self.lead)

    def __call__(self, x):
        return poly_eval(self, x)

    def derivative(self, order=1):
        return poly_derivative(self, order)

    def taylor(self, center, order):
        """Taylor coefficients p^(j)(center)/j! for j = 0..order."""
        return _kernels.taylor_coeffs(self.coeffs, complex(center), int(order))

    def __divmod__(self, other):
        return poly_divmod(self, _as_poly(other))

    def __neg__(self):
        return Polynomial(-self.coeffs, trim=False)

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        n = max(a.shape[0], b.shape[0])
        out = np.zeros(n, dtype=np.complex128)
        out[: a.shape[0]] += a
        out[: b.shape[0]] += b
        return Polynomial(out, scale=max(_norm(a), _norm(b)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Polynomial(self.coeffs * complex(other))
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Polynomial(self.coeffs / complex(scalar))

    def __pow__(self, k):
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise InvalidInput("polynomial powers must be non-negative integers")
        out = Polynomial([1.0])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def allclose(self, other, atol=1e-12):
        other = _as_poly(other)
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros(n, dtype=np.complex128)
        b = np.zeros(n, dtype=np.complex128)
        a[: self.coeffs.shape[0]] = self.coeffs
        b[: other.coeffs.shape[0]] = other.coeffs
        return bool(np.all(np.abs(a - b) <= atol))

    def to_json(self):
        return [format_complex(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items):
        if not isinstance(items, list):
            raise InvalidInput("polynomial must be a JSON array of complex strings")
        return cls([parse_complex(t) for t in items])

    def __repr__(self):
        return f"Polynomial({self.to_json()})"


def _as_poly(p):
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, float, complex, np.number)):
        return Polynomial([p])
    return Polynomial(p)


def poly_eval(p, x):
    """Horner evaluation; works for scalars and numpy arrays of points."""
    p = _as_poly(p)
    if np.ndim(x) == 0:
        return complex(_kernels.horner(p.coeffs, complex(x)))
    if p.is_zero():
        return np.zeros(np.shape(x), dtype=np.complex128)
    return np.polyval(p.coeffs[::-1], np.asarray(x, dtype=np.complex128))


def poly_derivative(p, order=1):
    p = _as_poly(p)
    if order < 0:
        raise InvalidInput("derivative order must be non-negative")
    c = p.coeffs
    n = c.shape[0]
    if order >= n:
        return Polynomial()
    if order == 0:
        return p
    k = np.arange(order, n)
    factor = np.ones(n - order)
    for j in range(order):
        factor *= k - j
    return Polynomial(c[order:] * factor, trim=False)


def poly_divmod(num, den):
    """Long division: ``num = den * quotient + remainder``, deg remainder < deg den."""
    num, den = _as_poly(num), _as_poly(den)
    if den.is_zero():
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    a = num.coeffs.copy()
    b = den.coeffs
    dn, dd = a.shape[0] - 1, b.shape[0] - 1
    if dn < dd:
        return Polynomial(), num
    lead = b[-1]
    q = np.zeros(dn - dd + 1, dtype=np.complex128)
    for k in range(dn - dd, -1, -1):
        qk = a[k + dd] / lead
        q[k] = qk
        a[k : k + dd + 1] -= qk * b
    scale = max(num.norm(), _norm(q) * den.norm())
    rem = a[:dd].copy()
    rem[np.abs(rem) <= tol("trim") * scale] = 0.0
    return Polynomial(q), Polynomial(rem, scale=scale)


def poly_bezout(a, b):
    """Extended Euclid: return ``(g, u, v)`` with ``u*a + v*b = g``, g monic.

    Remainders whose max coefficient falls below the gcd tolerance times the
    running scale count as zero, so coprime inputs give ``g == 1``.
    """
    a, b = _as_poly(a), _as_poly(b)
    if a.is_zero() and b.is_zero():
        raise InvalidInput("gcd of two zero polynomials is undefined")
    r0, r1 = a, b
    s0, s1 = Polynomial([1.0]), Polynomial()
    t0, t1 = Polynomial(), Polynomial([1.0])
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        scale = max(r0.norm(), (q * r1).norm())
        if r.norm() <= tol("gcd") * scale:
            r = Polynomial()
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
        if not r1.is_zero():
            # keep the remainder sequence at unit scale
            k = r1.norm()
            r1, s1, t1 = r1 / k, s1 / k, t1 / k
    lead = r0.lead
    return r0 / lead, s0 / lead, t0 / lead


def poly_from_roots(roots):
    """Monic product of (x - root)^multiplicity over ``(root, multiplicity)`` pairs."""
    c = np.array([1.0 + 0j])
    for root, mult in roots:
        if int(mult) < 1:
            raise InvalidInput("root multiplicities must be >= 1")
        for _ in range(int(mult)):
            c = np.convolve(c, np.array([-complex(root), 1.0]))
    return Polynomial(c, trim=False)
