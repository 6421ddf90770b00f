"""Scalar functions and their derivative jets.

A :class:`Jet` holds ``f(c), f'(c)/1!, ..., f^(p)(c)/p!`` and is propagated
through each function's composition by truncated power-series arithmetic,
starting from the identity jet ``(c, 1, 0, ...)``.

Function specs are plain immutable objects so that they can be parsed from
and written back to the CLI's text descriptors::

    >>> jet_of(EXP, 0, 3).coeffs
    array([1.        +0.j, 1.        +0.j, 0.5       +0.j, 0.16666667+0.j])
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._config import tol
from ._text import format_complex, parse_complex
from .errors import InvalidInput, PoleAtNode
from .poly import Polynomial


def pole_tol(center):
    return tol("pole") * (1.0 + abs(center))


class Jet:
    """Truncated Taylor expansion at ``center``; ``coeffs[p] = f^(p)(center)/p!``."""

    __slots__ = ("center", "coeffs")

    def __init__(self, center, coeffs):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        center = complex(center)
        if c.shape[0] < 1:
            raise InvalidInput("a jet needs at least one coefficient")
        if not (np.all(np.isfinite(c)) and np.isfinite(center.real) and np.isfinite(center.imag)):
            raise InvalidInput("jet entries must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @classmethod
    def identity(cls, center, order):
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return cls(center, c)

    @classmethod
    def constant(cls, center, value, order):
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(center, c)

    @property
    def order(self):
        return self.coeffs.shape[0] - 1

    def derivatives(self):
        """Raw derivative values f^(p)(center)."""
        fact = np.cumprod(np.concatenate(([1.0], np.arange(1, self.coeffs.shape[0]))))
        return self.coeffs * fact

    def _lift(self, other):
        if isinstance(other, Jet):
            if other.coeffs.shape != self.coeffs.shape:
                raise InvalidInput("jets of different order")
            return other.coeffs
        return Jet.constant(self.center, other, self.order).coeffs

    def __add__(self, other):
        return Jet(self.center, self.coeffs + self._lift(other))

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.center, -self.coeffs)

    def __sub__(self, other):
        return Jet(self.center, self.coeffs - self._lift(other))

    def __rsub__(self, other):
        return Jet(self.center, self._lift(other) - self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Jet(self.center, self.coeffs * other)
        return Jet(self.center, _kernels.series_mul(self.coeffs, self._lift(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        den = self._lift(other)
        if den[0] == 0:
            raise PoleAtNode(f"division by a jet vanishing at {format_complex(self.center)}")
        return Jet(self.center, _kernels.series_div(self.coeffs, den))

    def __rtruediv__(self, other):
        return Jet(self.center, self._lift(other)) / self

    def exp(self):
        return Jet(self.center, _kernels.series_exp(self.coeffs))

    def sin(self):
        return Jet(self.center, _kernels.series_sincos(self.coeffs)[0])

    def cos(self):
        return Jet(self.center, _kernels.series_sincos(self.coeffs)[1])

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return 1.0 / (self ** (-k))
        out = Jet.constant(self.center, 1.0, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"Jet(center={self.center!r}, coeffs={self.coeffs!r})"


class FunctionSpec:
    """Base class; subclasses implement :meth:`compose` on an argument jet."""

    def compose(self, x):
        raise NotImplementedError

    def check_pole(self, center):
        pass

    def describe(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Exp(FunctionSpec):
    def compose(self, x):
        return x.exp()

    def describe(self):
        return "exp"


@dataclass(frozen=True)
class Sin(FunctionSpec):
    def compose(self, x):
        return x.sin()

    def describe(self):
        return "sin"


@dataclass(frozen=True)
class Cos(FunctionSpec):
    def compose(self, x):
        return x.cos()

    def describe(self):
        return "cos"


@dataclass(frozen=True)
class Reciprocal(FunctionSpec):
    def check_pole(self, center):
        if abs(center) < pole_tol(center):
            raise PoleAtNode(f"1/x has a pole at {format_complex(center)}")

    def compose(self, x):
        return 1.0 / x

    def describe(self):
        return "reciprocal"


@dataclass(frozen=True)
class Power(FunctionSpec):
    k: int

    def check_pole(self, center):
        if self.k < 0 and abs(center) < pole_tol(center):
            raise PoleAtNode(f"x^{self.k} has a pole at {format_complex(center)}")

    def compose(self, x):
        return x ** self.k

    def describe(self):
        return f"power:{self.k}"


@dataclass(frozen=True, eq=False)
class PolynomialFunction(FunctionSpec):
    poly: Polynomial

    def compose(self, x):
        # exact: Taylor shift of the coefficients to the jet's center
        # (composition with a non-identity argument falls back to Horner on jets)
        if x.order == 0 or (x.coeffs[1] == 1 and not np.any(x.coeffs[2:])):
            return Jet(x.center, self.poly.taylor(x.coeffs[0], x.order))
        acc = Jet.constant(x.center, 0.0, x.order)
        for c in self.poly.coeffs[::-1]:
            acc = acc * x + complex(c)
        return acc

    def describe(self):
        return "poly:" + ":".join(format_complex(c) for c in self.poly.coeffs)


@dataclass(frozen=True, eq=False)
class Rational(FunctionSpec):
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise InvalidInput("rational function with zero denominator")

    def check_pole(self, center):
        if abs(self.denominator(center)) < pole_tol(center):
            raise PoleAtNode(f"denominator vanishes at {format_complex(center)}")

    def compose(self, x):
        num = PolynomialFunction(self.numerator).compose(x)
        den = PolynomialFunction(self.denominator).compose(x)
        return num / den

    def describe(self):
        num = ":".join(format_complex(c) for c in self.numerator.coeffs) or "0"
        den = ":".join(format_complex(c) for c in self.denominator.coeffs)
        return f"rational:{num},{den}"


@dataclass(frozen=True)
class ScaledExp(FunctionSpec):
    """x -> exp(t x)."""

    t: complex = 1.0

    def compose(self, x):
        return (x * complex(self.t)).exp()

    def describe(self):
        return f"scaled-exp:{format_complex(self.t)}"


EXP = Exp()
SIN = Sin()
COS = Cos()
RECIPROCAL = Reciprocal()


def as_function(f):
    """Accept a FunctionSpec, a Polynomial, or a descriptor string."""
    if isinstance(f, FunctionSpec):
        return f
    if isinstance(f, Polynomial):
        return PolynomialFunction(f)
    if isinstance(f, str):
        return parse_function(f)
    raise InvalidInput(f"not a function spec: {f!r}")


def jet_of(f, center, order):
    f = as_function(f)
    center = complex(center)
    if order < 0:
        raise InvalidInput("jet order must be non-negative")
    f.check_pole(center)
    return f.compose(Jet.identity(center, int(order)))


def evaluate(f, x):
    return complex(jet_of(f, x, 0).coeffs[0])


def _poly_from_colons(text):
    parts = [p for p in text.split(":") if p != ""]
    return Polynomial([parse_complex(p) for p in parts])


def parse_function(text):
    """Parse a descriptor: ``exp``, ``sin``, ``cos``, ``reciprocal``,
    ``power:K``, ``scaled-exp:T``, ``poly:c0:c1:...`` or
    ``rational:n0:n1...,d0:d1...`` (coefficients ascending)."""
    s = text.strip().lower()
    simple = {"exp": EXP, "sin": SIN, "cos": COS, "reciprocal": RECIPROCAL, "inverse": RECIPROCAL}
    if s in simple:
        return simple[s]
    head, _, rest = s.partition(":")
    try:
        if head == "power":
            return Power(int(rest))
        if head == "scaled-exp":
            return ScaledExp(parse_complex(rest))
        if head == "poly":
            return PolynomialFunction(_poly_from_colons(rest))
        if head == "rational":
            num, den = rest.split(",")
            return Rational(_poly_from_colons(num), _poly_from_colons(den))
    except ValueError as exc:
        raise InvalidInput(f"bad function descriptor {text!r}: {exc}") from None
    raise InvalidInput(f"unknown function descriptor {text!r}")
