"""Homogeneous linear ODEs with constant coefficients.

``y^(n) + a_{n-1} y^(n-1) + ... + a_0 y = 0`` is written as the system
``Y' = C Y`` with state ``Y = (y^(n-1), ..., y', y)``, highest derivative
first, so that

    C = [[-a_{n-1}, ..., -a_1, -a_0],
         [ 1,        0,  ...,   0  ],
         ...
         [ 0,  ...,  1,         0  ]]

and ``Y(t) = exp(tC) Y(0)``.
"""

from dataclasses import dataclass

import numpy as np

from ._text import format_complex, parse_complex, parse_real
from .errors import DimensionMismatch, InvalidInput
from .matrix_functions import matrix_exp
from .poly import Polynomial
from .spectral import SpectrumEstimate, as_matrix, find_roots_with_multiplicity


@dataclass(frozen=True, eq=False)
class LinearODE:
    coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(a) for a in self.coeffs)
        if not c:
            raise InvalidInput("an ODE needs at least one coefficient (order >= 1)")
        if not all(np.isfinite(a.real) and np.isfinite(a.imag) for a in c):
            raise InvalidInput("ODE coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return len(self.coeffs)

    def polynomial(self):
        """x^n + a_{n-1} x^(n-1) + ... + a_0."""
        return Polynomial(list(self.coeffs) + [1.0])

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(tuple(parse_complex(a) for a in obj["coeffs"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed ODE JSON: {exc}") from None


def companion(ode):
    n = ode.order
    C = np.zeros((n, n), dtype=np.complex128)
    C[0, :] = [-a for a in reversed(ode.coeffs)]
    for k in range(1, n):
        C[k, k - 1] = 1.0
    return C


def _render_rate(lam):
    if lam.imag == 0.0:
        return format_complex(lam)
    return f"({format_complex(lam)})"


@dataclass(frozen=True)
class SolutionBasis:
    """Basis functions t^p exp(λ t), one per (λ, p)."""

    terms: tuple

    def render(self):
        out = []
        for lam, p in self.terms:
            expo = None if lam == 0 else f"exp({_render_rate(lam)}t)"
            if p == 0:
                out.append(expo or "1")
            else:
                out.append(f"t^{p}" + (f" * {expo}" if expo else ""))
        return out

    def evaluate(self, t):
        """Values of every basis function at t."""
        t = complex(t)
        return np.array([t**p * np.exp(lam * t) for lam, p in self.terms])

    def to_json(self):
        return {
            "terms": [
                {"lambda": format_complex(lam), "power": p, "text": text}
                for (lam, p), text in zip(self.terms, self.render())
            ]
        }


def general_solution_basis(ode, spectrum=None):
    """Basis {t^p exp(λ_i t) : p < m_i} from the roots of the ODE's polynomial."""
    if spectrum is None:
        spectrum = find_roots_with_multiplicity(ode.polynomial())
    elif not isinstance(spectrum, SpectrumEstimate):
        raise InvalidInput("spectrum must be a SpectrumEstimate")
    if spectrum.dim != ode.order:
        raise DimensionMismatch(f"spectrum has size {spectrum.dim}, ODE has order {ode.order}")
    return SolutionBasis(tuple((lam, p) for lam, m in spectrum.nodes for p in range(m)))


def ivp_solve(system, y0, t, spectrum=None):
    """State at time t: exp(tA) y0, with A the companion matrix for an ODE."""
    A = companion(system) if isinstance(system, LinearODE) else as_matrix(system)
    y0 = np.array(y0, dtype=np.complex128).ravel()
    if y0.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"initial state has length {y0.shape[0]}, system has size {A.shape[0]}")
    t = parse_real(t) if isinstance(t, str) else float(t)
    return matrix_exp(A, t, spectrum) @ y0
