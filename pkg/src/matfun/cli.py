"""Command-line front end: JSON files in, JSON on stdout.

Exit status 0 on success, 2 when the input is well formed but the
mathematics refuses (singular matrix, pole at an eigenvalue, colliding
nodes, ...), 1 when the input itself is malformed. Errors are printed as
``{"error": {"kind": ..., "detail": ...}}``.
"""

import argparse
import json
import os
import sys

import numpy as np

from ._text import format_complex, format_real, parse_complex, parse_real
from .errors import InvalidInput, MatfunError
from .interp import (
    InterpolationNode,
    InterpolationSpec,
    hermite_solve,
    remainder_bound_check,
    sample_deriv_sup,
    spec_from_function,
)
from .jordan import jordan_form
from .matrix_functions import (
    apply_function,
    inverse_via_interp,
    matrix_exp,
    matrix_from_json,
    matrix_to_json,
    resolvents_at_matrix,
    verify_resolvent_identities,
)
from .odesolve import LinearODE, companion, general_solution_basis, ivp_solve
from .scalar import parse_function
from .spectral import SpectrumEstimate, spectrum_of


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for domain errors
    def error(self, message):
        raise _UsageError(message)


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None


def _real_if_negligible(M, A):
    # real input, real function: imaginary parts are rounding noise
    M = np.asarray(M)
    if np.any(np.asarray(A).imag) or not np.iscomplexobj(M):
        return M
    if np.max(np.abs(M.imag), initial=0.0) <= 1e-12 * (1.0 + np.max(np.abs(M), initial=0.0)):
        return M.real + 0j
    return M


def _spectrum(args):
    if getattr(args, "spectrum", None):
        return SpectrumEstimate.from_json(_load(args.spectrum))
    return None


def _function(args):
    if args.rational is not None:
        return parse_function("rational:" + args.rational)
    return parse_function(args.function)


def _read_spec(obj):
    """Interpolation spec file: explicit data, or a function plus nodes."""
    if not isinstance(obj, dict) or not isinstance(obj.get("nodes"), list):
        raise InvalidInput('spec JSON needs a "nodes" array')
    try:
        if "function" in obj:
            f = parse_function(obj["function"])
            pairs = [(parse_complex(nd["lambda"]), int(nd["multiplicity"])) for nd in obj["nodes"]]
            return f, pairs, None
        nodes = []
        for nd in obj["nodes"]:
            data = [parse_complex(x) for x in nd["data"]]
            if "multiplicity" in nd and int(nd["multiplicity"]) != len(data):
                raise InvalidInput(f"node {nd['lambda']}: multiplicity and data length differ")
            nodes.append(InterpolationNode.from_derivatives(parse_complex(nd["lambda"]), data))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed spec JSON: missing or bad field {exc}") from None
    return None, [(nd.value, nd.multiplicity) for nd in nodes], InterpolationSpec(tuple(nodes))


def cmd_interp(args):
    f, pairs, spec = _read_spec(_load(args.spec))
    if spec is None:
        spec = spec_from_function(f, pairs)
    L = hermite_solve(spec)
    return {"coefficients": L.to_json(), "degree_bound": spec.degree_bound}


def cmd_apply(args):
    A = matrix_from_json(_load(args.matrix))
    F = apply_function(_function(args), A, _spectrum(args), basis=args.basis)
    return matrix_to_json(_real_if_negligible(F, A))


def cmd_inverse(args):
    A = matrix_from_json(_load(args.matrix))
    X, res = inverse_via_interp(A, _spectrum(args), return_residual=True)
    out = matrix_to_json(_real_if_negligible(X, A))
    out["residual"] = format_real(res)
    return out


def cmd_exp(args):
    A = matrix_from_json(_load(args.matrix))
    return matrix_to_json(_real_if_negligible(matrix_exp(A, parse_real(args.t), _spectrum(args)), A))


def cmd_resolvents(args):
    A = matrix_from_json(_load(args.matrix))
    decomp = resolvents_at_matrix(A, _spectrum(args))
    out = decomp.spectrum.to_json()
    out["resolvents"] = [matrix_to_json(_real_if_negligible(L, A)) for L in decomp.resolvents]
    out["nilpotent_parts"] = [
        matrix_to_json(_real_if_negligible(N, A)) for N in decomp.nilpotent_parts
    ]
    report = verify_resolvent_identities(decomp, A).relative()
    out["identity_residuals"] = {k: format_real(v) for k, v in report.items()}
    return out


def cmd_solve_ode(args):
    obj = _load(args.ode)
    ode = LinearODE.from_json(obj)
    out = {
        "companion": matrix_to_json(companion(ode)),
        "basis": general_solution_basis(ode).render(),
    }
    y0 = args.y0 if args.y0 is not None else obj.get("y0")
    t = args.t if args.t is not None else obj.get("t")
    if (y0 is None) != (t is None):
        raise InvalidInput("an initial value problem needs both y0 and t")
    if y0 is not None:
        if isinstance(y0, str):
            y0 = y0.split(",")
        if not isinstance(y0, list):
            raise InvalidInput("y0 must be a list of complex strings")
        y = ivp_solve(ode, [parse_complex(v) for v in y0], parse_real(t))
        if not any(np.iscomplex(ode.coeffs)) and not any(np.iscomplex([parse_complex(v) for v in y0])):
            y = _real_if_negligible(y, np.zeros(1))
        out["t"] = format_real(parse_real(t))
        out["state"] = [format_complex(v) for v in y]
    return out


def cmd_jordan(args):
    A = matrix_from_json(_load(args.matrix))
    return jordan_form(A, _spectrum(args)).to_json()


def cmd_spectrum(args):
    A = matrix_from_json(_load(args.matrix))
    return spectrum_of(A).to_json()


def cmd_remainder_check(args):
    f, pairs, _ = _read_spec(_load(args.spec))
    if f is None:
        raise InvalidInput('remainder-check needs a spec with a "function" field')
    x0 = parse_real(args.x0)
    if args.deriv_sup is not None:
        sup, sampled = parse_real(args.deriv_sup), False
    else:
        sup, sampled = sample_deriv_sup(f, pairs, x0), True
    rb = remainder_bound_check(f, pairs, x0, sup)
    return {
        "x0": format_real(rb.x0),
        "bound": format_real(rb.bound),
        "actual_error": format_real(rb.actual_error),
        "holds": rb.holds,
        "deriv_sup": format_real(sup),
        "deriv_sup_sampled": sampled,
    }


def build_parser():
    p = _Parser(prog="matfun", description="Matrix functions by interpolation at the spectrum.")
    p.add_argument("--output", help="write the JSON result here instead of stdout")
    p.add_argument("--tol", help="multiply every default tolerance (same as MATFUN_TOL)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--matrix", required=True, help='matrix JSON: {"rows": [[...], ...]}')
        s.add_argument("--spectrum", help="spectrum JSON; skips root finding")
        s.set_defaults(run=fn)
        return s

    s = sub.add_parser("interp", help="interpolation polynomial of a spec")
    s.add_argument("--spec", required=True)
    s.set_defaults(run=cmd_interp)

    s = matrix_cmd("apply", cmd_apply, "f(A) for a builtin or rational f")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--function", help="exp, sin, cos, reciprocal, power:K, scaled-exp:T, poly:c0:c1...")
    g.add_argument("--rational", help="NUM,DEN with ascending colon-separated coefficients")
    s.add_argument("--basis", choices=("monomial", "newton"), default="monomial")

    matrix_cmd("inverse", cmd_inverse, "A^-1")
    s = matrix_cmd("exp", cmd_exp, "exp(tA)")
    s.add_argument("--t", required=True)
    matrix_cmd("resolvents", cmd_resolvents, "principal resolvents (spectral projectors)")
    matrix_cmd("jordan", cmd_jordan, "Jordan normal form")
    s = sub.add_parser("spectrum", help="eigenvalues with multiplicities")
    s.add_argument("--matrix", required=True)
    s.set_defaults(run=cmd_spectrum)

    s = sub.add_parser("solve-ode", help="basis and initial value solution of a linear ODE")
    s.add_argument("--ode", required=True, help='ODE JSON: {"coeffs": [a0, ..., a_{n-1}]}')
    s.add_argument("--y0", help="comma-separated initial state, highest derivative first")
    s.add_argument("--t")
    s.set_defaults(run=cmd_solve_ode)

    s = sub.add_parser("remainder-check", help="interpolation error against its bound")
    s.add_argument("--spec", required=True)
    s.add_argument("--x0", required=True)
    s.add_argument("--deriv-sup", help="sup of |f^(n)| on the hull; sampled when omitted")
    s.set_defaults(run=cmd_remainder_check)
    return p


def _emit(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(kind, detail, code):
    sys.stdout.write(json.dumps({"error": {"kind": kind, "detail": detail}}, indent=2) + "\n")
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return _fail("UsageError", str(exc), 1)
    if args.tol is not None:
        try:
            if not float(args.tol) > 0.0:
                raise ValueError
        except ValueError:
            return _fail("InvalidInput", f"--tol must be a positive number, got {args.tol!r}", 1)
        os.environ["MATFUN_TOL"] = args.tol
    try:
        result = args.run(args)
    except InvalidInput as exc:
        return _fail(exc.kind, str(exc), 1)
    except MatfunError as exc:
        return _fail(exc.kind, str(exc), 2)
    except ValueError as exc:
        # MATFUN_TOL malformed
        return _fail("InvalidInput", str(exc), 1)
    _emit(result, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
