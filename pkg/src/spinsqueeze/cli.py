"""Command-line surface: every computation as a subcommand, emitting CSV
or JSON for downstream plotting.

Conventions shared by all subcommands:

- complex scalars on the command line are "re" or "re,im"; inside JSON
  (config files, matrices, vectors) every complex number is a [re, im]
  pair;
- structured flag values (--matrix, --center, --point, --eta,
  --hamiltonian) accept inline JSON or a path to a JSON file;
- --config names a JSON file whose fields fill in any option not given
  on the command line (flags win);
- numbers are written with 17 significant digits and fixed row order,
  so identical configs produce byte-identical output;
- exit codes: 0 success, 1 validation failure, 2 bad config, 3
  numerical failure (diagnostic JSON on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .bargmann import SqueezeMatrix
from .numerics import BlowUpError, ConvergenceError
from .propagation import (
    DiskExitError,
    HamiltonianSpec,
    chart_point,
    compare_propagation,
    delta_phase,
    hessian_blocks,
    symbol_ode_solve,
)
from .reduction import (
    reduce_exact,
    reduce_quadrature,
    reduce_symbol_matrix,
    symbol_eval_closed,
    symbol_eval_integral,
)
from .spin import SpinState, husimi_cp1, ket_mu, ket_mu_norm, save_state_csv
from .validation import run_suite, suite_names

__all__ = ["main"]


def _fmt(x):
    return f"{float(x):.17g}"


def _json_text(obj):
    """Deterministic JSON with 17-digit floats (insertion-ordered keys)."""
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_json_text(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit_text(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out):
    _emit_text(_json_text(payload) + "\n", out)


def _write_csv(out, header, rows):
    lines = [",".join(header)] + [",".join(row) for row in rows]
    _emit_text("\n".join(lines) + "\n", out)


def _pair(c):
    c = complex(c)
    return [c.real, c.imag]


def parse_complex(value):
    """"re" or "re,im" from the command line, [re, im] from JSON."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex values must be [re, im] pairs, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    parts = str(value).split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"bad complex value {value!r}; expected re or re,im")


def _complex_from_pair(p):
    if not (isinstance(p, (list, tuple)) and len(p) == 2):
        raise ValueError(f"complex entries must be [re, im] pairs, got {p!r}")
    return complex(float(p[0]), float(p[1]))


def _vector_from_json(obj):
    if not isinstance(obj, (list, tuple)) or not obj:
        raise ValueError("vector must be a non-empty list of [re, im] pairs")
    return np.array([_complex_from_pair(p) for p in obj], dtype=complex)


def _matrix_from_json(obj):
    if not isinstance(obj, (list, tuple)) or not obj:
        raise ValueError("matrix must be a non-empty list of rows")
    rows = [[_complex_from_pair(p) for p in row] for row in obj]
    return np.array(rows, dtype=complex)


def _load_structured(value):
    """Inline JSON if the text looks like JSON, else a path to read."""
    if isinstance(value, (dict, list)):
        return value
    text = str(value).strip()
    if text.startswith("[") or text.startswith("{"):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _parse_axis(text):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValueError(f"grid axis must be min:max:steps, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1:
        raise ValueError("grid axis needs at least one node")
    return np.linspace(lo, hi, n)


def parse_grid(spec):
    """One axis spec applies to both axes; two comma-separated specs give
    the real and imaginary axes separately."""
    specs = list(spec) if isinstance(spec, (list, tuple)) else str(spec).split(",")
    if len(specs) == 1:
        specs = specs * 2
    if len(specs) != 2:
        raise ValueError(f"grid takes one or two axis specs, got {spec!r}")
    return _parse_axis(specs[0]), _parse_axis(specs[1])


def _parse_int_list(value):
    if isinstance(value, (list, tuple)):
        ks = [int(v) for v in value]
    else:
        ks = [int(p) for p in str(value).split(",") if p]
    if not ks:
        raise ValueError("need at least one level")
    return ks


# config keys (RunConfig fields) -> argparse dests; a key only applies
# where the subcommand defines the dest, and flags always win.
_CONFIG_KEYS = {
    "k": "k",
    "mu": "mu",
    "A": "matrix",
    "w": "center",
    "hamiltonian": "hamiltonian",
    "t": "t",
    "grid": "grid",
    "point": "point",
    "eta": "eta",
    "route": "route",
    "mu0": "mu0",
    "nu0": "nu0",
    "k_list": "k_list",
    "suite": "suite",
}

_TOLERANCE_KEYS = ("step",)


def _apply_config(args):
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    for key, value in cfg.items():
        if key == "tolerances":
            if not isinstance(value, dict):
                raise ValueError("tolerances must be a JSON object")
            for tkey, tval in value.items():
                if tkey not in _TOLERANCE_KEYS or not hasattr(args, tkey):
                    raise ValueError(f"unknown tolerance {tkey!r}")
                if getattr(args, tkey) is None:
                    setattr(args, tkey, float(tval))
            continue
        dest = _CONFIG_KEYS.get(key)
        if dest is None or not hasattr(args, dest):
            raise ValueError(f"config key {key!r} does not apply to this command")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def _require(args, dest, flag):
    value = getattr(args, dest)
    if value is None:
        raise ValueError(f"missing required option {flag}")
    return value


def _normalized(state):
    return SpinState(k=state.k, coeffs=state.coeffs / np.linalg.norm(state.coeffs))


def cmd_ket(args):
    k = int(_require(args, "k", "--k"))
    mu = parse_complex(_require(args, "mu", "--mu"))
    state = ket_mu(k, mu)
    if args.normalize:
        state = _normalized(state)
    save_state_csv(args.out, state, normalized=args.normalize)
    return 0


def cmd_husimi(args):
    k = int(_require(args, "k", "--k"))
    mu = parse_complex(_require(args, "mu", "--mu"))
    state = ket_mu(k, mu)
    if args.normalize:
        state = _normalized(state)
    re_axis, im_axis = parse_grid(args.grid if args.grid is not None else "-2:2:81")
    rows = [
        [_fmt(x), _fmt(y), _fmt(husimi_cp1(state, complex(x, y)))]
        for x in re_axis
        for y in im_axis
    ]
    _write_csv(args.out, ["re_zeta", "im_zeta", "value"], rows)
    return 0


def cmd_reduce(args):
    a = SqueezeMatrix.from_matrix(
        _matrix_from_json(_load_structured(_require(args, "matrix", "--matrix")))
    )
    w = _vector_from_json(_load_structured(_require(args, "center", "--center")))
    z = _vector_from_json(_load_structured(_require(args, "point", "--point")))
    k = int(_require(args, "k", "--k"))
    route = args.route if args.route is not None else "exact"
    if route == "exact":
        value = reduce_exact(a, w, k, z)
    elif route == "quadrature":
        value = reduce_quadrature(a, w, k, z)
    else:
        raise ValueError(f"unknown route {route!r}")
    _emit_json({"k": k, "route": route, "value": _pair(value)}, args.out)
    return 0


def cmd_symbol(args):
    a = SqueezeMatrix.from_matrix(
        _matrix_from_json(_load_structured(_require(args, "matrix", "--matrix")))
    )
    w = _vector_from_json(_load_structured(_require(args, "center", "--center")))
    sym = reduce_symbol_matrix(a, w)
    payload = {
        "center": [_pair(c) for c in sym.center],
        "prefactor": _pair(sym.prefactor),
        "matrix": [[_pair(v) for v in row] for row in sym.matrix],
        "frame": [[_pair(v) for v in row] for row in sym.frame],
    }
    if args.eta is not None:
        eta = _vector_from_json(_load_structured(args.eta))
        payload["eta"] = [_pair(v) for v in eta]
        payload["value"] = _pair(symbol_eval_closed(sym, eta))
        if args.check_integral:
            payload["integral_value"] = _pair(symbol_eval_integral(a, w, eta))
    elif args.check_integral:
        raise ValueError("--check-integral needs --eta")
    _emit_json(payload, args.out)
    return 0


def cmd_norm_scan(args):
    mu = parse_complex(_require(args, "mu", "--mu"))
    ks = _parse_int_list(_require(args, "k_list", "--k-list"))
    limit = (1.0 - abs(mu) ** 2) ** -0.5
    rows = []
    for k in ks:
        norm2 = ket_mu_norm(k, mu)
        rows.append([str(k), _fmt(norm2), _fmt(limit), _fmt(abs(norm2 - limit) * k)])
    _write_csv(args.out, ["k", "norm2", "limit", "err_times_k"], rows)
    return 0


def cmd_propagate(args):
    h = HamiltonianSpec.from_json_dict(
        _load_structured(_require(args, "hamiltonian", "--hamiltonian"))
    )
    t = float(_require(args, "t", "--t"))
    mu0 = parse_complex(args.mu0) if args.mu0 is not None else 0j
    nu0 = parse_complex(args.nu0) if args.nu0 is not None else 1.0 + 0j
    step = float(args.step) if args.step is not None else 1e-3
    if not abs(mu0) < 1.0:
        raise ValueError(f"initial squeeze parameter needs |mu0| < 1, got {abs(mu0)}")
    blocks = hessian_blocks(h)
    res = symbol_ode_solve(
        np.array([[blocks.r]]), np.array([[blocks.s]]), mu0, t, step=step, nu0=nu0
    )
    # the symbol ODE sits at the critical center, so the classical
    # trajectory is constant there; delta is still computed, not assumed.
    delta = delta_phase([(ti, chart_point(0.0)) for ti in res.times], h)
    rows = []
    for i, ti in enumerate(res.times):
        mu = res.a[i][0, 0]
        nu = res.nu[i]
        rows.append(
            [_fmt(ti), _fmt(mu.real), _fmt(mu.imag), _fmt(nu.real), _fmt(nu.imag), _fmt(delta[i])]
        )
    _write_csv(args.out, ["t", "re_mu", "im_mu", "re_nu", "im_nu", "delta"], rows)
    return 0


def cmd_compare(args):
    k = int(_require(args, "k", "--k"))
    t = float(_require(args, "t", "--t"))
    a = float(args.a) if args.a is not None else 1.0 / math.sqrt(2.0)
    b = float(args.b) if args.b is not None else 1.0 / math.sqrt(2.0)
    step = float(args.step) if args.step is not None else 1e-3
    report = compare_propagation(k, t, a=a, b=b, step=step)
    if args.out_quantum:
        save_state_csv(args.out_quantum, report.lhs, normalized=True)
    if args.out_semiclassical:
        save_state_csv(args.out_semiclassical, report.rhs, normalized=True)
    _emit_json(
        {"k": k, "t": t, "l2_difference": report.l2_difference}, args.out
    )
    return 0


def cmd_validate(args):
    suite = args.suite if args.suite is not None else "all"
    results = run_suite(suite)
    payload = {
        "suite": suite,
        "passed": all(r.passed for r in results),
        "checks": [
            {
                "name": r.name,
                "suite": r.suite,
                "measured": r.measured,
                "bound": r.bound,
                "passed": r.passed,
                "detail": r.detail,
            }
            for r in results
        ],
    }
    _emit_json(payload, args.out)
    return 0 if payload["passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinsqueeze",
        description="Squeezed spin states from circle-averaged Gaussian states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help="JSON file filling in unset options")
        return p

    p = add("ket", cmd_ket, "write a squeezed ket as CSV n,re,im plus sidecar")
    p.add_argument("--k", type=int)
    p.add_argument("--mu", help="squeeze parameter, re or re,im")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out", required=True)

    p = add("husimi", cmd_husimi, "sample the Husimi density on a chart grid")
    p.add_argument("--k", type=int)
    p.add_argument("--mu")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--grid", help="min:max:steps, or two comma-separated specs")
    p.add_argument("--out", required=True)

    p = add("reduce", cmd_reduce, "evaluate the reduced Gaussian state at a point")
    p.add_argument("--matrix", help="squeeze matrix, JSON [re,im] entries or a path")
    p.add_argument("--center", help="unit center vector, JSON or a path")
    p.add_argument("--point", help="evaluation point, JSON or a path")
    p.add_argument("--k", type=int)
    p.add_argument("--route", choices=("exact", "quadrature"))
    p.add_argument("--out")

    p = add("symbol", cmd_symbol, "emit the Gaussian symbol data at a center")
    p.add_argument("--matrix")
    p.add_argument("--center")
    p.add_argument("--eta", help="horizontal vector to evaluate the symbol at")
    p.add_argument("--check-integral", action="store_true")
    p.add_argument("--out")

    p = add("norm-scan", cmd_norm_scan, "squeezed-ket norm against its limit over k")
    p.add_argument("--mu")
    p.add_argument("--k-list", dest="k_list", help="comma-separated levels")
    p.add_argument("--out")

    p = add("propagate", cmd_propagate, "integrate the symbol ODE for a Hamiltonian")
    p.add_argument("--hamiltonian", help="HamiltonianSpec JSON or a path")
    p.add_argument("--t", type=float)
    p.add_argument("--mu0", help="initial squeeze parameter (default 0)")
    p.add_argument("--nu0", help="initial amplitude (default 1)")
    p.add_argument("--step", type=float)
    p.add_argument("--out", required=True)

    p = add("compare", cmd_compare, "quantum vs semiclassical propagation report")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=float)
    p.add_argument("--a", type=float, help="l1^2 coefficient scale (default 1/sqrt 2)")
    p.add_argument("--b", type=float, help="l2^2 coefficient scale (default 1/sqrt 2)")
    p.add_argument("--step", type=float)
    p.add_argument("--out")
    p.add_argument("--out-quantum", help="CSV path for the propagated state")
    p.add_argument("--out-semiclassical", help="CSV path for the prediction")

    p = add("validate", cmd_validate, "run acceptance checks; exit 1 on failure")
    p.add_argument("--suite", choices=suite_names())
    p.add_argument("--out")

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except (ConvergenceError, BlowUpError, DiskExitError) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        time_reached = getattr(exc, "time", None)
        if time_reached is not None:
            diag["time"] = float(time_reached)
        sys.stderr.write(_json_text(diag) + "\n")
        return 3
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
