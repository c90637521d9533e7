#!/usr/bin/env python3
"""Rate studies over the level k, as CSV on stdout (or --out).

  propagation    normalized quantum vs semiclassical difference; columns
                 scale it by sqrt(k) and by k. The k-scaled column is the
                 flat one: normalization removes the leading amplitude
                 error, leaving a 1/k gap.
  center-value   |sqrt(2 pi k) sqrt(Q_A(w)+1) Psi(w) - 1| times k for a
                 few random labels; flat columns confirm the 1/k law.
  norms          squeezed-ket norm error times k for several mu.
"""

import argparse
import math
import sys

import numpy as np

from spinsqueeze import (
    compare_propagation,
    ket_mu_norm,
    quadratic_form,
    random_squeeze_matrix,
    reduce_exact,
)


def fmt(x):
    return f"{float(x):.17g}"


def emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def study_propagation(args):
    ks = [int(v) for v in args.k_list.split(",")]
    lines = ["k,l2_difference,scaled_sqrt_k,scaled_k"]
    for k in ks:
        d = compare_propagation(k, args.t).l2_difference
        lines.append(f"{k},{fmt(d)},{fmt(d * math.sqrt(k))},{fmt(d * k)}")
    return lines


def study_center_value(args):
    rng = np.random.default_rng(7)
    ks = [int(v) for v in args.k_list.split(",")]
    lines = ["label,k,residual,residual_times_k"]
    for label in range(args.n_labels):
        a = random_squeeze_matrix(2, rng)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        w = w / np.linalg.norm(w)
        root = np.sqrt(quadratic_form(a, w) + 1.0)
        for k in ks:
            r = abs(math.sqrt(2.0 * math.pi * k) * root * reduce_exact(a, w, k, w) - 1.0)
            lines.append(f"{label},{k},{fmt(r)},{fmt(r * k)}")
    return lines


def study_norms(args):
    ks = [int(v) for v in args.k_list.split(",")]
    mus = (0.25, 0.5 + 0.25j, 0.75)
    lines = ["re_mu,im_mu,k,err,err_times_k"]
    for mu in mus:
        limit = (1.0 - abs(mu) ** 2) ** -0.5
        for k in ks:
            err = abs(ket_mu_norm(k, mu) - limit)
            lines.append(f"{fmt(mu.real)},{fmt(mu.imag)},{k},{fmt(err)},{fmt(err * k)}")
    return lines


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument(
        "--study", choices=("propagation", "center-value", "norms"),
        default="propagation",
    )
    parser.add_argument("--k-list", dest="k_list", default="30,60,120,240,480")
    parser.add_argument("--t", type=float, default=1.2)
    parser.add_argument("--n-labels", dest="n_labels", type=int, default=4)
    parser.add_argument("--out")
    args = parser.parse_args()
    runner = {
        "propagation": study_propagation,
        "center-value": study_center_value,
        "norms": study_norms,
    }[args.study]
    emit(runner(args), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
