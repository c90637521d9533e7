"""Spin states: the degree-k homogeneous component of Bargmann space on C^2.

Basis kets |n> = (1/pi) sqrt((k+1)/2) sqrt(C(k,n)) z1^n z2^(k-n), n = 0..k,
orthonormal for the unnormalized surface measure on the 3-sphere (total
2 pi^2). A state is its coefficient vector against that basis. Homogeneous
polynomials are coefficient arrays m with m[j] multiplying z1^(k-j) z2^j.

The squeezed kets |o, mu> and the basis change to and from reduced Gaussian
states work in log space internally: binomials of order k and the k^l / l!
ladders overflow floats long before the states themselves do.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from .bargmann import _mat
from .numerics import log_binomial

__all__ = [
    "SpinState",
    "basis_norm_factor",
    "log_basis_norm_factor",
    "poly_to_state",
    "state_to_poly",
    "ket_mu",
    "ket_mu_norm",
    "reduced_to_state",
    "su2_action",
    "ket_pmu",
    "husimi_cp1",
    "state_inner",
    "state_norm",
    "save_state_csv",
    "load_state_csv",
]


@dataclass(frozen=True)
class SpinState:
    """Coefficients against the orthonormal kets at level k."""

    k: int
    coeffs: np.ndarray

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.k + 1,):
            raise ValueError(
                f"coefficient vector must have length k+1={self.k + 1}, got {c.shape}"
            )
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "k", int(self.k))


def log_basis_norm_factor(k, n):
    """log of the |n> normalization prefactor (1/pi) sqrt((k+1)/2) sqrt(C(k,n))."""
    return (
        -math.log(math.pi)
        + 0.5 * math.log((k + 1) / 2.0)
        + 0.5 * log_binomial(k, n)
    )


def basis_norm_factor(k, n):
    return math.exp(log_basis_norm_factor(k, n))


def poly_to_state(m):
    """Homogeneous polynomial coefficients -> basis coefficients.

    c_n = m[k-n] / basis_norm_factor(k, n); the division happens in log
    space so polynomial coefficients of any representable magnitude land
    on well-scaled state coefficients.
    """
    m = np.asarray(m, dtype=complex)
    k = m.size - 1
    return _scaled_poly_to_state(k, m, 0.0)


def _scaled_poly_to_state(k, m, log_scale):
    """State whose polynomial is m * exp(log_scale)."""
    coeffs = np.zeros(k + 1, dtype=complex)
    with np.errstate(divide="ignore"):
        logmag = np.log(np.abs(m))
    for n in range(k + 1):
        mk = m[k - n]
        if mk == 0:
            continue
        lg = logmag[k - n] + log_scale - log_basis_norm_factor(k, n)
        coeffs[n] = (mk / abs(mk)) * math.exp(lg)
    return SpinState(k=k, coeffs=coeffs)


def state_to_poly(s):
    """Basis coefficients -> homogeneous polynomial coefficients (linear
    scale; overflows for k in the thousands, fine for the working range)."""
    m = np.zeros(s.k + 1, dtype=complex)
    for n in range(s.k + 1):
        m[s.k - n] = s.coeffs[n] * basis_norm_factor(s.k, n)
    return m


def ket_mu(k, mu):
    """Squeezed ket |o, mu>: coefficient (1/2k)^l ((2l)!/l!) sqrt(C(k,2l)) mu^l
    on |k - 2l>, built in log space. Requires |mu| < 1."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    mu = complex(mu)
    if not abs(mu) < 1.0:
        raise ValueError(f"squeeze parameter must satisfy |mu| < 1, got |mu|={abs(mu)}")
    coeffs = np.zeros(k + 1, dtype=complex)
    coeffs[k] = 1.0
    if mu != 0:
        log_mu = np.log(mu)
        for ell in range(1, k // 2 + 1):
            lg = (
                -ell * math.log(2.0 * k)
                + math.lgamma(2 * ell + 1)
                - math.lgamma(ell + 1)
                + 0.5 * log_binomial(k, 2 * ell)
                + ell * log_mu
            )
            coeffs[k - 2 * ell] = np.exp(lg)
    return SpinState(k=k, coeffs=coeffs)


def ket_mu_norm(k, mu):
    """Squared norm <o,mu|o,mu>; tends to (1-|mu|^2)^(-1/2) as k grows."""
    s = ket_mu(k, mu)
    return float(np.sum(np.abs(s.coeffs) ** 2))


def _dc_poly(coeffs):
    """Complex coefficient list -> list of (Decimal re, Decimal im)."""
    return [(Decimal(complex(c).real), Decimal(complex(c).imag)) for c in coeffs]


def _dc_conv(p, q):
    """Convolution of decimal coefficient lists; zero entries are skipped,
    which keeps sparse polynomials (diagonal squeeze matrices) cheap."""
    out = [(Decimal(0), Decimal(0))] * (len(p) + len(q) - 1)
    for i, (ar, ai) in enumerate(p):
        if not ar and not ai:
            continue
        for j, (br, bi) in enumerate(q):
            if not br and not bi:
                continue
            cr, ci = out[i + j]
            out[i + j] = (cr + ar * br - ai * bi, ci + ar * bi + ai * br)
    return out


def reduced_to_state(a, k):
    """Reduced Gaussian state at center (1, 0) as a spin state.

    Expands the exact finite sum into monomials: with Q_A(z)/2 written as
    the degree-2 polynomial (a/2, c, b/2) and the linear factor
    (1-a) z1 - c z2, term l contributes

        k^l / ((k-l)! (2l-k)!) * (Q_A/2)^(k-l) * (linear)^(2l-k).

    The monomial accumulation cancels to exponential depth in k for
    complex squeeze matrices (same mechanism as in reduce_exact), so it
    runs in decimal arithmetic with precision linear in k; the basis
    change back to float happens per coefficient in log space.
    """
    am = _mat(a)
    if am.shape != (2, 2):
        raise ValueError("reduced_to_state needs a 2x2 squeeze matrix")
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    a11, a12, a22 = complex(am[0, 0]), complex(am[0, 1]), complex(am[1, 1])

    # e^{-k} e^{k Q_A(w)/2} at w = (1, 0): real log and unit phase
    prefac_re = k * (0.5 * a11.real - 1.0)
    prefac_phase = 0.5 * k * a11.imag

    with localcontext() as ctx:
        ctx.prec = 64 + int(0.9 * k)
        ctx.Emax = 10**9
        ctx.Emin = -(10**9)

        quad = _dc_poly([0.5 * a11, a12, 0.5 * a22])
        lin = _dc_poly([1.0 - a11, -a12])
        one = _dc_poly([1.0])
        quad_pows = [one]
        for _ in range(k // 2):
            quad_pows.append(_dc_conv(quad_pows[-1], quad))
        lin_pows = [one]
        for _ in range(k):
            lin_pows.append(_dc_conv(lin_pows[-1], lin))

        acc = [(Decimal(0), Decimal(0))] * (k + 1)
        coeff = Decimal(k**k) / Decimal(math.factorial(k))  # l = k
        for ell in range(k, (k + 1) // 2 - 1, -1):
            term = _dc_conv(quad_pows[k - ell], lin_pows[2 * ell - k])
            for j, (tr, ti) in enumerate(term):
                if not tr and not ti:
                    continue
                cr, ci = acc[j]
                acc[j] = (cr + coeff * tr, ci + coeff * ti)
            if ell > (k + 1) // 2:
                coeff *= Decimal((2 * ell - k) * (2 * ell - k - 1)) / Decimal(
                    k * (k - ell + 1)
                )

        coeffs = np.zeros(k + 1, dtype=complex)
        for j, (cr, ci) in enumerate(acc):
            mag2 = cr * cr + ci * ci
            if not mag2:
                continue
            lg = 0.5 * float(mag2.ln()) + prefac_re
            # unit phase from the leading digits
            sh = max(cr.adjusted(), ci.adjusted())
            u = complex(float(cr.scaleb(-sh)), float(ci.scaleb(-sh)))
            u /= abs(u)
            n = k - j  # acc[j] multiplies z1^(k-j) z2^j, the |k-j> monomial
            coeffs[n] = u * math.exp(lg - log_basis_norm_factor(k, n))
        return SpinState(
            k=k, coeffs=coeffs * np.exp(1j * prefac_phase)
        )


def su2_action(g, s):
    """Substitution action z -> z g on a state, for g in SU(2).

    The polynomial transform is exact (binomial convolutions), so the
    coefficient-level map is unitary to machine precision.
    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError("g must be 2x2")
    if np.linalg.norm(g.conj().T @ g - np.eye(2)) > 1e-12:
        raise ValueError("g is not unitary")
    if abs(np.linalg.det(g) - 1.0) > 1e-12:
        raise ValueError("g must have determinant 1")
    k = s.k
    m = state_to_poly(s)
    # rows act: z1 -> g11 z1 + g21 z2, z2 -> g12 z1 + g22 z2
    first = np.array([g[0, 0], g[1, 0]], dtype=complex)
    second = np.array([g[0, 1], g[1, 1]], dtype=complex)
    pow_first = [np.array([1.0 + 0.0j])]
    pow_second = [np.array([1.0 + 0.0j])]
    for _ in range(k):
        pow_first.append(np.convolve(pow_first[-1], first))
        pow_second.append(np.convolve(pow_second[-1], second))
    out = np.zeros(k + 1, dtype=complex)
    for j in range(k + 1):
        if m[j] == 0:
            continue
        out += m[j] * np.convolve(pow_first[k - j], pow_second[j])
    return poly_to_state(out)


def ket_pmu(g, mu, k):
    """Moved squeezed ket |p, mu> = g . |o, mu>."""
    return su2_action(g, ket_mu(k, mu))


def husimi_cp1(s, zeta):
    """Husimi density of a spin state in the stereographic chart:
    |sum_n c_n f(k,n) zeta^(k-n)|^2 / (1+|zeta|^2)^k, evaluated in log
    space so level a few hundred stays finite at large |zeta|."""
    zeta = complex(zeta)
    k = s.k
    n_idx = np.arange(k + 1)
    with np.errstate(divide="ignore"):
        logmod = np.log(np.abs(s.coeffs))  # -inf on zero coefficients
    logmod = logmod + np.array([log_basis_norm_factor(k, n) for n in n_idx])
    if zeta == 0:
        logmod = np.where(n_idx == k, logmod, -np.inf)
        phase = np.angle(s.coeffs)
    else:
        logmod = logmod + (k - n_idx) * math.log(abs(zeta))
        phase = np.angle(s.coeffs) + (k - n_idx) * np.angle(zeta)
    top = float(np.max(logmod))
    if top == -np.inf:
        return 0.0
    total = np.sum(np.exp(logmod - top + 1j * phase))
    return float(
        abs(total) ** 2 * math.exp(2.0 * top - k * math.log1p(abs(zeta) ** 2))
    )


def state_inner(s1, s2):
    """<s1, s2> = sum c_n conj(d_n); linear in the first slot."""
    if s1.k != s2.k:
        raise ValueError("states live at different levels")
    return complex(np.sum(s1.coeffs * np.conj(s2.coeffs)))


def state_norm(s):
    return float(np.linalg.norm(s.coeffs))


def save_state_csv(path, s, normalized=False):
    """Write a state as CSV (header n,re,im) plus a JSON sidecar at
    ``path + '.json'`` recording the level and normalization flag.

    17 significant digits so a load round-trips bit-identically.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "re", "im"])
        for n in range(s.k + 1):
            c = s.coeffs[n]
            writer.writerow([n, f"{c.real:.17g}", f"{c.imag:.17g}"])
    with open(path + ".json", "w") as fh:
        json.dump({"k": s.k, "normalized": bool(normalized)}, fh)
        fh.write("\n")


def load_state_csv(path):
    """Inverse of save_state_csv; returns (state, sidecar dict)."""
    with open(path + ".json") as fh:
        meta = json.load(fh)
    k = int(meta["k"])
    coeffs = np.zeros(k + 1, dtype=complex)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["n", "re", "im"]:
            raise ValueError(f"unexpected CSV header {header!r}")
        for row in reader:
            n = int(row[0])
            coeffs[n] = float(row[1]) + 1j * float(row[2])
    return SpinState(k=k, coeffs=coeffs), meta
