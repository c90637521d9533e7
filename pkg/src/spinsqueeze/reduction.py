"""Quantum reduction of Gaussian states by circle averaging.

The reduction of a level-k state psi is (1/2pi) * integral of
exp(-ikt) psi(e^{it} z) dt; applied to a Gaussian state it lands in the
degree-k homogeneous component, concentrated near the circle orbit of the
center. This module carries both evaluation routes (exact finite sum vs
quadrature), the center asymptotics, and the Gaussian symbol that controls
the sqrt(k)-scale shape of the reduced state around its center.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from .bargmann import SqueezeMatrix, _mat, quadratic_form
from .numerics import periodic_quadrature, takagi_values

__all__ = [
    "GaussianSymbol",
    "reduce_quadrature",
    "reduce_exact",
    "center_value_asymptotic",
    "rotation_to_first_axis",
    "reduce_symbol_matrix",
    "symbol_eval_closed",
    "symbol_eval_integral",
    "symbol_inner",
    "reduced_inner_estimate",
    "symbol_limit_residual",
]


def _check_unit_center(w):
    w = np.asarray(w, dtype=complex)
    if abs(np.vdot(w, w).real - 1.0) > 1e-12:
        raise ValueError("center must lie on the unit sphere")
    return w


def _check_level(k):
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return int(k)


def reduce_quadrature(a, w, k, z, tol=None):
    """Circle-average reduction of the Gaussian state, by trapezoid rule.

    This is the oracle route: it touches none of the closed-form algebra.
    ``tol`` is the absolute node-doubling tolerance; by default it is set
    to 1e-13 times the presampled integrand peak, so the stopping rule
    tracks the scale of the answer.
    """
    a = _mat(a)
    w = _check_unit_center(w)
    k = _check_level(k)
    z = np.asarray(z, dtype=complex)

    # exponent of exp(-ikt) psi_{A,w}(e^{it} z), assembled from scalars:
    # only e^{it} enters, so the t-grid evaluation is a cheap broadcast.
    qz = 0.5 * quadratic_form(a, z)
    qw = 0.5 * quadratic_form(a, w)
    lin = complex(z @ (w.conj() - a @ w))
    const = qw - 0.5 * k_norm(w) - 0.5 * k_norm(z)

    def integrand(t):
        phase = np.exp(1j * t)
        return np.exp(k * (phase * phase * qz + phase * lin + const) - 1j * k * t)

    start = 1 << max(6, int(math.ceil(math.log2(4 * k + 16))))
    if tol is None:
        probe = integrand(2.0 * np.pi * np.arange(64) / 64)
        tol = 1e-13 * max(float(np.max(np.abs(probe))), 1e-300)
    return periodic_quadrature(integrand, tol, start_nodes=start)


def k_norm(v):
    """|v|^2 as a float."""
    v = np.asarray(v, dtype=complex)
    return float(np.vdot(v, v).real)


def reduce_exact(a, w, k, z):
    """Closed-form value of the reduced Gaussian state.

    Evaluates the degree-k homogeneous polynomial

        sum_l  k^l / ((k-l)! (2l-k)!)
               * (Q_A(z)/2)^{k-l} * (z (wbar - A w)^T)^{2l-k}

    over ceil(k/2) <= l <= k, times the label constant e^{k Q_A(w)/2 - k/2}
    and the Gaussian weight e^{-k |z|^2 / 2}. This is the literal circle
    average at every z, matching reduce_quadrature on and off the unit
    sphere.

    For generic complex bases the terms cancel each other to a depth that
    grows exponentially with k (the sum is a Fourier coefficient of a
    function whose modulus is exponentially larger), which puts the value
    beyond float64 already around k ~ 100. The sum is therefore carried
    out in decimal arithmetic whose precision grows linearly with k; the
    cost stays in milliseconds for k in the thousands.
    """
    a = _mat(a)
    w = _check_unit_center(w)
    k = _check_level(k)
    z = np.asarray(z, dtype=complex)

    base_q = 0.5 * quadratic_form(a, z)
    base_l = complex(z @ (w.conj() - a @ w))
    qw = complex(quadratic_form(a, w))
    prefac_re = k * (0.5 * qw.real - 0.5 - 0.5 * k_norm(z))
    phase = cmath.exp(1j * (0.5 * k * qw.imag))

    # zero bases leave at most one term (0^0 = 1 under the sum's
    # convention); those go through plain logs, no cancellation involved.
    if base_q == 0 and base_l == 0:
        return 0.0 + 0.0j
    if base_q == 0:
        lg = k * math.log(k) - math.lgamma(k + 1) + k * cmath.log(base_l)
        return _safe_exp(lg + prefac_re) * phase
    if base_l == 0:
        if k % 2:
            return 0.0 + 0.0j
        half = k // 2
        lg = half * math.log(k) - math.lgamma(half + 1) + half * cmath.log(base_q)
        return _safe_exp(lg + prefac_re) * phase

    with localcontext() as ctx:
        ctx.prec = 64 + int(0.9 * k)
        ctx.Emax = 10**9
        ctx.Emin = -(10**9)
        sr, si = _reduce_exact_sum(base_q, base_l, k)
        scale = (Decimal(prefac_re)).exp()
        sr *= scale
        si *= scale
        val = complex(float(sr), float(si))
    return val * phase


def _reduce_exact_sum(base_q, base_l, k):
    """The bare sum over l, in the ambient decimal context, as a real
    and imaginary part. Runs the l index downward from k with an exact
    rational step for the combinatorial factor."""
    qr, qi = Decimal(base_q.real), Decimal(base_q.imag)
    lr, li = Decimal(base_l.real), Decimal(base_l.imag)

    # 1/lin^2, for the downward step 2l-k -> 2l-k-2
    l2r, l2i = lr * lr - li * li, 2 * lr * li
    l2norm = l2r * l2r + l2i * l2i
    inv2r, inv2i = l2r / l2norm, -l2i / l2norm

    # term at l = k: (k^k/k!) lin^k, the power by repeated squaring
    tr, ti = Decimal(k**k) / Decimal(math.factorial(k)), Decimal(0)
    br, bi = lr, li
    e = k
    while e:
        if e & 1:
            tr, ti = tr * br - ti * bi, tr * bi + ti * br
        e >>= 1
        if e:
            br, bi = br * br - bi * bi, 2 * br * bi
    sr, si = tr, ti

    for ell in range(k, (k + 1) // 2, -1):
        # l -> l-1 multiplies the coefficient by (2l-k)(2l-k-1)/(k(k-l+1)),
        # the quadratic exponent by base_q, and drops lin^2.
        ratio = Decimal((2 * ell - k) * (2 * ell - k - 1)) / Decimal(
            k * (k - ell + 1)
        )
        tr, ti = tr * qr - ti * qi, tr * qi + ti * qr
        tr, ti = tr * inv2r - ti * inv2i, tr * inv2i + ti * inv2r
        tr, ti = tr * ratio, ti * ratio
        sr, si = sr + tr, si + ti
    return sr, si


def _safe_exp(c):
    try:
        return cmath.exp(c)
    except OverflowError:
        return complex(math.inf, math.inf)


def center_value_asymptotic(a, w, k, t0=0.0):
    """Leading term of the reduced state at the rotated center e^{-i t0} w:
    (2 pi k)^{-1/2} e^{-i k t0} (w A w^T + 1)^{-1/2}, principal square root.

    The true value differs by O(k^{-3/2}).
    """
    a = _mat(a)
    w = _check_unit_center(w)
    k = _check_level(k)
    root = np.sqrt(quadratic_form(a, w) + 1.0)  # Re(Q_A(w)) > -1 inside the disk
    return complex(np.exp(-1j * k * t0) / (math.sqrt(2.0 * math.pi * k) * root))


def rotation_to_first_axis(w):
    """Deterministic unitary U with first column conj(w), so w U = e_1.

    Householder construction with the LAPACK sign choice (alpha =
    -conj(w_1)/|w_1|, or 1 when w_1 = 0) to avoid cancellation; at
    w = (1, 0, ..., 0) it returns the identity exactly, which keeps the
    one-center formulas literal there.
    """
    w = _check_unit_center(w)
    n = w.size
    u1 = w.conj()
    if abs(u1[0]) > 1e-300:
        alpha = -u1[0] / abs(u1[0])
    else:
        alpha = 1.0 + 0.0j
    v = alpha * np.eye(n, dtype=complex)[0] - u1
    norm2 = k_norm(v)
    house = np.eye(n, dtype=complex) - (2.0 / norm2) * np.outer(v, v.conj())
    d = np.eye(n, dtype=complex)
    d[0, 0] = alpha
    return house @ d


@dataclass(frozen=True)
class GaussianSymbol:
    """sqrt(k)-scale limit profile of a reduced state around its center.

    On the horizontal space at the center (the orthogonal complement of
    the center's complex line), in the orthonormal coordinates given by
    ``frame`` rows, the symbol is

        prefactor * exp(u M u^T / 2) * exp(-|u|^2 / 2).

    ``matrix`` M again lies strictly inside the unit disk.
    """

    center: np.ndarray
    prefactor: complex
    matrix: np.ndarray
    frame: np.ndarray

    @property
    def dim(self):
        return self.matrix.shape[0]


def reduce_symbol_matrix(a, w):
    """Symbol data of the reduced Gaussian state with label (a, w).

    Rotates w to the first axis with rotation_to_first_axis, forms
    A' = U^* A Ubar, and compresses to the horizontal block

        M = lower minor of  A' - A' e_1^T e_1 A' / (A' _11 + 1),

    which stays strictly inside the unit disk. The frame rows are the
    horizontal images of e_2..e_N, so closed-form evaluation works on
    ambient horizontal vectors.
    """
    a_sq = a if isinstance(a, SqueezeMatrix) else SqueezeMatrix.from_matrix(a)
    am = a_sq.matrix
    w = _check_unit_center(w)
    n = w.size
    if n < 2:
        raise ValueError("symbol needs N >= 2")
    u = rotation_to_first_axis(w)
    ap = u.conj().T @ am @ u.conj()
    denom = ap[0, 0] + 1.0
    m = ap[1:, 1:] - np.outer(ap[1:, 0], ap[0, 1:]) / denom
    m = 0.5 * (m + m.T)
    if takagi_values(m)[0] >= 1.0:
        raise ValueError("compressed matrix left the unit disk")
    pref = 1.0 / (math.sqrt(2.0 * math.pi) * np.sqrt(quadratic_form(am, w) + 1.0))
    frame = u.conj().T[1:, :].copy()
    m.setflags(write=False)
    frame.setflags(write=False)
    return GaussianSymbol(
        center=w.copy(), prefactor=complex(pref), matrix=m, frame=frame
    )


def _frame_coordinates(sym, eta):
    eta = np.asarray(eta, dtype=complex)
    u = sym.frame.conj() @ eta
    recon = u @ sym.frame
    if np.linalg.norm(eta - recon) > 1e-10 * max(1.0, np.linalg.norm(eta)):
        raise ValueError("eta is not horizontal at the symbol's center")
    return u


def symbol_eval_closed(sym, eta):
    """Closed-form symbol value at an ambient horizontal vector eta."""
    u = _frame_coordinates(sym, eta)
    q = complex(u @ sym.matrix @ u)
    return complex(sym.prefactor * np.exp(0.5 * q - 0.5 * k_norm(u)))


def symbol_eval_integral(a, w, eta, abs_tol=1e-12):
    """Symbol value by the defining Gaussian line integral,

        (1/2pi) e^{-|eta|^2/2} * integral exp(Q_A(i s w + eta)/2 - s^2/2) ds,

    via trapezoid on a window wide enough for the linear drift term.
    Independent of the closed form: no frame rotation, no minor formula.
    """
    a = _mat(a)
    w = _check_unit_center(w)
    eta = np.asarray(eta, dtype=complex)
    if abs(complex(eta @ w.conj())) > 1e-10 * max(1.0, np.linalg.norm(eta)):
        raise ValueError("eta must be horizontal at w")

    b2 = quadratic_form(a, w) + 1.0          # Gaussian coefficient, Re > 0
    gamma = 1j * complex(eta @ a @ w)        # linear drift
    alpha = b2.real
    kappa = takagi_values(a)[0] if np.linalg.norm(a) > 0 else 0.0

    # window: -alpha L^2/2 + |gamma| L <= -32  (tail below the 1e-12 target)
    l_decay = 8.0 / math.sqrt(1.0 - kappa)
    l_drift = (abs(gamma) + math.sqrt(abs(gamma) ** 2 + 64.0 * alpha)) / alpha
    half_width = max(l_decay, l_drift)
    # spacing from the instantaneous-frequency bound of the chirped Gaussian
    freq = abs(b2) * half_width + abs(gamma) + 8.0
    n_nodes = int(math.ceil(2.0 * half_width * freq / math.pi)) + 1
    n_nodes = max(n_nodes, 801)
    s = np.linspace(-half_width, half_width, n_nodes)
    vals = np.exp(-0.5 * b2 * s * s + gamma * s)
    line = np.trapezoid(vals, s)

    pref = np.exp(0.5 * quadratic_form(a, eta) - 0.5 * k_norm(eta)) / (2.0 * np.pi)
    return complex(pref * line)


def symbol_inner(s1, s2, order=64):
    """L^2 pairing <sigma_1, sigma_2> over the horizontal space.

    Both symbols must share a center frame. Dimension 1 is closed form,
    c1 conj(c2) pi / sqrt(1 - mu1 conj(mu2)); higher dimensions fall back
    to tensor Gauss-Hermite in the 2(N-1) real coordinates.
    """
    if s1.dim != s2.dim:
        raise ValueError("symbol dimensions differ")
    if np.linalg.norm(s1.frame - s2.frame) > 1e-10:
        raise ValueError("symbols live over different center frames")
    c = s1.prefactor * np.conj(s2.prefactor)
    if s1.dim == 1:
        mu1 = complex(s1.matrix[0, 0])
        mu2 = complex(s2.matrix[0, 0])
        return complex(c * np.pi / np.sqrt(1.0 - mu1 * np.conj(mu2)))

    if s1.dim > 2:
        raise ValueError("tensor quadrature supported for dim <= 2 only")
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    logw = np.log(weights) + nodes**2
    kap = max(takagi_values(s1.matrix)[0], takagi_values(s2.matrix)[0])
    scale = 1.0 / math.sqrt(1.0 - kap)
    m1 = s1.matrix
    m2c = s2.matrix.conj()
    total = 0.0 + 0.0j
    x = scale * nodes
    for i in range(order):
        for j in range(order):
            u = np.empty((order, order, 2), dtype=complex)
            u[..., 0] = x[i] + 1j * x[j]
            u[..., 1] = x[:, None] + 1j * x[None, :]
            q1 = np.einsum("...i,ij,...j->...", u, m1, u)
            q2 = np.einsum("...i,ij,...j->...", u.conj(), m2c, u.conj())
            n2 = np.einsum("...i,...i->...", u, u.conj()).real
            lw = logw[i] + logw[j] + logw[:, None] + logw[None, :]
            total += np.sum(np.exp(0.5 * q1 + 0.5 * q2 - n2 + lw))
    return complex(c * total * scale**4)


def reduced_inner_estimate(a, b, w, k):
    """Leading-order inner product of two reduced states sharing a center:
    (2 pi / k^N) <sigma_A, sigma_B>; exact value differs by O(k^{-N-1})."""
    w = _check_unit_center(w)
    k = _check_level(k)
    n = w.size
    sa = reduce_symbol_matrix(a, w)
    sb = reduce_symbol_matrix(b, w)
    return complex(2.0 * np.pi / k**n * symbol_inner(sa, sb))


def symbol_limit_residual(a, w, k, eta):
    """|sqrt(k) * Psi_{A,w}(w + eta/sqrt(k)) - sigma_A(eta)|.

    Psi here is the circle average with its Gaussian weight; for
    horizontal eta the weight contributes exactly the exp(-|eta|^2/2)
    that the symbol's own Gaussian factor expects.
    """
    w = _check_unit_center(w)
    k = _check_level(k)
    eta = np.asarray(eta, dtype=complex)
    sym = reduce_symbol_matrix(a, w)
    _frame_coordinates(sym, eta)  # validates horizontality
    z = w + eta / math.sqrt(k)
    val = reduce_exact(a, w, k, z)
    return float(abs(math.sqrt(k) * val - symbol_eval_closed(sym, eta)))
