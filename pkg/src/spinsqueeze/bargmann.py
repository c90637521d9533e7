"""Gaussian coherent states in Bargmann space.

States are holomorphic amplitudes against the weight exp(-k|z|^2/2) on C^N,
with k the inverse semiclassical parameter. A state is labelled by a complex
symmetric squeeze matrix A inside the generalized unit disk (all Takagi
values < 1) and a center w. Vectors are rows throughout: the quadratic form
is z A z^T and the pairing with a center is z wbar^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import takagi_values

__all__ = [
    "DISK_MARGIN",
    "SqueezeMatrix",
    "quadratic_form",
    "gaussian_state_eval",
    "husimi",
    "unitary_covariance",
    "weyl_translate_eval",
    "bargmann_inner",
    "random_squeeze_matrix",
]

# strict disk membership margin for constructors
DISK_MARGIN = 1e-10


@dataclass(frozen=True)
class SqueezeMatrix:
    """Complex symmetric matrix strictly inside the generalized unit disk.

    ``kappa`` is the largest Takagi value; it controls every decay estimate
    downstream, so it is computed once at construction and frozen.
    """

    matrix: np.ndarray
    kappa: float

    @classmethod
    def from_matrix(cls, a):
        a = np.array(a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"squeeze matrix must be square, got shape {a.shape}")
        scale = np.linalg.norm(a)
        if scale > 0 and np.linalg.norm(a - a.T) > 1e-12 * scale:
            raise ValueError("squeeze matrix must be symmetric")
        a = 0.5 * (a + a.T)  # kill roundoff asymmetry, keep exact zeros exact
        kappa = float(takagi_values(a)[0]) if scale > 0 else 0.0
        if not kappa < 1.0 - DISK_MARGIN:
            raise ValueError(
                f"matrix lies outside the open unit disk: kappa={kappa!r}"
            )
        a.setflags(write=False)
        return cls(matrix=a, kappa=kappa)

    @property
    def n(self):
        return self.matrix.shape[0]


def _mat(a):
    """Accept a SqueezeMatrix or a bare array."""
    return a.matrix if isinstance(a, SqueezeMatrix) else np.asarray(a, dtype=complex)


def quadratic_form(a, z):
    """z A z^T for a row vector z."""
    z = np.asarray(z, dtype=complex)
    return complex(z @ _mat(a) @ z)


def _log_amplitude(a, w, k, z):
    """Exponent of the Gaussian state at z (translate form)."""
    a = _mat(a)
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    u = z - w
    return k * (
        0.5 * complex(u @ a @ u)
        + complex(z @ w.conj())
        - 0.5 * float(np.vdot(w, w).real)
        - 0.5 * float(np.vdot(z, z).real)
    )


def _log_amplitude_phase_form(a, w, k, z):
    """Same exponent, written as squeeze x radial decay x pure phase.

    Kept separate from the translate form on purpose: the two are compared
    in tests as an internal consistency check of the algebra.
    """
    a = _mat(a)
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    u = z - w
    return k * (
        0.5 * complex(u @ a @ u)
        - 0.5 * float(np.vdot(u, u).real)
        + 1j * float(complex(z @ w.conj()).imag)
    )


def gaussian_state_eval(a, w, k, z):
    """Value of the Gaussian state with squeeze matrix ``a`` and center ``w``
    at the point ``z``, including the exp(-k|z|^2/2) weight.

    The exponent's real part is <= -k(1-kappa)|z-w|^2/2, so the value never
    overflows; it underflows cleanly to 0 far from the center.
    """
    if k < 1 or int(k) != k:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return complex(np.exp(_log_amplitude(a, w, int(k), z)))


def husimi(a, w, k, z):
    """Squared modulus of the Gaussian state: exp(k(Re Q_A(z-w) - |z-w|^2))."""
    a = _mat(a)
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    u = z - w
    return float(np.exp(k * (complex(u @ a @ u).real - np.vdot(u, u).real)))


def unitary_covariance(g, a, w):
    """Push a labelled state through the U(N) substitution action z -> z g.

    Returns the new label (g A g^T as a SqueezeMatrix, w g^{-1}); Takagi
    values are preserved exactly by the transformation, recomputed here as
    a cheap safety net.
    """
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if np.linalg.norm(g.conj().T @ g - np.eye(n)) > 1e-12 * np.sqrt(n):
        raise ValueError("g is not unitary")
    a = _mat(a)
    w = np.asarray(w, dtype=complex)
    return SqueezeMatrix.from_matrix(g @ a @ g.T), w @ g.conj().T


def weyl_translate_eval(f, w, k, z):
    """Weyl translation by w of an arbitrary amplitude f, evaluated at z:
    exp(-k|w|^2/2) exp(k z wbar^T) f(z - w).

    No overflow guard: for |z.wbar| large the prefactor is genuinely huge
    and the caller's f must supply the compensating decay.
    """
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    pref = np.exp(k * (complex(z @ w.conj()) - 0.5 * float(np.vdot(w, w).real)))
    return pref * f(z - w)


def bargmann_inner(a, w, b, v, k, order=80):
    """L^2 inner product <psi_{A,w}, psi_{B,v}> over C^N by tensor
    Gauss-Hermite quadrature in the 2N real coordinates.

    The grid is centered at the midpoint of the two centers and scaled by
    1/sqrt(k * mean(1-kappa)): the integrand is a displaced anisotropic
    Gaussian and an origin-centered rule misses its peak once k is large.
    Supports N <= 2 (the tensor grid is order^(2N) points).
    """
    a = a if isinstance(a, SqueezeMatrix) else SqueezeMatrix.from_matrix(a)
    b = b if isinstance(b, SqueezeMatrix) else SqueezeMatrix.from_matrix(b)
    w = np.asarray(w, dtype=complex)
    v = np.asarray(v, dtype=complex)
    n = a.n
    if not (b.n == n == w.size == v.size):
        raise ValueError("dimension mismatch between labels")
    if n > 2:
        raise ValueError("tensor quadrature supported for N <= 2 only")
    if k < 1 or int(k) != k:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)

    nodes, weights = np.polynomial.hermite.hermgauss(order)
    # total weights for integrating arbitrary functions: w_i * exp(x_i^2)
    logw = np.log(weights) + nodes**2

    decay = 0.5 * ((1.0 - a.kappa) + (1.0 - b.kappa))
    scale = 1.0 / np.sqrt(k * decay)
    center = 0.5 * (w + v)

    am = a.matrix
    bmc = b.matrix.conj()
    wc = w.conj()

    def exponent(z):
        # z shape (..., n); returns k * [Q_A(z-w)/2 + conj(Q_B(z-v))/2
        #                                + z.wbar + zbar.v - |w|^2/2 - |v|^2/2 - |z|^2]
        zw = z - w
        zv = (z - v).conj()
        qa = np.einsum("...i,ij,...j->...", zw, am, zw)
        qb = np.einsum("...i,ij,...j->...", zv, bmc, zv)
        lin = z @ wc + z.conj() @ v
        norm2 = np.einsum("...i,...i->...", z, z.conj()).real
        return k * (
            0.5 * qa
            + 0.5 * qb
            + lin
            - 0.5 * np.vdot(w, w).real
            - 0.5 * np.vdot(v, v).real
            - norm2
        )

    if n == 1:
        x = center[0].real + scale * nodes
        y = center[0].imag + scale * nodes
        z = (x[:, None] + 1j * y[None, :])[..., None]
        lw = logw[:, None] + logw[None, :]
        total = np.sum(np.exp(exponent(z) + lw))
        return complex(total * scale**2)

    # n == 2: batch the first axis to keep the 4-d grid in memory bounds
    x2 = center[1].real + scale * nodes
    y2 = center[1].imag + scale * nodes
    total = 0.0 + 0.0j
    for i in range(order):
        x1 = center[0].real + scale * nodes[i]
        for j in range(order):
            z1 = x1 + 1j * (center[0].imag + scale * nodes[j])
            z = np.empty((order, order, 2), dtype=complex)
            z[..., 0] = z1
            z[..., 1] = x2[:, None] + 1j * y2[None, :]
            lw = logw[i] + logw[j] + logw[:, None] + logw[None, :]
            total += np.sum(np.exp(exponent(z) + lw))
    return complex(total * scale**4)


def random_squeeze_matrix(n, rng, kappa_max=0.8, kappa_min=0.1):
    """Random complex symmetric matrix with Takagi radius in
    [kappa_min, kappa_max]; the sampling helper the test batteries share."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    s = 0.5 * (g + g.T)
    radius = takagi_values(s)[0]
    target = rng.uniform(kappa_min, kappa_max)
    return SqueezeMatrix.from_matrix(s * (target / radius))
