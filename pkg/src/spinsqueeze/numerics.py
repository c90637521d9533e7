"""Shared numerical kernels: Takagi values, log-binomials, periodic
quadrature, a fixed-step RK4 integrator and Hermitian matrix propagators.

Everything here is generic infrastructure; the physics lives in the other
modules. All routines are deterministic, take and return numpy arrays, and
raise rather than silently degrade.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "ConvergenceError",
    "BlowUpError",
    "takagi_values",
    "log_binomial",
    "periodic_quadrature",
    "rk4_step",
    "rk4_solve",
    "hermitian_propagator",
]

MAX_QUADRATURE_NODES = 2**20


class ConvergenceError(RuntimeError):
    """Quadrature failed to converge within the node budget.

    Carries the last estimate and node count so callers can report
    diagnostics instead of a bare failure.
    """

    def __init__(self, message, last_estimate, nodes):
        super().__init__(message)
        self.last_estimate = last_estimate
        self.nodes = nodes


class BlowUpError(RuntimeError):
    """ODE state became non-finite during integration."""

    def __init__(self, message, time):
        super().__init__(message)
        self.time = time


def takagi_values(a):
    """Takagi singular values of a complex symmetric matrix, descending.

    For symmetric ``a`` these are the square roots of the eigenvalues of
    ``a* a`` (conjugate-transpose times the matrix). The largest one is the
    radius governing membership in the generalized unit disk.

    Parameters
    ----------
    a : (n, n) array_like, complex, symmetric

    Returns
    -------
    (n,) ndarray of nonnegative floats, sorted descending.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = np.linalg.norm(a)
    if scale > 0 and np.linalg.norm(a - a.T) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric (a != a^T)")
    gram = a.conj().T @ a
    vals = np.linalg.eigvalsh(gram)
    # eigvalsh can return tiny negatives for a singular gram matrix
    vals = np.sqrt(np.clip(vals, 0.0, None))
    return vals[::-1].copy()


def log_binomial(k, n):
    """log of binomial(k, n) via log-gamma; exact overflow-free path for
    the large arguments the coefficient formulas need."""
    if not (isinstance(k, (int, np.integer)) and isinstance(n, (int, np.integer))):
        raise ValueError("log_binomial takes integer arguments")
    if not 0 <= n <= k:
        raise ValueError(f"need 0 <= n <= k, got n={n}, k={k}")
    return math.lgamma(k + 1) - math.lgamma(n + 1) - math.lgamma(k - n + 1)


def periodic_quadrature(f, tol, start_nodes=16, max_nodes=MAX_QUADRATURE_NODES):
    """Mean of a smooth 2*pi-periodic function, by node-doubling trapezoid.

    ``f`` must accept a 1-d array of angles and return the integrand values;
    the estimate is (1/2pi) * integral over [0, 2pi). Doubling stops when
    two successive estimates differ by at most ``tol`` (absolute). Raises
    ConvergenceError at the node cap: hitting the cap is an error, not a
    warning, because every downstream tolerance assumes convergence.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    n = int(start_nodes)
    if n < 2:
        raise ValueError("start_nodes must be >= 2")
    nodes = 2.0 * np.pi * np.arange(n) / n
    est = complex(np.mean(f(nodes)))
    while n <= max_nodes // 2:
        mids = 2.0 * np.pi * (np.arange(n) + 0.5) / n
        mid_mean = complex(np.mean(f(mids)))
        new_est = 0.5 * (est + mid_mean)
        n *= 2
        if abs(new_est - est) <= tol:
            return new_est
        est = new_est
    raise ConvergenceError(
        f"trapezoid did not converge to {tol:g} within {max_nodes} nodes",
        last_estimate=est,
        nodes=n,
    )


def rk4_step(field, t, y, h):
    """One classical Runge-Kutta step for dy/dt = field(t, y)."""
    k1 = field(t, y)
    k2 = field(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = field(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = field(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_solve(field, y0, t_final, step=1e-3):
    """Fixed-step RK4 over complex state vectors.

    Returns the full trajectory as a list of (t, y) pairs including the
    initial condition. The final step is shortened to land exactly on
    ``t_final``. A non-finite state raises BlowUpError with the time at
    which it appeared.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    y = np.asarray(y0, dtype=complex).copy()
    out = [(0.0, y.copy())]
    n_full = int(t_final / step)
    t = 0.0
    for i in range(n_full):
        y = rk4_step(field, t, y, step)
        t = (i + 1) * step
        if not np.all(np.isfinite(y.view(float))):
            raise BlowUpError(f"state blew up at t={t:g}", time=t)
        out.append((t, y.copy()))
    if t < t_final:
        h = t_final - t
        if h > 1e-15 * max(1.0, t_final):
            y = rk4_step(field, t, y, h)
            if not np.all(np.isfinite(y.view(float))):
                raise BlowUpError(f"state blew up at t={t_final:g}", time=t_final)
            out.append((t_final, y.copy()))
    return out


def hermitian_propagator(h, theta):
    """exp(-i*theta*H) for Hermitian H, by eigendecomposition.

    The result is exactly unitary up to the eigensolver's accuracy, which
    is what the propagation checks rely on; a Hermiticity defect beyond
    1e-12 (relative) is a caller bug and raises.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = np.linalg.norm(h)
    if scale > 0 and np.linalg.norm(h - h.conj().T) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian")
    vals, vecs = np.linalg.eigh(h)
    phases = np.exp(-1j * theta * vals)
    return (vecs * phases) @ vecs.conj().T
