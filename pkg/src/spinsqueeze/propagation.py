"""Propagation: classical flows on the sphere, the squeeze-parameter ODE,
quantized spin Hamiltonians, and the quantum vs semiclassical comparison.

Classical side. A Hamiltonian is a real polynomial in the three moment
components L1 = Re(z1 conj(z2)), L2 = Im(z1 conj(z2)),
L3 = (|z1|^2 - |z2|^2)/2, read as a function on the projective line and
lifted to C^2 by H(z) = |z|^2 h(L(z)/|z|^2). Flows use dz/dt = i dH/dzbar,
the sign that makes the flow of |z|^2 the phase rotation z -> e^{it} z.

Semiclassical side. Around a critical point of h the squeeze parameter
evolves by dA/dt = -2i (R + (SA + AS^T)/2 + A conj(R) A) with (R, S) the
chart Hessian blocks, and the amplitude by dnu/nu = -i (tr S / 2
+ tr(conj(R) A)). The quantum side exponentiates the symmetrized
polynomial in the normalized spin operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .numerics import hermitian_propagator, rk4_solve, rk4_step, takagi_values
from .spin import SpinState, ket_mu

__all__ = [
    "DiskExitError",
    "HamiltonianSpec",
    "HessianBlocks",
    "PropagationResult",
    "CompareReport",
    "moment_components",
    "classical_lift_eval",
    "hamilton_field",
    "hamilton_flow",
    "chart_point",
    "chart_eval",
    "hessian_blocks",
    "symbol_ode_solve",
    "delta_phase",
    "spin_operators",
    "quantize",
    "quantum_propagate",
    "semiclassical_prediction",
    "compare_propagation",
]

MAX_TOTAL_DEGREE = 4


class DiskExitError(RuntimeError):
    """The squeeze parameter reached the boundary of the unit disk."""

    def __init__(self, message, time):
        super().__init__(message)
        self.time = time


@dataclass(frozen=True)
class HamiltonianSpec:
    """Real polynomial in the moment components.

    ``terms`` is a tuple of (coefficient, (e1, e2, e3)) monomials meaning
    coeff * l1^e1 l2^e2 l3^e3. Total degree is capped: the quantization
    step enumerates operator orderings, which is only sane for low degree.
    """

    terms: tuple

    def __post_init__(self):
        clean = []
        for coeff, exps in self.terms:
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise ValueError("coefficients must be finite reals")
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent triple {exps!r}")
            if sum(exps) > MAX_TOTAL_DEGREE:
                raise ValueError(f"total degree exceeds {MAX_TOTAL_DEGREE}")
            clean.append((coeff, exps))
        object.__setattr__(self, "terms", tuple(clean))

    def value(self, ell):
        l1, l2, l3 = ell
        return sum(c * l1**e1 * l2**e2 * l3**e3 for c, (e1, e2, e3) in self.terms)

    def gradient(self, ell):
        """(dh/dl1, dh/dl2, dh/dl3), assembled term by term."""
        l1, l2, l3 = ell
        grad = [0.0, 0.0, 0.0]
        for c, (e1, e2, e3) in self.terms:
            if e1:
                grad[0] += c * e1 * l1 ** (e1 - 1) * l2**e2 * l3**e3
            if e2:
                grad[1] += c * e2 * l1**e1 * l2 ** (e2 - 1) * l3**e3
            if e3:
                grad[2] += c * e3 * l1**e1 * l2**e2 * l3 ** (e3 - 1)
        return tuple(grad)

    def to_json_dict(self):
        return {
            "terms": [
                {"coeff": c, "exps": list(exps)} for c, exps in self.terms
            ]
        }

    @classmethod
    def from_json_dict(cls, data):
        try:
            terms = tuple(
                (term["coeff"], tuple(term["exps"])) for term in data["terms"]
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed Hamiltonian spec: {exc}") from exc
        return cls(terms=terms)


def moment_components(z):
    """L1, L2, L3 at an ambient point (not normalized by |z|^2)."""
    z = np.asarray(z, dtype=complex)
    cross = z[0] * np.conj(z[1])
    return (
        float(cross.real),
        float(cross.imag),
        0.5 * float(abs(z[0]) ** 2 - abs(z[1]) ** 2),
    )


def classical_lift_eval(h, z):
    """Canonical lift H(z) = |z|^2 h(L(z)/|z|^2); positive-homogeneous of
    degree two, defined away from the origin."""
    z = np.asarray(z, dtype=complex)
    n2 = float(np.vdot(z, z).real)
    if n2 == 0.0:
        raise ValueError("lift undefined at the origin")
    l1, l2, l3 = moment_components(z)
    return n2 * h.value((l1 / n2, l2 / n2, l3 / n2))


def _dl_dzbar(z):
    """Rows: dL_j/dzbar as vectors, j = 1, 2, 3."""
    z1, z2 = z
    return np.array(
        [
            [0.5 * z2, 0.5 * z1],
            [0.5j * z2, -0.5j * z1],
            [0.5 * z1, -0.5 * z2],
        ],
        dtype=complex,
    )


def hamilton_field(h, z):
    """dz/dt = i dH/dzbar for the lifted Hamiltonian.

    With H = |z|^2 p(L/|z|^2): dH/dzbar_i = z_i p(l) +
    sum_j p_j(l) (dL_j/dzbar_i - l_j z_i). The field is tangent to the
    sphere (|z|^2 is conserved) because H is S^1-invariant and real.
    """
    z = np.asarray(z, dtype=complex)
    n2 = float(np.vdot(z, z).real)
    if n2 == 0.0:
        raise ValueError("field undefined at the origin")
    lam = np.array(moment_components(z)) / n2
    val = h.value(lam)
    grad = np.array(h.gradient(lam))
    dl = _dl_dzbar(z)
    dh_dzbar = z * val + grad @ (dl - np.outer(lam, z))
    return 1j * dh_dzbar


def hamilton_flow(h, w0, t_final, step=1e-3):
    """Integrate the lifted flow from w0; returns the trajectory as a
    list of (t, w) pairs, the same shape rk4_solve produces."""
    w0 = np.asarray(w0, dtype=complex)
    return rk4_solve(lambda t, y: hamilton_field(h, y), w0, t_final, step)


def chart_point(zeta):
    """Section of the stereographic chart: (1, zeta)/sqrt(1+|zeta|^2)."""
    zeta = complex(zeta)
    return np.array([1.0, zeta], dtype=complex) / math.sqrt(1.0 + abs(zeta) ** 2)


def chart_eval(h, zeta):
    """h in the chart, i.e. pulled back through chart_point. Note the
    chart moment components are l1 = Re z /(1+|z|^2), l2 = -Im z/(1+|z|^2),
    l3 = (1-|z|^2)/(2(1+|z|^2)): the sign of l2 and the value l3(0) = +1/2
    come from the pullback and are what the quantized operators match."""
    return h.value(moment_components(chart_point(zeta)))


@dataclass(frozen=True)
class HessianBlocks:
    """Chart Hessian data at the base point: r = (1/2) d^2h/dzeta^2 and
    s = d^2h/dzeta dzetabar (scalars for the projective line)."""

    r: complex
    s: float


def hessian_blocks(h, fd_step=1e-5):
    """Second-order chart data of h at the critical point over (1, 0).

    Preconditions checked numerically: h and its chart gradient vanish at
    the base point (both to 1e-10). Central finite differences with the
    given step; with the Wirtinger convention d/dzeta = (d/dx - i d/dy)/2,

        r = (h_xx - h_yy)/8 - i h_xy / 4,     s = (h_xx + h_yy)/4.
    """
    f = lambda x, y: chart_eval(h, x + 1j * y)
    v0 = f(0.0, 0.0)
    d = fd_step
    gx = (f(d, 0.0) - f(-d, 0.0)) / (2 * d)
    gy = (f(0.0, d) - f(0.0, -d)) / (2 * d)
    if abs(v0) > 1e-10:
        raise ValueError(f"h does not vanish at the base point: h(o)={v0:g}")
    if max(abs(gx), abs(gy)) > 1e-10:
        raise ValueError("base point is not critical for h")
    hxx = (f(d, 0.0) - 2 * v0 + f(-d, 0.0)) / d**2
    hyy = (f(0.0, d) - 2 * v0 + f(0.0, -d)) / d**2
    hxy = (f(d, d) - f(d, -d) - f(-d, d) + f(-d, -d)) / (4 * d**2)
    return HessianBlocks(
        r=complex((hxx - hyy) / 8.0, -hxy / 4.0), s=float((hxx + hyy) / 4.0)
    )


@dataclass(frozen=True)
class PropagationResult:
    """Trajectory of the symbol data: squeeze matrices a[i] and amplitudes
    nu[i] at times[i]; centers/delta are attached by callers that track
    the classical trajectory alongside."""

    times: np.ndarray
    a: np.ndarray
    nu: np.ndarray
    centers: np.ndarray | None = None
    delta: np.ndarray | None = None


def _as_matrix_fn(x, d):
    if callable(x):
        return lambda t: np.asarray(x(t), dtype=complex).reshape(d, d)
    arr = np.asarray(x, dtype=complex).reshape(d, d)
    return lambda t: arr


def symbol_ode_solve(r_of_t, s_of_t, a0, t_final, step=1e-3, nu0=1.0):
    """Integrate the squeeze-parameter Riccati flow and its amplitude.

        dA/dt  = -2i (R + (S A + A S^T)/2 + A conj(R) A)
        dnu/dt = -i nu (tr S / 2 + tr(conj(R) A))

    RK4 with fixed step; after every step the Takagi radius of A is
    checked and crossing 1 - 1e-8 raises DiskExitError (the flow is only
    meaningful strictly inside the disk).

    ``r_of_t``/``s_of_t`` may be constants or callables of t. a0 may be a
    scalar (projective-line case, treated as 1x1).
    """
    a0_arr = np.atleast_2d(np.asarray(a0, dtype=complex))
    d = a0_arr.shape[0]
    if a0_arr.shape != (d, d):
        raise ValueError("a0 must be square")
    r_fn = _as_matrix_fn(r_of_t, d)
    s_fn = _as_matrix_fn(s_of_t, d)

    s0 = s_fn(0.0)
    r0 = r_fn(0.0)
    if np.linalg.norm(s0 - s0.conj().T) > 1e-10 * max(1.0, np.linalg.norm(s0)):
        raise ValueError("S block must be Hermitian")
    if np.linalg.norm(r0 - r0.T) > 1e-10 * max(1.0, np.linalg.norm(r0)):
        raise ValueError("R block must be symmetric")

    def field(t, y):
        a = y[: d * d].reshape(d, d)
        nu = y[d * d]
        r = r_fn(t)
        s = s_fn(t)
        da = -2j * (r + 0.5 * (s @ a + a @ s.T) + a @ r.conj() @ a)
        dnu = -1j * nu * (0.5 * np.trace(s) + np.trace(r.conj() @ a))
        return np.concatenate([da.ravel(), [dnu]])

    if step <= 0:
        raise ValueError("step must be positive")
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    y = np.concatenate([a0_arr.ravel(), [complex(nu0)]])
    times = [0.0]
    states = [y.copy()]
    n_full = int(t_final / step)
    t = 0.0
    grid = [(i + 1) * step for i in range(n_full)]
    if t_final > 0 and (not grid or grid[-1] < t_final - 1e-15 * max(1.0, t_final)):
        grid.append(t_final)
    for t_next in grid:
        y = rk4_step(field, t, y, t_next - t)
        t = t_next
        a = y[: d * d].reshape(d, d)
        if not np.all(np.isfinite(y.view(float))):
            raise DiskExitError(f"squeeze flow blew up at t={t:g}", time=t)
        if takagi_values(0.5 * (a + a.T))[0] >= 1.0 - 1e-8:
            raise DiskExitError(
                f"squeeze parameter reached the disk boundary at t={t:g}", time=t
            )
        times.append(t)
        states.append(y.copy())
    states = np.array(states)
    return PropagationResult(
        times=np.array(times),
        a=states[:, : d * d].reshape(-1, d, d),
        nu=states[:, d * d],
    )


def delta_phase(trajectory, h):
    """Accumulated action phase along a trajectory:

        delta(t) = -t H(w(0)) + integral of Im(wdot . w-bar)

    by cumulative trapezoid, with wdot taken from the field at the
    recorded centers. For lifted sphere Hamiltonians the integrand equals
    H(w(t)) pointwise (Euler identity plus circle invariance), so on an
    actual flow trajectory delta vanishes identically; it is kept in the
    interface as a consistency output, and as a drift diagnostic for
    trajectories produced elsewhere.
    """
    times = np.asarray([t for t, _ in trajectory], dtype=float)
    centers = np.asarray([w for _, w in trajectory], dtype=complex)
    energy = classical_lift_eval(h, centers[0])
    g = np.empty(len(times))
    for i, w in enumerate(centers):
        wdot = hamilton_field(h, w)
        g[i] = complex(np.sum(wdot * w.conj())).imag
    acc = np.zeros(len(times))
    for i in range(1, len(times)):
        acc[i] = acc[i - 1] + 0.5 * (g[i] + g[i - 1]) * (times[i] - times[i - 1])
    return -times * energy + acc


def spin_operators(k):
    """Normalized spin matrices on the level-k coefficient space.

    Tridiagonal L1, L2 and diagonal L3 = diag((n - k/2)/k), scaled so the
    commutator is [L1, L2] = (i/k) L3 and cyclic.
    """
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    i = np.arange(k)  # ladder entries couple n = i+1 <-> i
    ladder = np.sqrt((i + 1.0) * (k - i)) / (2.0 * k)
    l1 = np.diag(ladder, 1) + np.diag(ladder, -1)
    l2 = 1j * np.diag(ladder, 1) - 1j * np.diag(ladder, -1)
    l3 = np.diag((np.arange(k + 1) - k / 2.0) / k)
    return l1.astype(complex), l2.astype(complex), l3.astype(complex)


def quantize(h, k):
    """Symmetrized polynomial in the spin operators: each monomial becomes
    the average of the operator product over all distinct orderings of its
    factors, which is Hermitian for real coefficients by construction."""
    ops = spin_operators(k)
    dim = k + 1
    out = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for coeff, (e1, e2, e3) in h.terms:
        labels = (0,) * e1 + (1,) * e2 + (2,) * e3
        if not labels:
            out += coeff * eye
            continue
        orderings = set(permutations(labels))
        acc = np.zeros((dim, dim), dtype=complex)
        for ordering in orderings:
            prod = eye
            for lab in ordering:
                prod = prod @ ops[lab]
            acc += prod
        out += (coeff / len(orderings)) * acc
    return out


def quantum_propagate(s, h, t):
    """exp(-i k t h-hat) applied to a spin state."""
    u = hermitian_propagator(quantize(h, s.k), s.k * t)
    return SpinState(k=s.k, coeffs=u @ s.coeffs)


def semiclassical_prediction(mu0, h, t, k, step=1e-3):
    """Squeezed-ket prediction for the evolved state: run the symbol ODE
    from mu0 at the critical point of h and return
    (nu(t)/nu(0)) * |o, mu(t)>."""
    blocks = hessian_blocks(h)
    res = symbol_ode_solve(
        np.array([[blocks.r]]), np.array([[blocks.s]]), complex(mu0), t, step=step
    )
    mu_t = complex(res.a[-1][0, 0])
    scalar = complex(res.nu[-1])  # nu0 = 1, so this is nu(t)/nu(0)
    base = ket_mu(k, mu_t)
    return SpinState(k=k, coeffs=scalar * base.coeffs)


@dataclass(frozen=True)
class CompareReport:
    l2_difference: float
    lhs: SpinState
    rhs: SpinState


def compare_propagation(k, t, a=1.0 / math.sqrt(2.0), b=1.0 / math.sqrt(2.0), step=1e-3):
    """Quantum vs semiclassical propagation of the standard ket under
    h = a^2 l1^2 - b^2 l2^2, both sides normalized; returns the l2
    difference and both states."""
    h = HamiltonianSpec(terms=((a * a, (2, 0, 0)), (-b * b, (0, 2, 0))))
    lhs = quantum_propagate(ket_mu(k, 0.0), h, t)
    rhs = semiclassical_prediction(0.0, h, t, k, step=step)
    lc = lhs.coeffs / np.linalg.norm(lhs.coeffs)
    rc = rhs.coeffs / np.linalg.norm(rhs.coeffs)
    return CompareReport(
        l2_difference=float(np.linalg.norm(lc - rc)),
        lhs=SpinState(k=k, coeffs=lc),
        rhs=SpinState(k=k, coeffs=rc),
    )
