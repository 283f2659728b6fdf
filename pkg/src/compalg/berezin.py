"""Coherent-state quantization on the plane by quadrature.

The coherent wavefunction is expanded in a truncated oscillator basis by
Gauss-Hermite quadrature (cross-checked against the closed-form Poisson
weights), and the quantization integral is done on a Gauss-Legendre
product grid.  Only the first N/2 levels of the resulting matrices are
trusted; truncation error concentrates in the top half.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi, sqrt

import numpy as np

from .errors import DegreeExceedsGrid, QuadratureDivergence
from .hilbert import hermitian_eigenvalues, spectral_norm
from .phasepoly import PhasePoly


@dataclass(frozen=True)
class CoherentState:
    """Truncated oscillator-basis expansion of one coherent wavefunction."""

    p: float
    q: float
    hbar: float
    coeffs: np.ndarray  # complex, length N

    @property
    def truncation_gap(self) -> float:
        """1 - ||coeffs||^2; shrinks with N for fixed (p, q, hbar)."""
        return 1.0 - float(np.sum(np.abs(self.coeffs) ** 2))


def _reduced_hermite_rows(x: np.ndarray, n_levels: int, hbar: float) -> np.ndarray:
    """Oscillator eigenfunctions with the Gaussian envelope stripped.

    Row n is psi_n(x) * exp(+x^2 / 2 hbar); the recurrence is the standard
    one, the envelope cancels against quadrature weights downstream.
    """
    rows = np.empty((n_levels, len(x)), dtype=float)
    rows[0] = (pi * hbar) ** -0.25
    if n_levels > 1:
        rows[1] = sqrt(2.0) * (x / sqrt(hbar)) * rows[0]
    for n in range(1, n_levels - 1):
        rows[n + 1] = (
            sqrt(2.0) * (x / sqrt(hbar)) * rows[n] - sqrt(n) * rows[n - 1]
        ) / sqrt(n + 1)
    return rows


def _reduced_coherent(x: np.ndarray, p: float, q: float, hbar: float) -> np.ndarray:
    """Coherent wavefunction with its own Gaussian envelope stripped.

    The full wavefunction is (pi hbar)^(-1/4) e^{-ipq/2h} e^{ipx/h}
    e^{-(x-q)^2/2h}; the last factor is restored analytically inside the
    quadrature below.
    """
    return (pi * hbar) ** -0.25 * np.exp(-1j * p * q / (2 * hbar)) * np.exp(
        1j * p * x / hbar
    )


def coherent_coeffs(p: float, q: float, hbar: float, N: int, nodes: int = 0) -> CoherentState:
    """Oscillator-basis coefficients <n|state> by Gauss-Hermite quadrature.

    The integrand's combined Gaussian is completed to a single square
    centred at q/2, so the quadrature sees only polynomial-times-plane-wave
    factors.  Node count defaults to 4N + 40.
    """
    if N < 4:
        raise ValueError("N must be at least 4")
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    nodes = nodes or 4 * N + 40
    if nodes < 2 * N:
        raise QuadratureDivergence(f"{nodes} nodes cannot resolve {N} levels")
    t, w = np.polynomial.hermite_e.hermegauss(nodes)
    # -x^2/2h - (x-q)^2/2h = -(x - q/2)^2/h - q^2/4h; substitute x = q/2 + t sqrt(h/2)
    x = q / 2.0 + t * sqrt(hbar / 2.0)
    psi = _reduced_hermite_rows(x, N, hbar)
    phi = _reduced_coherent(x, p, q, hbar)
    # hermegauss weights already carry the e^{-t^2/2} completed square
    prefac = sqrt(hbar / 2.0) * np.exp(-q * q / (4.0 * hbar))
    coeffs = prefac * (psi * (w * phi)) @ np.ones(nodes)
    state = CoherentState(p, q, hbar, coeffs)
    _cross_check_poisson(state)
    return state


def poisson_weight_oracle(p: float, q: float, hbar: float, N: int) -> np.ndarray:
    """Closed-form coefficients e^{-|a|^2/2} a^n / sqrt(n!), a = (q+ip)/sqrt(2h)."""
    a = (q + 1j * p) / sqrt(2.0 * hbar)
    out = np.empty(N, dtype=complex)
    out[0] = np.exp(-abs(a) ** 2 / 2.0)
    for n in range(1, N):
        out[n] = out[n - 1] * a / sqrt(n)
    return out


def _cross_check_poisson(state: CoherentState, tol: float = 1e-9):
    oracle = poisson_weight_oracle(state.p, state.q, state.hbar, len(state.coeffs))
    err = float(np.max(np.abs(state.coeffs - oracle)))
    if err > tol:
        raise QuadratureDivergence(f"quadrature disagrees with closed form by {err}")


def coherent_overlap(a: CoherentState, b: CoherentState) -> complex:
    """<a|b> from the truncated expansions."""
    return complex(np.conj(a.coeffs) @ b.coeffs)


def gaussian_overlap_oracle(a: CoherentState, b: CoherentState) -> complex:
    """Closed-form coherent overlap exp(conj(alpha) beta - (|alpha|^2+|beta|^2)/2)."""
    h = a.hbar
    al = (a.q + 1j * a.p) / sqrt(2.0 * h)
    be = (b.q + 1j * b.p) / sqrt(2.0 * h)
    return complex(np.exp(np.conj(al) * be - (abs(al) ** 2 + abs(be) ** 2) / 2.0))


# ---------------------------------------------------------------------------
# Quantization by product quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureGrid:
    """Gauss-Legendre product rule over [-R, R]^2 in (q, p)."""

    R: float
    exact_degree: int
    qs: np.ndarray
    ps: np.ndarray
    weights: np.ndarray  # outer product, shape (len(qs), len(ps))


def build_grid(hbar: float, N: int, max_poly_degree: int, nodes_1d: int = 0) -> QuadratureGrid:
    """Grid wide enough for the N-level coherent family and degree cap.

    Radial cutoff R = 1.5 sqrt(2 hbar (N + degree)); the integrand decays
    like the level-N coherent envelope, so this keeps the tail below the
    stated tolerances.
    """
    R = 1.5 * sqrt(2.0 * hbar * (N + max_poly_degree))
    nodes_1d = nodes_1d or 6 * N + 20
    t, w = np.polynomial.legendre.leggauss(nodes_1d)
    xs = R * t
    ws = R * w
    return QuadratureGrid(R, max_poly_degree, xs, xs.copy(), np.outer(ws, ws))


def berezin_quantize(f: PhasePoly, hbar: float, N: int, grid: QuadratureGrid) -> np.ndarray:
    """Quadrature form of the rank-one integral  int dp dq / 2 pi hbar  f |s><s|.

    Coefficient vectors for the whole grid come from one vectorized
    Gauss-Hermite pass per q-node; the N x N output is Hermitian for
    real f up to quadrature noise.
    """
    if f.dof != 1:
        raise ValueError("quantization is implemented for one degree of freedom")
    if f.degree > grid.exact_degree:
        raise DegreeExceedsGrid(f"degree {f.degree} > grid cap {grid.exact_degree}")
    if N < f.degree + 4:
        raise ValueError("N must be at least deg f + 4")
    nq, npp = len(grid.qs), len(grid.ps)
    # f on the grid, with q along axis 0
    fv = np.array(
        [[f.eval_float((qv, pv)) for pv in grid.ps] for qv in grid.qs]
    )
    # coefficient tensor C[n, iq, ip]
    C = np.empty((N, nq, npp), dtype=complex)
    for iq, qv in enumerate(grid.qs):
        C[:, iq, :] = _coeff_block(qv, grid.ps, hbar, N)
    kern = grid.weights * fv / (2.0 * pi * hbar)
    return np.einsum("mij,ij,nij->mn", C, kern, np.conj(C), optimize=True)


def _coeff_block(qv: float, ps: np.ndarray, hbar: float, N: int) -> np.ndarray:
    """<n|state(p, qv)> for all p at once, same quadrature as coherent_coeffs."""
    nodes = 4 * N + 40
    t, w = np.polynomial.hermite_e.hermegauss(nodes)
    x = qv / 2.0 + t * sqrt(hbar / 2.0)
    psi = _reduced_hermite_rows(x, N, hbar)  # (N, nodes)
    phase = np.exp(1j * np.outer(ps, x) / hbar)  # (np, nodes)
    pref = (
        (pi * hbar) ** -0.25
        * sqrt(hbar / 2.0)
        * np.exp(-qv * qv / (4.0 * hbar))
        * np.exp(-1j * ps * qv / (2.0 * hbar))
    )
    base = (psi * w) @ phase.T  # (N, np)
    return base * pref[np.newaxis, :]


def trusted(m: np.ndarray) -> np.ndarray:
    """Restriction of an N x N matrix to the first N/2 levels."""
    k = m.shape[0] // 2
    return m[:k, :k]


def positivity_preservation(qf: np.ndarray, tol: float = 1e-9) -> bool:
    """Min eigenvalue of the trusted block stays above -tol.

    Callers supply a sum-of-squares certificate for f out of band; this
    checks the operator side only.
    """
    block = trusted(qf)
    h = 0.5 * (block + block.conj().T)
    return float(np.min(hermitian_eigenvalues(h))) >= -tol


def cstar_on_quantized(qf: np.ndarray, rtol: float = 1e-8) -> bool:
    """||T* T|| = ||T||^2 on the trusted block."""
    t = trusted(qf)
    lhs = spectral_norm(t.conj().T @ t)
    rhs = spectral_norm(t) ** 2
    return abs(lhs - rhs) <= rtol * max(1.0, rhs)


def ladder_position_oracle(hbar: float, N: int) -> np.ndarray:
    """Position operator in the oscillator basis: <n|q|n+1> = sqrt(h (n+1)/2)."""
    m = np.zeros((N, N), dtype=complex)
    for n in range(N - 1):
        v = sqrt(hbar * (n + 1) / 2.0)
        m[n, n + 1] = v
        m[n + 1, n] = v
    return m


def ladder_momentum_oracle(hbar: float, N: int) -> np.ndarray:
    """Momentum operator: <n|p|n+1> = -i sqrt(h (n+1)/2), Hermitian."""
    m = np.zeros((N, N), dtype=complex)
    for n in range(N - 1):
        v = sqrt(hbar * (n + 1) / 2.0)
        m[n, n + 1] = -1j * v
        m[n + 1, n] = 1j * v
    return m
