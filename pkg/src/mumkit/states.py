"""Bipartite state factories, partial transpose, PPT check.

States live on C^d (x) C^d with the first factor major: the composite
index of |i> (x) |j> is i*d + j.  All factories validate Hermiticity
(1e-12), unit trace (1e-10) and positivity (1e-10).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import require_hermitian
from .operator_basis import weyl_operators
from .reporting import VerificationReport
from .rng import Xoshiro256

TRACE_TOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on a d (x) d system."""

    d: int
    rho: np.ndarray


def _make_state(d: int, rho: np.ndarray) -> BipartiteState:
    rho = require_hermitian(rho, what="density matrix")
    if rho.shape != (d * d, d * d):
        raise ValueError(f"density matrix for d={d} must be {d * d} x {d * d}, got {rho.shape}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace {tr} is not 1")
    min_ev = float(np.linalg.eigvalsh(rho).min())
    if min_ev < -PSD_TOL:
        raise ValueError(f"density matrix is not PSD (min eigenvalue {min_ev:.3e})")
    return BipartiteState(d=d, rho=rho)


def max_entangled(d: int) -> BipartiteState:
    """Projector onto (1/sqrt(d)) sum_i |ii>."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    for i in range(d):
        v[i * d + i] = 1.0 / np.sqrt(d)
    return _make_state(d, np.outer(v, v.conj()))


def isotropic(d: int, alpha: float) -> BipartiteState:
    """alpha |Phi+><Phi+| + (1 - alpha) I / d^2."""
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    rho = alpha * max_entangled(d).rho + (1.0 - alpha) * np.eye(d * d, dtype=complex) / d ** 2
    return _make_state(d, rho)


def bell_diagonal(d: int, p) -> BipartiteState:
    """Mixture sum_{s,t} p[s,t] |Phi_st><Phi_st| of Weyl-displaced Bell states."""
    p = np.asarray(p, dtype=float)
    if p.shape != (d, d):
        raise ValueError(f"probability grid must be {d} x {d}, got {p.shape}")
    if p.min() < 0.0:
        raise ValueError(f"probabilities must be non-negative, min is {p.min()!r}")
    if abs(p.sum() - 1.0) > 1e-12:
        raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")
    phi = max_entangled(d).rho
    weyls = weyl_operators(d)
    eye = np.eye(d, dtype=complex)
    rho = np.zeros((d * d, d * d), dtype=complex)
    for s in range(d):
        for t in range(d):
            if p[s, t] == 0.0:
                continue
            u = np.kron(weyls[s][t], eye)
            rho += p[s, t] * (u @ phi @ u.conj().T)
    return _make_state(d, rho)


def random_pure(d: int, seed: int) -> np.ndarray:
    """Single-qudit pure density matrix from a seeded Gaussian vector."""
    gen = Xoshiro256(seed)
    psi = gen.complex_normals(d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_separable(d: int, k: int, seed: int) -> BipartiteState:
    """Mixture of k random pure product states with random weights.

    Weights are normalized unit-rate exponentials (uniform on the
    simplex); each term is an independent pure state pair drawn from the
    same stream, first factor then second.
    """
    if k < 1:
        raise ValueError(f"need at least one product term, got k={k}")
    gen = Xoshiro256(seed)
    w = gen.exponentials(k)
    w /= w.sum()
    rho = np.zeros((d * d, d * d), dtype=complex)
    for i in range(k):
        a = gen.complex_normals(d)
        a /= np.linalg.norm(a)
        b = gen.complex_normals(d)
        b /= np.linalg.norm(b)
        rho += w[i] * np.outer(np.kron(a, b), np.kron(a, b).conj())
    return _make_state(d, rho)


def random_density(d: int, seed: int) -> BipartiteState:
    """Generic full-rank density matrix on d (x) d (normalized G G^H)."""
    gen = Xoshiro256(seed)
    n = d * d
    g = gen.complex_normals(n * n).reshape(n, n)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return _make_state(d, rho)


def partial_transpose(state: BipartiteState) -> np.ndarray:
    """Transpose on the second factor: ((i,j),(k,l)) -> ((i,l),(k,j))."""
    d = state.d
    r4 = state.rho.reshape(d, d, d, d)
    return r4.transpose(0, 3, 2, 1).reshape(d * d, d * d)


def verify_state(state: BipartiteState, tol: float = 1e-9) -> VerificationReport:
    """Check Hermiticity, unit trace and positivity of a loaded state."""
    rho = np.asarray(state.rho)
    if rho.shape != (state.d ** 2, state.d ** 2):
        raise ValueError(
            f"density matrix for d={state.d} must be {state.d ** 2} x {state.d ** 2}, "
            f"got {rho.shape}"
        )
    herm = float(np.abs(rho - rho.conj().T).max())
    trace = abs(complex(np.trace(rho)) - 1.0)
    sym = 0.5 * (rho + rho.conj().T)
    psd = max(0.0, -float(np.linalg.eigvalsh(sym).min()))
    return VerificationReport(
        kind="bipartite-state",
        tol=tol,
        defects={"hermiticity": herm, "trace": trace, "psd": psd},
    )


@dataclass(frozen=True)
class PptResult:
    min_eigenvalue: float
    is_ppt: bool


def ppt_check(state: BipartiteState, tol: float = 1e-10) -> PptResult:
    """Minimum eigenvalue of the partial transpose; PPT iff it is >= -tol.

    A negative result certifies entanglement for any d.  PPT implies
    separability only where the criterion is exact (the isotropic family
    and 2 (x) 2 systems); elsewhere treat a PPT verdict as a necessary
    condition.
    """
    pt = partial_transpose(state)
    min_ev = float(np.linalg.eigvalsh(pt).min())
    return PptResult(min_eigenvalue=min_ev, is_ppt=bool(min_ev >= -tol))
