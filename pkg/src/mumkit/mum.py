"""Mutually unbiased measurements: construction, purity algebra, checks.

Given an operator basis {F_{n,b}} (see :mod:`mumkit.operator_basis`),
the d+1 measurements are

    F^(b)   = sum_{n=1}^{d-1} F_{n,b}
    F_n^(b) = F^(b) - (d + sqrt(d)) F_{n,b}     for n < d
    F_d^(b) = (1 + sqrt(d)) F^(b)
    P_n^(b) = I/d + t F_n^(b)

with t small enough that every P_n^(b) is positive semidefinite.  The
purity parameter is kappa = 1/d + t^2 (1 + sqrt(d))^2 (d - 1); the
defining trace relations are

    Tr(P_n^(b))            = 1
    Tr(P_n^(b) P_n'^(b'))  = 1/d                      for b != b'
    Tr(P_n^(b) P_n'^(b))   = kappa          (n = n')
                           = (1-kappa)/(d-1) (n != n')
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import trace_product
from .operator_basis import OperatorBasis, grouped_gell_mann_basis, verify_orthonormal_basis
from .reporting import VerificationReport


class PositivityError(ValueError):
    """Raised when a requested t makes some measurement operator indefinite."""

    def __init__(self, d: int, t: float, n: int, b: int, min_eigenvalue: float):
        self.n = n
        self.b = b
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"measurement operator (n={n}, b={b}) is not PSD at t={t!r} for d={d}: "
            f"min eigenvalue {min_eigenvalue:.6e}"
        )


@dataclass(frozen=True)
class MumSet:
    """d+1 measurements of d POVM elements each, elements[b-1][n-1]."""

    d: int
    elements: tuple[tuple[np.ndarray, ...], ...]
    kappa: float
    t: float | None = None
    source_basis: OperatorBasis | None = None

    def __post_init__(self):
        if len(self.elements) != self.d + 1 or any(len(row) != self.d for row in self.elements):
            raise ValueError(
                f"a measurement set for d={self.d} is a ({self.d + 1} x {self.d}) grid of operators"
            )


def optimal_kappa(d: int) -> float:
    """The purity reachable with a Gell-Mann operator basis: 1/d + 2/d^2."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    return 1.0 / d + 2.0 / d ** 2


def kappa_from_t(d: int, t: float) -> float:
    """kappa = 1/d + t^2 (1 + sqrt(d))^2 (d - 1)."""
    return 1.0 / d + t * t * (1.0 + np.sqrt(d)) ** 2 * (d - 1)


def t_from_kappa(d: int, kappa: float, sign: str = "+") -> float:
    """Construction parameter giving the requested purity; sign picks the root."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if not (1.0 / d <= kappa <= 1.0):
        raise ValueError(f"kappa must lie in (1/{d}, 1], got {kappa!r}")
    t = np.sqrt((kappa - 1.0 / d) / ((1.0 + np.sqrt(d)) ** 2 * (d - 1)))
    return float(t if sign == "+" else -t)


_BUILD_PSD_TOL = 1e-12


def _measurement_operators(basis: OperatorBasis, t: float) -> list[list[np.ndarray]]:
    d = basis.d
    eye = np.eye(d, dtype=complex)
    rows = []
    for b in range(1, d + 2):
        fam = basis.family(b)
        if len(fam) != d - 1:
            raise ValueError(f"family b={b} has {len(fam)} elements, expected {d - 1}")
        fb = sum(fam)
        row = []
        for n in range(1, d + 1):
            if n < d:
                fn = fb - (d + np.sqrt(d)) * fam[n - 1]
            else:
                fn = (1.0 + np.sqrt(d)) * fb
            row.append(eye / d + t * fn)
        rows.append(row)
    return rows


def build_mums(basis: OperatorBasis, t: float) -> MumSet:
    """Build the d+1 measurements from a verified operator basis at parameter t.

    Raises :class:`PositivityError` (reporting the worst offender) if any
    element dips below -1e-12 in its spectrum.
    """
    report = verify_orthonormal_basis(basis)
    if not report.passed:
        raise ValueError(f"operator basis failed verification: {report.summary()}")
    d = basis.d
    rows = _measurement_operators(basis, t)
    worst = (0.0, 0, 0)
    for b in range(d + 1):
        for n in range(d):
            ev = float(np.linalg.eigvalsh(rows[b][n]).min())
            if ev < worst[0]:
                worst = (ev, n + 1, b + 1)
    if worst[0] < -_BUILD_PSD_TOL:
        raise PositivityError(d, t, worst[1], worst[2], worst[0])
    return MumSet(
        d=d,
        elements=tuple(tuple(row) for row in rows),
        kappa=float(kappa_from_t(d, t)),
        t=float(t),
        source_basis=basis,
    )


def optimal_mums(d: int) -> MumSet:
    """Measurements at the optimal purity 1/d + 2/d^2 (grouped Gell-Mann basis)."""
    return build_mums(grouped_gell_mann_basis(d), t_from_kappa(d, optimal_kappa(d)))


def max_valid_t(basis: OperatorBasis, resolution: float = 1e-12) -> float:
    """Largest t > 0 keeping all measurement operators PSD, by bisection.

    The bracket starts at [0, 1]; t = 1 is far beyond feasibility for any
    basis of order-one operators.
    """
    report = verify_orthonormal_basis(basis)
    if not report.passed:
        raise ValueError(f"operator basis failed verification: {report.summary()}")
    d = basis.d

    def feasible(t: float) -> bool:
        rows = _measurement_operators(basis, t)
        return all(
            float(np.linalg.eigvalsh(p).min()) >= -_BUILD_PSD_TOL for row in rows for p in row
        )

    lo, hi = 0.0, 1.0
    if feasible(hi):
        raise ValueError("bisection bracket invalid: t = 1 is unexpectedly feasible")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def verify_mums(ms: MumSet, tol: float = 1e-9) -> VerificationReport:
    """Check the defining trace relations, POVM completeness, PSD, Hermiticity.

    The purity is inferred as the mean of same-(n, b) purities; the
    report carries it (with its spread) and checks it against the stored
    kappa.
    """
    d = ms.d
    eye = np.eye(d)
    herm = 0.0
    psd = 0.0
    trace_one = 0.0
    completeness = 0.0
    for row in ms.elements:
        total = sum(row)
        completeness = max(completeness, float(np.abs(total - eye).max()))
        for p in row:
            herm = max(herm, float(np.abs(p - p.conj().T).max()))
            psd = max(psd, max(0.0, -float(np.linalg.eigvalsh(p).min())))
            trace_one = max(trace_one, abs(complex(np.trace(p)) - 1.0))

    purities = [
        float(trace_product(p, p).real) for row in ms.elements for p in row
    ]
    kappa_inferred = float(np.mean(purities))
    kappa_spread = float(max(abs(p - kappa_inferred) for p in purities))

    cross = 0.0
    offdiag = 0.0
    off_target = (1.0 - kappa_inferred) / (d - 1)
    for b1 in range(d + 1):
        for b2 in range(b1, d + 1):
            for n1 in range(d):
                for n2 in range(d):
                    if b1 == b2 and n2 < n1:
                        continue
                    tp = trace_product(ms.elements[b1][n1], ms.elements[b2][n2])
                    if b1 != b2:
                        cross = max(cross, abs(tp - 1.0 / d))
                    elif n1 != n2:
                        offdiag = max(offdiag, abs(tp - off_target))

    return VerificationReport(
        kind="mum-set",
        tol=tol,
        defects={
            "hermiticity": herm,
            "psd": psd,
            "trace_one": trace_one,
            "completeness": completeness,
            "cross_basis": cross,
            "purity_spread": kappa_spread,
            "off_diagonal": offdiag,
            "stored_kappa": abs(kappa_inferred - ms.kappa),
        },
        details={"kappa_inferred": kappa_inferred},
    )


def conjugate_mums(ms: MumSet) -> MumSet:
    """Entrywise complex conjugate of every element; kappa is unchanged."""
    basis = ms.source_basis
    if basis is not None:
        basis = OperatorBasis(
            d=basis.d,
            elements=tuple(el.conj() for el in basis.elements),
            labels=basis.labels,
        )
    return MumSet(
        d=ms.d,
        elements=tuple(tuple(p.conj() for p in row) for row in ms.elements),
        kappa=ms.kappa,
        t=ms.t,
        source_basis=basis,
    )


def rotate_mums(ms: MumSet, u: np.ndarray, tol: float = 1e-10) -> MumSet:
    """Conjugate every element by a unitary u: P -> u P u^H; kappa is unchanged."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (ms.d, ms.d):
        raise ValueError(f"unitary must be {ms.d} x {ms.d}, got {u.shape}")
    if float(np.abs(u.conj().T @ u - np.eye(ms.d)).max()) > tol:
        raise ValueError("rotation matrix is not unitary")
    uh = u.conj().T
    basis = ms.source_basis
    if basis is not None:
        basis = OperatorBasis(
            d=basis.d,
            elements=tuple(u @ el @ uh for el in basis.elements),
            labels=basis.labels,
        )
    return MumSet(
        d=ms.d,
        elements=tuple(tuple(u @ p @ uh for p in row) for row in ms.elements),
        kappa=ms.kappa,
        t=ms.t,
        source_basis=basis,
    )
