"""Generalized Gell-Mann operator bases and Weyl operators.

A basis here is the standard set of d^2 - 1 Hermitian, traceless,
trace-orthonormal operators on C^d: symmetric pair operators
(|j><k| + |k><j|)/sqrt(2), antisymmetric pair operators
-i(|j><k| - |k><j|)/sqrt(2), and diagonal operators
(sum_{j<l} |j><j| - l |l><l|)/sqrt(l(l+1)).

Elements carry (n, b) labels that group them into d+1 measurement
families of d-1 operators each.  Two orderings are provided:

* :func:`gell_mann_basis` lists all symmetric pairs, then all
  antisymmetric pairs, then the diagonals, and labels that flat list
  with the block rule of :func:`assign_grid`.
* :func:`grouped_gell_mann_basis` lists the same elements family by
  family, with families chosen by a Hamiltonian path decomposition of
  the pair-index graph.  This layout keeps every measurement operator
  positive semidefinite at the largest purity the construction of
  :mod:`mumkit.mum` supports; the plain layout does not once d >= 4.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import trace_product
from .reporting import VerificationReport


@dataclass(frozen=True)
class OperatorBasis:
    """d^2 - 1 Hermitian traceless orthonormal operators with (n, b) labels."""

    d: int
    elements: tuple[np.ndarray, ...]
    labels: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.elements) != self.d * self.d - 1:
            raise ValueError(
                f"operator basis for d={self.d} needs {self.d * self.d - 1} elements, "
                f"got {len(self.elements)}"
            )
        if len(self.labels) != len(self.elements):
            raise ValueError("labels and elements must have equal length")

    def element(self, n: int, b: int) -> np.ndarray:
        """The element labelled (n, b), n in 1..d-1, b in 1..d+1."""
        try:
            return self.elements[self.labels.index((n, b))]
        except ValueError:
            raise KeyError(f"no element labelled (n={n}, b={b})") from None

    def family(self, b: int) -> list[np.ndarray]:
        """Elements of measurement family b, ordered by n."""
        members = sorted(
            (n, el) for (n, bb), el in zip(self.labels, self.elements) if bb == b
        )
        return [el for _, el in members]


def _sym(d: int, j: int, k: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = 1.0
    m[k, j] = 1.0
    return m / np.sqrt(2.0)


def _asym(d: int, j: int, k: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = -1.0j
    m[k, j] = 1.0j
    return m / np.sqrt(2.0)


def _diag(d: int, l: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    for j in range(l):
        m[j, j] = 1.0
    m[l, l] = -l
    return m / np.sqrt(l * (l + 1))


def _realize(d: int, tag: tuple) -> np.ndarray:
    # pair tags may arrive in path order; the element is defined on sorted indices
    kind, payload = tag
    if kind == "S":
        return _sym(d, *sorted(payload))
    if kind == "A":
        return _asym(d, *sorted(payload))
    return _diag(d, payload)


def _grid_labels(d: int) -> tuple[tuple[int, int], ...]:
    # flat index i -> (n, b) by blocks of d-1
    return tuple((i % (d - 1) + 1, i // (d - 1) + 1) for i in range(d * d - 1))


def gell_mann_basis(d: int) -> OperatorBasis:
    """The generalized Gell-Mann basis in enumeration order.

    Flat order: symmetric pairs in lexicographic (j, k), antisymmetric
    pairs in lexicographic (j, k), diagonals by l.  Labels follow the
    block rule of :func:`assign_grid`.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    elements = []
    for j in range(d):
        for k in range(j + 1, d):
            elements.append(_sym(d, j, k))
    for j in range(d):
        for k in range(j + 1, d):
            elements.append(_asym(d, j, k))
    for l in range(1, d):
        elements.append(_diag(d, l))
    return OperatorBasis(d=d, elements=tuple(elements), labels=_grid_labels(d))


def assign_grid(basis: OperatorBasis) -> OperatorBasis:
    """Relabel a basis with the block rule b = i div (d-1) + 1, n = i mod (d-1) + 1."""
    return replace(basis, labels=_grid_labels(basis.d))


def _zigzag(start: int, n: int) -> list[int]:
    # start, start+1, start-1, start+2, start-2, ... covering Z_n
    seq = [start]
    for i in range(1, n):
        off = (i + 1) // 2 if i % 2 == 1 else -(i // 2)
        seq.append((start + off) % n)
    return seq


def measurement_layout(d: int) -> list[list[tuple]]:
    """Partition of the basis element tags into d+1 families of d-1.

    Pair elements are grouped along edge-disjoint Hamiltonian paths of
    the complete graph on the d computational indices (Walecki
    decomposition), one family per path and per decoration (symmetric /
    antisymmetric); the diagonals form their own family.  For odd d the
    cover uses Hamiltonian cycles with one hub edge removed per cycle,
    and the removed edges form one extra family.

    Along a path, the extremal eigenvector of each element is touched
    only at second order by the rest of its family, which is what keeps
    the mum construction positive at the optimal purity for every d.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if d == 2:
        families = [[("S", (0, 1))], [("A", (0, 1))]]
    elif d % 2 == 0:
        paths = []
        for r in range(d // 2):
            seq = _zigzag(r, d)
            paths.append([(seq[i], seq[i + 1]) for i in range(d - 1)])
        families = [[("S", e) for e in p] for p in paths]
        families += [[("A", e) for e in p] for p in paths]
    else:
        hub = d - 1
        cycles = []
        for r in range((d - 1) // 2):
            seq = _zigzag(r, d - 1)
            cycles.append([(hub, seq[0])] + [(seq[i], seq[i + 1]) for i in range(d - 2)]
                          + [(seq[-1], hub)])
        families = [[("S", e) for e in c[1:]] for c in cycles]
        families += [[("A", e) for e in c[1:]] for c in cycles]
        families.append([("S", c[0]) for c in cycles] + [("A", c[0]) for c in cycles])
    families.append([("D", l) for l in range(1, d)])
    return families


def grouped_gell_mann_basis(d: int) -> OperatorBasis:
    """Gell-Mann basis reordered family-major per :func:`measurement_layout`."""
    elements = []
    for family in measurement_layout(d):
        for tag in family:
            elements.append(_realize(d, tag))
    return OperatorBasis(d=d, elements=tuple(elements), labels=_grid_labels(d))


def weyl_operators(d: int) -> list[list[np.ndarray]]:
    """Weyl operators U[s][t] = sum_j zeta^(s j) |j><(j+t) mod d|, s,t in 0..d-1."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    zeta = np.exp(2j * np.pi / d)
    out = []
    for s in range(d):
        row = []
        for t in range(d):
            u = np.zeros((d, d), dtype=complex)
            for j in range(d):
                u[j, (j + t) % d] = zeta ** ((s * j) % d)
            row.append(u)
        out.append(row)
    return out


def verify_orthonormal_basis(basis: OperatorBasis, tol: float = 1e-10) -> VerificationReport:
    """Check Hermiticity, tracelessness and trace orthonormality of a basis."""
    herm = 0.0
    trace = 0.0
    for el in basis.elements:
        herm = max(herm, float(np.abs(el - el.conj().T).max()))
        trace = max(trace, abs(complex(np.trace(el))))
    gram = 0.0
    n = len(basis.elements)
    for i in range(n):
        for j in range(i, n):
            tp = trace_product(basis.elements[i], basis.elements[j])
            target = 1.0 if i == j else 0.0
            gram = max(gram, abs(tp - target))
    return VerificationReport(
        kind="operator-basis",
        tol=tol,
        defects={"hermiticity": herm, "trace": trace, "orthonormality": gram},
    )
