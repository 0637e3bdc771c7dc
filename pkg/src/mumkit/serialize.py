"""JSON schemas shared by the CLI and file-driven workflows.

Matrix payloads are ``{"dim": n, "entries": [[re, im], ...]}`` row-major;
values are written as Python's shortest round-trip representation, so
loading reproduces every double exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .criteria import DetectionReport
from .mub import BasisSet
from .mum import MumSet
from .operator_basis import OperatorBasis
from .reporting import VerificationReport
from .states import BipartiteState


def matrix_to_obj(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return {
        "dim": int(a.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise ValueError("matrix payload must carry 'dim' and 'entries'")
    dim = int(obj["dim"])
    entries = obj["entries"]
    if dim < 1 or len(entries) != dim * dim:
        raise ValueError(f"matrix payload of dim {dim} needs {dim * dim} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape(dim, dim)


def operator_basis_to_obj(basis: OperatorBasis) -> list:
    return [
        {"n": int(n), "b": int(b), "matrix": matrix_to_obj(el)}
        for (n, b), el in zip(basis.labels, basis.elements)
    ]


def operator_basis_from_obj(obj) -> OperatorBasis:
    if not isinstance(obj, list) or not obj:
        raise ValueError("operator basis payload must be a non-empty list")
    elements = []
    labels = []
    for item in obj:
        elements.append(matrix_from_obj(item["matrix"]))
        labels.append((int(item["n"]), int(item["b"])))
    d = elements[0].shape[0]
    return OperatorBasis(d=d, elements=tuple(elements), labels=tuple(labels))


def basis_set_to_obj(bs: BasisSet) -> dict:
    return {"d": int(bs.d), "bases": [matrix_to_obj(b) for b in bs.bases]}


def basis_set_from_obj(obj) -> BasisSet:
    if not isinstance(obj, dict) or "bases" not in obj:
        raise ValueError("basis set payload must carry 'bases'")
    bases = tuple(matrix_from_obj(b) for b in obj["bases"])
    d = int(obj.get("d", bases[0].shape[0] if bases else 0))
    return BasisSet(d=d, bases=bases)


def mums_to_obj(ms: MumSet) -> dict:
    return {
        "d": int(ms.d),
        "kappa": float(ms.kappa),
        "t": None if ms.t is None else float(ms.t),
        "elements": [[matrix_to_obj(p) for p in row] for row in ms.elements],
    }


def mums_from_obj(obj) -> MumSet:
    if not isinstance(obj, dict) or "elements" not in obj:
        raise ValueError("measurement set payload must carry 'elements'")
    elements = tuple(
        tuple(matrix_from_obj(p) for p in row) for row in obj["elements"]
    )
    t = obj.get("t")
    return MumSet(
        d=int(obj["d"]),
        elements=elements,
        kappa=float(obj["kappa"]),
        t=None if t is None else float(t),
    )


def state_to_obj(state: BipartiteState) -> dict:
    return {"d": int(state.d), "rho": matrix_to_obj(state.rho)}


def state_from_obj(obj) -> BipartiteState:
    if not isinstance(obj, dict) or "rho" not in obj:
        raise ValueError("state payload must carry 'rho'")
    rho = matrix_from_obj(obj["rho"])
    d = int(obj.get("d", round(np.sqrt(rho.shape[0]))))
    if rho.shape[0] != d * d:
        raise ValueError(f"rho of dim {rho.shape[0]} does not match d={d}")
    return BipartiteState(d=d, rho=rho)


def report_to_obj(report: DetectionReport) -> dict:
    return {
        "criterion": report.criterion,
        "value": float(report.value),
        "bound": float(report.bound),
        "verdict": report.verdict,
        "kappa": None if report.kappa is None else float(report.kappa),
        "d": int(report.d),
    }


def verification_report_to_obj(report: VerificationReport) -> dict:
    return {
        "kind": report.kind,
        "tol": float(report.tol),
        "passed": bool(report.passed),
        "defects": {k: float(v) for k, v in report.defects.items()},
        "details": {k: float(v) for k, v in report.details.items()},
    }


def dumps(obj) -> str:
    return json.dumps(obj) + "\n"


def load_path(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
