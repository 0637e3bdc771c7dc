"""Command-line front end: generation, verification, detection, sweeps, shots.

Exit codes: 0 on success, 2 on validation errors (bad flags, malformed
files, dimension or range problems), 3 when a verification fails.
Errors are a single machine-parsable line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import serialize
from .criteria import (
    DetectionReport,
    VERDICT_TOL,
    _verdict,
    bell_choice,
    correlation_bound,
    correlation_matrix_trace,
    j_value,
    mub_criterion,
    mum_criterion,
    simulate_counts,
)
from .mub import mub_prime, verify_mub
from .mum import (
    MumSet,
    build_mums,
    conjugate_mums,
    max_valid_t,
    optimal_kappa,
    t_from_kappa,
    verify_mums,
)
from .operator_basis import gell_mann_basis, grouped_gell_mann_basis, verify_orthonormal_basis
from .states import (
    BipartiteState,
    bell_diagonal,
    isotropic,
    max_entangled,
    ppt_check,
    random_separable,
    verify_state,
)

MAX_GRID_POINTS = 10 ** 6


class CliError(Exception):
    """Validation problem; maps to exit code 2."""


class VerificationFailure(Exception):
    """A verifier rejected its payload; maps to exit code 3."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for figure-data sweeps."""

    family: str
    d: int
    start: float
    stop: float
    step: float
    kappa: float | str = "optimal"
    pairing: str = "conjugate"
    tol: float = VERDICT_TOL
    output: str | None = None

    def __post_init__(self):
        if self.family not in ("isotropic", "bell-diagonal"):
            raise CliError(f"unsupported sweep family {self.family!r}")
        if self.step <= 0:
            raise CliError(f"sweep step must be positive, got {self.step!r}")
        if self.start > self.stop:
            raise CliError(f"sweep start {self.start!r} exceeds stop {self.stop!r}")
        if len(self.grid()) > MAX_GRID_POINTS:
            raise CliError("sweep grid exceeds the limit of 1e6 points")

    def grid(self) -> list[float]:
        if self.start == self.stop:
            return [self.start]
        n = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(n)]

    def resolve_kappa(self) -> float:
        if self.kappa == "optimal":
            return optimal_kappa(self.d)
        return float(self.kappa)


def _mums_for(d: int, kappa=None, t=None, use_max_t=False, layout: str = "grouped") -> MumSet:
    basis = grouped_gell_mann_basis(d) if layout == "grouped" else gell_mann_basis(d)
    if use_max_t:
        return build_mums(basis, max_valid_t(basis))
    if t is not None:
        return build_mums(basis, float(t))
    k = optimal_kappa(d) if kappa is None else float(kappa)
    return build_mums(basis, t_from_kappa(d, k))


def _pair_for(pset: MumSet, pairing: str, p_grid=None):
    if pairing == "self":
        return pset
    if pairing == "conjugate":
        return conjugate_mums(pset)
    if pairing == "bell-choice":
        if p_grid is None:
            raise CliError("pairing bell-choice needs a bell-diagonal probability grid")
        qset, _ = bell_choice(pset, p_grid)
        return qset
    raise CliError(f"unknown pairing {pairing!r}")


def emit_figure_data(spec: SweepSpec) -> str:
    """CSV text for a parameter sweep, one row per grid point.

    Columns: family,d,kappa,param,value,bound,verdict,ppt_min_eig.  For
    isotropic sweeps the value is J under the requested pairing; for
    Bell-diagonal sweeps it is the guaranteed lower bound c kappa (d+1)
    delivered by the tuned pairing.
    """
    d = spec.d
    kappa = spec.resolve_kappa()
    bound = 1.0 + kappa
    rows = ["family,d,kappa,param,value,bound,verdict,ppt_min_eig"]
    if spec.family == "isotropic":
        if spec.pairing not in ("self", "conjugate"):
            raise CliError("isotropic sweeps support pairings self and conjugate")
        pset = _mums_for(d, kappa=kappa)
        qset = _pair_for(pset, spec.pairing)
        for alpha in spec.grid():
            if not (0.0 <= alpha <= 1.0 + 1e-12):
                raise CliError(f"isotropic parameter must lie in [0, 1], got {alpha!r}")
            state = isotropic(d, min(alpha, 1.0))
            value = j_value(state, pset, qset)
            ppt = ppt_check(state).min_eigenvalue
            rows.append(_row(spec.family, d, kappa, alpha, value, bound, spec.tol, ppt))
    else:
        if spec.start < 1.0 / d ** 2 - 1e-12 or spec.stop > 1.0 + 1e-12:
            raise CliError(
                f"bell-diagonal parameter must lie in [1/d^2, 1] = [{1.0 / d ** 2!r}, 1]"
            )
        for c in spec.grid():
            p = np.full((d, d), (1.0 - c) / (d * d - 1))
            p[0, 0] = c
            p /= p.sum()
            state = bell_diagonal(d, p)
            value = c * kappa * (d + 1)
            ppt = ppt_check(state).min_eigenvalue
            rows.append(_row(spec.family, d, kappa, c, value, bound, spec.tol, ppt))
    return "\n".join(rows) + "\n"


def _row(family, d, kappa, param, value, bound, tol, ppt) -> str:
    verdict = _verdict(value, bound, tol)
    return ",".join(
        [family, str(d), repr(float(kappa)), repr(float(param)), repr(float(value)),
         repr(float(bound)), verdict, repr(float(ppt))]
    )


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mumkit", description=__doc__)
    parser.add_argument("--tol", type=float, default=VERDICT_TOL,
                        help="tolerance threaded to verifiers and verdicts (default 1e-9)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("gen-basis", help="emit a Gell-Mann operator basis as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--layout", choices=("plain", "grouped"), default="plain")
    add_output(p)

    p = sub.add_parser("gen-mub", help="emit the d+1 unbiased bases for prime d")
    p.add_argument("--d", type=int, required=True)
    add_output(p)

    p = sub.add_parser("gen-mums", help="emit a measurement set as JSON")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--kappa", type=float, default=None)
    g.add_argument("--t", type=float, default=None)
    g.add_argument("--max-t", action="store_true")
    p.add_argument("--layout", choices=("plain", "grouped"), default="grouped")
    add_output(p)

    p = sub.add_parser("gen-state", help="emit a bipartite state as JSON")
    p.add_argument("--family", required=True,
                   choices=("isotropic", "bell-diagonal", "max-entangled", "random-separable"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--p", default=None, help="JSON file with a d x d probability grid")
    p.add_argument("--seed", dest="state_seed", type=int, default=None)
    p.add_argument("--k", type=int, default=8, help="product terms for random-separable")
    p.set_defaults(state=None)
    add_output(p)

    p = sub.add_parser("verify", help="verify a generated JSON artifact")
    p.add_argument("file")

    p = sub.add_parser("detect", help="evaluate a separability criterion")
    _add_state_args(p)
    p.add_argument("--criterion", choices=("mum", "mub", "correlation"), default="mum")
    p.add_argument("--pairing", choices=("self", "conjugate", "bell-choice"),
                   default="conjugate")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--kappa", type=float, default=None)
    g.add_argument("--t", type=float, default=None)
    g.add_argument("--max-t", action="store_true")
    add_output(p)

    p = sub.add_parser("sweep", help="emit figure data over a parameter grid")
    p.add_argument("--family", required=True, choices=("isotropic", "bell-diagonal"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--param", required=True, help="grid as start:stop:step")
    p.add_argument("--kappa", default="optimal")
    p.add_argument("--pairing", choices=("self", "conjugate", "bell-choice"),
                   default="conjugate")
    add_output(p)

    p = sub.add_parser("simulate", help="finite-shot estimate of J")
    _add_state_args(p, state_seed_flag="--state-seed")
    p.add_argument("--pairing", choices=("self", "conjugate"), default="conjugate")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--kappa", type=float, default=None)
    g.add_argument("--t", type=float, default=None)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True, help="shot sampling seed")
    add_output(p)

    p = sub.add_parser("oracle-ppt", help="minimum eigenvalue of the partial transpose")
    _add_state_args(p)
    add_output(p)

    return parser


def _add_state_args(p, state_seed_flag: str = "--seed"):
    p.add_argument("--state", default=None, help="state JSON file")
    p.add_argument("--family", default=None,
                   choices=("isotropic", "bell-diagonal", "max-entangled", "random-separable"))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--p", default=None, help="JSON file with a d x d probability grid")
    p.add_argument(state_seed_flag, dest="state_seed", type=int, default=None,
                   help="seed for random state families")
    p.add_argument("--k", type=int, default=8)


def _load_p_grid(path: str, d: int) -> np.ndarray:
    obj = serialize.load_path(path)
    p = np.asarray(obj, dtype=float)
    if p.shape != (d, d):
        raise CliError(f"probability grid in {path} must be {d} x {d}, got {p.shape}")
    return p


def _state_from_args(args) -> tuple[BipartiteState, np.ndarray | None]:
    if args.state is not None:
        state = serialize.state_from_obj(serialize.load_path(args.state))
        report = verify_state(state)
        if not report.passed:
            raise VerificationFailure(report.summary())
        return state, None
    if args.family is None or args.d is None:
        raise CliError("need either --state FILE or --family with --d")
    d = args.d
    if args.family == "isotropic":
        if args.alpha is None:
            raise CliError("isotropic states need --alpha")
        return isotropic(d, args.alpha), None
    if args.family == "bell-diagonal":
        if args.p is None:
            raise CliError("bell-diagonal states need --p FILE")
        p = _load_p_grid(args.p, d)
        return bell_diagonal(d, p), p
    if args.family == "max-entangled":
        return max_entangled(d), None
    if args.state_seed is None:
        raise CliError("random-separable states need an explicit seed")
    return random_separable(d, args.k, args.state_seed), None


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_gen_basis(args) -> int:
    basis = grouped_gell_mann_basis(args.d) if args.layout == "grouped" else gell_mann_basis(args.d)
    _write(serialize.dumps(serialize.operator_basis_to_obj(basis)), args.output)
    return 0


def _cmd_gen_mub(args) -> int:
    _write(serialize.dumps(serialize.basis_set_to_obj(mub_prime(args.d))), args.output)
    return 0


def _cmd_gen_mums(args) -> int:
    ms = _mums_for(args.d, kappa=args.kappa, t=args.t, use_max_t=args.max_t,
                   layout=args.layout)
    _write(serialize.dumps(serialize.mums_to_obj(ms)), args.output)
    return 0


def _cmd_gen_state(args) -> int:
    state, _ = _state_from_args(args)
    _write(serialize.dumps(serialize.state_to_obj(state)), args.output)
    return 0


def _cmd_verify(args) -> int:
    payload = serialize.load_path(args.file)
    tol = args.tol
    if isinstance(payload, list):
        report = verify_orthonormal_basis(serialize.operator_basis_from_obj(payload), tol)
    elif isinstance(payload, dict) and "elements" in payload:
        report = verify_mums(serialize.mums_from_obj(payload), tol)
    elif isinstance(payload, dict) and "bases" in payload:
        report = verify_mub(serialize.basis_set_from_obj(payload), tol)
    elif isinstance(payload, dict) and "rho" in payload:
        report = verify_state(serialize.state_from_obj(payload), tol)
    else:
        raise CliError(f"unrecognized payload in {args.file}")
    sys.stdout.write(serialize.dumps(serialize.verification_report_to_obj(report)))
    return 0 if report.passed else 3


def _cmd_detect(args) -> int:
    state, p_grid = _state_from_args(args)
    d = state.d
    if args.criterion == "mub":
        report = mub_criterion(state, mub_prime(d), tol=args.tol)
    elif args.criterion == "correlation":
        value = correlation_matrix_trace(state, gell_mann_basis(d))
        bound = correlation_bound(d)
        report = DetectionReport(
            criterion="correlation", value=value, bound=bound,
            verdict=_verdict(value, bound, args.tol), tolerance=args.tol, d=d,
        )
    else:
        pset = _mums_for(d, kappa=args.kappa, t=args.t, use_max_t=args.max_t)
        qset = _pair_for(pset, args.pairing, p_grid)
        report = mum_criterion(state, pset, qset, tol=args.tol)
    _write(serialize.dumps(serialize.report_to_obj(report)), args.output)
    return 0


def _cmd_sweep(args) -> int:
    kappa = args.kappa if args.kappa == "optimal" else float(args.kappa)
    parts = args.param.split(":")
    if len(parts) != 3:
        raise CliError(f"--param must be start:stop:step, got {args.param!r}")
    start, stop, step = (float(x) for x in parts)
    spec = SweepSpec(family=args.family, d=args.d, start=start, stop=stop, step=step,
                     kappa=kappa, pairing=args.pairing, tol=args.tol, output=args.output)
    _write(emit_figure_data(spec), spec.output)
    return 0


def _cmd_simulate(args) -> int:
    state, _ = _state_from_args(args)
    pset = _mums_for(state.d, kappa=args.kappa, t=args.t)
    qset = _pair_for(pset, args.pairing)
    est = simulate_counts(state, pset, qset, args.shots, args.seed)
    exact = j_value(state, pset, qset)
    obj = {
        "j_estimate": float(est.j_estimate),
        "std_error": float(est.std_error),
        "j_exact": float(exact),
        "bound": 1.0 + float(pset.kappa),
        "kappa": float(pset.kappa),
        "d": int(state.d),
        "shots_per_setting": int(est.shots_per_setting),
        "seed": int(est.seed),
        "counts": [[[int(c) for c in row] for row in grid] for grid in est.counts],
    }
    _write(serialize.dumps(obj), args.output)
    return 0


def _cmd_oracle_ppt(args) -> int:
    state, _ = _state_from_args(args)
    result = ppt_check(state)
    obj = {"min_eigenvalue": float(result.min_eigenvalue), "is_ppt": bool(result.is_ppt)}
    _write(serialize.dumps(obj), args.output)
    return 0


_COMMANDS = {
    "gen-basis": _cmd_gen_basis,
    "gen-mub": _cmd_gen_mub,
    "gen-mums": _cmd_gen_mums,
    "gen-state": _cmd_gen_state,
    "verify": _cmd_verify,
    "detect": _cmd_detect,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "oracle-ppt": _cmd_oracle_ppt,
}


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except VerificationFailure as exc:
        sys.stderr.write(f"error: verification failed: {exc}\n")
        return 3
    except (CliError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
