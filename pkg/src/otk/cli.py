"""Command-line surface for the otk package.

Commands: check, dilate, reproduce, numrange, property-run.  Reports are
canonical JSON (sorted keys) on stdout so identical inputs and seed give
byte-identical output; wall time goes to stderr.  With --assert the exit
code encodes the verdict: 0 true, 2 false, 3 inconclusive (1 is reserved
for errors).
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time

import numpy as np

from .ando import ando_pair, brehmer_check, regular_orth_predicate, schaffer_ST_criterion
from .bjorth import epsilon_min, is_approx_orthogonal, is_bj_orthogonal
from .catalog import reproduce_scenario, scenario_ids
from .matcore import (
    DEFAULT_TOL,
    ToleranceConfig,
    inner,
    load_matrix,
    op_norm,
)
from .numrange import (
    Verdict,
    _convex_hull,
    _hull_signed_margin,
    maximal_numerical_range,
    nr_boundary,
    nr_contains_zero,
    polygon_csv,
    polygon_svg,
)
from .properties import run_suite, suite_names
from .rand import rng_for, random_unitary
from .rho import nilpotent_rho_example
from .schaffer import (
    GeneralizedParams,
    adjoint_trick_pair,
    forced_orthogonal_pair,
    generalized_schaffer,
    halmos_orth_criterion,
    hat_pair,
    schaffer_window,
    verify_power_dilation,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSE = 2
EXIT_INCONCLUSIVE = 3

DEFAULT_SEED = 7


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; exit 2 means 'verdict false' here,
    so usage problems are rerouted through the normal error path (exit 1)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("OTK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"OTK_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _resolve_tol(value: float | None) -> ToleranceConfig:
    if value is None:
        return DEFAULT_TOL
    return dataclasses.replace(DEFAULT_TOL, verdict_tol=value)


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _report(command: str, seed: int, inputs: dict[str, str], **payload) -> dict:
    return {
        "command": command,
        "seed": seed,
        "inputs": {name: {"path": p, "sha256": _digest(p)} for name, p in inputs.items()},
        **payload,
    }


def _emit(report: dict, json_out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _verdict_exit(v: Verdict) -> int:
    if v.is_true:
        return EXIT_OK
    if v.is_false:
        return EXIT_FALSE
    return EXIT_INCONCLUSIVE


def _bool_verdict(flag: bool) -> Verdict:
    return Verdict.TRUE if flag else Verdict.FALSE


def _pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _zero_verdict_dict(zv) -> dict:
    return {
        "verdict": zv.verdict.value,
        "inner_distance": zv.inner_distance,
        "support_min": zv.support_min,
        "point": None if zv.point is None else _pair(zv.point),
    }


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    tol = _resolve_tol(args.tol)
    seed = _resolve_seed(args.seed)
    kind = args.kind
    if len(args.files) != 2:
        raise ValueError(f"check {kind} takes exactly 2 matrix files, got {len(args.files)}")
    left = load_matrix(args.files[0])
    right = load_matrix(args.files[1])
    inputs = {"left": args.files[0], "right": args.files[1]}

    if kind == "orth":
        v = is_bj_orthogonal(left, right, tol)
        payload, verdict = {"result": v.to_json_dict()}, v.orthogonal
    elif kind == "approx":
        if args.eps is None:
            raise ValueError("check approx requires --eps")
        ver = is_approx_orthogonal(left, right, args.eps, tol)
        payload = {
            "result": {
                "eps": args.eps,
                "epsilon_min": epsilon_min(left, right, tol),
                "verdict": ver.value,
            }
        }
        verdict = ver
    elif kind == "halmos":
        v = halmos_orth_criterion(left, right, tol)
        payload, verdict = {"result": v.to_json_dict()}, v.orthogonal
    elif kind == "st-criterion":
        v = schaffer_ST_criterion(left, right, tol)
        payload, verdict = {"result": v.to_json_dict()}, v.orthogonal
    elif kind == "brehmer":
        rep = brehmer_check(left, right, tol)
        payload, verdict = {"result": rep.to_json_dict()}, _bool_verdict(rep.passes)
    else:  # regular
        rep = regular_orth_predicate(left, right, tol)
        payload = {"result": rep.to_json_dict()}
        if not rep.classical_zero.decided:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = _bool_verdict(rep.predicate)

    _emit(_report(f"check {kind}", seed, inputs, **payload), args.json_out)
    return _verdict_exit(verdict) if args.assert_ else EXIT_OK


# ---------------------------------------------------------------------------
# dilate
# ---------------------------------------------------------------------------


def _window_payload(w, base, verify_tol: float = 1e-9) -> dict:
    rep = verify_power_dilation(w, base, tol=verify_tol)
    return {
        "window": w.to_json_dict(),
        "verify": {
            "n_max": rep.n_max,
            "residuals": list(rep.residuals),
            "tol": rep.tol,
            "passed": rep.passed,
        },
    }


def cmd_dilate(args) -> int:
    tol = _resolve_tol(args.tol)
    seed = _resolve_seed(args.seed)
    kind = args.kind
    files = args.files
    arity = {"schaffer": 1, "generalized": 1, "hat": 2, "adjoint-trick": 2, "forced": 2, "ando": 2, "rho-example": 0}
    if len(files) != arity[kind]:
        raise ValueError(f"dilate {kind} takes {arity[kind]} matrix file(s), got {len(files)}")
    mats = [load_matrix(p) for p in files]
    inputs = {f"input{i}": p for i, p in enumerate(files)}
    ok = True

    if kind == "schaffer":
        m = args.slots or 8
        w = schaffer_window(mats[0], m, tol=tol)
        payload = _window_payload(w, mats[0])
        ok = payload["verify"]["passed"]
        out_obj = w.to_json_dict()
    elif kind == "generalized":
        m = args.slots or 8
        d = mats[0].shape[0]
        home = m // 2
        rng = rng_for(seed, 0)
        params = GeneralizedParams(
            U1=random_unitary(rng, d),
            U2=random_unitary(rng, d),
            X_seq=tuple(random_unitary(rng, d) for _ in range(m - home - 2)),
            Y_seq=tuple(random_unitary(rng, d) for _ in range(home)),
        )
        w = generalized_schaffer(mats[0], params, m, tol=tol)
        payload = _window_payload(w, mats[0])
        ok = payload["verify"]["passed"]
        out_obj = w.to_json_dict()
    elif kind == "hat":
        wT, wA, rep = hat_pair(mats[0], mats[1], tol=tol)
        nt, na = op_norm(mats[0]), op_norm(mats[1])
        N_T = nt * schaffer_window(mats[0] / nt, 6, tol=tol).operator
        N_A = na * schaffer_window(mats[1] / na, 6, tol=tol).operator
        pT = _window_payload(wT, N_T)
        pA = _window_payload(wA, N_A)
        ok = pT["verify"]["passed"] and pA["verify"]["passed"] and abs(rep.value) <= 1e-7
        payload = {
            "window_T": pT,
            "window_A": pA,
            "witness": {
                "beta": rep.beta,
                "value": _pair(rep.value),
                "predicted": _pair(rep.predicted),
                "prediction_residual": rep.prediction_residual,
            },
        }
        out_obj = {"window_T": wT.to_json_dict(), "window_A": wA.to_json_dict()}
    elif kind == "adjoint-trick":
        m = args.slots or 8
        wT, wA, h = adjoint_trick_pair(mats[0], mats[1], m, tol=tol)
        val = inner(wT.operator @ h, wA.operator @ h)
        pT = _window_payload(wT, mats[0])
        pA = _window_payload(wA, mats[1])
        ok = pT["verify"]["passed"] and pA["verify"]["passed"] and abs(val) <= 1e-12
        payload = {"window_T": pT, "window_A": pA, "witness_value": _pair(val)}
        out_obj = {"window_T": wT.to_json_dict(), "window_A": wA.to_json_dict()}
    elif kind == "forced":
        m = args.slots or 8
        wT, wA, h = forced_orthogonal_pair(mats[0], mats[1], m, k0=args.k0, tol=tol)
        val = inner(wT.operator @ h, wA.operator @ h)
        pT = _window_payload(wT, mats[0])
        pA = _window_payload(wA, mats[1])
        ok = pT["verify"]["passed"] and pA["verify"]["passed"] and abs(val) <= 1e-12
        payload = {"window_T": pT, "window_A": pA, "witness_value": _pair(val)}
        out_obj = {"window_T": wT.to_json_dict(), "window_A": wA.to_json_dict()}
    elif kind == "ando":
        m = args.slots or 13
        bundle = ando_pair(mats[0], mats[1], m, tol=tol)
        ok = bundle.passed
        payload = {"bundle": bundle.to_json_dict()}
        out_obj = bundle.to_json_dict()
    else:  # rho-example
        m = args.slots or 16
        bundle = nilpotent_rho_example(rho=args.rho, window=m, tol=tol)
        ok = bundle.report.passed
        payload = {"bundle": bundle.to_json_dict()}
        out_obj = bundle.to_json_dict()

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(out_obj, fh, sort_keys=True, indent=2)
            fh.write("\n")
        payload["out"] = args.out

    _emit(_report(f"dilate {kind}", seed, inputs, **payload), args.json_out)
    return _verdict_exit(_bool_verdict(ok)) if args.assert_ else EXIT_OK


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------


def cmd_reproduce(args) -> int:
    seed = _resolve_seed(args.seed)
    try:
        rep = reproduce_scenario(args.example_id)
    except KeyError as exc:
        raise ValueError(str(exc.args[0])) from exc
    _emit(_report(f"reproduce {args.example_id}", seed, {}, result=rep), args.json_out)
    return _verdict_exit(_bool_verdict(rep["passed"])) if args.assert_ else EXIT_OK


# ---------------------------------------------------------------------------
# numrange
# ---------------------------------------------------------------------------


def cmd_numrange(args) -> int:
    tol = _resolve_tol(args.tol)
    seed = _resolve_seed(args.seed)
    M = load_matrix(args.file)
    poly = (
        maximal_numerical_range(M, n_angles=args.angles, tol=tol)
        if args.maximal
        else nr_boundary(M, n_angles=args.angles, tol=tol)
    )
    zv = nr_contains_zero(poly)
    payload = {
        "kind": "maximal" if args.maximal else "classical",
        "n_angles": poly.n_angles,
        "degenerate": poly.is_degenerate,
        "degenerate_kind": poly.degenerate_kind,
        "zero_membership": _zero_verdict_dict(zv),
        "min_real_part": float(np.min(poly.vertices.real)),
        "vertices": [_pair(z) for z in poly.vertices],
    }
    if args.maximal:
        classical = nr_boundary(M, n_angles=args.angles, tol=tol)
        hull = classical.vertices[_convex_hull(classical.vertices)]
        scale = max(1.0, op_norm(M))
        worst = min(_hull_signed_margin(complex(z), hull) for z in poly.vertices)
        payload["contained_in_classical"] = bool(worst >= -1e-7 * scale)
        payload["containment_margin"] = float(worst)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(polygon_csv(poly))
        payload["csv"] = args.csv
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(polygon_svg(poly))
        payload["svg"] = args.svg
    _emit(_report("numrange", seed, {"matrix": args.file}, **payload), args.json_out)
    return _verdict_exit(zv.verdict) if args.assert_ else EXIT_OK


# ---------------------------------------------------------------------------
# property-run
# ---------------------------------------------------------------------------


def cmd_property_run(args) -> int:
    seed = _resolve_seed(args.seed)
    dims = None
    if args.dims:
        dims = tuple(int(part) for part in args.dims.split(",") if part.strip())
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"--dims must be positive integers, got {args.dims!r}")
    results = run_suite(args.suite, args.trials, seed, dims)
    dumped: list[str] = []
    for res in results:
        for failure in res.failures:
            for name, mat in failure["inputs"].items():
                os.makedirs(args.dump_dir, exist_ok=True)
                path = os.path.join(
                    args.dump_dir, f"{res.name}-t{failure['trial']}-{name}.json"
                )
                with open(path, "w", encoding="utf-8") as fh:
                    json.dump(mat, fh, sort_keys=True)
                    fh.write("\n")
                dumped.append(path)
    all_passed = all(r.passed for r in results)
    payload = {
        "suite": args.suite,
        "trials": args.trials,
        "results": [r.to_json_dict() for r in results],
        "all_passed": all_passed,
        "dumped_inputs": dumped,
    }
    _emit(_report("property-run", seed, {}, **payload), args.json_out)
    return _verdict_exit(_bool_verdict(all_passed)) if args.assert_ else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="verdict tolerance override")
    common.add_argument(
        "--assert",
        dest="assert_",
        action="store_true",
        help="exit 0/2/3 on true/false/inconclusive",
    )
    common.add_argument("--json", dest="json_out", default=None, help="also write the report to this file")
    common.add_argument("--seed", type=int, default=None, help="seed (default: OTK_SEED or 7)")

    parser = _Parser(
        prog="otk",
        description="Orthogonality and unitary dilation toolkit for complex matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide an orthogonality verdict")
    p.add_argument("kind", choices=["orth", "approx", "halmos", "brehmer", "regular", "st-criterion"])
    p.add_argument("files", nargs="+", help="matrix JSON files")
    p.add_argument("--eps", type=float, default=None, help="epsilon for check approx")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dilate", parents=[common], help="construct and export a unitary dilation")
    p.add_argument(
        "kind",
        choices=["schaffer", "generalized", "hat", "adjoint-trick", "forced", "ando", "rho-example"],
    )
    p.add_argument("files", nargs="*", help="matrix JSON files")
    p.add_argument("--slots", type=int, default=None, help="window slot count")
    p.add_argument("--rho", type=float, default=1.0, help="rho for rho-example")
    p.add_argument("--k0", type=int, default=0, help="swap slot for dilate forced")
    p.add_argument("--out", default=None, help="write the construction JSON here")
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("reproduce", parents=[common], help="re-run a named built-in example")
    p.add_argument("example_id", choices=scenario_ids())
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("numrange", parents=[common], help="numerical range polygon export")
    p.add_argument("file", help="matrix JSON file")
    p.add_argument("--angles", type=int, default=64)
    p.add_argument("--maximal", action="store_true", help="maximal instead of classical range")
    p.add_argument("--csv", default=None, help="write polygon CSV here")
    p.add_argument("--svg", default=None, help="write polygon SVG here")
    p.set_defaults(func=cmd_numrange)

    p = sub.add_parser("property-run", parents=[common], help="run seeded property suites")
    p.add_argument("suite", choices=suite_names())
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--dims", default=None, help="comma-separated dimensions, e.g. 2,3,4")
    p.add_argument("--dump-dir", default="otk-property-dumps", help="where failing inputs are written")
    p.set_defaults(func=cmd_property_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    start = time.monotonic()
    try:
        args = parser.parse_args(argv)
        code = args.func(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"otk: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        elapsed = int(round(1000 * (time.monotonic() - start)))
        print(f"elapsed_ms {elapsed}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
