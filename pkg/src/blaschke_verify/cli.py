"""Command line front end.

Subcommands load measure or system JSON, run single checks or seeded random
suites, and emit a JSON payload on stdout (reports plus a summary); stderr
carries diagnostics and replay dumps of failed instances.  Exit code 0 means
every check passed, 1 means a check failed or a numerical procedure gave up,
2 means the input could not be parsed or violated a precondition.

Output is byte-identical for identical (seed, flags, input): instance k of a
suite draws from its own generator keyed by (seed, k), so the worker pool
(capped by BLASCHKE_VERIFY_THREADS) never affects results or their order.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import dataclasses
import io
import json
import os
import sys

import numpy as np

from .bounds import (
    BLASCHKE_TOL,
    JENSEN_TOL,
    REAL_LINE_TOL,
    SCHUR_LINK_TOL,
    BoundReport,
    check_corollary,
    check_jensen_h1,
    check_real_line_variant,
    check_schur_chain,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    summarize,
)
from .dilation import dilate, roundtrip_check
from .errors import BlaschkeVerifyError, InputError
from .measure import measure_from_jsonable, measure_to_jsonable, shift_measure
from .operator_model import (
    ContractionSystem,
    build_system_from_measure,
    eval_h_resolvent,
    perturbation_determinant,
    system_from_jsonable,
    system_to_jsonable,
)
from .random_instances import (
    complex_gaussian,
    random_atomic_measure,
    random_contraction,
    random_lowrank_pair,
    random_real_line_atoms,
    random_polynomial_with_unit_constant,
    random_system,
    spawn_rng,
)
from .transform import CauchyFunction
from .zeros import (
    PAIRING_TOL,
    ZeroSet,
    match_zero_sets,
    zeros_via_argument_principle,
    zeros_via_L,
    zeros_via_numerator_roots,
)

DETERMINANT_TOL = 1e-11

_TOL_DEFAULTS = {
    "blaschke": BLASCHKE_TOL,
    "schur": SCHUR_LINK_TOL,
    "jensen": JENSEN_TOL,
    "realline": REAL_LINE_TOL,
    "pairing": PAIRING_TOL,
    "determinant": DETERMINANT_TOL,
    "taylor": 1e-9,
}


def _parse_tols(pairs) -> dict:
    tols = {}
    for item in pairs or []:
        name, sep, val = item.partition("=")
        if not sep or name not in _TOL_DEFAULTS:
            raise InputError(
                f"bad --tol {item!r}; use NAME=VALUE with NAME in {sorted(_TOL_DEFAULTS)}"
            )
        try:
            tols[name] = float(val)
        except ValueError as exc:
            raise InputError(f"bad --tol value in {item!r}") from exc
    return tols


def _tol(args, name: str) -> float:
    return args.tols.get(name, _TOL_DEFAULTS[name])


def _workers() -> int:
    base = min(4, os.cpu_count() or 1)
    cap = os.environ.get("BLASCHKE_VERIFY_THREADS")
    if cap:
        try:
            base = max(1, min(base, int(cap)))
        except ValueError:
            pass
    return base


def _expand(reports):
    """Flatten chain links into standalone rows next to their parent report."""
    out = []
    for r in reports:
        out.append(r)
        links = r.details.get("links", []) if isinstance(r.details, dict) else []
        for l in links:
            out.append(
                BoundReport(
                    name=f"{r.name}/{l['name']}",
                    lhs=l["lhs"],
                    rhs=l["rhs"],
                    tol=l["tol"],
                    details={},
                )
            )
    return out


def _emit(args, command: str, reports) -> int:
    rows = _expand(reports)
    payload = {
        "command": command,
        "reports": [r.to_jsonable() for r in rows],
        "summary": summarize(rows),
    }
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
    print(text)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    if getattr(args, "csv_out", None):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "lhs", "rhs", "slack", "tol", "pass", "details"])
        for r in rows:
            writer.writerow(
                [
                    r.name,
                    repr(r.lhs),
                    repr(r.rhs),
                    repr(r.slack),
                    repr(r.tol),
                    r.passed,
                    json.dumps(r.details, sort_keys=True),
                ]
            )
        with open(args.csv_out, "w") as fh:
            fh.write(buf.getvalue())
    return 0 if all(r.passed for r in rows) else 1


def _dump_failure(command: str, payload: dict):
    print(json.dumps({"failed": command, **payload}, sort_keys=True), file=sys.stderr)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _with_detail(report: BoundReport, **extra) -> BoundReport:
    return dataclasses.replace(report, details={**report.details, **extra})


# ---------------------------------------------------------------------------
# three-way zero agreement


def _filter_cap(zs: ZeroSet, cap: float) -> ZeroSet:
    return ZeroSet(
        zeros=tuple((z, m) for z, m in zs.zeros if abs(z) < cap), method=zs.method
    )


def _agreement_report(name, a: ZeroSet, b: ZeroSet, tol: float) -> BoundReport:
    matched, worst = match_zero_sets(a, b, tol=tol)
    lhs = worst if matched or worst != float("inf") else tol + 1.0
    if not matched and lhs <= tol:
        lhs = tol + 1.0  # multiplicity mismatch at matching locations
    return BoundReport(
        name=name,
        lhs=lhs,
        rhs=tol,
        tol=0.0,
        details={
            "methods": [a.method, b.method],
            "counts": [a.count, b.count],
            "matched": matched,
        },
    )


def _zero_crosscheck(sigma, f: CauchyFunction, tol: float, cap: float = 0.999):
    """Reports comparing the three zero-finding routes on one function.

    sigma is the shifted-mode representative driving the eigenvalue route
    (None when the transform has no atoms to model).
    """
    reports = []
    roots = zeros_via_numerator_roots(f)
    if sigma is not None and sigma.natoms:
        eig = zeros_via_L(build_system_from_measure(sigma))
        reports.append(_agreement_report("zeros-eigenvalue-vs-roots", eig, roots, tol))
    arg = zeros_via_argument_principle(f, radius=cap)
    reports.append(
        _agreement_report(
            "zeros-contour-vs-roots", arg, _filter_cap(roots, cap), tol
        )
    )
    return reports


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_measure(args) -> int:
    mu = measure_from_jsonable(_load_json(args.path))
    tol = _tol(args, "blaschke")
    if args.mode == "shifted":
        main = check_theorem2(mu, tol=tol)
        f = CauchyFunction(source=mu, mode="shifted")
        sigma = mu
    else:
        main = check_corollary(mu, tol=tol)
        f = CauchyFunction(source=mu, mode="direct")
        sigma = shift_measure(mu)
    reports = [main] + _zero_crosscheck(sigma, f, _tol(args, "pairing"))
    return _emit(args, "verify-measure", reports)


def _determinant_report(s: ContractionSystem, tol: float) -> BoundReport:
    lams = 2.0 * np.exp(2j * np.pi * np.arange(6) / 6 + 0.1j)
    worst = 0.0
    pts = []
    for lam in lams:
        d1 = perturbation_determinant(s, lam, method="rank1")
        d2 = perturbation_determinant(s, lam, method="lu")
        d3 = eval_h_resolvent(s, 1.0 / lam)
        scale = max(1.0, abs(d1))
        rel = max(abs(d1 - d2), abs(d1 - d3)) / scale
        worst = max(worst, rel)
        pts.append({"re": lam.real, "im": lam.imag, "rel_spread": rel})
    return BoundReport(
        name="determinant-identity",
        lhs=worst,
        rhs=tol,
        tol=0.0,
        details={"points": pts},
    )


def cmd_verify_system(args) -> int:
    s = system_from_jsonable(_load_json(args.path))
    reports = [
        check_theorem1(s, tol=_tol(args, "blaschke")),
        _determinant_report(s, _tol(args, "determinant")),
    ]
    return _emit(args, "verify-system", reports)


_SUITES = ("thm1", "thm2", "thm3", "schur", "dilation", "realline")


def _suite_instance(which: str, args, index: int):
    """One (reports, instance_payload) pair; deterministic in (seed, index)."""
    rng = spawn_rng(args.seed, index)
    if which == "thm1":
        s = random_system(rng, max_dim=args.max_dim)
        return [check_theorem1(s, tol=_tol(args, "blaschke"))], system_to_jsonable(s)
    if which == "thm2":
        mu = random_atomic_measure(rng, max_atoms=args.max_atoms)
        return [check_theorem2(mu, tol=_tol(args, "blaschke"))], measure_to_jsonable(mu)
    if which == "thm3":
        A, L = random_lowrank_pair(rng, max_dim=args.max_dim)
        inst = {"A": _matrix_json(A), "L": _matrix_json(L)}
        return [check_theorem3(A, L, tol=_tol(args, "blaschke"))], inst
    if which == "schur":
        A, L = random_lowrank_pair(rng, max_dim=args.max_dim)
        inst = {"A": _matrix_json(A), "L": _matrix_json(L)}
        return [check_schur_chain(A, L, tol=_tol(args, "schur"))], inst
    if which == "dilation":
        n = int(rng.integers(1, min(5, args.max_dim) + 1))
        s = ContractionSystem(
            A=random_contraction(rng, n),
            phi=complex_gaussian(rng, (n,)),
            psi=complex_gaussian(rng, (n,)),
        )
        N = int(rng.integers(1, 11))
        rep = roundtrip_check(s, N, taylor_tol=_tol(args, "taylor"))
        return [rep], {"system": system_to_jsonable(s), "order": N}
    if which == "realline":
        atoms = random_real_line_atoms(rng, max_atoms=min(args.max_atoms, 6))
        rep = check_real_line_variant(atoms, tol=_tol(args, "realline"))
        inst = {"atoms": [{"s": s_, "c": {"re": c.real, "im": c.imag}} for s_, c in atoms]}
        return [rep], inst
    raise InputError(f"unknown suite {which!r}")


def _matrix_json(M):
    return [[{"re": z.real, "im": z.imag} for z in row] for row in np.asarray(M)]


def _run_suite(which: str, args):
    def run_one(index):
        try:
            reports, inst = _suite_instance(which, args, index)
        except BlaschkeVerifyError as exc:
            reports = [
                BoundReport(
                    name=f"{which}-instance-error",
                    lhs=1.0,
                    rhs=0.0,
                    tol=0.0,
                    details={"error": str(exc)},
                )
            ]
            inst = {"error": str(exc)}
        return [
            _with_detail(r, suite=which, instance=index) for r in reports
        ], inst

    nworkers = _workers()
    indices = range(args.instances)
    if nworkers <= 1:
        results = [run_one(i) for i in indices]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(run_one, indices))
    reports = []
    for index, (reps, inst) in zip(indices, results):
        reports.extend(reps)
        if not all(r.passed for r in _expand(reps)):
            _dump_failure(
                which, {"seed": args.seed, "index": index, "instance": inst}
            )
    return reports


def cmd_random_suite(args) -> int:
    which = list(_SUITES) if args.which == "all" else [args.which]
    reports = []
    for w in which:
        reports.extend(_run_suite(w, args))
    return _emit(args, "random-suite", reports)


def cmd_dilate(args) -> int:
    s = system_from_jsonable(_load_json(args.path))
    d = dilate(s.A, args.order)
    unit_resid = float(
        np.linalg.norm(d.U.conj().T @ d.U - np.eye(d.dim), ord=2)
    )
    moment_errs = []
    Uk = np.eye(d.dim, dtype=complex)
    Ak = np.eye(s.n, dtype=complex)
    ephi = d.embed @ s.phi
    epsi = d.embed @ s.psi
    for _ in range(args.order + 1):
        want = complex(np.vdot(s.psi, Ak @ s.phi))
        got = complex(np.vdot(epsi, Uk @ ephi))
        moment_errs.append(abs(want - got))
        Uk = Uk @ d.U
        Ak = Ak @ s.A
    rep = roundtrip_check(s, args.order, taylor_tol=_tol(args, "taylor"))
    rep = _with_detail(
        rep, unitarity_residual=unit_resid, moment_errors=moment_errs
    )
    return _emit(args, "dilate", [rep])


def cmd_jensen(args) -> int:
    tol = _tol(args, "jensen")
    reports = [check_jensen_h1([1.0, -2.0], tol=tol)]
    for index in range(args.instances):
        rng = spawn_rng(args.seed, index)
        coeffs = random_polynomial_with_unit_constant(rng)
        rep = check_jensen_h1(coeffs, tol=tol)
        reports.append(_with_detail(rep, instance=index))
    return _emit(args, "jensen", reports)


def cmd_schur_chain(args) -> int:
    return _emit(args, "schur-chain", _run_suite("schur", args))


def cmd_real_line(args) -> int:
    if args.path:
        obj = _load_json(args.path)
        if not isinstance(obj, dict) or "atoms" not in obj:
            raise InputError("real-line file must be an object with an atoms array")
        atoms = []
        for entry in obj["atoms"]:
            if not isinstance(entry, dict) or "s" not in entry:
                raise InputError(f"malformed line atom: {entry!r}")
            cv = entry.get("c", {"re": 0.0})
            atoms.append(
                (float(entry["s"]), complex(float(cv.get("re", 0.0)), float(cv.get("im", 0.0))))
            )
        reports = [check_real_line_variant(atoms, tol=_tol(args, "realline"))]
        return _emit(args, "real-line", reports)
    return _emit(args, "real-line", _run_suite("realline", args))


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="suite RNG seed")
    common.add_argument("--instances", type=int, default=100, help="suite size")
    common.add_argument("--max-atoms", type=int, default=8, dest="max_atoms")
    common.add_argument("--max-dim", type=int, default=10, dest="max_dim")
    common.add_argument(
        "--tol",
        action="append",
        metavar="NAME=VAL",
        help=f"tolerance override; names: {', '.join(sorted(_TOL_DEFAULTS))}",
    )
    common.add_argument("--json-out", dest="json_out", help="also write payload here")
    common.add_argument("--csv-out", dest="csv_out", help="flat CSV of all reports")

    p = argparse.ArgumentParser(
        prog="blaschke-verify",
        description="numerical checks for disk zero bounds of Cauchy transforms",
    )
    sub = p.add_subparsers(dest="command", required=True)

    vm = sub.add_parser("verify-measure", parents=[common], help="check a measure file")
    vm.add_argument("path")
    vm.add_argument("--mode", choices=("direct", "shifted"), default="shifted")
    vm.set_defaults(func=cmd_verify_measure)

    vs = sub.add_parser("verify-system", parents=[common], help="check a system file")
    vs.add_argument("path")
    vs.set_defaults(func=cmd_verify_system)

    rs = sub.add_parser("random-suite", parents=[common], help="seeded random suites")
    rs.add_argument("--which", choices=_SUITES + ("all",), default="all")
    rs.set_defaults(func=cmd_random_suite)

    dl = sub.add_parser("dilate", parents=[common], help="dilation round trip on a system")
    dl.add_argument("path")
    dl.add_argument("--order", type=int, default=6)
    dl.set_defaults(func=cmd_dilate)

    je = sub.add_parser("jensen", parents=[common], help="boundary-integral chains")
    je.set_defaults(func=cmd_jensen)

    sc = sub.add_parser("schur-chain", parents=[common], help="Schur-basis chain suite")
    sc.set_defaults(func=cmd_schur_chain)

    rl = sub.add_parser("real-line", parents=[common], help="half-plane variant")
    rl.add_argument("path", nargs="?")
    rl.set_defaults(func=cmd_real_line)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.tols = _parse_tols(args.tol)
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except BlaschkeVerifyError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
