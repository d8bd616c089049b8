"""Command-line entry point.

Subcommands: gen | shadow | favard | buffon | spectral | verify | scan.
Exit codes: 0 success, 1 verification-suite failure, 2 usage or config
error, 3 enumeration cap exceeded.  With --json, errors go to stderr as a
single JSON object.  Identical invocations (same flags, same seed) produce
byte-identical output regardless of --threads.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import emit, favard, ifs, shadow, spectral, stacks, verify
from ._parallel import default_threads
from .errors import EnumerationCapExceeded, FavlabError, UnknownPreset

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _load_system(args) -> ifs.SimilaritySystem:
    if getattr(args, "system_file", None):
        with open(args.system_file, "r", encoding="utf-8") as fh:
            return ifs.system_from_json(fh.read())
    if getattr(args, "preset", None):
        return ifs.preset(args.preset)
    raise FavlabError("pass --preset or --system-file")


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="gasket | corner4 | random-L-seedS")
    p.add_argument("--system-file", help="system definition JSON path")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--json", action="store_true", help="machine-readable errors")
    p.add_argument("--threads", type=int, default=None, help="worker threads")
    p.add_argument("--config", default=None, help="JSON file overriding flags")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="favlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a validated system definition JSON")
    _add_system_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("shadow", help="multiplicity profile CSV at one angle")
    _add_system_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--cap", type=int, default=ifs.ENUMERATION_CAP)
    _add_common_flags(p)

    p = sub.add_parser("favard", help="direction-averaged shadow length")
    _add_system_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--target-rel-error", type=float, default=1e-6)
    p.add_argument("--refine-limit", type=int, default=6)
    p.add_argument("--cap", type=int, default=ifs.ENUMERATION_CAP)
    _add_common_flags(p)

    p = sub.add_parser("buffon", help="Monte Carlo needle estimate")
    _add_system_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_common_flags(p)

    p = sub.add_parser("spectral", help="product magnitudes over the sample block")
    _add_system_flags(p)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--threshold", type=float, default=None, help="small-value cutoff")
    p.add_argument("--grid", type=int, default=10000)
    _add_common_flags(p)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=sorted(verify.SUITES),
    )
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_common_flags(p)

    p = sub.add_parser("scan", help="combinatorial reports")
    p.add_argument(
        "--check",
        required=True,
        choices=["product", "escan", "l2", "bootstrap", "baddir"],
    )
    _add_system_flags(p)
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--K", type=int, nargs="+", default=[2])
    p.add_argument("--M", type=int, nargs="+", default=[2])
    p.add_argument("--theta-grid", type=int, default=64)
    p.add_argument("--k-exponent", type=float, default=3.0)
    p.add_argument("--theta", type=float, default=0.2)
    p.add_argument("--l-max", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--t-grid", type=int, default=100)
    p.add_argument("--cap", type=int, default=ifs.ENUMERATION_CAP)
    _add_common_flags(p)

    return ap


def _apply_config(args: argparse.Namespace) -> None:
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            overrides = json.load(fh)
        for key, val in overrides.items():
            setattr(args, key.replace("-", "_"), val)


def _cmd_gen(args, stdout) -> int:
    system = _load_system(args)
    emit.write_text(args.out, ifs.system_to_json(system) + "\n", stdout)
    return EXIT_OK


def _cmd_shadow(args, stdout) -> int:
    system = _load_system(args)
    f = shadow.multiplicity(system, args.n, args.theta, cap=args.cap)
    buf = io.StringIO()
    shadow.write_step_csv(buf, f, args.theta, args.n, system.label)
    emit.write_text(args.out, buf.getvalue(), stdout)
    return EXIT_OK


def _cmd_favard(args, stdout) -> int:
    system = _load_system(args)
    cfg = favard.QuadratureConfig(
        grid_size=args.grid,
        refinement_limit=args.refine_limit,
        target_rel_error=args.target_rel_error,
    )
    res = favard.favard_length(system, args.n, cfg, cap=args.cap, threads=args.threads)
    if not res.converged:
        print("warning: refinement limit reached before target error", file=sys.stderr)
    text = emit.csv_rows(
        ["system", "n", "method", "value", "error", "param", "seed"],
        [[system.label, res.depth, "quadrature", res.value, res.error_estimate, res.grid, ""]],
    )
    emit.write_text(args.out, text, stdout)
    return EXIT_OK


def _cmd_buffon(args, stdout) -> int:
    system = _load_system(args)
    est, err = favard.buffon_estimate(system, args.n, args.trials, args.seed)
    text = emit.csv_rows(
        ["system", "n", "method", "value", "error", "param", "seed"],
        [[system.label, args.n, "buffon", est, err, args.trials, args.seed]],
    )
    emit.write_text(args.out, text, stdout)
    return EXIT_OK


def _cmd_spectral(args, stdout) -> int:
    system = _load_system(args)
    spec = spectral.ProductSpec(args.n, args.m, args.ell)
    L = system.branching
    xs = np.linspace(float(L) ** (spec.n - spec.m), float(L) ** spec.n, args.grid)
    kw = {}
    if args.t is not None:
        kw["t"] = args.t
        target = spectral.t_form(system)
    elif args.theta is not None:
        kw["theta"] = args.theta
        target = system
    else:
        raise FavlabError("pass --theta or --t")
    p1, p2, ps, pf = spectral.split_products(spec, target, xs, **kw)
    nu = spectral.nu_hat_eval(target, depth=spec.n, x=xs, **kw)
    rows = [
        [x, abs(a), abs(b), abs(c), abs(d), abs(e)]
        for x, a, b, c, d, e in zip(xs, p1, p2, ps, pf, nu)
    ]
    text = emit.csv_rows(["x", "abs_p1", "abs_p2", "abs_psharp", "abs_pflat", "abs_nu_hat"], rows)
    emit.write_text(args.out, text, stdout)
    if args.threshold is not None:
        cover = spectral.ssv_scan(target, spec, args.threshold, max(args.grid, 1000), **kw)
        print(f"small-value components: {cover.component_count}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args, stdout) -> int:
    report = verify.run_suite(args.suite, args.trials, args.seed, args.threads)
    emit.write_text(args.out, emit.json_report(report), stdout)
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAIL


def _cmd_scan(args, stdout) -> int:
    system = _load_system(args)
    thetas = tuple(np.linspace(0.0, np.pi, args.theta_grid, endpoint=False))
    if args.check == "product":
        pairs = [(k, m) for k in args.K for m in args.M]
        rep = stacks.product_inequality_report(
            system, args.N, thetas, pairs, cap=args.cap, threads=args.threads
        )
        payload = {
            "check": "product",
            "N": args.N,
            "pairs": [list(p) for p in rep.pairs],
            "worst_ratio": rep.worst_ratio,
            "worst_at": list(rep.worst_at) if rep.worst_at else None,
            "checked": rep.checked,
        }
    elif args.check == "escan":
        cfg = stacks.EScanConfig(args.N, args.K[0], thetas, args.k_exponent)
        rep = stacks.e_scan(cfg, system, cap=args.cap, threads=args.threads)
        payload = {
            "check": "escan",
            "N": args.N,
            "K": args.K[0],
            "members": int(sum(rep.membership)),
            "grid": len(thetas),
            "measure_estimate": rep.measure_estimate,
        }
    elif args.check == "l2":
        cfg = stacks.EScanConfig(args.N, args.K[0], thetas, args.k_exponent)
        rep = stacks.l2_bound_report(system, cfg, cap=args.cap, threads=args.threads)
        payload = {
            "check": "l2",
            "N": args.N,
            "K": args.K[0],
            "vacuous": rep.vacuous,
            "max_ratio": rep.max_ratio,
            "sampled": len(rep.per_theta),
        }
    elif args.check == "bootstrap":
        rep = stacks.bootstrap_report(system, args.theta, args.N, args.l_max, cap=args.cap)
        payload = {
            "check": "bootstrap",
            "theta": rep.theta,
            "depths": list(rep.depths),
            "measures": list(rep.measures),
            "geom_a": rep.geom_a,
            "geom_rho": rep.geom_rho,
            "residual": rep.residual,
        }
    else:
        spec = spectral.ProductSpec(args.m + args.ell + 1, args.m, args.ell)
        ts = np.linspace(0.0, 1.0, args.t_grid)
        rep = stacks.bad_direction_scan(system, spec, args.tau, ts, threads=args.threads)
        payload = {
            "check": "baddir",
            "m": args.m,
            "ell": args.ell,
            "tau": args.tau,
            "h_measure": rep.h_measure,
            "bound": rep.bound,
            "offenders": int(sum(rep.offenders)),
        }
    emit.write_text(args.out, emit.json_report(payload), stdout)
    return EXIT_OK


_HANDLERS = {
    "gen": _cmd_gen,
    "shadow": _cmd_shadow,
    "favard": _cmd_favard,
    "buffon": _cmd_buffon,
    "spectral": _cmd_spectral,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def _fail(args_json: bool, code: int, kind: str, message: str) -> int:
    if args_json:
        sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    else:
        sys.stderr.write(f"favlab: {kind}: {message}\n")
    return code


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    wants_json = bool(getattr(args, "json", False))
    try:
        _apply_config(args)
        if getattr(args, "threads", None) is None:
            args.threads = default_threads()
        return _HANDLERS[args.command](args, stdout)
    except EnumerationCapExceeded as exc:
        return _fail(wants_json, EXIT_CAP, "cap-exceeded", str(exc))
    except UnknownPreset as exc:
        return _fail(wants_json, EXIT_USAGE, "unknown-preset", str(exc))
    except FavlabError as exc:
        return _fail(wants_json, EXIT_USAGE, type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail(wants_json, EXIT_USAGE, "io-error", str(exc))


if __name__ == "__main__":
    sys.exit(main())
