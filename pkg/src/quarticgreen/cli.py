"""``quarticgreen`` command-line driver."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import DivergenceError, QuarticGreenError
from .suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parse_params(pairs):
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def build_config(args) -> RunConfig:
    mapping = io.read_keyvalue(args.config) if getattr(args, "config", None) else {}
    mapping.update(_parse_params(getattr(args, "param", None)))
    if getattr(args, "suite", None):
        mapping["suite"] = args.suite
    if getattr(args, "out", None):
        mapping["out"] = args.out
    return RunConfig.from_mapping(mapping)


def format_text(report) -> str:
    lines = [f"suite: {report['suite']}  backend: {report['backend']}  checks: {report['n_checks']}"]
    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        measured = c["measured"]
        if isinstance(measured, float):
            measured = f"{measured:.13g}"
        lines.append(f"[{mark}] {c['suite']}.{c['name']}: {measured}  (expected {c['expected']})")
    lines.append("timings: " + ", ".join(f"{k}={v:.2f}s" for k, v in report["timings"].items()))
    lines.append("RESULT: " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    cfg = build_config(args)
    report = run_suite(cfg, parallel=args.parallel)
    text = format_text(report)
    sys.stdout.write(text)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        timings = report.pop("timings")
        io.write_json(out / f"report_{cfg.suite}.json", report)
        io.write_json(out / f"timings_{cfg.suite}.json", timings)
        (out / f"report_{cfg.suite}.txt").write_text(text)
    failed = [f"{c['suite']}.{c['name']}" for c in report["checks"] if not c["passed"]]
    if failed:
        print("failing checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_spectrum(args):
    if args.n_max < 0 or not args.mass > 0:
        print("error: need --n-max >= 0 and --mass > 0", file=sys.stderr)
        return EXIT_USAGE
    io.write_spectrum_csv(args.out, args.n_max, args.mass)
    return EXIT_OK


def cmd_field(args):
    from .lattice import solve_nonlinear

    cfg = build_config(args)
    bg = cfg.background()
    lat = cfg.lattice(bg)
    rep = solve_nonlinear(bg, None, lat)
    io.write_field_csv(args.file, rep.field, lat)
    print(f"max residual {rep.max_residual:.3e}  energy drift {rep.energy_drift:.3e}")
    return EXIT_OK


def cmd_kernel(args):
    from .hierarchy import KernelGrid
    from .lattice import Lattice1p1

    cfg = build_config(args)
    bg = cfg.background()
    kg = KernelGrid.build(bg, Lattice1p1.default(bg, nx=cfg.nx, nt=cfg.nt))
    io.write_kernel(args.file, kg.dense(), args.format)
    return EXIT_OK


def cmd_audit(args):
    from .yangmills import casimir_contraction_audit

    audit = casimir_contraction_audit(args.g, args.substitution)

    def clean(obj):
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        return obj

    print(json.dumps(clean(audit), indent=2, sort_keys=True, default=str))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="quarticgreen", description="Verification driver for the quartic-scalar Green function toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def config_args(p):
        p.add_argument("--config", help="flat key=value file")
        p.add_argument("--param", action="append", metavar="KEY=VALUE", help="override one config key (repeatable)")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=SUITES + ("all",))
    config_args(v)
    v.add_argument("--out", help="directory for JSON and text reports")
    v.add_argument("--parallel", action="store_true", help="run suites in separate processes")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="tabulate n, omega_n, A_n as CSV")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--mass", type=float, default=1.0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_spectrum)

    f = sub.add_parser("field", help="export the j = 0 lattice evolution as (t, x, value) CSV")
    config_args(f)
    f.add_argument("file")
    f.set_defaults(func=cmd_field)

    k = sub.add_parser("kernel", help="export the dense retarded kernel as (i1, i2, value) triplets")
    config_args(k)
    k.add_argument("file")
    k.add_argument("--format", choices=("csv", "bin"))
    k.set_defaults(func=cmd_kernel)

    a = sub.add_parser("audit", help="print the colour contact-term audit")
    a.add_argument("--g", type=float, default=1.0)
    a.add_argument("--substitution", choices=("metric", "aligned"), default="aligned")
    a.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (QuarticGreenError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
