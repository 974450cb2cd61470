"""Command-line entry point: ``quiver-edmonds <command> INSTANCE [options]``.

Exit codes: 0 decided, 2 invalid input, 3 inconclusive or size-capped,
4 internal-consistency alarm.  Reports go to stdout as JSON, diagnostics to
stderr.  The default seed is read from ``QUIVER_EDMONDS_SEED`` (else 0).
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .capacity import INCONCLUSIVE as CAP_INCONCLUSIVE
from .capacity import decide_capacity
from .datum import build_block_matrices, split_weight
from .errors import InconsistencyAlarm, QuiverEdmondsError, SizeCapExceeded
from .oracle import DEFAULT_TRIALS, decide_family
from .semigroup import DEFAULT_N_MAX
from .semigroup import INCONCLUSIVE as SAT_INCONCLUSIVE
from .semigroup import orbit_membership, saturation_probe
from .serialization import dumps, family_to_dict, parse_instance, sha256_text

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_ALARM = 0, 2, 3, 4
SEED_ENV = "QUIVER_EDMONDS_SEED"

PATH_HELP = ("Paths are arrow-id lists in traversal order; a path [a, b] evaluates "
             "to W(b) W(a).")


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _cmd_build(d, args):
    F = build_block_matrices(d)
    fam = family_to_dict(F, dense=args.dense)
    result = {"split": {**split_weight(d).summary(), "family_size": len(F)}}
    if args.emit:
        Path(args.emit).write_text(dumps(fam) + "\n", encoding="utf-8")
        result["emitted"] = str(args.emit)
    else:
        result["family"] = fam
    return result, EXIT_OK


def _cmd_edmonds(d, args):
    method = "randomized" if args.inexact else args.method
    kw = dict(trials=args.trials, sample_bound=args.sample_bound, seed=args.seed)
    if method == "symbolic" and not args.no_fallback:
        method = "auto"
    dd = d.scaled(args.multiple) if args.multiple != 1 else d
    F = build_block_matrices(dd)
    try:
        dec = decide_family(F, method, **kw)
    except SizeCapExceeded as exc:
        return {"error": str(exc), "N": F.N, "family_size": len(F)}, EXIT_INCONCLUSIVE
    dec.weight, dec.multiple = dict(dd.weight), args.multiple
    print(dec.answer, file=sys.stderr)
    return dec.to_dict(), EXIT_OK


def _cmd_capacity(d, args):
    rep = decide_capacity(build_block_matrices(d), max_iters=args.max_iters,
                          threshold=args.threshold)
    code = EXIT_INCONCLUSIVE if rep.decision == CAP_INCONCLUSIVE else EXIT_OK
    return rep.to_dict(history=args.history), code


def _cmd_membership(d, args):
    mode = "randomized" if args.inexact else args.method
    rep = orbit_membership(d, mode, trials=args.trials, seed=args.seed)
    code = EXIT_INCONCLUSIVE if rep.semistable == CAP_INCONCLUSIVE else EXIT_OK
    return rep.to_dict(), code


def _cmd_saturate(d, args):
    mode = "randomized" if args.inexact else args.method
    rep = saturation_probe(d, args.n_max, mode, trials=args.trials, seed=args.seed)
    code = EXIT_INCONCLUSIVE if rep.erp_status == SAT_INCONCLUSIVE else EXIT_OK
    return rep.to_dict(), code


COMMANDS = {
    "build": _cmd_build,
    "edmonds": _cmd_edmonds,
    "capacity": _cmd_capacity,
    "membership": _cmd_membership,
    "saturate": _cmd_saturate,
}


def _echo(args) -> dict:
    skip = {"instance", "jobs", "func"}
    return {"name": args.command,
            "args": {k: v for k, v in sorted(vars(args).items()) if k not in skip and k != "command"}}


def run_one(args, path: Path) -> tuple[dict, int]:
    """Run one command on one instance file; returns (report, exit code)."""
    started = time.perf_counter()
    report = {"command": _echo(args), "instance": str(path),
              "tool": {"name": "quiver-edmonds", "version": __version__},
              "seed": getattr(args, "seed", None)}
    try:
        text = path.read_text(encoding="utf-8")
        report["input_sha256"] = sha256_text(text)
        d = parse_instance(text, inexact=args.inexact)
        result, code = COMMANDS[args.command](d, args)
    except InconsistencyAlarm as exc:
        result, code = {"alarm": str(exc)}, EXIT_ALARM
    except (QuiverEdmondsError, OSError, UnicodeDecodeError) as exc:
        result, code = {"error": str(exc)}, EXIT_INVALID
    report["result"] = result
    report["exit_code"] = code
    report["timing"] = {"seconds": time.perf_counter() - started}
    return report, code


def _run_batch(args, paths):
    if args.emit:
        Path(args.emit).mkdir(parents=True, exist_ok=True)
    jobs = []
    for p in paths:
        a = argparse.Namespace(**vars(args))
        if args.command == "build" and args.emit:
            a.emit = str(Path(args.emit) / f"{p.stem}.family.json")
        jobs.append((a, p))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_one, *zip(*jobs)))
    else:
        results = [run_one(a, p) for a, p in jobs]
    return {"batch": [r for r, _ in results]}, max((c for _, c in results), default=EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiver-edmonds",
        description="Edmonds' problem for quiver data (W, sigma). " + PATH_HELP,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("instance", type=Path, help="instance JSON file, or a directory of them")
        p.add_argument("--inexact", action="store_true",
                       help="accept float entries (converted exactly); disables symbolic mode")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for directories")

    def seeded(p):
        p.add_argument("--seed", type=int, default=_default_seed(),
                       help=f"master seed (default ${SEED_ENV} or 0)")
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    p = sub.add_parser("build", help="emit the block-matrix family and the weight split")
    common(p)
    p.add_argument("--emit", help="write the family document here (a directory in batch mode)")
    p.add_argument("--dense", action="store_true", help="include dense N x N matrices")

    p = sub.add_parser("edmonds", help="decide whether the span contains a non-singular matrix")
    common(p)
    seeded(p)
    p.add_argument("--method", choices=["randomized", "symbolic"], default="symbolic")
    p.add_argument("--sample-bound", type=int, default=None, help="sample range S (default 2N)")
    p.add_argument("--multiple", type=int, default=1, help="test multiple * sigma")
    p.add_argument("--no-fallback", action="store_true",
                   help="do not fall back to randomized when symbolic caps are exceeded")

    p = sub.add_parser("capacity", help="operator scaling decision for cap > 0")
    common(p)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--history", action="store_true", help="include the ds history")

    p = sub.add_parser("membership", help="orbit/weight semigroup membership report")
    common(p)
    seeded(p)
    p.add_argument("--method", choices=["auto", "randomized", "symbolic"], default="auto")

    p = sub.add_parser("saturate", help="saturation probe over n * sigma")
    common(p)
    seeded(p)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--method", choices=["randomized", "symbolic"], default="symbolic")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "build":
        args.emit = None
    if args.instance.is_dir():
        paths = sorted(args.instance.glob("*.json"))
        report, code = _run_batch(args, paths)
    else:
        report, code = run_one(args, args.instance)
        if code == EXIT_INVALID:
            print(f"error: {report['result']['error']}", file=sys.stderr)
    sys.stdout.write(dumps(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
