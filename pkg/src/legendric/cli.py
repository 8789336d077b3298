"""Command-line entry point.

Exit codes: 0 on success, 2 on invalid input, 1 when a computed result
fails one of its own consistency checks.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from legendric.orbit import (
    InvalidTuple,
    is_nondegenerate,
    parse_weights,
    random_params,
    tangent_frame,
    verify_legendrian,
    weight_configuration,
)
from legendric.polytope import DegenerateConfiguration, convex_hull
from legendric.rational import RationalMatrix
from legendric.reporting import (
    RunManifest,
    dumps,
    emit_polytope_off,
    emit_report,
    emit_reports,
    fraction_list,
    polytope_json,
    summary_table,
)
from legendric.smoothness import classify, classify_all, default_bound, default_jobs
from legendric.symplectic import decompose, in_asp, in_sp, space_for

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2


class InvariantViolation(RuntimeError):
    pass


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _manifest(args, argv, **kw) -> RunManifest:
    return RunManifest(command=list(argv), **kw)


def cmd_check(args, argv) -> int:
    t = parse_weights(args.weights)
    report = classify(t, trials=args.trials, seed=args.seed)
    if not report.star_condition:
        raise InvariantViolation("torus generators left sp")
    m = _manifest(args, argv, seed=args.seed)
    _write(emit_report(report, m))
    return EXIT_OK


def cmd_classify(args, argv) -> int:
    bound = default_bound(args.n) if args.max_a is None else args.max_a
    jobs = default_jobs() if args.jobs is None else args.jobs
    start = time.perf_counter()
    reports = classify_all(args.n, bound, jobs=jobs, trials=args.trials, seed=args.seed)
    elapsed = time.perf_counter() - start
    m = _manifest(
        args,
        argv,
        bounds={"n": args.n, "max_a": bound},
        seed=args.seed,
        jobs=jobs,
        duration_s=elapsed if args.record_time else None,
    )
    _write(emit_reports(reports, m))
    sys.stderr.write(summary_table(reports, bound))
    sys.stderr.write(f"  elapsed {elapsed:.1f}s\n")
    return EXIT_OK


def cmd_polytope(args, argv) -> int:
    t = parse_weights(args.weights)
    config = weight_configuration(t)
    if not is_nondegenerate(config):
        raise DegenerateConfiguration(f"weights {t} give a degenerate configuration")
    poly = convex_hull(config)
    if args.format == "off":
        _write(emit_polytope_off(poly))
    else:
        body = {"manifest": _manifest(args, argv).to_dict(), "polytope": polytope_json(poly)}
        _write(dumps(body).encode())
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    import random

    t = parse_weights(args.weights)
    ok = verify_legendrian(t, trials=args.trials, seed=args.seed)
    rng = random.Random(args.seed)
    samples = [[Fraction(1)] * (t.n - 1)] + [random_params(rng, t.n - 1) for _ in range(args.trials)]
    frames = [
        {"params": fraction_list(s), "frame": [fraction_list(v) for v in tangent_frame(t, s)]}
        for s in samples
    ]
    body = {
        "manifest": _manifest(args, argv, seed=args.seed).to_dict(),
        "weights": list(t.a),
        "legendrian": ok,
        "frames": frames,
    }
    _write(dumps(body).encode())
    return EXIT_OK


def cmd_decompose(args, argv) -> int:
    with open(args.matrix) as fh:
        data = json.load(fh)
    g = RationalMatrix.from_json(data)
    space = space_for(g)
    gp, gm = decompose(g, space)
    if not (in_sp(gp, space) and in_asp(gm, space) and gp + gm == g):
        raise InvariantViolation("decomposition failed its own checks")
    body = {
        "manifest": _manifest(args, argv).to_dict(),
        "g_plus": gp.to_json(),
        "g_minus": gm.to_json(),
    }
    _write(dumps(body).encode())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="legendric", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify a single weight tuple")
    c.add_argument("--weights", required=True, help="comma-separated, e.g. 2,1,1")
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="classify all tuples up to a bound")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--max-a", type=int, default=None, dest="max_a")
    c.add_argument("--jobs", type=int, default=None, help="default: $LEGENDRIC_JOBS or 1")
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--record-time", action="store_true", help="embed wall-clock time in the manifest")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("polytope", help="dump the weight polytope")
    c.add_argument("--weights", required=True)
    c.add_argument("--format", choices=["json", "off"], default="json")
    c.set_defaults(func=cmd_polytope)

    c = sub.add_parser("verify-legendrian", help="Lagrangian check of tangent frames")
    c.add_argument("--weights", required=True)
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_verify)

    s = sub.add_parser("symplectic", help="symplectic linear algebra")
    ssub = s.add_subparsers(dest="action", required=True)
    d = ssub.add_parser("decompose", help="split a matrix into sp and asp parts")
    d.add_argument("--matrix", required=True, help="JSON file of 'p/q' string rows")
    d.set_defaults(func=cmd_decompose)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "trials", 1) < 1:
            raise ValueError("trials must be at least 1")
        return args.func(args, argv)
    except InvariantViolation as exc:
        print(f"legendric: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InvalidTuple, DegenerateConfiguration, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"legendric: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
