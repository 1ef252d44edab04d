"""``qequiv`` command line.

Exit codes: 0 success, 1 usage / parse / validation error, 2 a theorem
failed although its hypotheses held (a library bug).
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import distribution as dist_mod
from . import transform as map_mod
from .dataset import CsvError, earthquake_demo, load_earthquakes
from .diagnostics import (
    DropHypothesis,
    TheoremId,
    check_decreasing_equivariance,
    check_left_equivariance,
    check_right_equivariance,
    check_sandwich,
    check_symmetry,
    search_counterexamples,
)
from .numeric import format_approx, format_rational, parse_rational
from .quantile import left_quantile, right_quantile

EXIT_OK, EXIT_USAGE, EXIT_BUG = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _resolve(name: str) -> Path:
    """A path on disk, or else the bundled fixture with that file name."""
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files("qequiv").joinpath("data", path.name)
    if bundled.is_file():
        return Path(str(bundled))
    raise UsageError(f"no such file: {name}")


def _load_dist(name: str):
    try:
        return dist_mod.load(_resolve(name))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{name}: not valid JSON ({exc})") from None


def _load_map(name: str):
    try:
        return map_mod.load(_resolve(name))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{name}: not valid JSON ({exc})") from None


def _level(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"bad probability {text!r}: {exc}") from None


def cmd_quantile(args, out) -> int:
    d = _load_dist(args.dist)
    p = _level(args.p)
    values = []
    if args.side in ("left", "both"):
        values.append(("lq", left_quantile(d, p)))
    if args.side in ("right", "both"):
        values.append(("rq", right_quantile(d, p)))
    print(" ".join(f"{k}={format_rational(v)}" for k, v in values), file=out)
    print(" ".join(f"{k}_decimal={format_approx(v)}" for k, v in values), file=out)
    return EXIT_OK


def cmd_pushforward(args, out) -> int:
    y = map_mod.pushforward(_load_dist(args.dist), _load_map(args.map))
    text = json.dumps(dist_mod.to_document(y), indent=2) + "\n"
    if args.out in (None, "-"):
        out.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return EXIT_OK


_CHECKS = {
    TheoremId.LEFT_EQUIVARIANCE.value: lambda d, m, p: [check_left_equivariance(d, m, p)],
    TheoremId.RIGHT_EQUIVARIANCE.value: lambda d, m, p: [check_right_equivariance(d, m, p)],
    TheoremId.DECREASING_A.value: lambda d, m, p: [check_decreasing_equivariance(d, m, p, "a")],
    TheoremId.DECREASING_B.value: lambda d, m, p: [check_decreasing_equivariance(d, m, p, "b")],
    TheoremId.SYMMETRY.value: lambda d, m, p: [check_symmetry(d, p)],
    "sandwich": lambda d, m, p: list(check_sandwich(d, m, p)),
    TheoremId.SANDWICH_LQ.value: lambda d, m, p: [check_sandwich(d, m, p)[0]],
    TheoremId.SANDWICH_RQ.value: lambda d, m, p: [check_sandwich(d, m, p)[1]],
}


def cmd_check(args, out) -> int:
    d = _load_dist(args.dist)
    p = _level(args.p)
    if not 0 <= p <= 1:
        raise UsageError(f"probability {args.p} outside [0, 1]")
    if args.theorem != TheoremId.SYMMETRY.value and args.map is None:
        raise UsageError(f"--map is required for {args.theorem}")
    phi = _load_map(args.map) if args.map else None
    reports = _CHECKS[args.theorem](d, phi, p)
    for rep in reports:
        print(rep.line(), file=out)
    return EXIT_BUG if any(r.is_violation for r in reports) else EXIT_OK


def _compact(doc) -> str:
    return json.dumps(doc, separators=(",", ":"))


def cmd_search(args, out) -> int:
    if args.trials <= 0:
        raise UsageError("--trials must be positive")
    reports = search_counterexamples(args.seed, args.trials, args.drop)
    for rep in reports:
        print(rep.line(), file=out)
        c = rep.case
        witness = f"  witness p={format_rational(c.p)} dist={_compact(dist_mod.to_document(c.dist))}"
        if c.phi is not None:
            witness += f" map={_compact(map_mod.to_document(c.phi))}"
        print(witness, file=out)
    print(f"found {len(reports)} violation(s) in {args.trials} trial(s)", file=out)
    if args.drop == DropHypothesis.NONE.value and reports:
        return EXIT_BUG
    return EXIT_OK


def cmd_demo(args, out) -> int:
    if args.precision < 1:
        raise UsageError("--precision must be >= 1")
    records = load_earthquakes(args.csv)
    report = earthquake_demo(records, args.precision)
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qequiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("quantile", help="left/right quantiles of a distribution file")
    q.add_argument("--dist", required=True)
    q.add_argument("--p", required=True, help="level, e.g. 1/2 or 0.5")
    q.add_argument("--side", choices=("left", "right", "both"), default="both")
    q.set_defaults(func=cmd_quantile)

    pf = sub.add_parser("pushforward", help="exact law of phi(X)")
    pf.add_argument("--dist", required=True)
    pf.add_argument("--map", required=True)
    pf.add_argument("--out", default="-")
    pf.set_defaults(func=cmd_pushforward)

    c = sub.add_parser("check", help="evaluate one theorem on given inputs")
    c.add_argument("--theorem", required=True, choices=sorted(_CHECKS))
    c.add_argument("--dist", required=True)
    c.add_argument("--map")
    c.add_argument("--p", required=True)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="seeded random counterexample search")
    s.add_argument("--drop", choices=[h.value for h in DropHypothesis], default="none")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    dm = sub.add_parser("demo", help="worked examples")
    dm.add_argument("name", choices=("earthquake",))
    dm.add_argument("--csv")
    dm.add_argument("--precision", type=int, default=7)
    dm.set_defaults(func=cmd_demo)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (dist_mod.DistributionError, map_mod.MapError) as exc:
        print(f"error: {exc}", file=err)
        for v in exc.violations:
            print(f"  - {v}", file=err)
        return EXIT_USAGE
    except (CsvError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
