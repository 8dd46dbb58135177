"""
Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 numeric error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import bounds, gdof, regions, verify
from .channel import (AntennaConfig, ChannelError, LinkGains, ScalingExponents,
                      db_to_linear, fig3_channel, load_channel, reciprocal)
from .hermitian_core import NumericError

__all__ = ["main", "build_parser", "RunConfig"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    out: Path = Path(".")
    seed: int = 0
    samples: int | None = None
    tol: float = regions.CONTAIN_TOL
    db_gains: bool = False

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        inputs = [args.channel_file] if getattr(args, "channel_file", None) else []
        samples = getattr(args, "sample_q", None) or getattr(args, "trials", None)
        cfg = cls(args.command, inputs, args.out, args.seed, samples, args.tol,
                  args.db_gains)
        if cfg.out.exists() and not cfg.out.is_dir():
            raise UsageError(f"--out {cfg.out} is not a directory")
        if not cfg.tol >= 0:
            raise UsageError("--tol must be >= 0")
        return cfg


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--out", type=Path, default=Path("."),
                   help="output directory (default: current directory)")
    p.add_argument("--tol", type=float, default=regions.CONTAIN_TOL,
                   help="containment tolerance in bits (default 1e-9)")
    p.add_argument("--db-gains", action="store_true",
                   help="interpret channel-file gains as dB instead of linear")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="fbmimo",
        description="Capacity-region bounds and GDoF for the two-user MIMO "
                    "interference channel with perfect feedback.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", parents=[common],
                       help="inner/outer bounds and gap report for a channel file")
    p.add_argument("channel_file", type=Path)
    p.add_argument("--sample-q", type=int, default=None, metavar="N",
                   help="also write hull.csv over N sampled cross-covariances")
    p.add_argument("--inner-mode", choices=("per-constraint", "blanket"),
                   default="per-constraint")

    p = sub.add_parser("gdof", parents=[common], help="GDoF region constraints")
    p.add_argument("--antennas", type=int, nargs=4, required=True,
                   metavar=("M1", "N1", "M2", "N2"))
    p.add_argument("--alpha", type=float, nargs=4, required=True,
                   metavar=("A11", "A12", "A21", "A22"))

    p = sub.add_parser("gdof-curve", parents=[common],
                       help="symmetric GDoF curves with and without feedback")
    p.add_argument("--antennas", type=int, nargs=2, required=True, metavar=("M", "N"))
    p.add_argument("--alpha-max", type=float, default=3.0)
    p.add_argument("--step", type=float, default=0.1)

    p = sub.add_parser("verify", parents=[common], help="run the Monte Carlo property suite")
    p.add_argument("--trials", type=int, default=None,
                   help="override the per-check trial counts")

    p = sub.add_parser("reproduce", parents=[common], help="emit data for a figure")
    p.add_argument("figure", choices=("fig2", "fig3", "fig4", "fig5"))
    return parser


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _load(path: Path, db: bool):
    ch = load_channel(path)
    if db:
        ch = ch.with_gains(LinkGains(*(db_to_linear(g) for g in ch.gains.as_tuple())))
    return ch


def _region_files(ch, out: Path, prefix: str, mode: str = "per-constraint"):
    _write(out / f"{prefix}ro0.csv", regions.to_csv(bounds.ro0_region(ch)))
    _write(out / f"{prefix}inner.csv", regions.to_csv(bounds.inner_region(ch, mode)))
    _write(out / f"{prefix}outer.csv", regions.to_csv(bounds.outer_region(ch)))


def cmd_region(args) -> int:
    ch = _load(args.channel_file, args.db_gains)
    out = args.out
    _region_files(ch, out, "", args.inner_mode)
    report = bounds.gap_certificate(ch, args.inner_mode, args.tol)
    _write(out / "gap_report.json", report.to_json() + "\n")
    if args.sample_q is not None:
        if args.sample_q < 0:
            raise UsageError("--sample-q must be >= 0")
        hull = bounds.sampled_hull(ch, args.sample_q, args.seed)
        _write(out / "hull.csv", regions.to_csv(hull))
    print(f"status {report.status}; max gap {report.max_gap_bits!r} bits "
          f"(limit {report.gap_limit_bits!r})")
    return EXIT_OK if report.passed else EXIT_FAIL


def _describe(c1: float, c2: float, rhs: float) -> str:
    terms = []
    if c1:
        terms.append(f"{c1!r}*d1")
    if c2:
        terms.append(f"{c2!r}*d2")
    return " + ".join(terms) + f" <= {rhs!r}"


def cmd_gdof(args) -> int:
    cfg = AntennaConfig(*args.antennas)
    a = ScalingExponents(*args.alpha)
    region = gdof.gdof_region(cfg, a)
    for k, (c1, c2, rhs) in enumerate(region.constraints, 1):
        print(f"c{k}: {_describe(c1, c2, rhs)}")
    print(f"symmetric point: {gdof.symmetric_point(region)!r}")
    lines = ["d1,d2\n"] + [f"{float(x)!r},{float(y)!r}\n" for x, y in region.vertices()]
    _write(args.out / "gdof_region.csv", "".join(lines))
    return EXIT_OK


def curve_csv(m: int, n: int, alpha_max: float, step: float) -> str:
    rows = ["alpha,gdof_pf,gdof_nf\n"]
    for al in gdof.curve_grid(m, n, alpha_max, step):
        rows.append(f"{al!r},{gdof.symmetric_gdof_pf(m, n, al)!r},"
                    f"{gdof.symmetric_gdof_nf(m, n, al)!r}\n")
    return "".join(rows)


def cmd_gdof_curve(args) -> int:
    m, n = args.antennas
    if m < 1 or n < 1:
        raise UsageError("antenna counts must be >= 1")
    if not args.step > 0:
        raise UsageError("--step must be positive")
    _write(args.out / "curve.csv", curve_csv(m, n, args.alpha_max, args.step))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be >= 1")
    verdicts = verify.run_all(args.seed, args.trials)
    sys.stdout.write(verify.verdicts_to_jsonl(verdicts))
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def _reproduce_fig2(ch, out: Path):
    _region_files(ch, out, "fig2_")
    n1, n2 = ch.config.n1, ch.config.n2
    offsets = {"outer": [n1, n2], "inner": [n1 + n2, n1 + n2]}
    _write(out / "fig2_offsets.json", json.dumps(offsets, indent=2) + "\n")


def _reproduce_fig4(ch, out: Path) -> bool:
    rec = reciprocal(ch)
    _region_files(ch, out, "fig4_original_")
    _region_files(rec, out, "fig4_reciprocal_")
    a = bounds.ro0_region(ch).as_tuple()
    b = bounds.ro0_region(rec).as_tuple()
    worst = max(abs(x - y) for x, y in zip(a, b))
    print(f"reciprocal R_o(0) differs from original by {worst!r} bits")
    return worst <= 1e-8


def cmd_reproduce(args) -> int:
    out = args.out
    ok = True
    if args.figure == "fig5":
        for m, n in ((3, 2), (4, 2)):
            _write(out / f"fig5_M{m}_N{n}.csv", curve_csv(m, n, 4.0, 0.1))
        return EXIT_OK
    ch = fig3_channel()
    if args.figure == "fig2":
        _reproduce_fig2(ch, out)
    elif args.figure == "fig3":
        _region_files(ch, out, "fig3_")
        print("notice: no-feedback bounds are not computed; only the feedback "
              "bounds are emitted", file=sys.stderr)
    else:
        ok = _reproduce_fig4(ch, out)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "region": cmd_region,
    "gdof": cmd_gdof,
    "gdof-curve": cmd_gdof_curve,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        RunConfig.from_args(args)
        return COMMANDS[args.command](args)
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ChannelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
