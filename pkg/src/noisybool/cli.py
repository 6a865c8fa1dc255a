"""Command-line surface for the verification drivers and plot-data dumps.

Exit codes: 0 success/PASS, 1 FAIL (a checked claim was violated),
2 INCONCLUSIVE (depth cap hit), 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import chordcheck, compression, talpha, verify
from .core import ChannelParam, DomainError, TruthTable, binary_entropy
from .infomeasure import (
    cond_entropy,
    mutual_info,
    posterior_naive,
    sum_single_mi,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


def _fmt(x: float) -> str:
    return f"{x:.17g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _alpha(args) -> ChannelParam:
    try:
        return ChannelParam(args.alpha)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def cmd_mi(args) -> int:
    ch = _alpha(args)
    try:
        b = TruthTable.from_hex(args.table)
    except (DomainError, ValueError) as e:
        print(f"error: bad --table: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.naive:
        import numpy as np

        from .core import binary_entropy_vec

        post = posterior_naive(b, ch)
        h_cond = float(np.mean(binary_entropy_vec(post.values)))
        mi = binary_entropy(b.size / (1 << b.n)) - h_cond
    else:
        h_cond = cond_entropy(b, ch)
        mi = mutual_info(b, ch)
    print(f"mutual_info={_fmt(mi)}")
    print(f"cond_entropy={_fmt(h_cond)}")
    print(f"sum_single_mi={_fmt(sum_single_mi(b, ch))}")
    return EXIT_PASS


def cmd_enumerate(args) -> int:
    if args.output:
        with open(args.output, "w") as fh:
            count = compression.dump_Sn(args.n, fh)
    else:
        count = compression.dump_Sn(args.n, sys.stdout)
    print(f"count={count}", file=sys.stderr)
    return EXIT_PASS


def _write_report(report, outdir: str | None):
    if outdir:
        path = Path(outdir)
        path.mkdir(parents=True, exist_ok=True)
        stamp = time.strftime("%Y%m%dT%H%M%S")
        name = f"{report.conjecture_id}_n{report.n}_{stamp}.json"
        (path / name).write_text(report.to_json() + "\n")
    print(report.summary())


def cmd_verify(args) -> int:
    ch = _alpha(args)
    if args.which == "conj1":
        report = verify.verify_conj1(args.n, [ch.alpha], tol=args.tolerance)
    elif args.which == "conj2":
        report = verify.verify_conj2(args.n, ch, tol=args.tolerance)
    elif args.which == "sum":
        mode = verify.EXHAUSTIVE if args.mode == "exhaustive" else verify.COMPRESSED
        report = verify.verify_sum_inequality(args.n, ch, tol=args.tolerance, mode=mode)
    elif args.which == "harper":
        report = verify.verify_harper(args.n)
    elif args.which == "triple-ce":
        report = verify.verify_triple_counterexample(ch)
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_USAGE
    _write_report(report, args.output)
    return EXIT_PASS if report.outcome == verify.PASS else EXIT_FAIL


def _write_chord_csv(cert, path: Path):
    with path.open("w") as fh:
        fh.write("p_minus,p_plus,nu,depth\n")
        for c in cert.chords:
            fh.write(
                f"{_fmt(c.p_minus.value())},{_fmt(c.p_plus.value())},"
                f"{_fmt(c.nu)},{c.depth}\n"
            )


def cmd_chords(args) -> int:
    if args.alpha_start is not None:
        if args.alpha_end is None or args.alpha_step is None:
            print("error: sweep needs --alpha-start/--alpha-end/--alpha-step",
                  file=sys.stderr)
            return EXIT_USAGE
        try:
            certs = chordcheck.sweep(
                args.alpha_start, args.alpha_end, args.alpha_step,
                depth_cap=args.depth_cap, epsilon=args.epsilon,
            )
        except DomainError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        ch = _alpha(args)
        if not 0.0 < ch.alpha < 0.5:
            print("error: chord check requires alpha in (0, 1/2)", file=sys.stderr)
            return EXIT_USAGE
        certs = [chordcheck.test_inequality(ch, args.depth_cap, args.epsilon)]
    bad = [c for c in certs if c.status != chordcheck.VERIFIED]
    if args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        for cert in certs:
            tag = f"{cert.alpha:.6f}".rstrip("0").rstrip(".").replace(".", "p")
            (outdir / f"chords_alpha{tag}.json").write_text(cert.to_json() + "\n")
            _write_chord_csv(cert, outdir / f"chords_alpha{tag}.csv")
    for cert in certs:
        print(
            f"alpha={cert.alpha:g} status={cert.status} chords={len(cert.chords)} "
            f"max_depth={cert.max_depth_reached}"
        )
    return EXIT_INCONCLUSIVE if bad else EXIT_PASS


def cmd_figure(args) -> int:
    ch = _alpha(args)
    if not 0.0 < ch.alpha < 0.5:
        print("error: figure data requires alpha in (0, 1/2)", file=sys.stderr)
        return EXIT_USAGE
    rows = talpha.curve_rows(args.m, ch)
    lines = ["p,t_alpha,f_times_H"]
    lines += [f"{_fmt(p)},{_fmt(t)},{_fmt(fh)}" for p, t, fh in rows]
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="noisybool", description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=0,
                        help="0 = available parallelism (currently advisory)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mi", help="information measures for one truth table")
    p.add_argument("--table", required=True, help="hex serialization n=<n>:<hex>")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--naive", action="store_true",
                   help="use the brute-force posterior oracle")
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("enumerate", help="dump the 2-compressed family S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification driver")
    p.add_argument("which", choices=["conj1", "conj2", "sum", "harper", "triple-ce"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--tolerance", type=float, default=verify.DEFAULT_TOL)
    p.add_argument("--mode", choices=["exhaustive", "compressed"], default="exhaustive")
    p.add_argument("--output", help="directory for JSON reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chords", help="chord verification of the lex bound")
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--alpha-start", type=float, dest="alpha_start")
    p.add_argument("--alpha-end", type=float, dest="alpha_end")
    p.add_argument("--alpha-step", type=float, dest="alpha_step")
    p.add_argument("--depth-cap", type=int, default=chordcheck.DEFAULT_DEPTH_CAP,
                   dest="depth_cap")
    p.add_argument("--epsilon", type=float, default=chordcheck.DEFAULT_EPSILON)
    p.add_argument("--output", help="directory for certificates and CSV")
    p.set_defaults(func=cmd_chords)

    p = sub.add_parser("figure", help="dump the T_alpha / f*H comparison curve")
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--m", type=int, default=10, help="dyadic sampling depth")
    p.add_argument("--output", help="CSV file path")
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
