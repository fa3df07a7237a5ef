"""Command-line front end.

Exit codes: 0 pass, 1 verification failure (or non-member), 2 usage or
parse error, including an exceeded support-size guard.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import dist as D
from . import geometry as G
from . import harness
from .rs_code import DEFAULT_GUARD, GuardExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = G.DEFAULT_TOL
    guard: int = DEFAULT_GUARD
    seed: int = 0
    tsv: bool = False

    def __post_init__(self):
        if not self.tolerance >= 0:
            raise ValueError("--tol must be non-negative")
        if self.guard < 1:
            raise ValueError("--guard must be at least 1")
        if self.seed < 0:
            raise ValueError("--seed must be non-negative")

    @property
    def sep(self) -> str:
        return "\t" if self.tsv else " "


class UsageError(Exception):
    pass


def fmt_num(x: float) -> str:
    """12 significant digits, ``-0`` folded to ``0``."""
    return f"{float(x) + 0.0:.12g}"


def fmt_vec(values, cfg: CliConfig) -> str:
    return cfg.sep.join(fmt_num(v) for v in values)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit_report(rep: harness.Report, cfg: CliConfig, out) -> None:
    if cfg.tsv:
        for c in rep.checks:
            print(cfg.sep.join(["PASS" if c.passed else "FAIL", c.name, c.detail]), file=out)
        print(cfg.sep.join(["PASS" if rep.passed else "FAIL", "overall", ""]), file=out)
    else:
        print(rep.render(), file=out)


def cmd_entropy(args, cfg, out) -> int:
    d = D.parse_distribution(_read(args.file))
    H = D.entropy_vector(d)
    print(f"n{cfg.sep}{H.n}", file=out)
    for mask, v in H.items():
        print(f"{mask}{cfg.sep}{D.format_number(v)}", file=out)
    return EXIT_OK


def cmd_check(args, cfg, out) -> int:
    H = D.parse_entropy_vector(_read(args.file))
    rep = G.shannon_check_full(H, cfg.tolerance)
    for v in rep.violations:
        print(cfg.sep.join([v.kind, str(v.alpha), str(v.beta), fmt_num(v.slack)]), file=out)
    print("PASS" if rep.passed else f"FAIL{cfg.sep}{len(rep.violations)} violation(s)", file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_average(args, cfg, out) -> int:
    H = D.parse_entropy_vector(_read(args.file))
    print(fmt_vec(G.average_map(H), cfg), file=out)
    return EXIT_OK


def cmd_diff(args, cfg, out) -> int:
    print(fmt_vec(G.second_diff(args.values), cfg), file=out)
    return EXIT_OK


def cmd_invdiff(args, cfg, out) -> int:
    print(fmt_vec(G.second_diff_inv(args.values), cfg), file=out)
    return EXIT_OK


def cmd_member(args, cfg, out) -> int:
    verdict = G.phi_membership(args.values, cfg.tolerance)
    dec = G.decompose(args.values, cfg.tolerance)
    print("MEMBER" if verdict.member else "NOT-MEMBER", file=out)
    print(f"lambda{cfg.sep}{fmt_vec(dec.coefficients, cfg)}", file=out)
    if not verdict.member:
        print(f"violated{cfg.sep}" + cfg.sep.join(map(str, verdict.violations)), file=out)
    return EXIT_OK if verdict.member else EXIT_FAIL


def cmd_ray(args, cfg, out) -> int:
    d, _ = harness.extreme_ray_distribution(args.n, args.k, cfg.guard)
    out.write(D.format_distribution(d))
    return EXIT_OK


def cmd_verify_ray(args, cfg, out) -> int:
    rep = harness.verify_ray(args.n, args.k, cfg.tolerance, cfg.guard)
    _emit_report(rep, cfg, out)
    print(f"average{cfg.sep}{fmt_vec(rep.average, cfg)}", file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_achieve(args, cfg, out) -> int:
    if len(args.c) > args.n:
        raise UsageError(f"expected at most {args.n} multiplicities, got {len(args.c)}")
    # Omitted trailing multiplicities are zero.
    c = list(args.c) + [0] * (args.n - len(args.c))
    d, rep = harness.achieve(args.n, c, cfg.guard)
    _emit_report(rep, cfg, out)
    print(f"average{cfg.sep}{fmt_vec(rep.average, cfg)}", file=out)
    print(f"support{cfg.sep}{d.size}", file=out)
    if args.dist_out:
        with open(args.dist_out, "w") as fh:
            fh.write(D.format_distribution(d))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_theorem(args, cfg, out) -> int:
    rep = harness.verify_theorem(args.n, args.samples, cfg.seed, cfg.tolerance, cfg.guard)
    _emit_report(rep, cfg, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _common_flags(p: argparse.ArgumentParser) -> None:
    # SUPPRESS lets the flags appear before or after the subcommand.
    S = argparse.SUPPRESS
    p.add_argument("--tol", type=float, default=S, help="inequality tolerance (default 1e-9)")
    p.add_argument("--guard", type=int, default=S, help="max support size (default 10^6)")
    p.add_argument("--seed", type=int, default=S, help="sampling seed (default 0)")
    p.add_argument("--tsv", action="store_true", default=S, help="tab-separated output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avgentropy",
        description="Entropy functions, averaged entropy regions and RS extreme rays.",
    )
    _common_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        _common_flags(p)
        p.set_defaults(func=func)
        return p

    add("entropy", cmd_entropy, "entropy vector of a distribution file").add_argument(
        "file", help="distribution file, or - for stdin")
    add("check", cmd_check, "Shannon-type inequality check of an entropy-vector file").add_argument(
        "file", help="entropy-vector file, or - for stdin")
    add("average", cmd_average, "average an entropy-vector file by subset size").add_argument(
        "file", help="entropy-vector file, or - for stdin")
    add("diff", cmd_diff, "second-order difference of h").add_argument(
        "values", nargs="+", type=float, metavar="H")
    add("invdiff", cmd_invdiff, "invert the second-order difference").add_argument(
        "values", nargs="+", type=float, metavar="G")
    add("member", cmd_member, "membership of h in the averaged Shannon region").add_argument(
        "values", nargs="+", type=float, metavar="H")

    p = add("ray", cmd_ray, "print the (n,k) RS extreme-ray distribution")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p = add("verify-ray", cmd_verify_ray, "verify the (n,k) extreme ray")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p = add("achieve", cmd_achieve, "realise an integer combination of rays")
    p.add_argument("n", type=int)
    p.add_argument("c", type=int, nargs="+", metavar="C",
                   help="multiplicity of ray k=1..n; missing trailing values are 0")
    p.add_argument("--dist-out", metavar="FILE", help="also write the distribution here")
    p = add("verify-theorem", cmd_verify_theorem, "inward/ray/outward sweeps")
    p.add_argument("n", type=int)
    p.add_argument("samples", type=int)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = CliConfig(
            tolerance=getattr(args, "tol", G.DEFAULT_TOL),
            guard=getattr(args, "guard", DEFAULT_GUARD),
            seed=getattr(args, "seed", 0),
            tsv=getattr(args, "tsv", False),
        )
        return args.func(args, cfg, out)
    except GuardExceeded as exc:
        print(f"error: {exc}; raise --guard to allow larger enumerations", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, D.FormatError, D.DistributionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
