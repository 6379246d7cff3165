"""Command line front end: ``pairmix <command> --config FILE ...``.

Exit codes: 0 affirmative or complete, 1 refuted or violations found,
2 inconclusive or only bounded evidence, 64 invalid configuration or input.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import conditions as cond
from . import fourier as fr
from . import report as rp
from .config import config_digest, context_from_config, load_config
from .core import PairContext, Side
from .errors import PairmixError

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_CONFIG = 0, 1, 2, 64
VERDICT_EXIT = {"CertifiedFinite": EXIT_OK, "RefutedInfinite": EXIT_REFUTED, "BoundedVerified": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def parse_operator(ctx: PairContext, terms: list[str]) -> fr.GroupOperator:
    """Terms look like ``b^3``, ``2*b``, or ``1/2+i*a b^-1``; the coefficient defaults to 1."""
    out = []
    for term in terms:
        coeff, sep, w = term.partition("*")
        if not sep:
            coeff, w = "1", term
        try:
            c = fr.ComplexRational.parse(coeff.strip())
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out.append((ctx.canonicalize(w), c))
    return fr.GroupOperator(out)


def _words(ctx: PairContext, words: list[str]):
    return [ctx.canonicalize(w) for w in words]


def cmd_reduce(ctx, args):
    x = ctx.canonicalize(args.word)
    return {"input": args.word, "normal_form": rp.word(ctx, x), "in_gamma0": ctx.is_in_gamma0(x)}, EXIT_OK


def cmd_ball(ctx, args):
    return rp.ball_payload(ctx, ctx.ball(Side(args.side), args.radius)), EXIT_OK


def cmd_exc_set(ctx, args):
    r = cond.exceptional_set(ctx, ctx.canonicalize(args.g), ctx.canonicalize(args.h), args.radius)
    return rp.exceptional_set_payload(ctx, r), VERDICT_EXIT[r.verdict.kind]


def cmd_check_ss(ctx, args):
    w = cond.ss_witness(ctx, _words(ctx, args.set), args.radius, args.exclude_identity)
    found = not isinstance(w, cond.NotFound)
    return rp.witness_payload(ctx, w), EXIT_OK if found else EXIT_INCONCLUSIVE


def cmd_check_st(ctx, args):
    r = cond.st_check(ctx, _words(ctx, args.set), args.radius)
    return rp.st_payload(ctx, r), VERDICT_EXIT[r.verdict.kind]


def cmd_check_malnormal(ctx, args):
    r = cond.malnormal_scan(ctx, args.g_radius, args.gamma_radius)
    return rp.malnormal_payload(ctx, r), EXIT_OK if r.ok else EXIT_REFUTED


def cmd_certify(ctx, args):
    results = cond.certify(ctx, args.radius)
    statuses = {r.status for r in results}
    if "Refuted" in statuses:
        code = EXIT_REFUTED
    elif statuses == {"Certified"}:
        code = EXIT_OK
    else:
        code = EXIT_INCONCLUSIVE
    return {"certificates": [{"name": r.name, "status": r.status, "detail": r.detail} for r in results]}, code


def cmd_defect(ctx, args):
    x, y = parse_operator(ctx, args.x), parse_operator(ctx, args.y)
    v = parse_operator(ctx, args.v)
    d = fr.mixing_defect(ctx, x, v, y)
    return {"x": x.describe(ctx), "v": v.describe(ctx), "y": y.describe(ctx),
            "defect_sq": rp.rational_out(d), "defect_decimal": fr.decimal_rendering(d)}, EXIT_OK


def cmd_sm_curve(ctx, args):
    c = fr.strong_mixing_curve(ctx, parse_operator(ctx, args.x), parse_operator(ctx, args.y), args.radius)
    return c, EXIT_OK


def cmd_ah_curve(ctx, args):
    c = fr.ah_curve(ctx, parse_operator(ctx, args.x), ctx.canonicalize(args.t), parse_operator(ctx, args.y), args.kmax)
    return c, EXIT_OK


def cmd_decay(ctx, args):
    x = parse_operator(ctx, args.x)
    S = _words(ctx, args.set) if args.set else list(ctx.ball(Side.GAMMA0, args.radius))
    vals = fr.coefficient_decay(ctx, x, S)
    return {"x": x.describe(ctx), "S": [rp.word(ctx, s) for s in S],
            "coefficient_sq": [rp.rational_out(v) for v in vals]}, EXIT_OK


COMMANDS = {
    "reduce": cmd_reduce,
    "ball": cmd_ball,
    "exc-set": cmd_exc_set,
    "check-ss": cmd_check_ss,
    "check-st": cmd_check_st,
    "check-malnormal": cmd_check_malnormal,
    "certify": cmd_certify,
    "defect": cmd_defect,
    "sm-curve": cmd_sm_curve,
    "ah-curve": cmd_ah_curve,
    "decay": cmd_decay,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="pair config file, or the name of a shipped config")
    common.add_argument("--output", help="write the report here instead of standard output")
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--csv", action="store_true", help="emit the defect curve as CSV")

    p = _Parser(prog="pairmix", description="Exact checks of mixing conditions for group/subgroup pairs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("reduce", parents=[common], help="normal form of a word")
    s.add_argument("word")
    s = sub.add_parser("ball", parents=[common], help="enumerate a ball")
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--side", default=Side.WHOLE.value, choices=[x.value for x in Side])
    s = sub.add_parser("exc-set", parents=[common], help="exceptional set E(g, h)")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--radius", type=int, required=True)
    s = sub.add_parser("check-ss", parents=[common], help="search for an (SS) witness")
    s.add_argument("--set", nargs="+", required=True, metavar="WORD")
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--exclude-identity", action="store_true")
    s = sub.add_parser("check-st", parents=[common], help="(ST) on a finite set")
    s.add_argument("--set", nargs="+", required=True, metavar="WORD")
    s.add_argument("--radius", type=int, required=True)
    s = sub.add_parser("check-malnormal", parents=[common], help="scan for malnormality violations")
    s.add_argument("--g-radius", type=int, default=4)
    s.add_argument("--gamma-radius", type=int, default=10)
    s = sub.add_parser("certify", parents=[common], help="run the structural certificates")
    s.add_argument("--radius", type=int, default=4)
    s = sub.add_parser("defect", parents=[common], help="one squared mixing defect")
    for flag in ("--x", "--v", "--y"):
        s.add_argument(flag, nargs="+", required=True, metavar="TERM")
    s = sub.add_parser("sm-curve", parents=[common, curve], help="strong mixing defect curve")
    s.add_argument("--x", nargs="+", required=True, metavar="TERM")
    s.add_argument("--y", nargs="+", required=True, metavar="TERM")
    s.add_argument("--radius", type=int, default=4)
    s = sub.add_parser("ah-curve", parents=[common, curve], help="defects along powers of t")
    s.add_argument("--x", nargs="+", required=True, metavar="TERM")
    s.add_argument("--y", nargs="+", required=True, metavar="TERM")
    s.add_argument("--t", required=True)
    s.add_argument("--kmax", type=int, default=10)
    s = sub.add_parser("decay", parents=[common], help="coefficients |x(s^-1)|^2 along a sequence")
    s.add_argument("--x", nargs="+", required=True, metavar="TERM")
    s.add_argument("--set", nargs="+", metavar="WORD")
    s.add_argument("--radius", type=int, default=4)
    return p


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(output)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, target)


def run(argv: list[str] | None = None, timestamp: str | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        ctx = context_from_config(cfg)
        result, code = COMMANDS[args.command](ctx, args)
    except (PairmixError, UsageError, ValueError) as exc:
        print(f"pairmix {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if isinstance(result, fr.DefectCurve):
        if getattr(args, "csv", False):
            _emit(rp.curve_csv(ctx, result), args.output)
            return code
        result = rp.curve_payload(ctx, result)
    env = rp.envelope(args.command, config_digest(cfg), {"exit_code": code, **result}, timestamp)
    _emit(rp.render(env), args.output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
