"""Command line front end.

Exit codes follow one contract everywhere: 0 when the command succeeded
and any property it checked held, 1 when a checked property was violated,
2 for usage or input problems (including hypothesis failures, which make
a check inapplicable rather than falsified). JSON payloads carry
``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath as mp

from .errors import DiffRatioError
from .example import (
    DEFAULT_DPS,
    figure_table,
    offset_curve,
    threshold_table,
    transition_check,
)
from .fuzz import FuzzSpec, run_fuzz
from .limits import LimitCase, estimate_limit, parse_generator
from .logops import apply_head_operator, apply_tail_operator_finite, log_shape
from .patterns import (
    Direction,
    PatternKind,
    VerifyStatus,
    classify,
    predict_ratio_pattern,
    verify_ratio_pattern,
)
from .seqcore import (
    APPROX_MODE,
    EXACT,
    EXACT_MODE,
    IntInterval,
    approx,
    load_seq,
    reflect_index,
    seq_to_dict,
)

_DISPLAY = {
    PatternKind.DOWN_UP: "DownUp",
    PatternKind.UP_DOWN: "UpDown",
    PatternKind.MONOTONE: "Monotone",
    PatternKind.OTHER: "Other",
}


def _policy(args):
    if args.mode == "exact":
        return EXACT
    return approx(args.eps)


def _print_json(payload: dict, stream=None) -> None:
    print(json.dumps({"schema": 1, **payload}, indent=2), file=stream or sys.stdout)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _cmd_analyze(args) -> int:
    rep = classify(load_seq(args.seq), _policy(args))
    _print_json(rep.to_json_dict())
    return 0


def _cmd_predict(args) -> int:
    direction = Direction.UP if args.rho == "up" else Direction.DOWN
    kind = predict_ratio_pattern(direction, 1 if args.sign == "pos" else -1)
    if args.output == "json":
        _print_json({"pattern": kind.value, "display": _DISPLAY[kind]})
    else:
        print(_DISPLAY[kind])
    return 0


def _cmd_verify(args) -> int:
    res = verify_ratio_pattern(load_seq(args.f), load_seq(args.g), _policy(args))
    _print_json(res.to_json_dict())
    if res.status == VerifyStatus.CONSISTENT:
        return 0
    if res.status == VerifyStatus.VIOLATED:
        return 1
    return 2


def _cmd_limit(args) -> int:
    mode = EXACT_MODE if args.mode == "exact" else APPROX_MODE
    f_gen = parse_generator(args.f, mode)
    g_gen = parse_generator(args.g, mode)
    case = LimitCase.G_UNBOUNDED if args.case == "i" else LimitCase.BOTH_VANISH
    if args.dps is not None:
        with mp.workdps(args.dps):
            est = estimate_limit(
                f_gen, g_gen, case, args.horizon, _policy(args), args.start
            )
    else:
        est = estimate_limit(
            f_gen, g_gen, case, args.horizon, _policy(args), args.start
        )
    _print_json(est.to_json_dict())
    return 0


def _cmd_op(args) -> int:
    p = load_seq(args.p)
    if args.kind == "t":
        out = reflect_index(p)
        bounds = ["0"] * len(out)
    elif args.kind == "l":
        if args.k is None:
            return _usage_error("--k is required for --kind l")
        out = apply_head_operator(p, args.k)
        bounds = ["0"] * len(out)
    else:
        if args.k is None:
            return _usage_error("--k is required for --kind r")
        window = p.domain
        if args.horizon is not None:
            if args.horizon < window.a:
                return _usage_error("--horizon lies below the sequence start")
            window = IntInterval(window.a, min(window.b, args.horizon))
        # the file's support is all there is: tail sums are exact
        out = apply_tail_operator_finite(p, args.k, window)
        bounds = ["0"] * len(out)
    if args.output == "csv":
        print("n,value,remainder_bound")
        for (n, v), b in zip(out.items(), bounds):
            print(f"{n},{v},{b}")
    else:
        _print_json({"seq": seq_to_dict(out), "remainder_bounds": bounds})
    return 0


def _cmd_logshape(args) -> int:
    verdict = log_shape(load_seq(args.p), _policy(args))
    _print_json(verdict.to_json_dict())
    return 0


def _parse_k_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise ValueError(f"bad --k-list {text!r}; expected comma-separated integers")


def _cmd_example(args) -> int:
    if args.action == "thresholds":
        table = threshold_table(args.max_k, args.dps)
        _print_json(table.to_json_dict())
        return 0
    if args.action == "transition":
        if args.k is None:
            return _usage_error("--k is required for the transition action")
        res = transition_check(args.k, args.K, args.dps)
        _print_json(res.to_json_dict())
        return 0 if res.status == VerifyStatus.CONSISTENT else 1
    if args.alpha is not None:
        table = offset_curve(args.alpha, args.K, args.dps)
    else:
        table = figure_table(_parse_k_list(args.k_list), args.K, args.dps)
    fmt = args.output or args.format
    if fmt == "json":
        _print_json(table.to_json_dict())
    elif fmt == "svg":
        print(table.to_svg(), end="")
    else:
        print(table.to_csv(), end="")
    return 0


def _cmd_fuzz(args) -> int:
    spec = FuzzSpec(args.instances, args.max_len, args.rho, args.sign, args.seed)
    report = run_fuzz(spec)
    _print_json(report.to_json_dict())
    return 0 if report.clean else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffratio",
        description="Monotonicity patterns, limits and shape-preserving "
        "operators for ratios of sequences.",
    )
    parser.add_argument("--mode", choices=("exact", "approx"), default="exact")
    parser.add_argument("--eps", type=float, default=1e-12,
                        help="tolerance for approx-mode comparisons")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", choices=("json", "csv"), default=None)
    sub = parser.add_subparsers(dest="cmd")

    p = sub.add_parser("analyze", help="classify one sequence file")
    p.add_argument("seq")

    p = sub.add_parser("predict", help="pattern of f/g from slope direction "
                       "and sign of g*dg")
    p.add_argument("--rho", choices=("up", "down"), required=True)
    p.add_argument("--sign", choices=("pos", "neg"), required=True)

    p = sub.add_parser("verify", help="check observed f/g pattern against "
                       "the predicted one")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("limit", help="estimate lim f/g with an enclosure")
    p.add_argument("--f", required=True, help="generator, e.g. geom:1/2, "
                   "poly:0,1, factorial, npow_over_e, sums via '+'")
    p.add_argument("--g", required=True)
    p.add_argument("--case", choices=("i", "ii"), required=True,
                   help="i: g unbounded; ii: f and g both vanish")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--dps", type=int, default=None,
                   help="working decimal digits for approx generators")

    p = sub.add_parser("op", help="apply a sum operator or index reflection")
    p.add_argument("--kind", choices=("r", "l", "t"), required=True,
                   help="r: tail sums; l: head sums; t: index reflection")
    p.add_argument("--k", type=int, default=None, help="operator power")
    p.add_argument("--horizon", type=int, default=None,
                   help="cap the output window for tail sums")
    p.add_argument("p")

    p = sub.add_parser("logshape", help="log-convexity/concavity verdict")
    p.add_argument("p")

    p = sub.add_parser("example", help="factorial family: figure data, "
                       "thresholds, transition checks")
    p.add_argument("action", nargs="?", default="figure",
                   choices=("figure", "thresholds", "transition"))
    p.add_argument("--k-list", dest="k_list", default="0,1,3,5,7")
    p.add_argument("--K", type=int, default=30)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--alpha", default=None,
                   help="plot one curve at this offset instead of the k list")
    p.add_argument("--dps", type=int, default=DEFAULT_DPS)
    p.add_argument("--max-k", dest="max_k", type=int, default=12)
    p.add_argument("--k", type=int, default=None,
                   help="threshold index for the transition action")

    p = sub.add_parser("fuzz", help="randomized search for counterexamples")
    p.add_argument("--instances", type=int, default=1000)
    p.add_argument("--max-len", dest="max_len", type=int, default=40)
    p.add_argument("--rho", choices=("up", "down", "either"), default="either")
    p.add_argument("--sign", choices=("pos", "neg", "either"), default="either")

    return parser


_HANDLERS = {
    "analyze": _cmd_analyze,
    "predict": _cmd_predict,
    "verify": _cmd_verify,
    "limit": _cmd_limit,
    "op": _cmd_op,
    "logshape": _cmd_logshape,
    "example": _cmd_example,
    "fuzz": _cmd_fuzz,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.cmd is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _HANDLERS[args.cmd](args)
    except DiffRatioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
