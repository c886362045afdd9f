"""Command-line surface: constructions, analytics, and WLP certification.

Exit codes: 0 success, 1 verification failure (a computation ran but a
seeded sample or target check did not verify), 2 usage error (bad flags
or malformed input files).  Identical invocations, seeds included,
produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys

from .constructions import (
    ConstructionError,
    ConstructionReport,
    build_arithmetic_tail,
    build_example2,
    build_example7,
    build_n_maxima,
    build_prop8,
    build_remark9,
    lift_codim,
)
from .fields import is_prime
from .hvectors import (
    count_maxima,
    count_plateau_maxima,
    is_differentiable,
    is_o_sequence,
    is_si_sequence,
    is_unimodal,
    lemma1_predict,
    lift_hvector,
    parse_hvector,
)
from .linalg import DEFAULT_POLICY, EXACT_POLICY, RankPolicy
from .modules import annihilator_component, h_vector, load_system, save_system
from .forms import form_to_str
from .wlp import wlp_certify, wlp_probe

EXAMPLE7_NAME = "example7"


def _policy_from(args) -> RankPolicy:
    if args.exact:
        return EXACT_POLICY
    field = args.field
    if field == "q":
        return DEFAULT_POLICY
    if field.startswith("fp:"):
        p = int(field[3:])
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return RankPolicy(mode="single", prime=p)
    raise ValueError(f"unknown field {field!r} (use q or fp:P)")


def _emit(args, payload: dict) -> None:
    if args.out == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key, value in payload.items():
        if key == "module":
            continue
        if isinstance(value, dict):
            for k2, v2 in value.items():
                print(f"{key}.{k2}: {_fmt(v2)}")
        else:
            print(f"{key}: {_fmt(value)}")


def _fmt(v):
    if isinstance(v, (list, tuple)):
        if all(isinstance(x, int) for x in v):
            return ",".join(str(x) for x in v)
        return json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def _static_report(name, params, system, target, policy) -> ConstructionReport:
    computed = h_vector(system, policy)
    verdict = "pass" if computed == tuple(target) else "fail"
    return ConstructionReport(name, params, None, 0, tuple(target), computed, verdict, system)


def _cmd_construct(args) -> int:
    policy = _policy_from(args)
    which = args.what
    if which == "example2":
        report = build_example2(args.seed, policy)
    elif which == "tail":
        report = build_arithmetic_tail(args.p, args.e, args.seed, policy)
    elif which == "nmaxima":
        report = build_n_maxima(args.n, args.seed, args.e, policy)
    elif which == EXAMPLE7_NAME:
        e = args.e
        system = build_example7(e)
        target = (1, 3) + tuple(i + 3 for i in range(2, e)) + (e + 2,)
        report = _static_report(EXAMPLE7_NAME, {"e": e}, system, target, policy)
    elif which == "prop8":
        report = _static_report(
            "prop8", {}, build_prop8(), (1, 3, 5, 7, 9, 9, 6, 3), policy
        )
    elif which == "remark9":
        report = build_remark9(args.t, args.e, args.seed, args.direction, policy)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(which)

    if args.lift and args.lift != 3:
        lifted = lift_codim(report.system, args.lift)
        lifted_h = h_vector(lifted, policy)
        lifted_target = lift_hvector(report.target_h, args.lift)
        extras = dict(report.extras)
        extras["unlifted_h"] = list(report.computed_h)
        report = ConstructionReport(
            report.construction,
            {**report.params, "lift": args.lift},
            report.seed,
            report.retries,
            lifted_target,
            lifted_h,
            "pass" if lifted_h == lifted_target else "fail",
            lifted,
            extras,
        )

    if args.save_module:
        save_system(report.system, args.save_module)
    _emit(args, report.to_dict())
    return 0 if report.passed() else 1


def _cmd_hvector(args) -> int:
    M = load_system(args.module)
    h = h_vector(M, _policy_from(args))
    _emit(args, {"h": list(h)})
    return 0


def _cmd_annihilator(args) -> int:
    M = load_system(args.module)
    basis = annihilator_component(M, args.degree)
    _emit(
        args,
        {
            "degree": args.degree,
            "dimension": len(basis),
            "basis": [form_to_str(f, letter="x") for f in basis],
        },
    )
    return 0


def _cmd_wlp(args) -> int:
    M = load_system(args.module)
    policy = _policy_from(args)
    if args.mode == "probe":
        cert = wlp_probe(M, args.seed, policy)
    else:
        cert = wlp_certify(M, policy)
    _emit(args, cert.to_dict())
    return 0


def _cmd_predict(args) -> int:
    h = parse_hvector(args.h)
    H = lemma1_predict(h, args.r)
    _emit(args, {"H": list(H)})
    return 0


def _cmd_analyze(args) -> int:
    h = parse_hvector(args.h)
    _emit(
        args,
        {
            "unimodal": is_unimodal(h),
            "maxima": count_maxima(h),
            "plateau_maxima": count_plateau_maxima(h),
            "o_sequence": is_o_sequence(h),
            "differentiable": is_differentiable(h),
            "si_sequence": is_si_sequence(h),
        },
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (default) or fp:P")
    common.add_argument("--out", choices=("text", "json"), default="text")
    common.add_argument(
        "--exact", action="store_true", help="force full rational rank computations"
    )

    parser = argparse.ArgumentParser(
        prog="apolar",
        description="Exact inverse-system toolkit: h-vectors and Lefschetz certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="run a seeded construction")
    csub = construct.add_subparsers(dest="what", required=True)

    def add_construct(name, **kw):
        p = csub.add_parser(name, parents=[common])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--lift", type=int, default=None, help="lift to r variables")
        p.add_argument("--save-module", default=None, help="write the module JSON here")
        p.set_defaults(func=_cmd_construct)
        return p

    add_construct("example2")
    p_tail = add_construct("tail")
    p_tail.add_argument("--p", type=int, required=True)
    p_tail.add_argument("--e", type=int, required=True)
    p_nmax = add_construct("nmaxima")
    p_nmax.add_argument("--n", type=int, required=True)
    p_nmax.add_argument("--e", type=int, default=None)
    p_ex7 = add_construct(EXAMPLE7_NAME)
    p_ex7.add_argument("--e", type=int, required=True)
    add_construct("prop8")
    p_r9 = add_construct("remark9")
    p_r9.add_argument("--t", type=int, required=True)
    p_r9.add_argument("--e", type=int, required=True)
    p_r9.add_argument("--direction", choices=("lex-first", "lex-last"), default=None)

    p_h = sub.add_parser("hvector", parents=[common])
    p_h.add_argument("--module", required=True)
    p_h.set_defaults(func=_cmd_hvector)

    p_ann = sub.add_parser("annihilator", parents=[common])
    p_ann.add_argument("--module", required=True)
    p_ann.add_argument("--degree", type=int, required=True)
    p_ann.set_defaults(func=_cmd_annihilator)

    p_wlp = sub.add_parser("wlp", parents=[common])
    p_wlp.add_argument("mode", choices=("probe", "certify"))
    p_wlp.add_argument("--module", required=True)
    p_wlp.add_argument("--seed", type=int, default=0)
    p_wlp.set_defaults(func=_cmd_wlp)

    p_pred = sub.add_parser("predict", parents=[common])
    p_pred.add_argument("rule", choices=("lemma1",))
    p_pred.add_argument("--h", required=True)
    p_pred.add_argument("--r", type=int, required=True)
    p_pred.set_defaults(func=_cmd_predict)

    p_an = sub.add_parser("analyze", parents=[common])
    p_an.add_argument("--h", required=True)
    p_an.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
