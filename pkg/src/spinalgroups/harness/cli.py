"""Command-line entry point: ``spinal <command> <config> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .. import permgrp as P
from .. import tree as T
from ..errors import ReductionFailed, SpinalError
from ..spinal import (
    in_family_E, is_exceptional_G, is_torsion, reduce_commutator_length, sections, theta1, theta2,
)
from ..zmodp import normalize_defining_tuple
from . import config as C
from .report import SuiteReport
from .suites import SUITES, Caps, gamma3_sections_contained, run_suite
from .wordsyntax import parse_word


def _emit(args, data: dict, text: str) -> None:
    if args.format == "machine":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _config(args) -> C.GroupConfig:
    rows = [C.parse_row(r) for r in args.row] if args.row else None
    return C.load(args.config, p=args.p, rows=rows, label=args.label)


def _word(args, G):
    return parse_word(args.word, G.p, G.r)


def cmd_info(args, cfg) -> int:
    G = cfg.group()
    data = {
        "group": cfg.name, "p": G.p, "r": G.r, "rows": [list(r) for r in G.E.rows],
        "torsion": is_torsion(G.E), "family_E": in_family_E(G.E),
        "exceptional": is_exceptional_G(G.E), "n_star": G.n_star,
        "normalized": G.normalized,
    }
    text = "\n".join(f"{k:12} {v}" for k, v in data.items())
    _emit(args, data, text)
    return 0


def cmd_eval(args, cfg) -> int:
    G = cfg.group()
    w = _word(args, G)
    f = T.eval_word(G, w, args.depth)
    data = {"word": str(w), "depth": args.depth, "portrait": T.dump(f), "order": T.order(f)}
    _emit(args, data, f"{w}\n{T.dump(f)}\norder {T.order(f)}")
    return 0


def cmd_sections(args, cfg) -> int:
    G = cfg.group()
    w = _word(args, G)
    secs = [str(s) for s in sections(G, w)]
    _emit(args, {"word": str(w), "sections": secs},
          "\n".join(f"{x + 1}: {s}" for x, s in enumerate(secs)))
    return 0


def cmd_theta(args, cfg) -> int:
    G = cfg.group()
    w = _word(args, G)
    out = (theta1 if args.map == 1 else theta2)(G, w)
    _emit(args, {"word": str(w), "map": args.map, "result": str(out), "length": out.length},
          f"{out}  (length {out.length})")
    return 0


def cmd_reduce(args, cfg) -> int:
    G = cfg.group()
    w = _word(args, G)
    res, trace = reduce_commutator_length(G, w, args.cap, allow_family_e=args.allow_family_e)
    data = {"word": str(w), "result": str(res), "length": res.length, "trace": trace}
    _emit(args, data, f"{' '.join(trace) or '(no steps)'}\n{res}  (length {res.length})")
    return 0


def cmd_normalize(args, cfg) -> int:
    E_new, w = normalize_defining_tuple(cfg.group().E)
    data = {
        "rows": [list(r) for r in E_new.rows], "power": w.power, "position": w.position,
        "multiplier": w.multiplier, "matrix": [list(r) for r in w.matrix],
        "root_permutation": list(w.root_permutation()),
    }
    text = "\n".join(
        [" ".join(map(str, r)) for r in E_new.rows]
        + [f"power {w.power}, position {w.position}, multiplier {w.multiplier}",
           "matrix " + "; ".join(" ".join(map(str, r)) for r in w.matrix)]
    )
    _emit(args, data, text)
    return 0


def cmd_quotient(args, cfg) -> int:
    G = cfg.group()
    n = args.depth
    Q = P.quotient(G, n)
    data = {"group": cfg.name, "depth": n, "report": args.report, "order": Q.order()}
    status = 0
    if args.report == "orders":
        data["orders"] = [P.quotient(G, k).order() for k in range(1, n + 1)]
    elif args.report == "abelianization":
        data["index"] = P.index(Q, P.derived_subgroup(Q))
    elif args.report == "gamma3":
        data["index"] = P.index(Q, P.gamma3(Q))
        if n >= 2:
            ok, _ = gamma3_sections_contained(G, n)
            data["sections_contained"] = ok
            status = 0 if ok else 1
    else:
        data["index"] = P.index(Q, P.rigid_level_stabilizer(Q, 1, G.p))
    _emit(args, data, "\n".join(f"{k:18} {v}" for k, v in data.items()))
    return status


def cmd_verify(args, cfg) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    caps = Caps(step_cap=args.cap) if args.cap is not None else Caps()
    reports: list[SuiteReport] = [run_suite(n, cfg, args.seed, caps) for n in names]
    if args.format == "machine":
        for rep in reports:
            sys.stdout.write(rep.to_machine())
    else:
        for rep in reports:
            sys.stdout.write(rep.to_text())
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinal", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", nargs="?", help=f"JSON file or one of {', '.join(C.BUILTIN)}")
    common.add_argument("--p", type=int, help="prime, for an inline config")
    common.add_argument("--row", action="append", help="defining row such as 1,2 (repeatable)")
    common.add_argument("--label", default="")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="torsion, family and normal-form facts")
    for name, helptext in (("eval", "portrait of a word"), ("sections", "first-level sections"),
                           ("theta", "apply one theta map"), ("reduce", "contract a commutator word")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("word")
        if name == "eval":
            sp.add_argument("--depth", type=int, default=2)
        if name == "theta":
            sp.add_argument("--map", type=int, choices=(1, 2), default=1)
        if name == "reduce":
            sp.add_argument("--cap", type=int, default=12)
            sp.add_argument("--allow-family-e", action="store_true")
    sub.add_parser("normalize", parents=[common], help="normal form and coordinate change")
    sp = sub.add_parser("quotient", parents=[common], help="congruence quotient facts")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--report", choices=("orders", "abelianization", "gamma3", "rigid"),
                    default="orders")
    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, or all")
    sp.add_argument("--cap", type=int, default=None)
    return parser


COMMANDS = {
    "info": cmd_info, "eval": cmd_eval, "sections": cmd_sections, "theta": cmd_theta,
    "reduce": cmd_reduce, "normalize": cmd_normalize, "quotient": cmd_quotient,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (SpinalError, ValueError) as exc:
        # a failed contraction is a check failure; everything else is usage
        code = 1 if isinstance(exc, ReductionFailed) else 2
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
