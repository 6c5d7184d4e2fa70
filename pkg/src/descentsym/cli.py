"""Command-line entry point: ``descentsym <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import qsym
from .bijections import InternalConsistencyError
from .campaign import MODES, CampaignConfig, run_campaign
from .fileio import ParseError, format_multiset, format_perm, parse_multiset, parse_perm
from .permcore import (
    InvalidWordError, PermMultiset, conjugacy_class, d_class, inverse_j_class, shifted_shuffle,
    shuffle,
)
from .sweep import InfeasibleRequest
from .tableaux import (
    format_tableau, inverse_promote, knuth_class, parse_tableau, promote_traced, promote_v, rs,
)
from .verifier import check_theorem

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _subset(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text or text in ("{}", "-", "empty"):
        return ()
    try:
        return tuple(sorted(int(x) for x in text.replace(" ", "").strip("{}").split(",")))
    except ValueError:
        raise InputError(f"bad subset {text!r}; use comma-separated values") from None


def _partition(text: str) -> tuple[int, ...]:
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise InputError(f"bad partition {text!r}") from None


def _multiset_out(B: PermMultiset) -> dict:
    return {"degree": B.n, "size": len(B),
            "entries": [{"perm": list(p), "mult": m} for p, m in B.items()]}


class Output:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.out

    def emit(self, text: str, data) -> None:
        body = json.dumps(data, indent=2, sort_keys=True) if self.fmt == "json" else text
        if self.path:
            Path(self.path).write_text(body + "\n", encoding="utf-8")
        else:
            print(body)


# ---------------------------------------------------------------------------
# subcommands

def cmd_qsym(args, out: Output) -> int:
    B = parse_multiset(_read(args.file))
    F = qsym.q_of(B, B.n)
    M = qsym.f_to_m(F)
    lines = [f"degree {B.n}, size {len(B)}", "F basis:"]
    lines += [f"  F[({','.join(map(str, k))})] : {v}" for k, v in F.terms.items()]
    lines.append("M basis:")
    lines += [f"  M[({','.join(map(str, k))})] : {v}" for k, v in M.terms.items()]
    out.emit("\n".join(lines), {"F": F.to_json(), "M": M.to_json()})
    return EXIT_OK


def cmd_classify(args, out: Output) -> int:
    B = parse_multiset(_read(args.file))
    c = qsym.classify(B, B.n)
    lines = [c.kind]
    if c.witness is not None:
        a, b = c.witness
        lines.append(f"witness: M[({','.join(map(str, a))})] = {c.m_expansion[a]}"
                     f" but M[({','.join(map(str, b))})] = {c.m_expansion[b]}")
    else:
        lines.append(f"schur: {c.schur}")
    data = c.to_json()
    data["degree"], data["size"] = B.n, len(B)
    out.emit("\n".join(lines), data)
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    if args.file is None:
        if args.campaign:
            try:
                cfg = CampaignConfig(**json.loads(_read(args.campaign)))
            except (TypeError, json.JSONDecodeError) as e:
                raise InputError(f"bad campaign config: {e}") from None
        else:
            if args.n is None or args.mode is None:
                raise InputError("verify needs a multiset file, --campaign CONFIG, or -n with --mode")
            cfg = CampaignConfig(n=args.n, mode=args.mode, samples=args.samples,
                                 max_mult=args.max_mult, seed=args.seed,
                                 max_support=args.max_support, workers=args.workers)
        report = run_campaign(cfg)
        pop = report["population"]
        lines = [f"campaign {cfg.mode} n={cfg.n} seed={cfg.seed}",
                 f"population: {pop['count']} ({pop.get('route')})",
                 "patterns (a b c d e): " + ", ".join(f"{k}:{v}" for k, v in report["patterns"].items()),
                 f"disagreements: {len(report['disagreements'])}",
                 f"symmetric_not_fine specimens: {report['specimens']['symmetric_not_fine_count']}",
                 f"wall time: {report['wall_time']}s"]
        out.emit("\n".join(lines), report)
        return EXIT_INTERNAL if report["disagreements"] else EXIT_OK

    B = parse_multiset(_read(args.file))
    rep = check_theorem(B)
    lines = [f"{name}: {rep.flags[name]}" for name in rep.flags]
    for name, w in rep.witnesses.items():
        if w is not None:
            lines.append(f"  {name} witness: {w}")
    lines.append("agree" if rep.agree else "DISAGREEMENT")
    out.emit("\n".join(lines), rep.to_json())
    return EXIT_OK if rep.agree else EXIT_INTERNAL


def cmd_promote(args, out: Output) -> int:
    T = parse_tableau(_read(args.file))
    trace = None
    if args.set is not None:
        V = _subset(args.set)
        result = promote_v(T, V)
        label = "d_V with V={" + ",".join(map(str, V)) + "}"
    else:
        if args.a is None or args.b is None:
            raise InputError("promote needs A B or --set V")
        if args.inverse:
            result = inverse_promote(T, args.a, args.b)
            label = f"inverse d_{args.a}^{args.b}"
        else:
            result, trace = promote_traced(T, args.a, args.b)
            label = f"d_{args.a}^{args.b}"
    data = {"input": [list(r) for r in T], "output": [list(r) for r in result]}
    if trace is not None:
        data["path"] = [list(b) for b in trace.path]
    out.emit(f"{label}:\n{format_tableau(result)}", data)
    return EXIT_OK


def cmd_rs(args, out: Output) -> int:
    pi = parse_perm(args.perm)
    pair = rs(pi)
    text = f"P:\n{format_tableau(pair.p)}\nQ:\n{format_tableau(pair.q)}"
    out.emit(text, {"perm": list(pi), "P": [list(r) for r in pair.p],
                    "Q": [list(r) for r in pair.q]})
    return EXIT_OK


def cmd_knuth(args, out: Output) -> int:
    T = parse_tableau(_read(args.file))
    B = PermMultiset(knuth_class(T), n=sum(map(len, T)))
    out.emit(format_multiset(B).rstrip("\n"), _multiset_out(B))
    return EXIT_OK


def cmd_conj(args, out: Output) -> int:
    B = conjugacy_class(args.n, _partition(args.shape))
    out.emit(format_multiset(B).rstrip("\n"), _multiset_out(B))
    return EXIT_OK


def cmd_shuffle(args, out: Output) -> int:
    if args.plain:
        u = [int(x) for x in (args.pi.split(",") if "," in args.pi else args.pi)]
        v = [int(x) for x in (args.tau.split(",") if "," in args.tau else args.tau)]
        words = sorted(shuffle(u, v))
    else:
        words = sorted(shifted_shuffle(parse_perm(args.pi), parse_perm(args.tau)))
    text = "\n".join(format_perm(w) if len(set(w)) == len(w) and sorted(w) == list(
        range(1, len(w) + 1)) else ",".join(map(str, w)) for w in words)
    out.emit(text, {"words": [list(w) for w in words], "count": len(words)})
    return EXIT_OK


def _class_cmd(builder):
    def run(args, out: Output) -> int:
        B = builder(args.n, _subset(args.subset))
        out.emit(format_multiset(B).rstrip("\n"), _multiset_out(B))
        return EXIT_OK
    return run


cmd_dclass = _class_cmd(d_class)
cmd_jclass = _class_cmd(inverse_j_class)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="descentsym",
        description="Descent statistics, quasisymmetric expansions and symmetry checks "
                    "for multisets of permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qsym", parents=[common], help="Q(B) in the F and M bases")
    p.add_argument("file")
    p.set_defaults(func=cmd_qsym)

    p = sub.add_parser("classify", parents=[common],
                       help="not_symmetric / symmetric_not_fine / fine")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common],
                       help="check the five equivalent conditions, or run a campaign")
    p.add_argument("file", nargs="?")
    p.add_argument("--campaign", metavar="CONFIG", help="JSON campaign configuration")
    p.add_argument("-n", type=int)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-mult", type=int, default=3)
    p.add_argument("--max-support", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("promote", parents=[common], help="promotion operators on a tableau file")
    p.add_argument("file")
    p.add_argument("a", type=int, nargs="?")
    p.add_argument("b", type=int, nargs="?")
    p.add_argument("--set", metavar="V", help="comma-separated V for d_V")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_promote)

    p = sub.add_parser("rs", parents=[common], help="Robinson-Schensted tableaux of a permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_rs)

    p = sub.add_parser("knuth", parents=[common], help="Knuth class of an insertion tableau")
    p.add_argument("file")
    p.set_defaults(func=cmd_knuth)

    p = sub.add_parser("conj", parents=[common], help="conjugacy class of a cycle type")
    p.add_argument("n", type=int)
    p.add_argument("shape", help="cycle type, e.g. 211 or 2,1,1")
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("shuffle", parents=[common], help="shifted shuffle of two permutations")
    p.add_argument("pi")
    p.add_argument("tau")
    p.add_argument("--plain", action="store_true",
                   help="shuffle the words as given (alphabets must be disjoint)")
    p.set_defaults(func=cmd_shuffle)

    for name, func, what in (("dclass", cmd_dclass, "D_J^{-1}"),
                             ("jclass", cmd_jclass, "R_J^{-1}")):
        p = sub.add_parser(name, parents=[common], help=f"the inverse class {what}")
        p.add_argument("n", type=int)
        p.add_argument("subset", nargs="?", default="", help="J as comma-separated values")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, Output(args))
    except InfeasibleRequest as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InternalConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, InvalidWordError, InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
