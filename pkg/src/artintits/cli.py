"""Command-line front end.

Verdicts go to stdout, deterministically.  Exit codes: 0 = computed (the
verdict itself is in the output), 1 = usage or input error, 2 = no oracle
available for a required subset or an enumeration cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import coxeter, cubepath, garside, refcheck, virtual_braids as vb, words
from .errors import ArtinTitsError, CapExceeded, NoOracleAvailable


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_graph(path: str) -> coxeter.CoxeterGraph:
    with open(path) as fh:
        return coxeter.graph_from_json(json.load(fh))


def _read_word_arg(arg: str, literal: bool) -> str:
    if literal:
        return arg
    with open(arg) as fh:
        return fh.read().strip()


def _emit(args, text_value, json_value):
    if args.format == "json":
        print(json.dumps(json_value, sort_keys=True))
    else:
        print(text_value)


def _sorted(graph, X):
    return list(graph.sorted_subset(X))


def build_parser() -> _Parser:
    top = _Parser(prog="artintits", description=__doc__)
    top.add_argument("--format", choices=("text", "json"), default="text")
    sub = top.add_subparsers(dest="group", required=True)

    def word_args(p, count=1):
        p.add_argument("words", nargs=count, help="word file(s); with --literal, the words themselves")
        p.add_argument("--literal", action="store_true", help="treat word arguments as literal text")

    cox = sub.add_parser("coxeter").add_subparsers(dest="cmd", required=True)
    p = cox.add_parser("reduce", help="canonical reduced word")
    p.add_argument("--graph", required=True)
    word_args(p)

    art = sub.add_parser("artin").add_subparsers(dest="cmd", required=True)
    for name in ("equal",):
        p = art.add_parser(name)
        p.add_argument("--graph", required=True)
        word_args(p, count=2)
    for name in ("trivial", "delta", "normalize", "theta", "tau"):
        p = art.add_parser(name)
        p.add_argument("--graph", required=True)
        word_args(p)
        if name == "normalize":
            p.add_argument("--emit-prepath", metavar="OUT.json")
    for name in ("member", "pi"):
        p = art.add_parser(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--subset", required=True, help="comma-separated generator names")
        word_args(p)
    p = art.add_parser("iota", help="witness for (word)A_X n A_Y, if nonempty")
    p.add_argument("--graph", required=True)
    p.add_argument("--x", required=True, metavar="X", help="comma-separated names")
    p.add_argument("--y", required=True, metavar="Y", help="comma-separated names")
    word_args(p)

    orc = sub.add_parser("oracle").add_subparsers(dest="cmd", required=True)
    p = orc.add_parser("check", help="normal form of a word over a spherical subset")
    p.add_argument("--graph", required=True)
    p.add_argument("--subset", required=True)
    word_args(p)

    vbp = sub.add_parser("vb").add_subparsers(dest="cmd", required=True)
    p = vbp.add_parser("equal")
    p.add_argument("-n", type=int, required=True)
    word_args(p, count=2)
    p = vbp.add_parser("rewrite")
    p.add_argument("-n", type=int, required=True)
    word_args(p)
    p = vbp.add_parser("dim")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("refcheck", help="BFS semi-decision of word equality")
    p.add_argument("--graph")
    p.add_argument("--vb", type=int, metavar="N")
    p.add_argument("--depth", type=int, default=8)
    word_args(p, count=2)

    return top


def _cmd_coxeter(args) -> int:
    graph = _load_graph(args.graph)
    raw = _read_word_arg(args.words[0], args.literal).split()
    w = coxeter.reduce(graph, raw)
    _emit(args, " ".join(w.word) or "1", {"word": list(w.word), "length": w.length})
    return 0


def _cmd_artin(args) -> int:
    graph = _load_graph(args.graph)
    texts = [_read_word_arg(a, args.literal) for a in args.words]
    ws = [words.parse_word(graph, t) for t in texts]
    reg = cubepath.registry_for(graph)
    if args.cmd == "equal":
        verdict = cubepath.artin_equal(ws[0], ws[1], reg)
        _emit(args, "equal" if verdict else "not-equal", {"equal": verdict})
    elif args.cmd == "trivial":
        verdict = cubepath.is_trivial(ws[0], reg)
        _emit(args, "trivial" if verdict else "nontrivial", {"trivial": verdict})
    elif args.cmd == "member":
        T = graph.subset(args.subset.split(","))
        support = ws[0].support() | T
        if graph.is_free_of_infinity(support):
            oracle = reg.get(support)
        else:
            oracle = cubepath.global_oracle(reg)
        out = words.kappa(ws[0], T, oracle)
        if out is None:
            _emit(args, "not-member", {"member": False})
        else:
            _emit(args, f"member: {out.text() or '1'}",
                  {"member": True, "word": out.text()})
    elif args.cmd == "theta":
        w = words.theta(ws[0])
        _emit(args, " ".join(w.word) or "1", {"word": list(w.word), "length": w.length})
    elif args.cmd == "tau":
        lifted = words.tau_tilde(words.theta(ws[0]))
        _emit(args, lifted.text() or "1", {"word": lifted.text()})
    elif args.cmd == "pi":
        T = graph.subset(args.subset.split(","))
        out = words.pi_tilde(ws[0], T, free_reduce=True)
        _emit(args, out.text() or "1", {"word": out.text()})
    elif args.cmd == "iota":
        X = graph.subset(args.x.split(","))
        Y = graph.subset(args.y.split(","))
        Z = ws[0].support() | X | Y
        if graph.is_free_of_infinity(Z):
            oracle = reg.get(Z)
        else:
            oracle = cubepath.global_oracle(reg)
            Z = oracle.subset
        out = words.iota_intersection(ws[0], X, Y, Z, oracle)
        if out is None:
            _emit(args, "empty-intersection", {"empty": True})
        else:
            _emit(args, f"witness: {out.text() or '1'}",
                  {"empty": False, "word": out.text()})
    elif args.cmd == "delta":
        factors, residual = words.delta_decompose(ws[0])
        fl = [
            {"w": list(f.w.word), "s": f.s, "sign": f.sign}
            for f in factors
        ]
        text = "; ".join(
            f"delta({' '.join(f.w.word) or '1'}, {f.s})^{f.sign:+d}" for f in factors
        )
        _emit(
            args,
            (text or "(no factors)") + f" | residual: {' '.join(residual.word) or '1'}",
            {"factors": fl, "residual": list(residual.word)},
        )
    elif args.cmd == "normalize":
        P, mu = cubepath.normalize(cubepath.word_to_prepath(ws[0]), reg)
        payload = {"length": P.length, "prepath": P.to_dict(), "mu": mu.text()}
        if args.emit_prepath:
            with open(args.emit_prepath, "w") as fh:
                json.dump(payload["prepath"], fh, sort_keys=True, indent=2)
        _emit(args, f"normal prepath length {P.length}", payload)
    return 0


def _cmd_oracle(args) -> int:
    graph = _load_graph(args.graph)
    X = graph.subset(args.subset.split(","))
    w = words.parse_word(graph, _read_word_arg(args.words[0], args.literal))
    oracle = cubepath.registry_for(graph).get(X)
    if isinstance(oracle, garside.GarsideOracle):
        nf = garside.to_normal_form(oracle.gs, w)
        canon = [" ".join(simple) for simple in nf.canon]
        _emit(args, f"inf={nf.inf} canon=[{', '.join(canon)}]",
              {"inf": nf.inf, "canon": [list(s) for s in nf.canon]})
    else:
        out = oracle.canonical_word(w)
        trivial = oracle.equal(w, words.ArtinWord(graph, ()))
        _emit(args, f"canonical={out.text() or '1'} trivial={str(trivial).lower()}",
              {"canonical": out.text(), "trivial": trivial})
    return 0


def _cmd_vb(args) -> int:
    if args.cmd == "dim":
        d = vb.spherical_dimension(args.n)
        _emit(args, str(d), {"dim": d})
        return 0
    texts = [_read_word_arg(a, args.literal) for a in args.words]
    ws = [vb.parse_vb_word(args.n, t) for t in texts]
    if args.cmd == "equal":
        verdict = vb.vb_equal(ws[0], ws[1])
        _emit(args, "equal" if verdict else "not-equal", {"equal": verdict})
    elif args.cmd == "rewrite":
        kappa, perm = vb.rewrite_to_semidirect(ws[0])
        payload = {
            "kappa": [[f"{i},{j}", e] for (i, j), e in kappa.letters],
            "perm": list(perm),
        }
        text = " ".join(
            f"d{i},{j}" + ("" if e == 1 else "^-1") for (i, j), e in kappa.letters
        )
        _emit(args, f"kappa: {text or '1'} | perm: {list(perm)}", payload)
    return 0


def _cmd_refcheck(args) -> int:
    if (args.graph is None) == (args.vb is None):
        raise UsageError("refcheck needs exactly one of --graph or --vb N")
    if args.graph:
        graph = _load_graph(args.graph)
        pres = refcheck.artin_presentation(graph)
        ws = [
            tuple(words.parse_word(graph, _read_word_arg(a, args.literal)).letters)
            for a in args.words
        ]
    else:
        pres = refcheck.vb_presentation(args.vb)
        ws = [
            tuple(
                ((k, i), e)
                for k, i, e in vb.parse_vb_word(args.vb, _read_word_arg(a, args.literal)).letters
            )
            for a in args.words
        ]
    verdict = refcheck.bfs_equal(pres, ws[0], ws[1], args.depth)
    _emit(args, verdict.value, {"verdict": verdict.value})
    return 0


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.group == "coxeter":
            return _cmd_coxeter(args)
        if args.group == "artin":
            return _cmd_artin(args)
        if args.group == "oracle":
            return _cmd_oracle(args)
        if args.group == "vb":
            return _cmd_vb(args)
        if args.group == "refcheck":
            return _cmd_refcheck(args)
        raise UsageError(f"unknown command group {args.group!r}")
    except (NoOracleAvailable, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ArtinTitsError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():  # console entry point
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
