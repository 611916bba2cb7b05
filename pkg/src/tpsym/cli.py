"""Command-line surface: enumeration, evaluation, verification and export.

Every verb is a thin adapter over the library; deterministic output for a
fixed seed.  Exit codes: 0 success, 1 verification failure, 2 usage error,
3 precision exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import scalars
from .braid import braid_graph
from .cartan import UnsupportedDatum, datum
from .cells import CellPoint, classify_cell, conjugation_step, factor_unipotent_A, kappa
from .involutions import (TwistedInvolution, involution_words,
                          twisted_involutions, target_of_word)
from .jsonio import decode_matrix, decode_word, encode_cell_point, encode_scalar, encode_word
from .models import GroupElement, get_model, model_catalog, model_for_datum
from .moves import MoveError, get_move
from .scalars import PrecisionExhausted, UndecidableComparison
from .verify import run_suites
from .weyl import WeylElement
from .zones import ZoneError, zone_map

PRECISION_FLOOR = 128


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    type_label: str = "A"
    rank: int = 2
    star: str = "identity"
    precision: int = 192
    seed: int = 0
    samples: int | None = None
    format: str = "table"

    def __post_init__(self):
        if self.precision < PRECISION_FLOOR:
            raise UsageError(f"precision {self.precision} below floor {PRECISION_FLOOR}")
        if self.format not in ("table", "json", "dot"):
            raise UsageError(f"unknown format {self.format!r}")

    def datum(self):
        return datum(self.type_label, self.rank, self.star)


def _parse_coords(items):
    out = []
    for it in items:
        if "/" in it:
            n, d = it.split("/")
            out.append(Fraction(int(n), int(d)))
        else:
            out.append(Fraction(it))
    return tuple(out)


def cmd_enumerate(cfg: RunConfig, args) -> int:
    d = cfg.datum()
    rows = []
    for ti in twisted_involutions(d):
        rows.append({
            "word": encode_word(ti.element.word),
            "length": ti.element.length,
            "phi": ti.phi,
            "norm": ti.norm,
            "n_words": len(involution_words(d, ti)),
        })
    if cfg.format == "json":
        print(json.dumps({"datum": d.to_json(), "twisted_involutions": rows},
                         sort_keys=True))
    else:
        print(f"# twisted involutions of {d.type_label} star={cfg.star}")
        print("word            |w|  phi  norm  |J(w)|")
        for r in rows:
            word = "".join(str(i) for i in r["word"]) or "e"
            print(f"{word:15s} {r['length']:3d}  {r['phi']:3d}  {r['norm']:4d}  {r['n_words']:5d}")
        print(f"total: {len(rows)}")
    return 0


def cmd_words(cfg: RunConfig, args) -> int:
    d = cfg.datum()
    ti = target_of_word(d, decode_word(args.word))
    words = involution_words(d, ti)
    if cfg.format == "json":
        print(json.dumps({"target": encode_word(ti.element.word),
                          "norm": ti.norm,
                          "words": [encode_word(w) for w in words]}, sort_keys=True))
    else:
        print(f"# involution words of {''.join(str(i+1) for i in ti.element.word) or 'e'}")
        for w in words:
            print("".join(str(i + 1) for i in w) or "()")
        print(f"total: {len(words)}")
    return 0


def cmd_graph(cfg: RunConfig, args) -> int:
    d = cfg.datum()
    if args.word is not None:
        ti = target_of_word(d, decode_word(args.word))
    else:
        ti = TwistedInvolution.of(d, WeylElement.longest(d))
    g = braid_graph(d, ti)
    if cfg.format == "json":
        print(json.dumps(g.to_json(), sort_keys=True))
    else:
        print(g.to_dot())
    return 0


def cmd_move(cfg: RunConfig, args) -> int:
    mv = get_move(args.tag)
    coords = _parse_coords(args.coords)
    outs = mv.apply(args.direction, coords)
    exact = all(scalars.is_exact(x) for x in outs)
    cert = "exact" if exact else f"interval(prec={cfg.precision})"
    payload = {"move": args.tag, "direction": args.direction,
               "input": [encode_scalar(c) for c in coords],
               "output": [encode_scalar(o) for o in outs],
               "certificate": cert}
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{args.tag} {args.direction}")
        print("input:  " + " ".join(str(encode_scalar(c)) for c in coords))
        print("output: " + " ".join(json.dumps(encode_scalar(o)) for o in outs))
        print(f"certificate: {cert}")
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    report = run_suites(args.suite, seed=cfg.seed, samples=cfg.samples)
    failures = 0
    lines = []
    for suite, checks in report:
        for label, ok, total in checks:
            status = "pass" if ok == total else "FAIL"
            if ok != total:
                failures += 1
            lines.append({"suite": suite, "check": label, "passed": ok,
                          "total": total, "status": status})
    if cfg.format == "json":
        print(json.dumps({"seed": cfg.seed, "failures": failures,
                          "checks": lines}, sort_keys=True))
    else:
        for ln in lines:
            print(f"[{ln['status']}] {ln['suite']}: {ln['check']}: "
                  f"{ln['passed']}/{ln['total']}")
        print(f"failures: {failures}")
    return 1 if failures else 0


def cmd_tropicalize(cfg: RunConfig, args) -> int:
    zm = zone_map(args.tag, args.direction)
    vals = _parse_coords(args.coords)
    outs = zm(vals)
    payload = {"move": args.tag, "direction": args.direction,
               "input": [str(v) for v in vals],
               "output": [str(o) for o in outs]}
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(" ".join(str(o) for o in outs))
    return 0


def cmd_factor(cfg: RunConfig, args) -> int:
    model = get_model(args.model) if args.model else model_for_datum(cfg.datum())
    mat = decode_matrix(json.loads(args.matrix))
    g = GroupElement(model, mat)
    if args.word:
        word = decode_word(args.word)
        coords = factor_unipotent_A(model, g, word)
        payload = {"word": encode_word(word),
                   "coords": [encode_scalar(c) for c in coords]}
    else:
        ti = classify_cell(model, g)
        payload = {"cell": encode_word(ti.element.word), "norm": ti.norm}
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_act(cfg: RunConfig, args) -> int:
    d = cfg.datum()
    model = model_for_datum(d)
    word = decode_word(args.word)
    coords = _parse_coords(args.coords)
    ti = target_of_word(d, word)
    pt = CellPoint("U+", word, coords, ti)
    letter = args.letter - 1
    value = _parse_coords([args.value])[0]
    res = conjugation_step(model, pt, letter, value)
    payload = encode_cell_point(res)
    print(json.dumps(payload, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tpsym",
        description="Cells, braid-move transition maps and tropical zones "
                    "for totally nonnegative parts of symmetric spaces.")
    p.add_argument("--type", dest="type_label", default="A")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--star", default="identity",
                   help="identity | flip (A_n reversal, D4 fork swap)")
    p.add_argument("--precision", type=int, default=192)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--format", default="table", choices=["table", "json", "dot"])
    sub = p.add_subparsers(dest="verb", required=True)

    sub.add_parser("enumerate", help="list twisted involutions with invariants")

    sp = sub.add_parser("words", help="involution words of a twisted involution")
    sp.add_argument("--word", required=True, help="1-based letters, e.g. 1,2")

    sp = sub.add_parser("graph", help="braid graph (DOT or JSON)")
    sp.add_argument("--word", default=None, help="target word; default w0")

    sp = sub.add_parser("move", help="evaluate a transition move")
    sp.add_argument("--tag", required=True)
    sp.add_argument("--direction", default="forward",
                    choices=["forward", "backward"])
    sp.add_argument("coords", nargs="+")

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", default="all",
                    choices=["weyl", "models", "cells", "moves", "zones", "all"])

    sp = sub.add_parser("tropicalize", help="apply a tropicalized move")
    sp.add_argument("--tag", required=True)
    sp.add_argument("--direction", default="forward",
                    choices=["forward", "backward"])
    sp.add_argument("coords", nargs="+")

    sp = sub.add_parser("factor", help="factor/classify a type-A unipotent matrix")
    sp.add_argument("--model", default=None,
                    help=f"one of {sorted(model_catalog())}")
    sp.add_argument("--word", default=None)
    sp.add_argument("--matrix", required=True, help="JSON rows of rational strings")

    sp = sub.add_parser("act", help="coordinate-level twisted generator action")
    sp.add_argument("--word", required=True)
    sp.add_argument("--coords", nargs="+", required=True)
    sp.add_argument("--letter", type=int, required=True)
    sp.add_argument("--value", required=True)
    return p


VERBS = {
    "enumerate": cmd_enumerate,
    "words": cmd_words,
    "graph": cmd_graph,
    "move": cmd_move,
    "verify": cmd_verify,
    "tropicalize": cmd_tropicalize,
    "factor": cmd_factor,
    "act": cmd_act,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig(type_label=ns.type_label, rank=ns.rank, star=ns.star,
                        precision=ns.precision, seed=ns.seed,
                        samples=ns.samples, format=ns.format)
        if ns.verb == "act":
            ns.coords = list(ns.coords)
        return VERBS[ns.verb](cfg, ns)
    except (UsageError, UnsupportedDatum, MoveError, ZoneError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (UndecidableComparison, PrecisionExhausted) as e:
        print(f"precision exhausted: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
