"""Command-line front end.

Exit codes: 0 success, 1 bad input (parse error, bad element, unknown
theorem id), 2 axiom or internal failure, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .classify import report as rep
from .classify import witness as W
from .construct.descriptor import ParseError, build_ring, parse_element, parse_ring_expr
from .ring.core import DEFAULT_LIMITS, CardinalityError, Limits
from .ring.structure import characteristic
from .theorems.corpus import Corpus, default_corpus, load_corpus
from .theorems.registry import UnknownTheoremError, VerifyContext, theorem_ids, verify

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    """Bad user input that is not a ring-expression parse error."""


def _limits(max_card: int) -> Limits:
    return Limits(table=min(max_card, DEFAULT_LIMITS.table), structural=max_card)


def _emit(payload: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(payload) + "\n")
        return
    for key, value in payload.items():
        if isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k}: {json.dumps(v)}\n")
        else:
            out.write(f"{key}: {json.dumps(value)}\n")


def _ring_header(command: str, desc, R) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "ring": str(desc),
        "cardinality": R.cardinality,
        "characteristic": characteristic(R),
    }


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    desc = parse_ring_expr(args.expr)
    R = build_ring(desc, limits=_limits(args.max_card))
    report = rep.ring_class_flags(R, witnesses=args.witnesses, witness_cap=args.witness_cap)
    body = report.as_dict()
    payload = _ring_header("classify", desc, R)
    payload.update(flags=body["flags"], witnesses=body["witnesses"],
                   counterexamples=body["counterexamples"])
    payload["elapsed_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    _emit(payload, args.json)
    return EXIT_OK


def _opt(R, w) -> Optional[dict]:
    return None if w is None else w.as_dict(R)


def cmd_witness(args) -> int:
    t0 = time.perf_counter()
    desc = parse_ring_expr(args.expr)
    R = build_ring(desc, limits=_limits(args.max_card))
    try:
        a = parse_element(R, args.element)
    except ParseError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(f"cannot read element {args.element!r} in {desc}: {exc}") from exc
    profile = W.element_profile(R, a)
    payload = _ring_header("witness", desc, R)
    payload["element"] = W.element_json(R, a)
    payload["profile"] = profile.as_dict(R)
    payload["witnesses"] = {
        "nil_clean": [w.as_dict(R) for w in W.nil_clean_witnesses(R, a, args.cap)],
        "strongly_nil_clean": _opt(R, W.strongly_nil_clean_elem(R, a)),
        "nilpotent_plus_two_idempotents": _opt(R, W.sum_nilpotent_two_idem(R, a, False)),
        "nilpotent_plus_two_commuting_idempotents": _opt(R, W.sum_nilpotent_two_idem(R, a, True)),
        "two_idempotents": _opt(R, W.sum_two_idem(R, a, False)),
        "two_commuting_idempotents": _opt(R, W.sum_two_idem(R, a, True)),
        "nilpotent_plus_tripotent": _opt(R, W.nilpotent_tripotent_witness(R, a)),
    }
    payload["elapsed_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    _emit(payload, args.json)
    return EXIT_OK


def _corpus(source: str) -> Corpus:
    if source == "default":
        return default_corpus()
    try:
        return load_corpus(source)
    except OSError as exc:
        raise InputError(f"cannot read corpus {source!r}: {exc}") from exc


def cmd_verify(args) -> int:
    if not args.all and not args.theorem:
        raise InputError("verify needs --theorem ID or --all")
    ids = theorem_ids() if args.all else list(args.theorem)
    for tid in ids:
        if tid not in theorem_ids():
            raise UnknownTheoremError(tid)
    corpus = _corpus(args.corpus)
    ctx = VerifyContext(seed=args.seed, limits=_limits(args.max_card))
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for tid in ids:
        for v in verify(tid, corpus, ctx):
            counts[v.status] += 1
            record = {"schema_version": SCHEMA_VERSION, **v.as_dict()}
            if args.json:
                sys.stdout.write(json.dumps(record) + "\n")
            else:
                sys.stdout.write(f"{v.status.upper():7s} {v.theorem:10s} {v.ring}"
                                 + (f"  {json.dumps(v.counterexample)}" if v.counterexample else "")
                                 + "\n")
            sys.stdout.flush()
    sys.stderr.write(json.dumps({"summary": counts, "theorems": len(ids),
                                 "rings": len(corpus)}) + "\n")
    return EXIT_OK if counts["fail"] == 0 else EXIT_INTERNAL


def cmd_corpus(args) -> int:
    corpus = _corpus(args.corpus)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "corpus",
        "version": corpus.version,
        "size": len(corpus),
        "total_elements": corpus.total_elements,
        "entries": [{"ring": e.text, "cardinality": e.cardinality} for e in corpus],
    }
    _emit(payload, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="json", action="store_true", default=True,
                     help="emit JSON (default)")
    fmt.add_argument("--text", dest="json", action="store_false", help="emit plain text")
    common.add_argument("--max-card", type=int, default=DEFAULT_LIMITS.structural, metavar="N",
                        help="largest ring to build (full tables up to "
                             f"{DEFAULT_LIMITS.table}, default %(default)s)")

    parser = argparse.ArgumentParser(prog="nilclean", description="Finite ring classifier.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a ring")
    p.add_argument("expr")
    p.add_argument("--witnesses", action="store_true", help="list decompositions for true flags")
    p.add_argument("--witness-cap", type=int, default=16, metavar="N")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="profile and decompose one element")
    p.add_argument("expr")
    p.add_argument("element")
    p.add_argument("--cap", type=int, default=16, metavar="N",
                   help="maximum nil-clean witnesses listed")
    p.set_defaults(run=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="run theorem checks over a corpus")
    p.add_argument("--theorem", action="append", metavar="ID")
    p.add_argument("--all", action="store_true")
    p.add_argument("--corpus", default="default", metavar="PATH")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="list the corpus")
    p.add_argument("--corpus", default="default", metavar="PATH")
    p.set_defaults(run=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (UnknownTheoremError, InputError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CardinalityError as exc:
        sys.stderr.write(f"error: resource limit: {exc}\n")
        return EXIT_LIMIT
    except Exception as exc:  # axiom failures and internal bugs
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
