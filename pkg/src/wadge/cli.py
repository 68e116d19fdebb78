"""Command-line front end.

Commands take terms and ordinals in the ASCII grammars (``w`` for the first
infinite ordinal, ``T`` for the top value) and print deterministic text, or
JSON under ``--json``.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .errors import WadgeError
from .ordinals import format_ext, format_ordinal, parse_ext, parse_ordinal
from .spaces import cb_rank, cb_type, format_term, parse_term
from .engine import (
    LevelKind,
    WadgeInvariant,
    describe_level,
    hierarchy_render,
    realize_invariant,
    same_hierarchy,
    theta_of,
    alpha_of,
    wadge_invariant,
)
from .diffs import (
    RankSet,
    canonical_rank_set,
    difference_witness,
    difference_witness_agrees,
    reduction_for_A,
    verify_reduction,
)
from .oracle import GeneratorConfig, cb_type_oracle, generate_terms


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wadge",
        description="Classify reducibility hierarchies of zero-dimensional Polish space terms.",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--depth", type=int, default=8, help="address sampling depth (default 8)")
    parser.add_argument("--seed", type=int, default=0, help="random seed for generation commands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="complete invariant (alpha, theta) of a term")
    p.add_argument("term")
    p = sub.add_parser("theta", help="length of the hierarchy")
    p.add_argument("term")
    p = sub.add_parser("alpha", help="selfdual-limit-level bound")
    p.add_argument("term")
    p = sub.add_parser("level", help="classify one level of the hierarchy")
    p.add_argument("term")
    p.add_argument("ordinal")
    p = sub.add_parser("hierarchy", help="render the levels below a bound")
    p.add_argument("term")
    p.add_argument("up_to")
    p = sub.add_parser("realize", help="a term realizing the invariant (alpha, theta)")
    p.add_argument("alpha")
    p.add_argument("theta")
    p = sub.add_parser("same", help="whether two terms have isomorphic hierarchies")
    p.add_argument("term_a")
    p.add_argument("term_b")
    p = sub.add_parser("diff-witness", help="difference level of the canonical rank-parity set")
    p.add_argument("term")
    p.add_argument("alpha")
    p = sub.add_parser("verify-reduction", help="sampled check of the stage-alpha reductions")
    p.add_argument("alpha")
    p = sub.add_parser("oracle-check", help="CB-type agreement against the order-type oracle")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-depth", type=int, default=3)
    return parser


def _emit(args, json_doc, text: str) -> int:
    if args.json:
        print(json.dumps(json_doc, sort_keys=True))
    else:
        print(text)
    return 0


_KIND_TEXT = {LevelKind.SELFDUAL: "sd", LevelKind.NONSELFDUAL: "nsd-pair"}


def _label_text(label) -> str:
    doc = label.to_json()
    kind = doc.pop("type")
    if doc:
        inner = ",".join(str(v) for v in doc.values())
        return f"{kind}({inner})"
    return kind


def _level_line(desc) -> str:
    return f"{format_ordinal(desc.level)} {_KIND_TEXT[desc.kind]} {_label_text(desc.label)}"


def run(args) -> int:
    match args.command:
        case "invariants":
            inv = wadge_invariant(parse_term(args.term))
            return _emit(args, inv.to_json(), f"alpha={format_ext(inv.alpha)} theta={format_ext(inv.theta)}")
        case "theta":
            value = theta_of(parse_term(args.term))
            return _emit(args, {"theta": format_ext(value)}, format_ext(value))
        case "alpha":
            value = alpha_of(parse_term(args.term))
            return _emit(args, {"alpha": format_ext(value)}, format_ext(value))
        case "level":
            desc = describe_level(parse_term(args.term), parse_ordinal(args.ordinal))
            return _emit(args, desc.to_json(), _level_line(desc))
        case "hierarchy":
            term = parse_term(args.term)
            levels = hierarchy_render(term, parse_ordinal(args.up_to))
            header = "# representable levels only; limits shown have countable cofinality"
            text = "\n".join([header] + [_level_line(d) for d in levels])
            return _emit(args, [d.to_json() for d in levels], text)
        case "realize":
            inv = WadgeInvariant(parse_ext(args.alpha), parse_ext(args.theta))
            term = realize_invariant(inv)
            doc = {"term": format_term(term), **wadge_invariant(term).to_json()}
            return _emit(args, doc, format_term(term))
        case "same":
            answer = same_hierarchy(parse_term(args.term_a), parse_term(args.term_b))
            return _emit(args, {"same": answer}, "true" if answer else "false")
        case "diff-witness":
            term = parse_term(args.term)
            alpha = parse_ordinal(args.alpha)
            witness = difference_witness(term, canonical_rank_set(alpha))
            agreed = difference_witness_agrees(term, canonical_rank_set(alpha), args.depth)
            doc = {**witness.to_json(), "sampled_agreement": agreed}
            text = f"beta={format_ordinal(witness.beta)} agreement={'ok' if agreed else 'MISMATCH'}"
            if not agreed:
                print(text) if not args.json else print(json.dumps(doc, sort_keys=True))
                return 1
            return _emit(args, doc, text)
        case "verify-reduction":
            report = verify_reduction(parse_ordinal(args.alpha), args.depth)
            text = f"checked={report.checked} mismatches={report.mismatches}"
            if report.mismatches:
                print(json.dumps(report.to_json(), sort_keys=True) if args.json else text)
                return 1
            return _emit(args, report.to_json(), text)
        case "oracle-check":
            cfg = GeneratorConfig(max_depth=args.max_depth, seed=args.seed)
            stream = generate_terms(cfg, countable_only=True, compact_only=True)
            disagreements = 0
            example = None
            for t in itertools.islice(stream, args.count):
                if cb_type(t) != cb_type_oracle(t):
                    disagreements += 1
                    example = example or format_term(t)
            doc = {"checked": args.count, "disagreements": disagreements, "example": example}
            text = f"checked={args.count} disagreements={disagreements}"
            if disagreements:
                print(json.dumps(doc, sort_keys=True) if args.json else text)
                return 1
            return _emit(args, doc, text)
    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except WadgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
