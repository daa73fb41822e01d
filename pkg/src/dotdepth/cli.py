"""Command-line front end.

Commands: classify, explain, semigroup, check, oracle, words.  Exit codes:
0 success / definable / suite passed, 1 semantic negative (not definable,
formula false, suite failure), 2 input error, 3 resource cap exceeded.
JSON output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classifier import FragmentId, classify_data, explain
from .dfa import compile_text, load_dfa_json
from .errors import InputError, PreconditionError, ResourceError
from .logic import eval_formula, parse_formula
from .semigroup import semigroup_to_json, syntactic
from .suites import run_suite
from .words import Alphabet, enumerate_words

CHECK_MARK = "✓"
CROSS_MARK = "✗"


def _alphabet(args) -> Alphabet:
    if not args.alphabet:
        raise InputError("--alphabet is required with --regex")
    return Alphabet.of(args.alphabet)


def _load_language(args):
    """Returns (syntactic data, label, epsilon warning)."""
    if getattr(args, "dfa", None):
        try:
            with open(args.dfa, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise InputError(f"cannot read DFA file: {exc}") from exc
        d, eps = load_dfa_json(text)
        return syntactic(d, cap=args.semigroup_cap), args.dfa, eps
    if getattr(args, "regex", None) is None:
        raise InputError("supply --regex with --alphabet, or --dfa FILE")
    d, eps = compile_text(args.regex, _alphabet(args))
    return syntactic(d, cap=args.semigroup_cap), args.regex, eps


def _emit(args, payload: dict, human_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        for line in human_lines:
            print(line)


def cmd_classify(args) -> int:
    data, label, eps = _load_language(args)
    report = classify_data(data, language=label, epsilon_removed=eps)
    lines = [f"language: {label}"]
    if eps:
        lines.append("note: the empty word was removed from the language")
    sg = data.semigroup
    lines.append(f"syntactic semigroup: {sg.size} elements, "
                 f"{len(sg.idempotents)} idempotents")
    lines.append("")
    for v in report.verdicts:
        mark = CHECK_MARK if v.definable else CROSS_MARK
        lines.append(f"  {mark} {v.fragment.key}")
        if not v.definable:
            lines.append(f"      evidence: {json.dumps(v.evidence, ensure_ascii=False)}")
    _emit(args, report.as_json(), lines)
    return 0


def cmd_explain(args) -> int:
    data, label, eps = _load_language(args)
    report = classify_data(data, language=label, epsilon_removed=eps)
    fragment = FragmentId.parse(args.fragment)
    verdict = report.verdict(fragment)
    if not verdict.definable:
        payload = {"fragment": fragment.key, "definable": False,
                   "evidence": verdict.evidence}
        _emit(args, payload, [f"not definable in {fragment.key}",
                              f"evidence: {json.dumps(verdict.evidence, ensure_ascii=False)}"])
        return 1
    desc = explain(report, fragment, degree_cap=args.degree_cap,
                   block_cap=args.block_cap)
    payload = desc.as_json()
    lines = [f"fragment: {fragment.key}"]
    if hasattr(desc, "cover"):
        lines.append("cover:")
        lines.extend(f"  {text}" for text in payload["cover"]["monomials"])
        lines.append(f"formula: {payload['formula']}")
        lines.append(f"verified: {str(payload['verified']).lower()}")
    else:
        lines.append(f"description: {json.dumps(payload['description']['combination'], ensure_ascii=False)}")
        lines.append(f"formula: {payload['formula']}")
        lines.append(f"verified: {str(payload['verified']).lower()}")
        if not payload["verified"]:
            lines.append(f"witness: {payload['description']['witness']}"
                         " (raise --degree-cap/--block-cap)")
    _emit(args, payload, lines)
    return 0


def cmd_semigroup(args) -> int:
    data, label, _ = _load_language(args)
    payload = semigroup_to_json(data)
    sg = data.semigroup
    lines = [f"language: {label}", f"size: {sg.size}",
             "elements: " + " ".join(sg.names), "multiplication:"]
    width = max(len(n) for n in sg.names)
    for i, row in enumerate(sg.mult):
        cells = " ".join(sg.names[x].rjust(width) for x in row)
        lines.append(f"  {sg.names[i].rjust(width)} | {cells}")
    lines.append("order pairs: " + " ".join(
        f"{sg.names[lo]}<={sg.names[hi]}" for lo, hi in sorted(sg.order)
        if lo != hi))
    lines.append("idempotents: " + " ".join(sg.names[e] for e in sg.idempotents))
    lines.append("image of the language: "
                 + (" ".join(sg.names[x] for x in sorted(data.image_of_language))
                    or "(empty)"))
    g = data.green
    for tag, classes in (("R", g.classes_r), ("L", g.classes_l), ("J", g.classes_j)):
        rendered = " ".join("{" + " ".join(sg.names[x] for x in cls) + "}"
                            for cls in classes)
        lines.append(f"{tag}-classes: {rendered}")
    _emit(args, payload, lines)
    return 0


def cmd_check(args) -> int:
    try:
        with open(args.formula, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read formula file: {exc}") from exc
    formula = parse_formula(text)
    result = eval_formula(formula, args.word)
    print("true" if result else "false")
    return 0 if result else 1


def cmd_oracle(args) -> int:
    outcome = run_suite(args.suite, max_len=args.max_len, seed=args.seed)
    payload = {"suite": outcome.suite, "passed": outcome.passed,
               "lines": outcome.lines}
    _emit(args, payload, [f"suite: {outcome.suite}"]
          + [f"  {line}" for line in outcome.lines]
          + [f"passed: {str(outcome.passed).lower()}"])
    return 0 if outcome.passed else 1


def cmd_words(args) -> int:
    for w in enumerate_words(_alphabet(args), args.max_len or 3):
        print(w)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotdepth",
        description="Decide definability in the existential fragments around "
                    "dot-depth one and build witnesses.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, language=True):
        p.add_argument("--format", choices=("human", "json"), default="human")
        p.add_argument("--alphabet", help="letters in canonical order, e.g. ab")
        p.add_argument("--max-len", type=int, default=None,
                       help="word length ceiling for enumerations")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized suites")
        if language:
            p.add_argument("--regex", help="extended regular expression")
            p.add_argument("--dfa", help="path to a DFA JSON file")
            p.add_argument("--semigroup-cap", type=int, default=500)
        p.add_argument("--degree-cap", type=int, default=4)
        p.add_argument("--block-cap", type=int, default=4)

    p = sub.add_parser("classify", help="verdicts for all eight fragments")
    common(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("explain", help="constructive description for a fragment")
    common(p)
    p.add_argument("--fragment", required=True,
                   help='e.g. "S1[<,+1,min]" or "BS1[<,+1,min,max]"')
    p.set_defaults(handler=cmd_explain)

    p = sub.add_parser("semigroup", help="dump the syntactic semigroup")
    common(p)
    p.set_defaults(handler=cmd_semigroup)

    p = sub.add_parser("check", help="evaluate a formula on a word")
    common(p, language=False)
    p.add_argument("--formula", required=True, help="path to an s-expression file")
    p.add_argument("--word", required=True)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("oracle", help="run a property suite")
    common(p, language=False)
    p.add_argument("--suite", required=True)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("words", help="enumerate words in length-lex order")
    common(p, language=False)
    p.set_defaults(handler=cmd_words)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ResourceError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
