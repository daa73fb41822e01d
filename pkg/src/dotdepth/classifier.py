"""Definability verdicts for the eight existential fragments, with evidence.

Each fragment pairs a quantifier shape (single existential block, or a
Boolean combination of such sentences) with the optional first/last
position predicates; position order and successor are always available.
A verdict is decided on the syntactic semigroup: the existential side
needs the ordered equation class plus a downward-closure condition on the
language's image, the Boolean side needs the KNAST class plus the image
being a union of the matching Green classes.  Trimming predicates from
the signature strengthens the closure condition: min goes with R, max
with L, neither with J.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dfa as D
from .errors import InputError, PreconditionError
from .identities import EquationWitness, check_b_half, check_knast
from .logic import And, Exists, FormulaAst, Not, Or, from_monomial, union_formula
from .monomials import Anchor, Cover, Monomial, cover, monomial_text
from .semigroup import (SyntacticData, order_ideal_check, semigroup_to_json,
                        syntactic, union_of_classes_check)
from .signatures import BooleanDescription, boolean_combination
from .words import Alphabet

SIGMA1 = "S1"
BSIGMA1 = "BS1"


@dataclass(frozen=True)
class FragmentId:
    quantifier: str                 # SIGMA1 or BSIGMA1
    signature: frozenset[str]       # subset of {"min", "max"}

    def __post_init__(self):
        if self.quantifier not in (SIGMA1, BSIGMA1):
            raise InputError(f"unknown quantifier shape {self.quantifier!r}")
        if not self.signature <= {"min", "max"}:
            raise InputError(f"signature must be within min/max: {self.signature}")

    @property
    def key(self) -> str:
        extra = [p for p in ("min", "max") if p in self.signature]
        return f"{self.quantifier}[{','.join(['<', '+1'] + extra)}]"

    @property
    def anchor(self) -> Anchor:
        return {frozenset({"min", "max"}): Anchor.BOTH,
                frozenset({"min"}): Anchor.LEFT,
                frozenset({"max"}): Anchor.RIGHT,
                frozenset(): Anchor.NONE}[self.signature]

    @staticmethod
    def parse(text: str) -> "FragmentId":
        for fragment in FRAGMENTS:
            if fragment.key == text:
                return fragment
        raise InputError(f"unknown fragment {text!r}; valid: "
                         + ", ".join(f.key for f in FRAGMENTS))


FRAGMENTS: tuple[FragmentId, ...] = tuple(
    FragmentId(q, frozenset(s))
    for q in (SIGMA1, BSIGMA1)
    for s in ({"min", "max"}, {"min"}, {"max"}, set())
)

_TABLE_ROWS = {
    "S1[<,+1,min,max]": "finite unions of fully anchored gap patterns",
    "S1[<,+1,min]": "finite unions of prefix-anchored gap patterns",
    "S1[<,+1,max]": "finite unions of suffix-anchored gap patterns",
    "S1[<,+1]": "finite unions of unanchored gap patterns",
    "BS1[<,+1,min,max]": "Boolean combinations of fully anchored gap patterns",
    "BS1[<,+1,min]": "Boolean combinations of prefix-anchored gap patterns",
    "BS1[<,+1,max]": "Boolean combinations of suffix-anchored gap patterns",
    "BS1[<,+1]": "Boolean combinations of unanchored gap patterns",
}


@dataclass(frozen=True)
class FragmentVerdict:
    fragment: FragmentId
    definable: bool
    evidence: dict

    def as_json(self) -> dict:
        return {"definable": self.definable, "evidence": self.evidence}


@dataclass(frozen=True)
class ClassificationReport:
    language: str
    epsilon_removed: bool
    data: SyntacticData
    verdicts: tuple[FragmentVerdict, ...]

    def verdict(self, fragment: FragmentId) -> FragmentVerdict:
        for v in self.verdicts:
            if v.fragment == fragment:
                return v
        raise InputError(f"no verdict for {fragment.key}")

    def as_json(self) -> dict:
        return {
            "language": self.language,
            "warningEpsilonRemoved": self.epsilon_removed,
            "semigroup": semigroup_to_json(self.data),
            "fragments": {v.fragment.key: v.as_json() for v in self.verdicts},
            "tableRow": dict(_TABLE_ROWS),
        }


def _equation_evidence(witness: EquationWitness, data: SyntacticData) -> dict:
    return {"kind": "equation-violation", **witness.as_json(data.semigroup)}


def _pair_evidence(kind: str, relation: str, pair, data: SyntacticData) -> dict:
    names = data.semigroup.names
    return {"kind": kind, "relation": relation,
            "below" if kind == "ideal-violation" else "inside": names[pair[0]],
            "above" if kind == "ideal-violation" else "outside": names[pair[1]]}


def classify_data(data: SyntacticData, language: str = "",
                  epsilon_removed: bool = False) -> ClassificationReport:
    """All eight verdicts for a prepared syntactic structure."""
    sg = data.semigroup
    g = data.green
    image = data.image_of_language
    b_ok, b_wit = check_b_half(sg)
    k_ok, k_wit = check_knast(sg)
    ideals = {
        Anchor.BOTH: (True, None),
        Anchor.LEFT: order_ideal_check(image, g.leq_r, sg.size),
        Anchor.RIGHT: order_ideal_check(image, g.leq_l, sg.size),
        Anchor.NONE: order_ideal_check(image, g.leq_j, sg.size),
    }
    unions = {
        Anchor.BOTH: (True, None),
        Anchor.LEFT: union_of_classes_check(image, g.classes_r),
        Anchor.RIGHT: union_of_classes_check(image, g.classes_l),
        Anchor.NONE: union_of_classes_check(image, g.classes_j),
    }
    relation_name = {Anchor.LEFT: "R", Anchor.RIGHT: "L", Anchor.NONE: "J"}

    verdicts = []
    for fragment in FRAGMENTS:
        anchor = fragment.anchor
        if fragment.quantifier == SIGMA1:
            eq_ok, eq_wit = b_ok, b_wit
            side_ok, side_wit = ideals[anchor]
            side_kind = "ideal-violation"
        else:
            eq_ok, eq_wit = k_ok, k_wit
            side_ok, side_wit = unions[anchor]
            side_kind = "class-violation"
        if not eq_ok:
            evidence = _equation_evidence(eq_wit, data)
        elif not side_ok:
            if side_kind == "ideal-violation":
                evidence = _pair_evidence(side_kind, relation_name[anchor],
                                          side_wit, data)
            else:
                cls, inside, outside = side_wit
                evidence = {"kind": side_kind,
                            "relation": relation_name[anchor],
                            "class": [sg.names[x] for x in cls],
                            "inside": sg.names[inside],
                            "outside": sg.names[outside]}
        else:
            evidence = {"kind": "conditions-hold"}
        verdicts.append(FragmentVerdict(fragment, eq_ok and side_ok, evidence))

    report = ClassificationReport(language, epsilon_removed, data, tuple(verdicts))
    _assert_monotone(report)
    return report


def _assert_monotone(report: ClassificationReport) -> None:
    """Definability only grows when predicates or Boolean structure are
    added; a violation would falsify the implementation."""
    def ok(q, sig):
        return report.verdict(FragmentId(q, frozenset(sig))).definable

    for q in (SIGMA1, BSIGMA1):
        if ok(q, set()):
            assert ok(q, {"min"}) and ok(q, {"max"}), "anchored fragments shrink"
        if ok(q, {"min"}) or ok(q, {"max"}):
            assert ok(q, {"min", "max"}), "anchored fragments shrink"
    for s in ({"min", "max"}, {"min"}, {"max"}, set()):
        if ok(SIGMA1, s):
            assert ok(BSIGMA1, s), "Boolean closure shrinks"


def classify_regex(text: str, alphabet: Alphabet) -> ClassificationReport:
    d, eps = D.compile_text(text, alphabet)
    return classify_data(syntactic(d), language=text, epsilon_removed=eps)


def classify_dfa_json(json_text: str) -> ClassificationReport:
    d, eps = D.load_dfa_json(json_text)
    return classify_data(syntactic(d), language="<dfa>", epsilon_removed=eps)


# --- constructive descriptions ----------------------------------------------

@dataclass(frozen=True)
class SigmaDescription:
    fragment: FragmentId
    cover: Cover
    formula: Exists

    def as_json(self) -> dict:
        from .logic import formula_text
        return {"fragment": self.fragment.key,
                "cover": self.cover.as_json(),
                "formula": formula_text(self.formula),
                "verified": self.cover.verified}


@dataclass(frozen=True)
class BooleanFragmentDescription:
    fragment: FragmentId
    description: BooleanDescription
    formula: FormulaAst

    def as_json(self) -> dict:
        from .logic import formula_text
        return {"fragment": self.fragment.key,
                "description": self.description.as_json(),
                "formula": formula_text(self.formula),
                "verified": self.description.verified}


def explain(report: ClassificationReport, fragment: FragmentId,
            degree_cap: int = 4, block_cap: int = 4):
    """A constructive description for a fragment the language belongs to:
    a verified cover plus one sentence for the existential fragments, a
    Boolean combination of monomials and of sentences for the others."""
    verdict = report.verdict(fragment)
    if not verdict.definable:
        raise PreconditionError(
            f"not definable in {fragment.key}: {verdict.evidence}")
    anchor = fragment.anchor
    if fragment.quantifier == SIGMA1:
        cov = cover(report.data, anchor)
        formula = union_formula([from_monomial(m) for m in cov.monomials])
        return SigmaDescription(fragment, cov, formula)
    desc = boolean_combination(report.data, anchor, degree_cap, block_cap)
    disjuncts = []
    for bucket in desc.buckets:
        positives = set(bucket)
        parts: list[FormulaAst] = [from_monomial(m) for m in bucket]
        parts += [Not(from_monomial(m)) for m in desc.family if m not in positives]
        disjuncts.append(And(tuple(parts)) if len(parts) != 1 else parts[0])
    formula: FormulaAst = Or(tuple(disjuncts)) if len(disjuncts) != 1 else disjuncts[0]
    return BooleanFragmentDescription(fragment, desc, formula)


# --- golden self-test ---------------------------------------------------------

@dataclass(frozen=True)
class SelftestEntry:
    name: str
    regex: str
    expected: dict[str, bool]


@dataclass(frozen=True)
class SelftestReport:
    entries: tuple[tuple[str, bool, str], ...]  # (name, matched, detail)

    @property
    def passed(self) -> bool:
        return all(matched for _, matched, _ in self.entries)

    def as_json(self) -> dict:
        return {"passed": self.passed,
                "entries": [{"name": n, "matched": m, "detail": d}
                            for n, m, d in self.entries]}


def decidability_selftest(corpus, alphabet: Alphabet) -> SelftestReport:
    """Classify every corpus language and compare with its stored verdicts."""
    entries = []
    for entry in corpus:
        report = classify_regex(entry.regex, alphabet)
        got = {v.fragment.key: v.definable for v in report.verdicts}
        mismatches = {k: (entry.expected[k], got[k])
                      for k in entry.expected if entry.expected[k] != got[k]}
        if mismatches:
            detail = "; ".join(
                f"{k}: expected {want}, got {have}"
                for k, (want, have) in sorted(mismatches.items()))
            entries.append((entry.name, False, detail))
        else:
            entries.append((entry.name, True, ""))
    return SelftestReport(tuple(entries))
