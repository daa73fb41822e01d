"""Property suites runnable from the command line and the acceptance tests.

Each suite exercises one guaranteed property over the built-in corpus (or a
seeded random sample): the word-combinatorics constructions validate their
invariants, the equation-class inclusions hold, refinement degrees stay
below their ceilings, translations round-trip, covers verify.  A suite
reports one line per item; preconditions that rule an item out count as
skips, not failures.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import dfa as D
from . import identities as I
from . import logic as L
from .corpus import CORPUS, CORPUS_ALPHABET
from .errors import InputError, PreconditionError, ResourceError
from .monomials import (Anchor, Gap, Monomial, cover, expand_plus, member,
                        monomial_text, right_quotient_monomial, to_dfa)
from .semigroup import (FiniteSemigroup, SyntacticData, stabilized_factorization,
                        stabilized_prefix, syntactic)
from .signatures import minimal_refining_degree, refinement_degree_bound
from .words import Alphabet, enumerate_words

# the two-element cyclic group exercises the failing side of every equation
CYCLIC_2 = FiniteSemigroup.from_table([[0, 1], [1, 0]], names=["1", "g"],
                                      order={(0, 0), (1, 1)})


@dataclass
class SuiteOutcome:
    suite: str
    lines: list[str] = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, label: str, ok: bool, detail: str = "") -> None:
        mark = "pass" if ok else "FAIL"
        self.lines.append(f"{mark}: {label}" + (f" ({detail})" if detail else ""))
        if not ok:
            self.failures += 1

    def skip(self, label: str, reason: str) -> None:
        self.lines.append(f"skip: {label} ({reason})")


def corpus_syntactic() -> list[tuple[str, SyntacticData]]:
    out = []
    for entry in CORPUS:
        d, _ = D.compile_text(entry.regex, CORPUS_ALPHABET)
        out.append((entry.name, syntactic(d)))
    return out


def random_star_monomial(rng: random.Random, alphabet: Alphabet,
                         max_degree: int = 4, max_blocks: int = 3) -> Monomial:
    """A random canonical STAR-gap monomial in any of the four anchorings."""
    while True:
        count = rng.randint(0, max_blocks)
        if count == 0:
            return Monomial.make((), (Gap.STAR,))
        lengths = []
        budget = max_degree
        for _ in range(count):
            lengths.append(rng.randint(1, max(1, budget - (count - len(lengths) - 1))))
            budget -= lengths[-1]
            if budget <= 0:
                break
        blocks = ["".join(rng.choice(alphabet.letters) for _ in range(k))
                  for k in lengths]
        gaps = [rng.choice([Gap.NONE, Gap.STAR])] \
            + [Gap.STAR] * (len(blocks) - 1) + [rng.choice([Gap.NONE, Gap.STAR])]
        m = Monomial.make(blocks, gaps)
        if m.degree <= max_degree:
            return m


def random_sentence(rng: random.Random, alphabet: Alphabet,
                    max_vars: int = 3, depth: int = 3) -> L.Exists:
    variables = tuple(f"x{i + 1}" for i in range(rng.randint(1, max_vars)))

    def matrix(d: int) -> L.Matrix:
        if d == 0 or rng.random() < 0.45:
            v1, v2 = rng.choice(variables), rng.choice(variables)
            return rng.choice([
                L.Less(v1, v2), L.Succ(v1, v2), L.Eq(v1, v2), L.MinAtom(v1),
                L.MaxAtom(v1), L.LabelAtom(v1, rng.choice(alphabet.letters)),
                L.Top(),
            ])
        kind = rng.randrange(3)
        if kind == 0:
            return L.Not(matrix(d - 1))
        items = tuple(matrix(d - 1) for _ in range(2))
        return L.And(items) if kind == 1 else L.Or(items)

    return L.Exists(variables, matrix(depth))


# --- suites -------------------------------------------------------------------

def suite_prefix_stabilizer(max_size: int = 4, max_word: int = 6) -> SuiteOutcome:
    """Every long-enough word over a small semigroup has a short prefix fixed
    on the right by an idempotent."""
    out = SuiteOutcome("lemma1")
    for name, data in corpus_syntactic():
        sg = data.semigroup
        if sg.size > max_size:
            out.skip(name, f"size {sg.size} above {max_size}")
            continue
        checked = 0
        for length in range(sg.size, max_word + 1):
            for word in itertools.product(range(sg.size), repeat=length):
                plen, e = stabilized_prefix(sg, word)
                value = sg.eval_word(word[:plen])
                if not (1 <= plen <= sg.size and sg.times(value, e) == value
                        and sg.times(e, e) == e):
                    out.record(name, False, f"word {word}")
                    break
                checked += 1
            else:
                continue
            break
        else:
            out.record(name, True, f"{checked} words")
    return out


def suite_inclusions() -> SuiteOutcome:
    """The ordered equation class sits inside the KNAST class inside LR."""
    out = SuiteOutcome("lemma2")
    for name, data in corpus_syntactic():
        report = I.inclusion_chain_report(data.semigroup)
        out.record(name, True,
                   f"B_HALF={report.b_half} KNAST={report.knast} LR={report.lr}")
    report = I.inclusion_chain_report(CYCLIC_2)
    out.record("cyclic-group-2", (report.b_half, report.knast, report.lr)
               == (False, False, False))
    return out


def suite_factorization(max_size: int = 4, max_word: int = 6) -> SuiteOutcome:
    """Stabilized factorizations exist and satisfy all their invariants."""
    out = SuiteOutcome("lemma7")
    semis = corpus_syntactic() + [("cyclic-group-2", None)]
    for name, data in semis:
        sg = data.semigroup if data is not None else CYCLIC_2
        if sg.size > max_size:
            out.skip(name, f"size {sg.size} above {max_size}")
            continue
        checked = 0
        bad = None
        for length in range(1, max_word + 1):
            for word in itertools.product(range(sg.size), repeat=length):
                fact = stabilized_factorization(sg, word)
                problems = fact.violations(sg, word)
                if problems:
                    bad = (word, problems)
                    break
                checked += 1
            if bad:
                break
        out.record(name, bad is None,
                   f"{checked} words" if bad is None else str(bad))
    return out


def _suite_over_corpus(token: str, runner) -> SuiteOutcome:
    out = SuiteOutcome(token)
    for name, data in corpus_syntactic():
        try:
            report = runner(data)
        except (PreconditionError, ResourceError) as exc:
            out.skip(name, str(exc))
            continue
        out.record(name, report.passed, f"{report.checked} checks"
                   if report.passed else report.detail)
    return out


def suite_r_stability() -> SuiteOutcome:
    return _suite_over_corpus("lemma8", lambda d: I.r_stability_report(d.semigroup))


def suite_descent_factor() -> SuiteOutcome:
    return _suite_over_corpus("lemma15",
                              lambda d: I.descent_factor_report(d.semigroup))


def suite_context_swap() -> SuiteOutcome:
    return _suite_over_corpus("lemma17",
                              lambda d: I.context_swap_report(d.semigroup))


def suite_quotient(samples: int = 100, seed: int = 0) -> SuiteOutcome:
    """Random tail-freezing quotients satisfy membership, inclusion into the
    tail-restricted language, and the degree bound."""
    out = SuiteOutcome("lemma20")
    rng = random.Random(seed)
    alphabet = CORPUS_ALPHABET
    produced = 0
    while produced < samples:
        nblocks = rng.randint(1, 3)
        blocks = ["".join(rng.choice("ab") for _ in range(rng.randint(1, 2)))
                  for _ in range(nblocks)]
        gaps = [rng.choice([Gap.NONE, Gap.STAR])] + [Gap.STAR] * (nblocks - 1) \
            + [rng.choice([Gap.NONE, Gap.STAR])]
        p = Monomial.make(blocks, gaps)
        w = ""
        for i, b in enumerate(p.blocks):
            pad = "".join(rng.choice("ab") for _ in range(rng.randint(0, 2)))
            w += (pad if p.gaps[i] != Gap.NONE else "") + b
        if p.right_gap != Gap.NONE:
            w += "".join(rng.choice("ab") for _ in range(rng.randint(0, 2)))
        if len(w) < 2:
            continue
        cut = rng.randint(1, len(w) - 1)
        u, q = w[:cut], w[cut:]
        produced += 1
        result = right_quotient_monomial(p, u, q)
        ok = member(result, w) and result.degree <= p.degree + len(q)
        for z in enumerate_words(alphabet, len(w) + 4):
            if not ok:
                break
            if member(result, z) and not (member(p, z) and z.endswith(q)):
                ok = False
        if not ok:
            out.record(f"triple {monomial_text(p)!r} u={u!r} q={q!r}", False)
    out.record(f"{produced} random triples", out.failures == 0)
    return out


def suite_refinement(flavor: Anchor, token: str, max_len: int = 7) -> SuiteOutcome:
    """Minimal refining degrees stay strictly below the guaranteed bound."""
    out = SuiteOutcome(token)
    for name, data in corpus_syntactic():
        try:
            d = minimal_refining_degree(data, flavor, max_len)
        except PreconditionError as exc:
            out.skip(name, str(exc))
            continue
        bound = refinement_degree_bound(flavor, data.semigroup.size)
        out.record(name, d < bound, f"degree {d} < bound {bound}")
    return out


def suite_roundtrip_logic(monomial_samples: int = 50, sentence_samples: int = 20,
                          seed: int = 0, max_word: int = 8) -> SuiteOutcome:
    """Sentences from monomials and monomials from sentences both preserve
    the language on all short words."""
    out = SuiteOutcome("roundtrip-logic")
    rng = random.Random(seed)
    alphabet = CORPUS_ALPHABET
    words = list(enumerate_words(alphabet, max_word))
    bad = 0
    for _ in range(monomial_samples):
        m = random_star_monomial(rng, alphabet)
        f = L.from_monomial(m)
        if any(L.eval_formula(f, w) != member(m, w) for w in words):
            bad += 1
            out.record(f"monomial {monomial_text(m)!r}", False)
    out.record(f"{monomial_samples} monomials into sentences", bad == 0)
    bad = 0
    for _ in range(sentence_samples):
        f = random_sentence(rng, alphabet)
        monos = L.sigma1_to_monomials(f, alphabet)
        limit = len(f.variables) + 2
        if any(m.degree > limit or m.block_count > limit for m in monos):
            bad += 1
            out.record(f"degree bound for {L.formula_text(f)}", False)
            continue
        if any(any(member(m, w) for m in monos) != L.eval_formula(f, w)
               for w in words):
            bad += 1
            out.record(f"sentence {L.formula_text(f)}", False)
    out.record(f"{sentence_samples} sentences into monomial unions", bad == 0)
    return out


def suite_roundtrip_monomial(samples: int = 40, seed: int = 0,
                             max_word: int = 8) -> SuiteOutcome:
    """Membership, compiled automata, and PLUS-gap expansion agree."""
    out = SuiteOutcome("roundtrip-monomial")
    rng = random.Random(seed)
    alphabet = CORPUS_ALPHABET
    words = list(enumerate_words(alphabet, max_word))
    bad = 0
    for _ in range(samples):
        m = random_star_monomial(rng, alphabet)
        d = to_dfa(m, alphabet)
        if any(member(m, w) != D.accepts(d, w) for w in words):
            bad += 1
            out.record(f"automaton for {monomial_text(m)!r}", False)
    out.record(f"{samples} compiled monomials", bad == 0)
    bad = 0
    for _ in range(samples // 2):
        count = rng.randint(1, 3)
        blocks = ["".join(rng.choice("ab") for _ in range(rng.randint(0, 2)))
                  for _ in range(count)]
        gaps = [rng.choice([Gap.NONE, Gap.PLUS])] + [Gap.PLUS] * (count - 1) \
            + [rng.choice([Gap.NONE, Gap.PLUS])]
        m = Monomial.make(blocks, gaps)
        expanded = expand_plus(m, alphabet)
        if any(member(m, w) != any(member(x, w) for x in expanded)
               for w in words):
            bad += 1
            out.record(f"expansion of {monomial_text(m)!r}", False)
    out.record(f"{samples // 2} expanded patterns", bad == 0)
    return out


def suite_cover() -> SuiteOutcome:
    """Every eligible corpus language gets a verified in-bounds cover."""
    out = SuiteOutcome("cover")
    for name, data in corpus_syntactic():
        try:
            c = cover(data, Anchor.BOTH)
        except PreconditionError as exc:
            out.skip(name, str(exc))
            continue
        out.record(name, c.verified,
                   f"{len(c.monomials)} patterns, degrees "
                   f"{[m.degree for m in c.monomials]} < {c.bound_degree}")
    return out


SUITES = {
    "lemma1": suite_prefix_stabilizer,
    "lemma2": suite_inclusions,
    "lemma7": suite_factorization,
    "lemma8": suite_r_stability,
    "lemma15": suite_descent_factor,
    "lemma17": suite_context_swap,
    "lemma20": suite_quotient,
    "cor19": lambda: suite_refinement(Anchor.BOTH, "cor19"),
    "lemma21": lambda: suite_refinement(Anchor.LEFT, "lemma21"),
    "lemma23": lambda: suite_refinement(Anchor.NONE, "lemma23"),
    "roundtrip-logic": suite_roundtrip_logic,
    "roundtrip-monomial": suite_roundtrip_monomial,
    "cover": suite_cover,
}


def run_suite(name: str, max_len: int | None = None,
              seed: int | None = None) -> SuiteOutcome:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; valid: "
                         + ", ".join(sorted(SUITES)))
    fn = SUITES[name]
    kwargs = {}
    if name in ("cor19", "lemma21", "lemma23") and max_len is not None:
        return suite_refinement({"cor19": Anchor.BOTH, "lemma21": Anchor.LEFT,
                                 "lemma23": Anchor.NONE}[name], name, max_len)
    if seed is not None and name in ("lemma20", "roundtrip-logic",
                                     "roundtrip-monomial"):
        kwargs["seed"] = seed
    return fn(**kwargs)
