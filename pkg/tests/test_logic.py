"""Sentence evaluation, monomial translations, and the s-expression format."""

import itertools
import random

import pytest

from dotdepth import dfa as D
from dotdepth import logic as L
from dotdepth.errors import EmptyWordError, InputError, PreconditionError
from dotdepth.monomials import Gap, Monomial, expand_plus, member, to_dfa
from dotdepth.words import Alphabet, enumerate_words

AB = Alphabet.of("ab")
N, ST, PL = Gap.NONE, Gap.STAR, Gap.PLUS


def mono(blocks, gaps):
    return Monomial.make(tuple(blocks), tuple(gaps))


def naive_eval(f, w):
    """Oracle: enumerate every assignment of every variable."""
    if isinstance(f, L.Exists):
        for combo in itertools.product(range(len(w)), repeat=len(f.variables)):
            assignment = dict(zip(f.variables, combo))
            if L.eval_matrix(f.matrix, L._word_atom_eval(w, assignment)) is True:
                return True
        return False
    if isinstance(f, L.Not):
        return not naive_eval(f.inner, w)
    if isinstance(f, L.And):
        return all(naive_eval(g, w) for g in f.items)
    return any(naive_eval(g, w) for g in f.items)


EXISTS_A = L.Exists(("x",), L.LabelAtom("x", "a"))
EXISTS_A_MIN = L.Exists(("x",), L.And((L.LabelAtom("x", "a"), L.MinAtom("x"))))


class TestEval:
    def test_basic(self):
        assert L.eval_formula(EXISTS_A, "ba") is True
        assert L.eval_formula(EXISTS_A_MIN, "ba") is False
        assert L.eval_formula(EXISTS_A_MIN, "ab") is True

    def test_successor(self):
        f = L.Exists(("x", "y"),
                     L.And((L.LabelAtom("x", "a"), L.LabelAtom("y", "b"),
                            L.Succ("y", "x"))))
        assert L.eval_formula(f, "ab") is True
        assert L.eval_formula(f, "ba") is False

    def test_empty_word(self):
        with pytest.raises(EmptyWordError):
            L.eval_formula(EXISTS_A, "")

    def test_boolean_prefix(self):
        f = L.And((EXISTS_A, L.Not(EXISTS_A_MIN)))
        assert L.eval_formula(f, "ba") is True
        assert L.eval_formula(f, "ab") is False

    def test_matches_naive_enumeration(self):
        rng = random.Random(3)
        variables = ("x1", "x2", "x3")

        def random_matrix(depth):
            if depth == 0 or rng.random() < 0.4:
                kind = rng.randrange(7)
                v1, v2 = rng.choice(variables), rng.choice(variables)
                return [L.Less(v1, v2), L.Succ(v1, v2), L.Eq(v1, v2),
                        L.MinAtom(v1), L.MaxAtom(v1),
                        L.LabelAtom(v1, rng.choice("ab")), L.Top()][kind]
            kind = rng.randrange(3)
            if kind == 0:
                return L.Not(random_matrix(depth - 1))
            items = tuple(random_matrix(depth - 1) for _ in range(2))
            return L.And(items) if kind == 1 else L.Or(items)

        for _ in range(40):
            f = L.Exists(variables, random_matrix(3))
            for w in enumerate_words(AB, 4):
                assert L.eval_formula(f, w) == naive_eval(f, w), (f, w)


class TestFromMonomial:
    def test_unanchored_factor(self):
        f = L.from_monomial(mono(["ab"], [ST, ST]))
        assert f == L.Exists(("x1", "x2"),
                             L.And((L.LabelAtom("x1", "a"), L.LabelAtom("x2", "b"),
                                    L.Succ("x2", "x1"))))
        assert L.signature_of(f) == frozenset()

    def test_left_anchored(self):
        f = L.from_monomial(mono(["a"], [N, ST]))
        assert f == L.Exists(("x1",), L.And((L.LabelAtom("x1", "a"), L.MinAtom("x1"))))
        assert L.signature_of(f) == frozenset({"min"})

    def test_exact_single_letter(self):
        f = L.from_monomial(mono(["a"], [N, N]))
        assert L.signature_of(f) == frozenset({"min", "max"})
        assert L.eval_formula(f, "a") is True
        assert L.eval_formula(f, "ab") is False

    def test_plus_gaps_rejected(self):
        with pytest.raises(PreconditionError):
            L.from_monomial(mono(["a", "b"], [N, PL, N]))

    def test_round_trip_random_star_monomials(self):
        rng = random.Random(17)
        for _ in range(60):
            nblocks = rng.randint(0, 3)
            blocks = ["".join(rng.choice("ab") for _ in range(rng.randint(1, 2)))
                      for _ in range(nblocks)]
            gaps = [rng.choice([N, ST])] + [ST] * max(0, nblocks - 1)
            gaps += [rng.choice([N, ST])] if nblocks else []
            if not blocks:
                gaps = [ST]
            m = mono(blocks, gaps)
            f = L.from_monomial(m)
            for w in enumerate_words(AB, 6):
                assert L.eval_formula(f, w) == member(m, w), (m, w)

    def test_minimal_signature_by_anchoring(self):
        assert L.signature_of(L.from_monomial(mono(["a"], [ST, ST]))) == frozenset()
        assert L.signature_of(L.from_monomial(mono(["a"], [ST, N]))) == {"max"}
        assert L.signature_of(L.from_monomial(mono(["a", "b"], [N, ST, N]))) == \
            {"min", "max"}


class TestUnionFormula:
    def test_single(self):
        assert L.union_formula([EXISTS_A]) == EXISTS_A

    def test_union_of_prefixes(self):
        fa = L.from_monomial(mono(["a"], [N, ST]))
        fb = L.from_monomial(mono(["b"], [N, ST]))
        f = L.union_formula([fa, fb])
        for w in enumerate_words(AB, 6):
            assert L.eval_formula(f, w) is True  # every word starts with a or b

    def test_union_semantics(self):
        f1 = L.from_monomial(mono(["ab"], [ST, ST]))
        f2 = L.from_monomial(mono(["b"], [N, ST]))
        f = L.union_formula([f1, f2])
        for w in enumerate_words(AB, 6):
            want = L.eval_formula(f1, w) or L.eval_formula(f2, w)
            assert L.eval_formula(f, w) == want

    def test_empty_union_unsatisfiable(self):
        f = L.union_formula([])
        assert all(not L.eval_formula(f, w) for w in enumerate_words(AB, 4))


class TestSigmaToMonomials:
    def union_member(self, monos, w):
        return any(member(m, w) for m in monos)

    def test_contains_letter_a(self):
        out = L.sigma1_to_monomials(EXISTS_A, AB)
        assert all(m.degree <= 3 for m in out)
        for w in enumerate_words(AB, 6):
            assert self.union_member(out, w) == ("a" in w)

    def test_top_is_everything(self):
        out = L.sigma1_to_monomials(L.Exists(("x",), L.Top()), AB)
        for w in enumerate_words(AB, 5):
            assert self.union_member(out, w)

    def test_round_trip_through_dfa(self):
        m = mono(["ab"], [ST, ST])
        out = L.sigma1_to_monomials(L.from_monomial(m), AB)
        got = D.empty_language(AB)
        for plus_monomial in out:
            for star_monomial in expand_plus(plus_monomial, AB):
                got = D.minimize(D.union(got, to_dfa(star_monomial, AB)))
        assert D.equivalent(got, to_dfa(m, AB)) == (True, None)

    def test_boolean_prefix_rejected(self):
        with pytest.raises(PreconditionError):
            L.sigma1_to_monomials(L.Not(EXISTS_A), AB)

    def test_degree_bound_and_equivalence_random(self):
        rng = random.Random(23)
        variables = ("x1", "x2")

        def random_matrix(depth):
            if depth == 0 or rng.random() < 0.5:
                v1, v2 = rng.choice(variables), rng.choice(variables)
                return rng.choice([L.Less(v1, v2), L.Succ(v1, v2),
                                   L.MinAtom(v1), L.MaxAtom(v1),
                                   L.LabelAtom(v1, rng.choice("ab")), L.Top()])
            kind = rng.randrange(3)
            if kind == 0:
                return L.Not(random_matrix(depth - 1))
            items = tuple(random_matrix(depth - 1) for _ in range(2))
            return L.And(items) if kind == 1 else L.Or(items)

        for _ in range(15):
            f = L.Exists(variables, random_matrix(2))
            out = L.sigma1_to_monomials(f, AB)
            assert all(m.degree <= 4 and m.block_count <= 4 for m in out)
            for w in enumerate_words(AB, 6):
                assert self.union_member(out, w) == L.eval_formula(f, w), (f, w)


class TestTextFormat:
    def test_spec_shapes(self):
        f = L.parse_formula(
            "(exists (x1 x2) (and (label x1 a) (label x2 b) (succ x2 x1)))")
        assert isinstance(f, L.Exists)
        assert L.eval_formula(f, "ab") is True

    def test_round_trip(self):
        shapes = [
            EXISTS_A,
            L.Exists(("x", "y"), L.Or((L.Less("x", "y"), L.Not(L.Eq("x", "y"))))),
            L.And((EXISTS_A, L.Not(EXISTS_A_MIN))),
            L.Exists(("x",), L.Top()),
        ]
        for f in shapes:
            assert L.parse_formula(L.formula_text(f)) == f

    def test_malformed(self):
        for text in ["(exists (x)", "(exists (x) (label y a))", "(frob x)",
                     "(top) junk", "(exists x (top))"]:
            with pytest.raises(InputError):
                L.parse_formula(text)
