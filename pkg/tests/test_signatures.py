"""Monomial signatures, refinement degrees, and Boolean descriptions."""

import random

import pytest

from dotdepth import dfa as D
from dotdepth import semigroup as S
from dotdepth.errors import PreconditionError
from dotdepth.monomials import Anchor, Gap, Monomial, member
from dotdepth.signatures import (boolean_combination, family,
                                 minimal_refining_degree, refine_check,
                                 refinement_degree_bound, signature)
from dotdepth.words import Alphabet, enumerate_words

AB = Alphabet.of("ab")
N, ST, PL = Gap.NONE, Gap.STAR, Gap.PLUS


def mono(blocks, gaps):
    return Monomial.make(tuple(blocks), tuple(gaps))


def syn(regex_text):
    d, _ = D.compile_text(regex_text, AB)
    return S.syntactic(d)


class TestSignature:
    def test_unanchored_spec_set(self):
        got = set(signature("ab", Anchor.NONE, 2, 2, ST).members)
        assert got == {
            mono([], [ST]),
            mono(["a"], [ST, ST]),
            mono(["b"], [ST, ST]),
            mono(["ab"], [ST, ST]),
            mono(["a", "b"], [ST, ST, ST]),
        }

    def test_distinguishes_on_factors(self):
        sig_ab = signature("ab", Anchor.NONE, 2, 2, ST).key()
        sig_aab = signature("aab", Anchor.NONE, 2, 2, ST).key()
        assert sig_ab != sig_aab
        assert mono(["aa"], [ST, ST]) in sig_aab

    def test_degree_zero(self):
        for flavor in Anchor:
            got = signature("ab", flavor, 0, 2, ST).members
            assert got == (mono([], [ST]),)

    def test_eroded_boundaries_present(self):
        got = set(signature("ab", Anchor.BOTH, 1, 1, ST).members)
        assert mono(["a"], [N, ST]) in got   # prefix shape, empty last block
        assert mono(["b"], [ST, N]) in got
        assert mono(["a"], [ST, ST]) in got

    def test_matches_family_filter(self):
        rng = random.Random(41)
        for _ in range(25):
            flavor = rng.choice(list(Anchor))
            kind = rng.choice([ST, PL])
            d_cap = rng.randint(0, 3)
            b_cap = rng.randint(0, 3)
            w = "".join(rng.choice("ab") for _ in range(rng.randint(1, 5)))
            fam = family(AB, flavor, d_cap, b_cap, kind)
            want = {m for m in fam if member(m, w)}
            got = set(signature(w, flavor, d_cap, b_cap, kind).members)
            assert got == want, (flavor, kind, d_cap, b_cap, w)

    def test_monotone_in_caps(self):
        for w in ["ab", "aab", "bba"]:
            small = set(signature(w, Anchor.BOTH, 2, 2, ST).members)
            bigger = set(signature(w, Anchor.BOTH, 3, 3, ST).members)
            assert small <= bigger

    def test_plus_kind(self):
        got = set(signature("aab", Anchor.BOTH, 2, 3, PL).members)
        assert mono(["a", "b"], [N, PL, N]) in got
        assert mono(["a", "b"], [N, PL, N]) not in \
            set(signature("ab", Anchor.BOTH, 2, 3, PL).members)


class TestRefineCheck:
    def test_trivial_language(self):
        data = syn(".*")
        for flavor in Anchor:
            assert refine_check(data, flavor, 0, 0, 4) == (True, None)

    def test_factor_ab_passes_at_moderate_caps(self):
        data = syn(".*ab.*")
        ok, _ = refine_check(data, Anchor.BOTH, 6, 4, 7)
        assert ok

    def test_factor_ab_fails_at_tiny_caps(self):
        data = syn(".*ab.*")
        ok, witness = refine_check(data, Anchor.BOTH, 1, 1, 4)
        assert not ok
        u, v = witness
        assert signature(u, Anchor.BOTH, 1, 1, ST).key() == \
            signature(v, Anchor.BOTH, 1, 1, ST).key()
        assert data.eval_text(u) != data.eval_text(v)

    def test_precondition_knast(self):
        with pytest.raises(PreconditionError):
            refine_check(syn("(aa)+"), Anchor.BOTH, 2, 2, 4)


class TestMinimalRefiningDegree:
    def test_trivial(self):
        assert minimal_refining_degree(syn(".*"), Anchor.BOTH, 6) == 0

    def test_prefix_a_below_bound(self):
        data = syn("a.*")
        d = minimal_refining_degree(data, Anchor.BOTH, 7)
        assert d < refinement_degree_bound(Anchor.BOTH, data.semigroup.size)
        assert d == 1  # prefix letter plus erosion separates everything

    def test_factor_ab_unanchored_below_bound(self):
        data = syn(".*ab.*")
        d = minimal_refining_degree(data, Anchor.NONE, 7)
        assert d < refinement_degree_bound(Anchor.NONE, data.semigroup.size)

    def test_bounds_table(self):
        assert refinement_degree_bound(Anchor.BOTH, 3) == 36
        assert refinement_degree_bound(Anchor.LEFT, 3) == 72
        assert refinement_degree_bound(Anchor.RIGHT, 3) == 72
        assert refinement_degree_bound(Anchor.NONE, 3) == 108


class TestBooleanCombination:
    def test_trivial_language(self):
        desc = boolean_combination(syn(".*"), Anchor.NONE, 0, 0)
        assert desc.verified
        assert desc.buckets == ((mono([], [ST]),),)

    def test_ab_plus_both_flavor(self):
        desc = boolean_combination(syn("(ab)+"), Anchor.BOTH, 2, 2)
        assert desc.verified, desc.witness
        d, _ = D.compile_text("(ab)+", AB)
        for w in enumerate_words(AB, 6):
            assert desc.holds(w) == D.accepts(d, w)

    def test_prefix_a_left_flavor(self):
        desc = boolean_combination(syn("a.*"), Anchor.LEFT, 1, 1)
        assert desc.verified
        d, _ = D.compile_text("a.*", AB)
        for w in enumerate_words(AB, 6):
            assert desc.holds(w) == D.accepts(d, w)

    def test_unverified_reports_witness(self):
        desc = boolean_combination(syn("(ab)+"), Anchor.BOTH, 1, 1)
        assert not desc.verified
        assert desc.witness is not None

    def test_precondition_class_condition(self):
        # prefix language: image is not a union of L-classes
        with pytest.raises(PreconditionError):
            boolean_combination(syn("a.*"), Anchor.RIGHT, 2, 2)

    def test_precondition_knast(self):
        with pytest.raises(PreconditionError):
            boolean_combination(syn("(aa)+"), Anchor.BOTH, 2, 2)

    def test_json_shape(self):
        desc = boolean_combination(syn(".*"), Anchor.NONE, 0, 0)
        data = desc.as_json()
        assert set(data) == {"combination", "verified", "witness",
                             "degreeCap", "blockCap"}
        assert "or" in data["combination"]
