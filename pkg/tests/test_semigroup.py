"""Syntactic semigroups, Green's relations, and stabilized factorizations."""

import itertools

import pytest

from dotdepth import dfa as D
from dotdepth import semigroup as S
from dotdepth.errors import PreconditionError, ResourceError
from dotdepth.words import Alphabet, enumerate_words

AB = Alphabet.of("ab")


def syn(regex_text):
    d, _ = D.compile_text(regex_text, AB)
    return S.syntactic(d)


# hand-built two-element cyclic group: 0 is the identity, 1 the generator
Z2 = S.FiniteSemigroup.from_table([[0, 1], [1, 0]], names=["1", "g"])


class TestSyntactic:
    def test_prefix_a_language(self):
        data = syn("a.*")
        sg = data.semigroup
        assert sg.size == 2
        assert sg.names == ("a", "b")
        # left-zero multiplication
        assert sg.times(0, 1) == 0 and sg.times(1, 0) == 1
        assert data.image_of_language == frozenset({0})

    def test_factor_ab_language(self):
        data = syn(".*ab.*")
        sg = data.semigroup
        assert sg.size == 4
        assert sg.names == ("a", "b", "ab", "ba")
        ab = 2
        # [ab] is a zero element
        assert all(sg.times(ab, x) == ab and sg.times(x, ab) == ab
                   for x in range(sg.size))
        assert data.image_of_language == frozenset({ab})
        # [aba] = [ab] and [bab] = [ab]
        assert data.eval_text("aba") == ab and data.eval_text("bab") == ab

    def test_all_nonempty_words(self):
        data = syn(".*")
        assert data.semigroup.size == 1
        assert data.image_of_language == frozenset({0})

    def test_cap(self):
        with pytest.raises(ResourceError):
            S.syntactic(syn(".*ab.*").source_dfa, cap=2)

    def test_recognition_on_corpus(self):
        # evaluation lands in the image exactly on the language, words <= 8
        for text in ["a.*", ".*ab.*", "(ab)+", "a.+", ".*a"]:
            d, _ = D.compile_text(text, AB)
            data = S.syntactic(d)
            for w in enumerate_words(AB, 8):
                assert (data.eval_text(w) in data.image_of_language) == D.accepts(d, w)

    def test_letter_image_generates(self):
        data = syn("(ab)+")
        sg = data.semigroup
        reached = set(data.letter_image)
        frontier = list(reached)
        while frontier:
            x = frontier.pop()
            for g in data.letter_image:
                y = sg.times(x, g)
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        assert reached == set(range(sg.size))


class TestSyntacticOrder:
    def test_prefix_a_order(self):
        sg = syn("a.*").semigroup
        assert sg.leq(0, 1)        # [a] <= [b]
        assert not sg.leq(1, 0)

    def test_zero_is_minimum(self):
        data = syn(".*ab.*")
        sg = data.semigroup
        ab = 2
        assert all(sg.leq(ab, x) for x in range(sg.size))

    def test_trivial(self):
        sg = syn(".*").semigroup
        assert sg.order == frozenset({(0, 0)})

    def test_order_soundness_by_context_enumeration(self):
        # x <= y and u y v in L imply u x v in L, contexts up to length 3
        for text in ["a.*", ".*ab.*", "(ab)+", ".*a"]:
            data = syn(text)
            sg = data.semigroup
            contexts = [""] + list(enumerate_words(AB, 3))
            for x, y in sg.order:
                for u in contexts:
                    for v in contexts:
                        wy = u + sg.names[y] + v
                        wx = u + sg.names[x] + v
                        if data.eval_text(wy) in data.image_of_language:
                            assert data.eval_text(wx) in data.image_of_language

    def test_compatibility_and_associativity(self):
        for text in ["a.*", ".*ab.*", "(ab)+", "(aa)+", "a.+"]:
            sg = syn(text).semigroup
            assert sg.check_associative() is None
            assert sg.check_order_compatible() is None

    def test_image_is_order_ideal(self):
        for text in ["a.*", ".*ab.*", "(ab)+", "(aa)+", "a.+", ".*a", "a.*b"]:
            data = syn(text)
            ok, _ = S.order_ideal_check(data.image_of_language,
                                        data.semigroup.order, data.semigroup.size)
            assert ok


class TestIdempotentsOmega:
    def test_left_zero_all_idempotent(self):
        assert syn("a.*").semigroup.idempotents == (0, 1)

    def test_factor_ab(self):
        sg = syn(".*ab.*").semigroup
        assert set(sg.idempotents) == {0, 1, 2}  # a, b, ab but not ba

    def test_omega(self):
        sg = syn(".*ab.*").semigroup
        for e in sg.idempotents:
            assert sg.omega(e) == e
        assert sg.omega(3) == 2  # [ba]^2 = [ab]
        assert Z2.omega(1) == 0  # generator's unique idempotent power is 1


def brute_green(sg):
    """Independent of green(): direct quantifier over S adjoined with 1."""
    n = sg.size
    opts = list(range(n)) + [None]  # None is the adjoined neutral element

    def times(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return sg.times(a, b)

    leq_r = {(x, y) for x in range(n) for y in range(n)
             if any(times(y, t) == x for t in opts)}
    leq_l = {(x, y) for x in range(n) for y in range(n)
             if any(times(s, y) == x for s in opts)}
    leq_j = {(x, y) for x in range(n) for y in range(n)
             if any(times(times(s, y), t) == x for s in opts for t in opts)}
    return leq_r, leq_l, leq_j


class TestGreen:
    def test_prefix_a_classes(self):
        g = syn("a.*").green
        assert g.classes_r == ((0,), (1,))
        assert g.classes_l == ((0, 1),)
        assert g.classes_j == ((0, 1),)

    def test_trivial(self):
        g = syn(".*").green
        assert g.classes_r == g.classes_l == g.classes_j == ((0,),)

    def test_ab_plus_a_R_ab(self):
        data = syn("(ab)+")
        names = data.semigroup.names
        a, ab = names.index("a"), names.index("ab")
        assert data.green.r_related(a, ab)

    def test_against_brute_force(self):
        for text in ["a.*", ".*ab.*", "(ab)+", "(aa)+", "a.+", "a.*b", ".*aa.*"]:
            data = syn(text)
            g = data.green
            r, l, j = brute_green(data.semigroup)
            assert g.leq_r == frozenset(r)
            assert g.leq_l == frozenset(l)
            assert g.leq_j == frozenset(j)
            # preorder containments
            assert g.leq_r <= g.leq_j and g.leq_l <= g.leq_j


class TestIdealAndUnionChecks:
    def test_image_r_ideal_prefix_a(self):
        data = syn("a.*")
        ok, _ = S.order_ideal_check(data.image_of_language, data.green.leq_r, 2)
        assert ok

    def test_j_ideal_violation_with_witness(self):
        data = syn("a.*")
        ok, witness = S.order_ideal_check({0}, data.green.leq_j, 2)
        assert not ok
        assert witness == (1, 0)  # [b] <=_J [a] but [b] outside

    def test_full_set_is_ideal(self):
        data = syn(".*ab.*")
        ok, _ = S.order_ideal_check(set(range(4)), data.green.leq_j, 4)
        assert ok

    def test_union_of_classes(self):
        data = syn("a.*")
        ok, _ = S.union_of_classes_check({0}, data.green.classes_r)
        assert ok
        ok, witness = S.union_of_classes_check({0}, data.green.classes_l)
        assert not ok
        assert witness == ((0, 1), 0, 1)

    def test_empty_subset(self):
        data = syn("a.*")
        assert S.union_of_classes_check(set(), data.green.classes_j) == (True, None)


class TestStabilizedPrefix:
    def test_trivial(self):
        sg = syn(".*").semigroup
        assert S.stabilized_prefix(sg, (0,)) == (1, 0)

    def test_left_zero(self):
        # left-zero: every element right-stabilizes every other, so the
        # index-order tie-break yields the first idempotent
        sg = syn("a.*").semigroup
        plen, e = S.stabilized_prefix(sg, (1, 0))
        assert (plen, e) == (1, 0)
        assert sg.times(1, e) == 1

    def test_factor_ab_word(self):
        sg = syn(".*ab.*").semigroup
        # word [b][a][b][a]: shortest stabilized prefix is [b] with e = [b]
        assert S.stabilized_prefix(sg, (1, 0, 1, 0)) == (1, 1)

    def test_precondition(self):
        sg = syn(".*ab.*").semigroup
        with pytest.raises(PreconditionError):
            S.stabilized_prefix(sg, (0,))

    def test_exhaustive_validity_small(self):
        for text in ["a.*", ".*ab.*", "(aa)+"]:
            sg = syn(text).semigroup
            n = sg.size
            for length in range(n, 7):
                for word in itertools.product(range(n), repeat=length):
                    plen, e = S.stabilized_prefix(sg, word)
                    assert 1 <= plen <= n
                    v = sg.eval_word(word[:plen])
                    assert sg.times(v, e) == v and sg.times(e, e) == e


class TestStabilizedFactorization:
    def test_trivial_single(self):
        sg = syn(".*").semigroup
        fact = S.stabilized_factorization(sg, (0,))
        assert fact.violations(sg, (0,)) == []

    def test_short_word_no_stabilizer(self):
        # in the cyclic group the generator alone is stabilized by nothing
        fact = S.stabilized_factorization(Z2, (1,))
        assert fact.m == 0 and fact.tail == (1,)

    def test_exhaustive_small(self):
        semis = [syn("a.*").semigroup, syn(".*ab.*").semigroup,
                 syn("(aa)+").semigroup, Z2]
        for sg in semis:
            assert sg.size <= 4
            for length in range(1, 7):
                for word in itertools.product(range(sg.size), repeat=length):
                    fact = S.stabilized_factorization(sg, word)
                    assert fact.violations(sg, word) == []
