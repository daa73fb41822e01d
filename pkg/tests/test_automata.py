"""Regex parsing, DFA compilation, and the DFA algebra."""

import random

import pytest

from dotdepth import dfa as D
from dotdepth import regex as rx
from dotdepth.errors import EmptyWordError, InputError, RegexSyntaxError
from dotdepth.words import Alphabet, enumerate_words, factors_of_length

AB = Alphabet.of("ab")


def words_upto(alphabet, n):
    return list(enumerate_words(alphabet, n))


class TestWords:
    def test_enumerate_order(self):
        assert words_upto(AB, 1) == ["a", "b"]
        assert words_upto(AB, 2) == ["a", "b", "aa", "ab", "ba", "bb"]
        assert words_upto(Alphabet.of("a"), 3) == ["a", "aa", "aaa"]

    def test_factors(self):
        assert factors_of_length("abab", 2) == {"ab", "ba"}
        assert factors_of_length("aaa", 1) == {"a"}
        assert factors_of_length("ab", 3) == set()

    def test_alphabet_validation(self):
        with pytest.raises(InputError):
            Alphabet.of("")
        with pytest.raises(InputError):
            Alphabet.of("aa")


class TestParse:
    def test_basic_shapes(self):
        assert rx.parse_regex("a.*", AB) == rx.Concat(rx.Letter("a"), rx.Star(rx.AnyLetter()))
        assert rx.parse_regex("(ab)+", AB) == rx.Plus(rx.Concat(rx.Letter("a"), rx.Letter("b")))

    def test_union_intersection_complement(self):
        assert rx.parse_regex("a|b", AB) == rx.Union(rx.Letter("a"), rx.Letter("b"))
        assert rx.parse_regex("[a&.]", AB) == rx.Intersect(rx.Letter("a"), rx.AnyLetter())
        assert rx.parse_regex("~a", AB) == rx.Complement(rx.Letter("a"))

    def test_syntax_error_position(self):
        with pytest.raises(RegexSyntaxError) as err:
            rx.parse_regex("a(", AB)
        assert err.value.position == 2

    def test_letter_outside_alphabet(self):
        with pytest.raises(RegexSyntaxError):
            rx.parse_regex("ac", AB)


def lang(d, n=8):
    return {w for w in words_upto(AB, n) if D.accepts(d, w)}


class TestCompile:
    def test_sigma_plus(self):
        d, eps = D.compile_text(".*", AB)
        assert eps is True
        assert d.state_count == 1
        assert lang(d, 3) == set(words_upto(AB, 3))

    def test_a_sigma_star_three_states(self):
        d, eps = D.compile_text("a.*", AB)
        assert eps is False
        assert d.state_count == 3  # start, accept sink, reject sink
        assert D.accepts(d, "ab") and D.accepts(d, "a")
        assert not D.accepts(d, "ba")

    def test_factor_ab_three_states(self):
        d, _ = D.compile_text(".*ab.*", AB)
        assert d.state_count == 3  # no progress, seen a, seen ab

    def test_empty_word_error(self):
        d, _ = D.compile_text("a.*", AB)
        with pytest.raises(EmptyWordError):
            D.accepts(d, "")

    def test_ab_plus(self):
        d, _ = D.compile_text("(ab)+", AB)
        assert D.accepts(d, "abab")
        assert not D.accepts(d, "aab")


class TestMinimize:
    def test_idempotent(self):
        d, _ = D.compile_text("a.*b", AB)
        assert D.minimize(d) == d

    def test_merges_equivalent_sinks(self):
        # two separate accept sinks 2 and 3 recognize the same right language
        d = D.total_dfa(AB, [[1, 4], [2, 3], [2, 2], [3, 3], [4, 4]], 0, {2, 3})
        m = D.minimize(d)
        assert m.state_count == 4
        eq, _ = D.equivalent(m, d)
        assert eq

    def test_drops_unreachable(self):
        d = D.total_dfa(AB, [[0, 1], [1, 1], [0, 0]], 0, {1})
        assert D.minimize(d).state_count == 2


class TestEquivalent:
    def test_absorption(self):
        d1, _ = D.compile_text("a.*", AB)
        d2, _ = D.compile_text("a.*|ab", AB)
        assert D.equivalent(d1, d2) == (True, None)

    def test_shortest_witness(self):
        d1, _ = D.compile_text("(ab)+", AB)
        d2, _ = D.compile_text("a.*b", AB)
        eq, w = D.equivalent(d1, d2)
        assert eq is False
        assert w == "aab"  # length-lex least distinguishing word

    def test_reflexive(self):
        d, _ = D.compile_text("(ab)+", AB)
        assert D.equivalent(d, d) == (True, None)

    def test_start_pair_reachable_again(self):
        # languages (aa)* vs a* differ first on "a"; initial states re-reachable
        d1 = D.total_dfa(AB, [[1, 2], [0, 2], [2, 2]], 0, {0})
        d2 = D.total_dfa(AB, [[0, 1], [1, 1]], 0, {0})
        eq, w = D.equivalent(d1, d2)
        assert (eq, w) == (False, "a")


def random_ast(rng, size):
    if size <= 1:
        return rng.choice([rx.Letter(rng.choice("ab")), rx.AnyLetter()])
    op = rng.choice(["concat", "union", "intersect", "complement", "star", "plus"])
    if op in ("concat", "union", "intersect"):
        left = random_ast(rng, size // 2)
        right = random_ast(rng, size - size // 2)
        cls = {"concat": rx.Concat, "union": rx.Union, "intersect": rx.Intersect}[op]
        return cls(left, right)
    cls = {"complement": rx.Complement, "star": rx.Star, "plus": rx.Plus}[op]
    return cls(random_ast(rng, size - 1))


class TestAgainstAstOracle:
    """compile/minimize/product agree with direct AST evaluation."""

    def test_random_regexes_match_ast_semantics(self):
        rng = random.Random(101)
        for _ in range(60):
            ast = random_ast(rng, rng.randint(1, 10))
            d, _ = D.compile_regex(ast, AB)
            for w in words_upto(AB, 6):
                assert D.accepts(d, w) == rx.regex_matches(ast, w), (ast, w)

    def test_minimize_preserves_language(self):
        rng = random.Random(7)
        for _ in range(40):
            ast = random_ast(rng, rng.randint(1, 10))
            d, _ = D.compile_regex(ast, AB)
            blown = D.total_dfa(  # pad with an unreachable duplicate state
                AB,
                [list(r) for r in d.transitions] + [list(d.transitions[0])],
                d.initial, set(d.accepting))
            assert D.equivalent(D.minimize(blown), d) == (True, None)

    def test_double_complement(self):
        for text in ["a.*", "(ab)+", ".*ab.*", "a|b*a"]:
            d, _ = D.compile_text(text, AB)
            dd = D.minimize(D.complement(D.complement(d)))
            assert D.equivalent(dd, d) == (True, None)

    def test_products_match_word_level_booleans(self):
        d1, _ = D.compile_text("a.*", AB)
        d2, _ = D.compile_text(".*b", AB)
        for w in words_upto(AB, 8):
            assert D.accepts(D.union(d1, d2), w) == (D.accepts(d1, w) or D.accepts(d2, w))
            assert D.accepts(D.intersection(d1, d2), w) == (D.accepts(d1, w) and D.accepts(d2, w))


class TestJson:
    def test_round_trip(self):
        d, _ = D.compile_text("a.*b", AB)
        assert D.dfa_from_json(D.dfa_to_json(d)) == d

    def test_malformed(self):
        with pytest.raises(InputError):
            D.load_dfa_json("{not json")
        with pytest.raises(InputError):
            D.load_dfa_json('{"alphabet": ["a"], "states": 1}')

    def test_epsilon_stripped_on_load(self):
        d = D.total_dfa(AB, [[0, 0]], 0, {0})  # accepts everything incl. empty
        stripped, had_eps = D.strip_epsilon(d)
        assert had_eps is True
        assert stripped.state_count == 1  # don't-care at the empty word
        assert D.accepts(stripped, "a")

    def test_epsilon_strip_keeps_nonempty_language(self):
        # (aa)*: stripping the empty word must leave exactly (aa)+
        d = D.total_dfa(AB, [[1, 2], [0, 2], [2, 2]], 0, {0})
        stripped, had_eps = D.strip_epsilon(d)
        assert had_eps is True
        want, _ = D.compile_text("(aa)+", AB)
        assert D.equivalent(stripped, want) == (True, None)
