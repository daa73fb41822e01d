"""Extended regular expressions: AST, parser, and direct word matching.

Grammar (EBNF):

    expr   := term ('|' term)*
    term   := factor+
    factor := atom ('*'|'+')*
    atom   := letter | '.' | '(' expr ')' | '~' atom | '[' expr '&' expr ']'

'.' matches any single letter, '~' is complement relative to the full word
set over the alphabet, '&' is intersection.  Letters must belong to the
declared alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import RegexSyntaxError
from .words import Alphabet


@dataclass(frozen=True)
class Letter:
    char: str


@dataclass(frozen=True)
class AnyLetter:
    pass


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class EmptyWord:
    pass


@dataclass(frozen=True)
class Concat:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Union:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Intersect:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Complement:
    inner: "RegexAst"


@dataclass(frozen=True)
class Star:
    inner: "RegexAst"


@dataclass(frozen=True)
class Plus:
    inner: "RegexAst"


RegexAst = (
    Letter | AnyLetter | EmptySet | EmptyWord
    | Concat | Union | Intersect | Complement | Star | Plus
)

_OPERATORS = set("|()*+~[]&.")


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str):
        raise RegexSyntaxError(message, self.pos)

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, expected: str):
        if self.peek() != expected:
            self.error(f"expected {expected!r}")
        self.pos += 1

    def parse(self) -> RegexAst:
        node = self.expr()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return node

    def expr(self) -> RegexAst:
        node = self.term()
        while self.peek() == "|":
            self.pos += 1
            node = Union(node, self.term())
        return node

    def term(self) -> RegexAst:
        node = self.factor()
        while self.peek() is not None and self.peek() not in "|)]&":
            node = Concat(node, self.factor())
        return node

    def factor(self) -> RegexAst:
        node = self.atom()
        while self.peek() in ("*", "+"):
            node = Star(node) if self.peek() == "*" else Plus(node)
            self.pos += 1
        return node

    def atom(self) -> RegexAst:
        c = self.peek()
        if c is None:
            self.error("unexpected end of input")
        if c == ".":
            self.pos += 1
            return AnyLetter()
        if c == "(":
            self.pos += 1
            node = self.expr()
            self.take(")")
            return node
        if c == "~":
            self.pos += 1
            return Complement(self.atom())
        if c == "[":
            self.pos += 1
            left = self.expr()
            self.take("&")
            right = self.expr()
            self.take("]")
            return Intersect(left, right)
        if c in _OPERATORS:
            self.error(f"unexpected {c!r}")
        if c not in self.alphabet:
            self.error(f"letter {c!r} not in alphabet")
        self.pos += 1
        return Letter(c)


def parse_regex(text: str, alphabet: Alphabet) -> RegexAst:
    """Parse an extended regex over the given alphabet."""
    return _Parser(text, alphabet).parse()


def regex_matches(ast: RegexAst, word: str) -> bool:
    """Decide word membership directly on the AST (no automaton).

    Complement is relative to all words over the alphabet, so this agrees
    with the compiled automaton on every word whose letters are in the
    alphabet.  Quadratic splitting with memoization; fine at test scale.
    """

    @lru_cache(maxsize=None)
    def match(node: RegexAst, lo: int, hi: int) -> bool:
        if isinstance(node, Letter):
            return hi - lo == 1 and word[lo] == node.char
        if isinstance(node, AnyLetter):
            return hi - lo == 1
        if isinstance(node, EmptySet):
            return False
        if isinstance(node, EmptyWord):
            return lo == hi
        if isinstance(node, Concat):
            return any(match(node.left, lo, mid) and match(node.right, mid, hi)
                       for mid in range(lo, hi + 1))
        if isinstance(node, Union):
            return match(node.left, lo, hi) or match(node.right, lo, hi)
        if isinstance(node, Intersect):
            return match(node.left, lo, hi) and match(node.right, lo, hi)
        if isinstance(node, Complement):
            return not match(node.inner, lo, hi)
        if isinstance(node, Star):
            return _match_repeat(node.inner, lo, hi, allow_empty=True)
        if isinstance(node, Plus):
            return _match_repeat(node.inner, lo, hi, allow_empty=False)
        raise TypeError(f"not a regex node: {node!r}")

    @lru_cache(maxsize=None)
    def _match_repeat(inner: RegexAst, lo: int, hi: int, allow_empty: bool) -> bool:
        if lo == hi:
            return allow_empty or match(inner, lo, hi)
        # first chunk non-empty to guarantee progress; empty chunks add nothing
        return any(match(inner, lo, mid) and _match_repeat(inner, mid, hi, True)
                   for mid in range(lo + 1, hi + 1))

    result = match(ast, 0, len(word))
    match.cache_clear()
    _match_repeat.cache_clear()
    return result
