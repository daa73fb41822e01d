"""Alphabets and word utilities.

Words are plain Python strings over single-character letters; the alphabet
fixes the letter order used by every enumeration downstream (canonical
state numbering, element naming, witness search).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import InputError


@dataclass(frozen=True)
class Alphabet:
    """Ordered, non-empty set of single-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise InputError("alphabet must be non-empty")
        for c in self.letters:
            if len(c) != 1:
                raise InputError(f"alphabet letters must be single characters: {c!r}")
        if len(set(self.letters)) != len(self.letters):
            raise InputError(f"alphabet has duplicate letters: {self.letters}")

    @staticmethod
    def of(letters: str) -> "Alphabet":
        return Alphabet(tuple(letters))

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, letter: str) -> bool:
        return letter in self.letters

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise InputError(f"letter {letter!r} not in alphabet {''.join(self.letters)}") from None

    def check_word(self, word: str) -> str:
        for c in word:
            if c not in self.letters:
                raise InputError(f"letter {c!r} not in alphabet {''.join(self.letters)}")
        return word


def enumerate_words(alphabet: Alphabet, max_len: int) -> Iterator[str]:
    """All non-empty words of length <= max_len in length-then-lex order."""
    if max_len < 1:
        raise InputError("max_len must be >= 1")
    for n in range(1, max_len + 1):
        for tup in itertools.product(alphabet.letters, repeat=n):
            yield "".join(tup)


def factors_of_length(u: str, k: int) -> set[str]:
    """The set of length-k factors of u; empty when |u| < k."""
    if k < 1:
        raise InputError("k must be >= 1")
    return {u[i:i + k] for i in range(len(u) - k + 1)}
