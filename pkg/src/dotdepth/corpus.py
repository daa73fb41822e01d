"""Built-in reference languages over {a, b} with their stored verdicts.

The matrix was worked out by hand from the syntactic semigroups (the
two-letter prefix/suffix languages are left/right-zero semigroups, the
factor languages have a zero element, the alternating language has a
five-element semigroup with two non-trivial R-classes) and is cross-checked
in the test suite by an independent context-enumeration oracle.
"""

from __future__ import annotations

from .classifier import FRAGMENTS, SelftestEntry
from .words import Alphabet

CORPUS_ALPHABET = Alphabet.of("ab")

_FRAGMENT_KEYS = tuple(f.key for f in FRAGMENTS)


def _expected(pattern: str) -> dict[str, bool]:
    flags = pattern.replace(" ", "")
    assert len(flags) == 8 and set(flags) <= {"Y", "N"}
    return {key: flag == "Y" for key, flag in zip(_FRAGMENT_KEYS, flags)}


# verdict order: S1[min,max], S1[min], S1[max], S1[] then the BS1 row
CORPUS: tuple[SelftestEntry, ...] = (
    SelftestEntry("all-nonempty-words", ".+", _expected("YYYY YYYY")),
    SelftestEntry("empty-language", "~(.*)", _expected("YYYY YYYY")),
    SelftestEntry("contains-factor-ab", ".*ab.*", _expected("YYYY YYYY")),
    SelftestEntry("starts-with-a", "a.*", _expected("YYNN YYNN")),
    SelftestEntry("ends-with-a", ".*a", _expected("YNYN YNYN")),
    SelftestEntry("starts-a-ends-b", "a.*b", _expected("YNNN YNNN")),
    SelftestEntry("alternating-ab-blocks", "(ab)+", _expected("NNNN YNNN")),
    SelftestEntry("even-a-runs", "(aa)+", _expected("NNNN NNNN")),
    SelftestEntry("contains-factor-aa", ".*aa.*", _expected("YYYY YYYY")),
    SelftestEntry("starts-a-length-two", "a.+", _expected("YYNN YYNN")),
)
