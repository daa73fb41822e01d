"""Complete DFAs over a fixed alphabet and their algebra.

All automata are complete (total transition function).  The library's
languages live in non-empty words: `compile_regex` and `load_dfa_json`
strip the empty word (recording a warning flag), and `accepts` rejects
empty input outright.  Minimization renumbers states canonically by
breadth-first order from the initial state, letters in alphabet order,
so equal languages produce byte-identical automata.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from . import regex as rx
from .errors import EmptyWordError, InputError
from .words import Alphabet


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    transitions: tuple[tuple[int, ...], ...]  # [state][letter index] -> state
    initial: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise InputError("DFA needs at least one state")
        if not (0 <= self.initial < n):
            raise InputError("initial state out of range")
        for row in self.transitions:
            if len(row) != len(self.alphabet):
                raise InputError("transition table must be total")
            for q in row:
                if not (0 <= q < n):
                    raise InputError("transition target out of range")
        if not all(0 <= q < n for q in self.accepting):
            raise InputError("accepting state out of range")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: str) -> int:
        return self.transitions[state][self.alphabet.index(letter)]

    def run(self, word: str, start: int | None = None) -> int:
        state = self.initial if start is None else start
        for c in word:
            state = self.step(state, c)
        return state


def accepts(d: Dfa, word: str) -> bool:
    """Membership of a non-empty word; the empty word is a distinct error."""
    if word == "":
        raise EmptyWordError("languages contain non-empty words only")
    d.alphabet.check_word(word)
    return d.run(word) in d.accepting


def total_dfa(alphabet: Alphabet, rows: list[list[int]], initial: int,
              accepting: set[int]) -> Dfa:
    return Dfa(alphabet, tuple(tuple(r) for r in rows), initial, frozenset(accepting))


def product(d1: Dfa, d2: Dfa, combine) -> Dfa:
    """Product automaton accepting per combine(in1, in2); reachable part only."""
    if d1.alphabet != d2.alphabet:
        raise InputError("product requires a common alphabet")
    k = len(d1.alphabet)
    index: dict[tuple[int, int], int] = {(d1.initial, d2.initial): 0}
    order = [(d1.initial, d2.initial)]
    rows: list[list[int]] = []
    queue = deque(order)
    while queue:
        p, q = queue.popleft()
        row = []
        for c in range(k):
            tgt = (d1.transitions[p][c], d2.transitions[q][c])
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
                queue.append(tgt)
            row.append(index[tgt])
        rows.append(row)
    accepting = {i for i, (p, q) in enumerate(order)
                 if combine(p in d1.accepting, q in d2.accepting)}
    return total_dfa(d1.alphabet, rows, 0, accepting)


def union(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a or b)


def intersection(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a and b)


def difference(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda a, b: a and not b)


def complement(d: Dfa) -> Dfa:
    """Complement relative to all words over the alphabet (complete DFA)."""
    return Dfa(d.alphabet, d.transitions, d.initial,
               frozenset(range(d.state_count)) - d.accepting)


def _reachable(d: Dfa) -> list[int]:
    seen = [d.initial]
    index = {d.initial}
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for q in d.transitions[p]:
            if q not in index:
                index.add(q)
                seen.append(q)
                queue.append(q)
    return seen


def minimize(d: Dfa) -> Dfa:
    """Language-equivalent minimal complete DFA, canonically numbered."""
    reach = _reachable(d)
    # Moore partition refinement on the reachable part.
    block = {q: int(q in d.accepting) for q in reach}
    while True:
        signature = {q: (block[q], tuple(block[d.transitions[q][c]]
                                         for c in range(len(d.alphabet))))
                     for q in reach}
        relabel: dict = {}
        for q in reach:
            relabel.setdefault(signature[q], len(relabel))
        new_block = {q: relabel[signature[q]] for q in reach}
        stable = len(set(new_block.values())) == len(set(block.values()))
        block = new_block
        if stable:
            break
    # Canonical renumbering: BFS over blocks from the initial block.
    rep: dict[int, int] = {}
    for q in reach:
        rep.setdefault(block[q], q)
    numbering = {block[d.initial]: 0}
    order = [block[d.initial]]
    queue = deque(order)
    while queue:
        b = queue.popleft()
        q = rep[b]
        for c in range(len(d.alphabet)):
            tb = block[d.transitions[q][c]]
            if tb not in numbering:
                numbering[tb] = len(order)
                order.append(tb)
                queue.append(tb)
    rows = [[numbering[block[d.transitions[rep[b]][c]]]
             for c in range(len(d.alphabet))] for b in order]
    accepting = {numbering[b] for b in order if rep[b] in d.accepting}
    return total_dfa(d.alphabet, rows, 0, accepting)


def equivalent(d1: Dfa, d2: Dfa) -> tuple[bool, str | None]:
    """Equality of the two languages of non-empty words.

    Returns (True, None) or (False, w) where w is the length-lex smallest
    non-empty word accepted by exactly one side.
    """
    if d1.alphabet != d2.alphabet:
        raise InputError("equivalence requires a common alphabet")
    start = (d1.initial, d2.initial)
    start_differs = (start[0] in d1.accepting) != (start[1] in d2.accepting)
    parent: dict[tuple[int, int], tuple[tuple[int, int], str]] = {}

    def witness(pair: tuple[int, int], last: str) -> str:
        chunks = [last]
        while pair != start:
            pair, letter = parent[pair]
            chunks.append(letter)
        return "".join(reversed(chunks))

    seen = {start}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        for c, letter in enumerate(d1.alphabet.letters):
            tgt = (d1.transitions[p][c], d2.transitions[q][c])
            if tgt == start and start_differs:
                # the start pair differing only matters via a non-empty word
                return False, witness(pair, letter)
            if tgt not in seen:
                seen.add(tgt)
                parent[tgt] = (pair, letter)
                if (tgt[0] in d1.accepting) != (tgt[1] in d2.accepting):
                    return False, witness(pair, letter)
                queue.append(tgt)
    return True, None


def subset_of(d1: Dfa, d2: Dfa) -> bool:
    """L(d1) contained in L(d2), over non-empty words."""
    eq, _ = equivalent(difference(d1, d2), empty_language(d1.alphabet))
    return eq


def empty_language(alphabet: Alphabet) -> Dfa:
    return total_dfa(alphabet, [[0] * len(alphabet)], 0, set())


def all_words(alphabet: Alphabet) -> Dfa:
    """All non-empty words (the initial state is not accepting)."""
    k = len(alphabet)
    return total_dfa(alphabet, [[1] * k, [1] * k], 0, {1})


def strip_epsilon(d: Dfa) -> tuple[Dfa, bool]:
    """Canonical automaton for the language of non-empty words; the flag
    records that the empty word was present and has been dropped.

    Acceptance of the empty word is a don't-care under the non-empty-word
    convention, so the initial state may be merged with an accepting state
    that agrees on all non-empty words (this is what makes the automaton
    for all non-empty words a single state).  The merge is sound for the
    syntactic semigroup: contexts only ever evaluate non-empty middles.
    """
    had_epsilon = d.initial in d.accepting
    if had_epsilon:
        # words returning to the old initial state must keep acceptance,
        # so a non-accepting copy becomes the new initial state
        rows = [list(r) for r in d.transitions]
        rows.append(list(d.transitions[d.initial]))
        d = total_dfa(d.alphabet, rows, len(rows) - 1, set(d.accepting))
    m = minimize(d)
    for q in sorted(m.accepting):
        candidate = Dfa(m.alphabet, m.transitions, q, m.accepting)
        eq, _ = equivalent(candidate, m)
        if eq:
            return minimize(candidate), had_epsilon
    return m, had_epsilon


# --- regex compilation -----------------------------------------------------

def _letter_dfa(alphabet: Alphabet, char: str | None) -> Dfa:
    # char None means any letter
    k = len(alphabet)
    rows = [[0] * k for _ in range(3)]
    for c, letter in enumerate(alphabet.letters):
        good = char is None or letter == char
        rows[0][c] = 1 if good else 2
        rows[1][c] = 2
        rows[2][c] = 2
    return total_dfa(alphabet, rows, 0, {1})


def _subset_construct(alphabet: Alphabet,
                      eps: dict[int, set[int]],
                      delta: dict[tuple[int, int], set[int]],
                      initials: set[int], finals: set[int]) -> Dfa:
    k = len(alphabet)

    def closure(states: set[int]) -> frozenset[int]:
        stack = list(states)
        out = set(states)
        while stack:
            s = stack.pop()
            for t in eps.get(s, ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    start = closure(initials)
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        row = []
        for c in range(k):
            nxt = set()
            for s in cur:
                nxt |= delta.get((s, c), set())
            nxt = closure(nxt)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(row)
    accepting = {i for i, states in enumerate(order) if states & finals}
    return minimize(total_dfa(alphabet, rows, 0, accepting))


def _as_nfa(d: Dfa, offset: int, delta) -> tuple[set[int], set[int]]:
    """Copy a DFA into the shared NFA tables; returns (initials, finals)."""
    for p in range(d.state_count):
        for c in range(len(d.alphabet)):
            delta.setdefault((offset + p, c), set()).add(offset + d.transitions[p][c])
    return {offset + d.initial}, {offset + q for q in d.accepting}


def _concat(d1: Dfa, d2: Dfa) -> Dfa:
    delta: dict[tuple[int, int], set[int]] = {}
    eps: dict[int, set[int]] = {}
    i1, f1 = _as_nfa(d1, 0, delta)
    i2, f2 = _as_nfa(d2, d1.state_count, delta)
    for f in f1:
        eps.setdefault(f, set()).update(i2)
    return _subset_construct(d1.alphabet, eps, delta, i1, f2)


def _star(d: Dfa, keep_empty: bool) -> Dfa:
    delta: dict[tuple[int, int], set[int]] = {}
    eps: dict[int, set[int]] = {}
    i, f = _as_nfa(d, 0, delta)
    hub = d.state_count
    eps[hub] = set(i)
    for q in f:
        eps.setdefault(q, set()).add(hub)
    if keep_empty:
        # hub is both entry and exit, so the empty word is accepted
        return _subset_construct(d.alphabet, eps, delta, {hub}, f | {hub})
    return _subset_construct(d.alphabet, eps, delta, set(i), set(f))


def compile_ast(ast: rx.RegexAst, alphabet: Alphabet) -> Dfa:
    """Complete minimal DFA over the alphabet with standard semantics
    (the empty word may be accepted here; `compile_regex` strips it)."""
    if isinstance(ast, rx.Letter):
        alphabet.check_word(ast.char)
        return _letter_dfa(alphabet, ast.char)
    if isinstance(ast, rx.AnyLetter):
        return _letter_dfa(alphabet, None)
    if isinstance(ast, rx.EmptySet):
        return empty_language(alphabet)
    if isinstance(ast, rx.EmptyWord):
        k = len(alphabet)
        return total_dfa(alphabet, [[1] * k, [1] * k], 0, {0})
    if isinstance(ast, rx.Concat):
        return _concat(compile_ast(ast.left, alphabet), compile_ast(ast.right, alphabet))
    if isinstance(ast, rx.Union):
        return minimize(union(compile_ast(ast.left, alphabet), compile_ast(ast.right, alphabet)))
    if isinstance(ast, rx.Intersect):
        return minimize(intersection(compile_ast(ast.left, alphabet),
                                     compile_ast(ast.right, alphabet)))
    if isinstance(ast, rx.Complement):
        return minimize(complement(compile_ast(ast.inner, alphabet)))
    if isinstance(ast, rx.Star):
        return _star(compile_ast(ast.inner, alphabet), keep_empty=True)
    if isinstance(ast, rx.Plus):
        return _star(compile_ast(ast.inner, alphabet), keep_empty=False)
    raise TypeError(f"not a regex node: {ast!r}")


def compile_regex(ast: rx.RegexAst, alphabet: Alphabet) -> tuple[Dfa, bool]:
    """Minimal DFA for the regex language restricted to non-empty words.

    The second component flags that the empty word was in the regex's
    language and has been removed.
    """
    return strip_epsilon(compile_ast(ast, alphabet))


def compile_text(text: str, alphabet: Alphabet) -> tuple[Dfa, bool]:
    return compile_regex(rx.parse_regex(text, alphabet), alphabet)


# --- JSON interface --------------------------------------------------------

def dfa_to_json(d: Dfa) -> dict:
    return {
        "alphabet": list(d.alphabet.letters),
        "states": d.state_count,
        "initial": d.initial,
        "accepting": sorted(d.accepting),
        "transitions": {
            str(p): {letter: d.transitions[p][c]
                     for c, letter in enumerate(d.alphabet.letters)}
            for p in range(d.state_count)
        },
    }


def dfa_from_json(data: dict) -> Dfa:
    try:
        alphabet = Alphabet(tuple(data["alphabet"]))
        n = int(data["states"])
        initial = int(data["initial"])
        accepting = {int(q) for q in data["accepting"]}
        rows = []
        for p in range(n):
            entry = data["transitions"][str(p)]
            rows.append([int(entry[letter]) for letter in alphabet.letters])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed DFA JSON: {exc}") from exc
    return total_dfa(alphabet, rows, initial, accepting)


def load_dfa_json(text: str) -> tuple[Dfa, bool]:
    """Parse DFA JSON and strip the empty word (flag records its presence)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed DFA JSON: {exc}") from exc
    return strip_epsilon(dfa_from_json(data))
