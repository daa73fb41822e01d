"""Finite semigroups, the syntactic semigroup of a regular language, and
word-over-semigroup combinatorics.

The syntactic semigroup is computed as the transition semigroup of the
canonical automaton: elements are the distinct state transformations
induced by non-empty words, multiplication is composition, and each
element is named by its length-lex least witnessing word.  The syntactic
order is derived from state-wise right-language containment, which on a
minimal automaton coincides with language containment.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce

from .dfa import Dfa
from .errors import FalsificationError, InputError, PreconditionError, ResourceError
from .words import Alphabet

DEFAULT_SEMIGROUP_CAP = 500

ElementWord = tuple[int, ...]  # a word whose letters are semigroup elements


@dataclass(frozen=True)
class FiniteSemigroup:
    mult: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    order: frozenset[tuple[int, int]] | None = None  # pairs (x, y) with x <= y

    @property
    def size(self) -> int:
        return len(self.mult)

    def times(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def leq(self, x: int, y: int) -> bool:
        if self.order is None:
            raise PreconditionError("semigroup carries no partial order")
        return (x, y) in self.order

    def eval_word(self, word: ElementWord) -> int:
        if not word:
            raise InputError("cannot evaluate the empty word in a semigroup")
        return reduce(lambda a, b: self.mult[a][b], word)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if self.mult[x][x] == x)

    def omega(self, x: int) -> int:
        """The unique idempotent among the powers of x."""
        seen = {x: 1}
        powers = [x]
        cur = x
        while True:
            cur = self.mult[cur][x]
            if cur in seen:
                break
            seen[cur] = len(powers) + 1
            powers.append(cur)
        # cycle: powers from the first repeat onward; scan it for the idempotent
        cycle_start = seen[cur] - 1
        for e in powers[cycle_start:]:
            if self.mult[e][e] == e:
                return e
        raise FalsificationError("no idempotent among the powers of an element")

    def check_associative(self) -> tuple[int, int, int] | None:
        """None if associative, else a violating triple (testing is O(size^3))."""
        m = self.mult
        for x in range(self.size):
            for y in range(self.size):
                xy = m[x][y]
                row_y = m[y]
                for z in range(self.size):
                    if m[xy][z] != m[x][row_y[z]]:
                        return (x, y, z)
        return None

    def check_order_compatible(self) -> tuple | None:
        """None if p<=q and s<=t imply ps<=qt, else a violating 4-tuple."""
        if self.order is None:
            return None
        pairs = sorted(self.order)
        for p, q in pairs:
            for s, t in pairs:
                if (self.mult[p][s], self.mult[q][t]) not in self.order:
                    return (p, q, s, t)
        return None

    @staticmethod
    def from_table(mult: list[list[int]], names: list[str] | None = None,
                   order: set[tuple[int, int]] | None = None) -> "FiniteSemigroup":
        n = len(mult)
        names = names or [f"e{i}" for i in range(n)]
        sg = FiniteSemigroup(tuple(tuple(r) for r in mult), tuple(names),
                             frozenset(order) if order is not None else None)
        bad = sg.check_associative()
        if bad is not None:
            raise InputError(f"multiplication table is not associative at {bad}")
        if order is not None:
            bad = sg.check_order_compatible()
            if bad is not None:
                raise InputError(f"order is not compatible with multiplication at {bad}")
        return sg


@dataclass(frozen=True)
class GreenStructure:
    leq_r: frozenset[tuple[int, int]]
    leq_l: frozenset[tuple[int, int]]
    leq_j: frozenset[tuple[int, int]]
    classes_r: tuple[tuple[int, ...], ...]
    classes_l: tuple[tuple[int, ...], ...]
    classes_j: tuple[tuple[int, ...], ...]

    def r_related(self, x: int, y: int) -> bool:
        return (x, y) in self.leq_r and (y, x) in self.leq_r

    def l_related(self, x: int, y: int) -> bool:
        return (x, y) in self.leq_l and (y, x) in self.leq_l

    def j_related(self, x: int, y: int) -> bool:
        return (x, y) in self.leq_j and (y, x) in self.leq_j


def _classes_from_preorder(n: int, leq: set[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    classes = []
    for x in range(n):
        if x in seen:
            continue
        cls = tuple(y for y in range(n) if (x, y) in leq and (y, x) in leq)
        seen.update(cls)
        classes.append(cls)
    return tuple(classes)


def green(sg: FiniteSemigroup) -> GreenStructure:
    """Comparability by right/left/two-sided multiplication over S adjoined
    with a neutral element."""
    n = sg.size
    m = sg.mult
    leq_r: set[tuple[int, int]] = set()
    leq_l: set[tuple[int, int]] = set()
    leq_j: set[tuple[int, int]] = set()
    for y in range(n):
        right = {m[y][t] for t in range(n)} | {y}
        left = {m[s][y] for s in range(n)} | {y}
        two = set(right) | set(left)
        for yt in right:
            for s in range(n):
                two.add(m[s][yt])
        leq_r.update((x, y) for x in right)
        leq_l.update((x, y) for x in left)
        leq_j.update((x, y) for x in two)
    return GreenStructure(
        frozenset(leq_r), frozenset(leq_l), frozenset(leq_j),
        _classes_from_preorder(n, leq_r),
        _classes_from_preorder(n, leq_l),
        _classes_from_preorder(n, leq_j),
    )


def order_ideal_check(subset: frozenset[int] | set[int],
                      leq: frozenset[tuple[int, int]],
                      size: int) -> tuple[bool, tuple[int, int] | None]:
    """Is the subset downward closed for the preorder?  On failure returns
    the first (x, y) in index order with x <= y, y inside, x outside."""
    for x in range(size):
        if x in subset:
            continue
        for y in range(size):
            if y in subset and (x, y) in leq:
                return False, (x, y)
    return True, None


def union_of_classes_check(subset: frozenset[int] | set[int],
                           classes: tuple[tuple[int, ...], ...],
                           ) -> tuple[bool, tuple[tuple[int, ...], int, int] | None]:
    """Is the subset a union of whole classes?  On failure returns
    (class, member inside, member outside)."""
    for cls in classes:
        inside = [x for x in cls if x in subset]
        outside = [x for x in cls if x not in subset]
        if inside and outside:
            return False, (cls, inside[0], outside[0])
    return True, None


# --- syntactic semigroup ----------------------------------------------------

@dataclass(frozen=True)
class SyntacticData:
    semigroup: FiniteSemigroup
    letter_image: tuple[int, ...]          # per alphabet letter
    image_of_language: frozenset[int]
    source_dfa: Dfa
    transformations: tuple[tuple[int, ...], ...]

    @property
    def alphabet(self) -> Alphabet:
        return self.source_dfa.alphabet

    def eval_text(self, word: str) -> int:
        """Image of a non-empty word over the alphabet."""
        if not word:
            raise InputError("cannot evaluate the empty word")
        return self.semigroup.eval_word(
            tuple(self.letter_image[self.alphabet.index(c)] for c in word))

    @cached_property
    def green(self) -> GreenStructure:
        return green(self.semigroup)


def _state_containment(d: Dfa) -> list[list[bool]]:
    """contains[q][p]: the right language of q includes the right language
    of p.  Greatest fixpoint; exact containment on deterministic automata."""
    n = d.state_count
    k = len(d.alphabet)
    contains = [[not (p in d.accepting and q not in d.accepting) for p in range(n)]
                for q in range(n)]
    changed = True
    while changed:
        changed = False
        for q in range(n):
            for p in range(n):
                if not contains[q][p]:
                    continue
                for c in range(k):
                    if not contains[d.transitions[q][c]][d.transitions[p][c]]:
                        contains[q][p] = False
                        changed = True
                        break
    return contains


def syntactic(d: Dfa, cap: int = DEFAULT_SEMIGROUP_CAP) -> SyntacticData:
    """Syntactic semigroup of the language of a canonical (minimal) automaton.

    Elements are state transformations of non-empty words, discovered in
    length-lex order so every element is named by its least witnessing word.
    """
    n = d.state_count
    k = len(d.alphabet)
    letters = [tuple(d.transitions[q][c] for q in range(n)) for c in range(k)]
    index: dict[tuple[int, ...], int] = {}
    order: list[tuple[int, ...]] = []
    names: list[str] = []
    queue: deque[tuple[tuple[int, ...], str]] = deque()
    for c, t in enumerate(letters):
        if t not in index:
            index[t] = len(order)
            order.append(t)
            names.append(d.alphabet.letters[c])
            queue.append((t, names[-1]))
    while queue:
        t, name = queue.popleft()
        for c, tc in enumerate(letters):
            composed = tuple(tc[t[q]] for q in range(n))
            if composed not in index:
                if len(order) >= cap:
                    raise ResourceError("syntactic semigroup exceeds the size cap", cap)
                index[composed] = len(order)
                order.append(composed)
                names.append(name + d.alphabet.letters[c])
                queue.append((composed, names[-1]))
    size = len(order)
    mult = tuple(tuple(index[tuple(order[j][order[i][q]] for q in range(n))]
                       for j in range(size))
                 for i in range(size))
    contains = _state_containment(d)
    pairs = frozenset(
        (x, y)
        for x in range(size) for y in range(size)
        if all(contains[order[x][q]][order[y][q]] for q in range(n)))
    sg = FiniteSemigroup(mult, tuple(names), pairs)
    image = frozenset(i for i, t in enumerate(order) if t[d.initial] in d.accepting)
    letter_image = tuple(index[t] for t in letters)
    return SyntacticData(sg, letter_image, image, d, tuple(order))


# --- stabilized prefixes and factorizations --------------------------------

def _stabilized_prefix(sg: FiniteSemigroup, word: ElementWord
                       ) -> tuple[int, int] | None:
    """Shortest non-empty prefix p (|p| <= size) with p*e = p for an
    idempotent e; ties on e broken by element index."""
    value = None
    for plen in range(1, min(len(word), sg.size) + 1):
        value = word[0] if plen == 1 else sg.mult[value][word[plen - 1]]
        for e in sg.idempotents:
            if sg.mult[value][e] == value:
                return plen, e
    return None


def stabilized_prefix(sg: FiniteSemigroup, word: ElementWord) -> tuple[int, int]:
    """For |word| >= size, a non-empty prefix length L and idempotent e with
    word[:L] * e = word[:L] in the semigroup.  Always exists (pigeonhole on
    prefix values)."""
    if len(word) < sg.size:
        raise PreconditionError(
            f"word length {len(word)} is below the semigroup size {sg.size}")
    hit = _stabilized_prefix(sg, word)
    if hit is None:
        raise FalsificationError("no stabilized prefix found despite the pigeonhole bound")
    return hit


def _stabilizer_set(sg: FiniteSemigroup, word: ElementWord) -> set[int]:
    """Idempotents stabilizing some factor of length <= size on the right."""
    values: set[int] = set()
    for i in range(len(word)):
        v = None
        for j in range(i, min(i + sg.size, len(word))):
            v = word[j] if v is None else sg.mult[v][word[j]]
            values.add(v)
    return {e for e in sg.idempotents
            if any(sg.mult[v][e] == v for v in values)}


def _last_stabilized_factor(sg: FiniteSemigroup, word: ElementWord, e: int
                            ) -> tuple[int, int] | None:
    """Rightmost factor of length <= size stabilized by e, as (start, end);
    among factors with the same end, the shortest."""
    for end in range(len(word), 0, -1):
        v = None
        for length in range(1, min(sg.size, end) + 1):
            start = end - length
            v = word[start] if v is None else sg.mult[word[start]][v]
            if sg.mult[v][e] == v:
                return start, end
    return None


@dataclass(frozen=True)
class StabilizedFactorization:
    """word = xs[0] ws[0] ys[0] ... xs[m-1] ws[m-1] ys[m-1] tail, where each
    xs[i] and ys[i] evaluates to an element fixed on the right by the
    idempotent idems[i], |ys[i]| <= size, m <= size, and the combined
    length of the xs, ys and tail is below 2*size^2 + size."""

    xs: tuple[ElementWord, ...]
    ws: tuple[ElementWord, ...]
    ys: tuple[ElementWord, ...]
    tail: ElementWord
    idems: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.xs)

    def rebuilt(self) -> ElementWord:
        out: tuple[int, ...] = ()
        for x, w, y in zip(self.xs, self.ws, self.ys):
            out += x + w + y
        return out + self.tail

    def violations(self, sg: FiniteSemigroup, word: ElementWord) -> list[str]:
        problems = []
        if self.rebuilt() != word:
            problems.append("concatenation does not rebuild the word")
        if not (0 <= self.m <= sg.size):
            problems.append(f"m = {self.m} exceeds size {sg.size}")
        skeleton = sum(len(x) + len(y) for x, y in zip(self.xs, self.ys)) + len(self.tail)
        if skeleton >= 2 * sg.size * sg.size + sg.size:
            problems.append(f"skeleton length {skeleton} not below 2*size^2+size")
        for i, (x, y, e) in enumerate(zip(self.xs, self.ys, self.idems)):
            if not x or not y:
                problems.append(f"segment {i} has an empty x or y")
                continue
            if len(y) > sg.size:
                problems.append(f"y[{i}] longer than the semigroup size")
            if sg.mult[e][e] != e:
                problems.append(f"idems[{i}] is not idempotent")
            if sg.mult[sg.eval_word(x)][e] != sg.eval_word(x):
                problems.append(f"x[{i}] is not stabilized by its idempotent")
            if sg.mult[sg.eval_word(y)][e] != sg.eval_word(y):
                problems.append(f"y[{i}] is not stabilized by its idempotent")
        return problems


def stabilized_factorization(sg: FiniteSemigroup, word: ElementWord
                             ) -> StabilizedFactorization:
    """Factor a word over the semigroup into idempotent-stabilized segments.

    Induction on the set of idempotents stabilizing short factors: take a
    short stabilized prefix x with idempotent e; if e stabilizes no short
    factor of the remainder, absorb x into the remainder's factorization,
    otherwise cut at the last short factor of the remainder stabilized
    by e and recurse beyond it.
    """
    if not word:
        raise InputError("word must be non-empty")

    def rec(w: ElementWord) -> tuple[list, ElementWord]:
        if not w or not _stabilizer_set(sg, w):
            return [], w  # no stabilizers forces |w| < size (pigeonhole)
        hit = _stabilized_prefix(sg, w)
        if hit is None:
            raise FalsificationError("stabilizer set non-empty but no stabilized prefix")
        plen, e = hit
        x, rest = w[:plen], w[plen:]
        occ = _last_stabilized_factor(sg, rest, e)
        if occ is None:
            segments, tail = rec(rest)
            if segments:
                (x1, w1, y1, e1), *others = segments
                return [(x + x1, w1, y1, e1), *others], tail
            return [], x + tail
        start, end = occ
        segments, tail = rec(rest[end:])
        return [(x, rest[:start], rest[start:end], e), *segments], tail

    segments, tail = rec(word)
    fact = StabilizedFactorization(
        xs=tuple(s[0] for s in segments),
        ws=tuple(s[1] for s in segments),
        ys=tuple(s[2] for s in segments),
        tail=tail,
        idems=tuple(s[3] for s in segments),
    )
    problems = fact.violations(sg, word)
    if problems:
        raise FalsificationError("; ".join(problems))
    return fact


# --- JSON interface ---------------------------------------------------------

def semigroup_to_json(data: SyntacticData) -> dict:
    sg = data.semigroup
    g = data.green
    return {
        "size": sg.size,
        "names": list(sg.names),
        "mult": [list(row) for row in sg.mult],
        "order": sorted([lo, hi] for lo, hi in sg.order),
        "idempotents": list(sg.idempotents),
        "imageOfL": sorted(data.image_of_language),
        "green": {
            "R": [list(c) for c in g.classes_r],
            "L": [list(c) for c in g.classes_l],
            "J": [list(c) for c in g.classes_j],
        },
    }
