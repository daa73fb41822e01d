"""Gapped word patterns ("monomials") and their constructions.

A monomial is a pattern  g0 b0 g1 b1 ... b(n-1) gn  of literal blocks bi
separated by gaps: NONE (nothing, an anchor), STAR (any word), or PLUS
(any non-empty word).  Canonical form merges empty blocks away wherever a
neighbouring gap can absorb them; only an empty block squeezed between two
PLUS gaps survives, because a run of two non-empty gaps is not a gap.

The languages here are always read inside the non-empty words.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from . import dfa as D
from . import regex as rx
from .errors import FalsificationError, InputError, PreconditionError
from .identities import check_b_half
from .semigroup import SyntacticData, order_ideal_check, stabilized_factorization
from .words import Alphabet


class Gap(enum.Enum):
    NONE = "none"
    STAR = "star"
    PLUS = "plus"

    def token(self) -> str:
        return {"star": "<*>", "plus": "<+>"}.get(self.value, "")


class Anchor(enum.Enum):
    """Which ends of the pattern are pinned to the word boundary."""
    BOTH = "both"
    LEFT = "left"
    RIGHT = "right"
    NONE = "none"

    def boundary_gaps(self) -> tuple[Gap, Gap]:
        return {
            Anchor.BOTH: (Gap.NONE, Gap.NONE),
            Anchor.LEFT: (Gap.NONE, Gap.STAR),
            Anchor.RIGHT: (Gap.STAR, Gap.NONE),
            Anchor.NONE: (Gap.STAR, Gap.STAR),
        }[self]


def _merge_gaps(g1: Gap, g2: Gap) -> Gap | None:
    if g1 == Gap.NONE:
        return g2
    if g2 == Gap.NONE:
        return g1
    if g1 == Gap.PLUS and g2 == Gap.PLUS:
        return None  # two non-empty gaps do not collapse to one
    return Gap.PLUS if Gap.PLUS in (g1, g2) else Gap.STAR


@dataclass(frozen=True)
class Monomial:
    blocks: tuple[str, ...]
    gaps: tuple[Gap, ...]

    def __post_init__(self):
        if len(self.gaps) != len(self.blocks) + 1:
            raise InputError("a monomial has one more gap than blocks")
        for g in self.gaps[1:-1]:
            if g == Gap.NONE:
                raise InputError("inner gaps must be STAR or PLUS")

    @staticmethod
    def make(blocks: tuple[str, ...] | list[str], gaps: tuple[Gap, ...] | list[Gap]
             ) -> "Monomial":
        """Canonical monomial: empty blocks merged into neighbouring gaps."""
        blocks = list(blocks)
        gaps = list(gaps)
        changed = True
        while changed:
            changed = False
            for i, b in enumerate(blocks):
                if b:
                    continue
                merged = _merge_gaps(gaps[i], gaps[i + 1])
                if merged is not None:
                    del blocks[i]
                    gaps[i:i + 2] = [merged]
                    changed = True
                    break
        return Monomial(tuple(blocks), tuple(gaps))

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def left_gap(self) -> Gap:
        return self.gaps[0]

    @property
    def right_gap(self) -> Gap:
        return self.gaps[-1]

    def gap_kinds(self) -> set[Gap]:
        return {g for g in self.gaps if g != Gap.NONE}

    def sort_key(self) -> tuple:
        return (self.degree, self.block_count, monomial_text(self))

    def __repr__(self):
        return f"Monomial({monomial_text(self)!r})"


def member(m: Monomial, w: str) -> bool:
    """Does w factor as g0 b0 g1 ... with each gap of the required kind?"""
    positions = {0}
    for i, gap in enumerate(m.gaps):
        if positions:
            lo = min(positions)
            if gap == Gap.STAR:
                positions = set(range(lo, len(w) + 1))
            elif gap == Gap.PLUS:
                positions = set(range(lo + 1, len(w) + 1))
        if i < len(m.blocks):
            b = m.blocks[i]
            positions = {p + len(b) for p in positions if w.startswith(b, p)}
    return len(w) in positions


def to_regex_ast(m: Monomial) -> rx.RegexAst:
    parts: list[rx.RegexAst] = []
    for i, gap in enumerate(m.gaps):
        if gap == Gap.STAR:
            parts.append(rx.Star(rx.AnyLetter()))
        elif gap == Gap.PLUS:
            parts.append(rx.Plus(rx.AnyLetter()))
        if i < len(m.blocks):
            parts.extend(rx.Letter(c) for c in m.blocks[i])
    if not parts:
        return rx.EmptyWord()
    ast = parts[0]
    for p in parts[1:]:
        ast = rx.Concat(ast, p)
    return ast


def to_dfa(m: Monomial, alphabet: Alphabet) -> D.Dfa:
    """Minimal automaton of the monomial language inside non-empty words."""
    d, _ = D.compile_regex(to_regex_ast(m), alphabet)
    return d


def expand_plus(m: Monomial, alphabet: Alphabet) -> frozenset[Monomial]:
    """Realize every PLUS gap as one concrete letter followed by a STAR gap.

    An inner gap's letter is absorbed into the block on its left; a leading
    PLUS boundary prepends its letter to the first block.  The union of the
    results equals the input language.
    """
    for g in m.gaps[1:-1]:
        if g != Gap.PLUS:
            raise PreconditionError("expansion expects PLUS inner gaps")
    plus_positions = [i for i, g in enumerate(m.gaps) if g == Gap.PLUS]
    out = set()
    for choice in itertools.product(alphabet.letters, repeat=len(plus_positions)):
        blocks = list(m.blocks)
        gaps = list(m.gaps)
        for i, c in zip(plus_positions, choice):
            gaps[i] = Gap.STAR
            if i == 0:
                if blocks:
                    blocks[0] = c + blocks[0]
                else:
                    # the lone gap is both boundaries: pattern becomes STAR then c
                    blocks = [c]
                    gaps = [Gap.STAR, Gap.NONE]
            else:
                blocks[i - 1] = blocks[i - 1] + c
        out.add(Monomial.make(blocks, gaps))
    return frozenset(out)


# --- pattern matchings -------------------------------------------------------

def leftmost_matching(m: Monomial, w: str) -> list[tuple[int, int]] | None:
    """Earliest placement of each block, or None when w is not a member.

    Only for monomials without PLUS gaps and without empty blocks (the
    canonical STAR shapes).
    """
    if Gap.PLUS in m.gaps:
        raise PreconditionError("leftmost matching is for STAR-gap monomials")
    blocks = m.blocks
    n = len(blocks)
    left_anchored = m.left_gap == Gap.NONE
    right_anchored = m.right_gap == Gap.NONE
    if n == 0:
        # the word must satisfy the single gap: NONE only fits the empty word
        return [] if (m.gaps[0] == Gap.STAR or w == "") else None
    latest = [0] * n
    limit = len(w)
    for i in range(n - 1, -1, -1):
        b = blocks[i]
        if i == n - 1 and right_anchored:
            s = len(w) - len(b)
            if s < 0 or w[s:] != b:
                return None
        else:
            s = w.rfind(b, 0, limit)
            if s < 0:
                return None
        latest[i] = s
        limit = s
    out: list[tuple[int, int]] = []
    pos = 0
    for i, b in enumerate(blocks):
        if i == n - 1 and right_anchored:
            s = len(w) - len(b)
        elif i == 0 and left_anchored:
            s = 0 if w.startswith(b) else -1
        else:
            s = w.find(b, pos)
        if s < 0 or s < pos or s > latest[i]:
            return None
        if i == 0 and left_anchored and s != 0:
            return None
        out.append((s, s + len(b)))
        pos = s + len(b)
    return out


def right_quotient_monomial(p: Monomial, u: str, q: str) -> Monomial:
    """A monomial P' with uq in P', P' inside (P restricted to ending in q),
    and degree(P') <= degree(P) + |q|.

    Split the leftmost matching of uq in P at the u|q border: blocks ending
    inside u stay pattern, everything from the first block that crosses the
    border (or from q itself) is frozen into one literal final block.
    """
    if not u or not q:
        raise InputError("u and q must be non-empty")
    if Gap.PLUS in p.gaps:
        raise PreconditionError("quotient construction expects a STAR-gap monomial")
    w = u + q
    match = leftmost_matching(p, w)
    if match is None:
        raise PreconditionError("uq must belong to the monomial")
    c = len(u)
    k = sum(1 for (_, e) in match if e <= c)
    if k == len(p.blocks):
        sigma = c
    else:
        sigma = min(match[k][0], c)
    frozen = w[sigma:]
    if k == 0:
        if p.left_gap == Gap.NONE and sigma == 0:
            result = Monomial.make((frozen,), (Gap.NONE, Gap.NONE))
        else:
            result = Monomial.make((frozen,), (Gap.STAR, Gap.NONE))
    else:
        result = Monomial.make(p.blocks[:k] + (frozen,),
                               p.gaps[:k] + (Gap.STAR, Gap.NONE))
    if result.degree > p.degree + len(q) or not member(result, w):
        raise FalsificationError("quotient construction violated its contract")
    return result


# --- covers ------------------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    """A finite set of monomials whose union is the language, with the
    degree and block-count ceilings they were checked against."""

    monomials: tuple[Monomial, ...]
    bound_degree: int
    bound_count: int
    verified: bool

    def as_json(self) -> dict:
        return {
            "monomials": [monomial_text(m) for m in self.monomials],
            "boundDegree": self.bound_degree,
            "boundCount": self.bound_count,
            "verifiedEquivalent": self.verified,
        }


def _last_descent_split(data: SyntacticData, u: str) -> int:
    """Position of the last strict R-descent along the prefixes of u (the
    empty prefix counts as strictly above everything)."""
    g = data.green
    last = 0
    prev = None
    for i, ch in enumerate(u):
        el = data.letter_image[data.alphabet.index(ch)] if i == 0 else \
            data.semigroup.times(prev, data.letter_image[data.alphabet.index(ch)])
        if i > 0 and not g.r_related(el, prev):
            last = i
        prev = el
    return last


def _monomial_for_word(data: SyntacticData, u: str,
                       memo: dict[str, Monomial]) -> Monomial:
    """The bounded-degree pattern containing u from the descent recursion:
    cut u at its last strict R-descent, recurse on the left part, and
    stitch the stabilized factorization of the right part into the pattern
    with STAR gaps over the unconstrained stretches."""
    if u in memo:
        return memo[u]
    split = _last_descent_split(data, u)
    v, w = u[:split], u[split:]
    elements = tuple(data.letter_image[data.alphabet.index(c)] for c in w)
    fact = stabilized_factorization(data.semigroup, elements)
    lengths_x = [len(x) for x in fact.xs]
    lengths_w = [len(x) for x in fact.ws]
    lengths_y = [len(x) for x in fact.ys]
    segs: list[str] = []
    pos = 0
    carry = ""
    for lx, lw, ly in zip(lengths_x, lengths_w, lengths_y):
        segs.append(carry + w[pos:pos + lx])
        pos += lx + lw
        carry = w[pos:pos + ly]
        pos += ly
    segs.append(carry + w[pos:])  # y_m followed by the factorization tail
    if v == "":
        blocks = tuple(segs)
        gaps = (Gap.NONE,) + (Gap.STAR,) * (len(segs) - 1) + (Gap.NONE,)
        result = Monomial.make(blocks, gaps)
    else:
        base = _monomial_for_word(data, v, memo)
        blocks = base.blocks[:-1] + (base.blocks[-1] + segs[0],) + tuple(segs[1:])
        gaps = base.gaps[:-1] + (Gap.STAR,) * (len(segs) - 1) + (Gap.NONE,)
        result = Monomial.make(blocks, gaps)
    if not member(result, u):
        raise FalsificationError("constructed pattern misses its own witness")
    memo[u] = result
    return result


def cover(data: SyntacticData, anchor: Anchor = Anchor.BOTH) -> Cover:
    """Union-of-monomials description of the language with polynomial bounds
    (degree below 2*size^3 + size^2, block count at most size^2).

    Precondition: the ordered syntactic semigroup satisfies B_HALF, plus the
    anchor's ideal condition (R-ideal for LEFT, L-ideal for RIGHT, J-ideal
    for NONE).  New monomials are pulled from the shortest still-uncovered
    word until the union is automaton-equivalent to the language, which
    terminates because only finitely many patterns exist below the bound.
    """
    sg = data.semigroup
    ok, witness = check_b_half(sg)
    if not ok:
        raise PreconditionError(f"cover needs B_HALF; violated at {witness.as_json(sg)}")
    g = data.green
    needed = {Anchor.LEFT: g.leq_r, Anchor.RIGHT: g.leq_l, Anchor.NONE: g.leq_j}
    if anchor in needed:
        ideal, pair = order_ideal_check(data.image_of_language, needed[anchor], sg.size)
        if not ideal:
            raise PreconditionError(
                f"cover({anchor.value}) needs the image to be an order ideal; "
                f"violated at {pair}")

    alphabet = data.alphabet
    language = data.source_dfa
    bound_degree = 2 * sg.size ** 3 + sg.size ** 2
    bound_count = sg.size ** 2

    chosen: list[Monomial] = []
    union_dfa = D.empty_language(alphabet)
    all_words = Monomial.make((), (Gap.STAR,))
    if D.subset_of(to_dfa(all_words, alphabet), language):
        chosen.append(all_words)
        union_dfa = to_dfa(all_words, alphabet)
    memo: dict[str, Monomial] = {}
    while True:
        eq, missing = D.equivalent(union_dfa, language)
        if eq:
            break
        m = _monomial_for_word(data, missing, memo)
        if m in chosen:
            raise FalsificationError("cover loop produced a duplicate pattern")
        if not D.subset_of(to_dfa(m, alphabet), language):
            raise FalsificationError("constructed pattern leaves the language")
        chosen.append(m)
        union_dfa = D.minimize(D.union(union_dfa, to_dfa(m, alphabet)))

    if anchor != Anchor.BOTH:
        left, right = anchor.boundary_gaps()
        opened = set()
        for m in chosen:
            if m.block_count == 0:
                opened.add(Monomial.make((), (Gap.STAR,)))
            else:
                opened.add(Monomial.make(m.blocks, (left,) + m.gaps[1:-1] + (right,)))
        chosen = sorted(opened, key=Monomial.sort_key)
        union_dfa = D.empty_language(alphabet)
        for m in chosen:
            union_dfa = D.minimize(D.union(union_dfa, to_dfa(m, alphabet)))
        eq, _ = D.equivalent(union_dfa, language)
        if not eq:
            raise FalsificationError("opening the boundary gaps changed the language")

    for m in chosen:
        if m.degree >= bound_degree:
            raise FalsificationError(f"cover degree bound violated by {m!r}")
        if m.block_count > bound_count:
            raise FalsificationError(f"cover block bound violated by {m!r}")
    return Cover(tuple(sorted(chosen, key=Monomial.sort_key)),
                 bound_degree, bound_count, True)


# --- text format -------------------------------------------------------------

def monomial_text(m: Monomial) -> str:
    if m.block_count == 0 and m.gaps == (Gap.NONE,):
        return '""'
    parts = []
    for i, gap in enumerate(m.gaps):
        if gap != Gap.NONE:
            parts.append(gap.token())
        if i < len(m.blocks):
            parts.append(f'"{m.blocks[i]}"')
    return " ".join(parts)


def parse_monomial(text: str, alphabet: Alphabet) -> Monomial:
    tokens = text.split()
    blocks: list[str] = []
    gaps: list[Gap] = []
    expecting_block = None  # None = at the start
    pending_gap: Gap | None = None
    for tok in tokens:
        if tok == "<*>" or tok == "<+>":
            gap = Gap.STAR if tok == "<*>" else Gap.PLUS
            if pending_gap is not None:
                raise InputError("two adjacent gap tokens")
            pending_gap = gap
        elif len(tok) >= 2 and tok[0] == '"' and tok[-1] == '"':
            body = tok[1:-1]
            alphabet.check_word(body)
            if blocks and pending_gap is None:
                raise InputError("blocks must be separated by gap tokens")
            gaps.append(pending_gap if pending_gap is not None else Gap.NONE)
            blocks.append(body)
            pending_gap = None
        else:
            raise InputError(f"bad monomial token: {tok!r}")
    if not tokens:
        raise InputError("empty monomial text")
    gaps.append(pending_gap if pending_gap is not None else Gap.NONE)
    if not blocks:
        # a bare gap token: gaps holds [None-case?]; normalize to one entry
        gaps = [gaps[-1]]
    return Monomial.make(blocks, gaps)
