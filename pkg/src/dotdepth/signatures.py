"""Bounded monomial signatures of words and descriptions built from them.

The signature of a word is the set of all monomials of a fixed shape
(anchoring flavor, gap kind, degree and block caps) containing it.  Words
with equal signatures at high enough caps have related images in the
syntactic semigroup: equal images for the both-anchored family, R-related
for prefix-anchored, L-related for suffix-anchored, J-related for the
unanchored family.  `minimal_refining_degree` searches the least degree cap
with that property and checks it against the guaranteed ceilings, and
`boolean_combination` turns signature buckets into a Boolean combination
of monomials describing the language, verified by automaton equivalence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import dfa as D
from .errors import FalsificationError, PreconditionError, ResourceError
from .identities import check_knast
from .monomials import Anchor, Gap, Monomial, member, monomial_text, to_dfa
from .semigroup import SyntacticData, union_of_classes_check
from .words import Alphabet, enumerate_words

SIGNATURE_SET_LIMIT = 10 ** 6


def refinement_degree_bound(flavor: Anchor, size: int) -> int:
    """Degree below which equal signatures are guaranteed to refine the
    flavor's semigroup relation (both-anchored 4|S|^2, one anchor 8|S|^2,
    unanchored 12|S|^2)."""
    factor = {Anchor.BOTH: 4, Anchor.LEFT: 8, Anchor.RIGHT: 8, Anchor.NONE: 12}[flavor]
    return factor * size * size


@dataclass(frozen=True)
class Signature:
    flavor: Anchor
    degree_cap: int
    block_cap: int
    gap_kind: Gap
    members: tuple[Monomial, ...]

    def key(self) -> frozenset[Monomial]:
        return frozenset(self.members)


def _boundary_options(flavor: Anchor, gap_kind: Gap):
    """Boundary gap choices available to the flavor's family.

    Block words in a presentation may be empty, so an anchored end also
    appears opened (an empty first or last block dissolves into the gap
    after it); the open ends that are structural to the flavor only ever
    carry the gap kind.  The block cap counts canonical (non-dissolved)
    blocks, so the opened variants come for free.
    """
    structural_left = flavor in (Anchor.RIGHT, Anchor.NONE)
    structural_right = flavor in (Anchor.LEFT, Anchor.NONE)
    lefts = [gap_kind] if structural_left else [Gap.NONE, gap_kind]
    rights = [gap_kind] if structural_right else [Gap.NONE, gap_kind]
    for left in lefts:
        for right in rights:
            yield left, right


def _placements(w: str, gap_kind: Gap, left: Gap, right: Gap,
                degree_cap: int, block_cap: int):
    """All ways to pick ordered block occurrences in w matching the shape;
    yields tuples of blocks.  STAR gaps allow adjacent blocks, PLUS gaps
    demand a letter between them; NONE boundaries pin to the word ends.
    Empty blocks are meaningful only between PLUS gaps."""
    n = len(w)
    allow_empty = gap_kind == Gap.PLUS
    spacing = 1 if gap_kind == Gap.PLUS else 0
    first_lo = {Gap.NONE: 0, Gap.STAR: 0, Gap.PLUS: 1}[left]

    def may_finish(last_end: int) -> bool:
        if right == Gap.NONE:
            return last_end == n
        if right == Gap.PLUS:
            return last_end <= n - 1
        return True

    def rec(lo: int, picked: tuple[str, ...], degree_left: int, blocks_left: int):
        if blocks_left == 0:
            return
        hi_start = n
        for start in range(lo, hi_start + 1):
            if left == Gap.NONE and not picked and start != 0:
                break
            max_len = min(degree_left, n - start)
            min_len = 0 if allow_empty else 1
            for length in range(min_len, max_len + 1):
                block = w[start:start + length]
                end = start + length
                chosen = picked + (block,)
                if may_finish(end):
                    yield chosen
                yield from rec(end + spacing, chosen,
                               degree_left - length, blocks_left - 1)

    yield from rec(first_lo, (), degree_cap, block_cap)


def signature(w: str, flavor: Anchor, degree_cap: int, block_cap: int,
              gap_kind: Gap = Gap.STAR,
              set_limit: int = SIGNATURE_SET_LIMIT) -> Signature:
    """The exact set of shape-conforming monomials containing w.

    Presentations may use empty blocks, so an anchored shape degrades to an
    open boundary at the price of one presentation block; the block cap
    counts presentation blocks.  The all-gap pattern is the zero-block
    member wherever its presentation fits the cap.
    """
    if not w:
        raise PreconditionError("signatures are for non-empty words")
    if degree_cap < 0 or block_cap < 0:
        raise PreconditionError("caps must be non-negative")
    found: set[Monomial] = {Monomial.make((), (gap_kind,))}  # zero-block pattern
    if block_cap >= 1:
        for left, right in _boundary_options(flavor, gap_kind):
            for blocks in _placements(w, gap_kind, left, right,
                                      degree_cap, block_cap):
                gaps = (left,) + (gap_kind,) * (len(blocks) - 1) + (right,)
                found.add(Monomial.make(blocks, gaps))
                if len(found) > set_limit:
                    raise ResourceError("signature exceeds the size limit",
                                        set_limit)
    return Signature(flavor, degree_cap, block_cap, gap_kind,
                     tuple(sorted(found, key=Monomial.sort_key)))


_RELATION_NAMES = {Anchor.BOTH: "equal images", Anchor.LEFT: "R-related images",
                   Anchor.RIGHT: "L-related images", Anchor.NONE: "J-related images"}


def _flavor_related(data: SyntacticData, flavor: Anchor, x: int, y: int) -> bool:
    if flavor == Anchor.BOTH:
        return x == y
    g = data.green
    if flavor == Anchor.LEFT:
        return g.r_related(x, y)
    if flavor == Anchor.RIGHT:
        return g.l_related(x, y)
    return g.j_related(x, y)


def refine_check(data: SyntacticData, flavor: Anchor, degree_cap: int,
                 block_cap: int, max_len: int
                 ) -> tuple[bool, tuple[str, str] | None]:
    """Do equal signatures imply the flavor's relation between images, over
    all words up to max_len?  On failure returns a witness pair."""
    ok, witness = check_knast(data.semigroup)
    if not ok:
        raise PreconditionError(
            f"refinement needs the KNAST class; violated at "
            f"{witness.as_json(data.semigroup)}")
    buckets: dict[frozenset[Monomial], tuple[str, int]] = {}
    for w in enumerate_words(data.alphabet, max_len):
        key = signature(w, flavor, degree_cap, block_cap, Gap.STAR).key()
        image = data.eval_text(w)
        if key not in buckets:
            buckets[key] = (w, image)
            continue
        first_word, first_image = buckets[key]
        if not _flavor_related(data, flavor, first_image, image):
            return False, (first_word, w)
    return True, None


def minimal_refining_degree(data: SyntacticData, flavor: Anchor,
                            max_len: int) -> int:
    """Least degree cap whose signatures refine the flavor relation on words
    up to max_len; must come in strictly below the guaranteed ceiling."""
    size = data.semigroup.size
    bound = refinement_degree_bound(flavor, size)
    block_cap_for = (lambda d: 2 * size) if flavor == Anchor.BOTH else (lambda d: d)
    for d in itertools.count(0):
        if d >= bound:
            raise FalsificationError(
                f"refinement did not stabilize below the bound {bound} "
                f"for {_RELATION_NAMES[flavor]}")
        ok, _ = refine_check(data, flavor, d, block_cap_for(d), max_len)
        if ok:
            return d
    raise AssertionError("unreachable")


# --- Boolean combinations ----------------------------------------------------

def family(alphabet: Alphabet, flavor: Anchor, degree_cap: int, block_cap: int,
           gap_kind: Gap = Gap.STAR) -> tuple[Monomial, ...]:
    """Every canonical monomial of the shape, not just those containing a
    given word.  Small caps only; the whole family is materialized."""
    out: set[Monomial] = {Monomial.make((), (gap_kind,))}
    min_len = 0 if gap_kind == Gap.PLUS else 1
    for left, right in _boundary_options(flavor, gap_kind):
        for count in range(1, block_cap + 1):
            for lengths in itertools.product(range(min_len, degree_cap + 1),
                                             repeat=count):
                if sum(lengths) > degree_cap:
                    continue
                pools = [itertools.product(alphabet.letters, repeat=k)
                         for k in lengths]
                for combo in itertools.product(*pools):
                    blocks = tuple("".join(c) for c in combo)
                    gaps = (left,) + (gap_kind,) * (count - 1) + (right,)
                    out.add(Monomial.make(blocks, gaps))
    return tuple(sorted(out, key=Monomial.sort_key))


@dataclass(frozen=True)
class BooleanDescription:
    """A union of signature buckets, each a conjunction saying which family
    monomials hold and which do not."""

    flavor: Anchor
    degree_cap: int
    block_cap: int
    family: tuple[Monomial, ...]
    buckets: tuple[tuple[Monomial, ...], ...]  # the positive members per bucket
    verified: bool
    witness: str | None

    def holds(self, w: str) -> bool:
        sig = {m for m in self.family if member(m, w)}
        return any(sig == set(bucket) for bucket in self.buckets)

    def as_json(self) -> dict:
        disjuncts = []
        for bucket in self.buckets:
            positives = set(bucket)
            parts: list = [monomial_text(m) for m in bucket]
            parts += [{"not": monomial_text(m)} for m in self.family
                      if m not in positives]
            disjuncts.append({"and": parts})
        return {
            "combination": {"or": disjuncts},
            "verified": self.verified,
            "witness": self.witness,
            "degreeCap": self.degree_cap,
            "blockCap": self.block_cap,
        }


def _description_dfa(desc: BooleanDescription, alphabet: Alphabet) -> D.Dfa:
    everything = D.all_words(alphabet)
    cache = {m: to_dfa(m, alphabet) for m in desc.family}
    result = D.empty_language(alphabet)
    for bucket in desc.buckets:
        positives = set(bucket)
        acc = everything
        for m in desc.family:
            piece = cache[m] if m in positives else D.difference(everything, cache[m])
            acc = D.minimize(D.intersection(acc, piece))
        result = D.minimize(D.union(result, acc))
    return result


def boolean_combination(data: SyntacticData, flavor: Anchor, degree_cap: int,
                        block_cap: int, probe_len: int | None = None
                        ) -> BooleanDescription:
    """Describe the language as a Boolean combination over the monomial
    family of the given caps, by collecting the signature buckets of
    in-language probe words; the result carries an automaton-equivalence
    verification flag (an unverified result means the caps or the probe
    length were too small, never an unsound description)."""
    sg = data.semigroup
    ok, witness = check_knast(sg)
    if not ok:
        raise PreconditionError(
            f"descriptions need the KNAST class; violated at {witness.as_json(sg)}")
    class_condition = {Anchor.LEFT: data.green.classes_r,
                       Anchor.RIGHT: data.green.classes_l,
                       Anchor.NONE: data.green.classes_j}
    if flavor in class_condition:
        ok, bad = union_of_classes_check(data.image_of_language,
                                         class_condition[flavor])
        if not ok:
            raise PreconditionError(
                f"descriptions for {flavor.value} need the image to be a union "
                f"of classes; violated at {bad}")
    if probe_len is None:
        probe_len = max(8, 2 * sg.size)
    fam = family(data.alphabet, flavor, degree_cap, block_cap)
    language = data.source_dfa
    buckets: dict[frozenset[Monomial], tuple[Monomial, ...]] = {}
    for w in enumerate_words(data.alphabet, probe_len):
        if not D.accepts(language, w):
            continue
        sig = tuple(m for m in fam if member(m, w))
        buckets.setdefault(frozenset(sig), sig)
    desc = BooleanDescription(flavor, degree_cap, block_cap, fam,
                              tuple(buckets[k] for k in
                                    sorted(buckets, key=lambda k: sorted(
                                        m.sort_key() for m in k))),
                              verified=False, witness=None)
    eq, diff = D.equivalent(_description_dfa(desc, data.alphabet), language)
    return BooleanDescription(desc.flavor, desc.degree_cap, desc.block_cap,
                              desc.family, desc.buckets, eq, diff)
