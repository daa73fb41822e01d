"""Existential first-order sentences over words and their Boolean combinations.

A sentence is a single existential block over a quantifier-free matrix of
atoms: position order (less), direct successor (succ x y, meaning x = y+1),
equality, first/last position (min/max), letter labels, and truth.  Word
positions are the models; languages always live in non-empty words.

The two translations mirror each other: a STAR-gap monomial becomes a
sentence with one variable per block letter (successor chains inside
blocks, order between blocks, min/max for anchored ends), and a sentence
becomes a finite union of PLUS-gap monomials by enumerating the ways its
variables can sit on a bounded set of marked positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EmptyWordError, InputError, PreconditionError, ResourceError
from .monomials import Gap, Monomial
from .words import Alphabet

TEMPLATE_VARIABLE_CAP = 6


@dataclass(frozen=True)
class Less:
    x: str
    y: str


@dataclass(frozen=True)
class Succ:
    """succ(x, y) holds when x = y + 1."""
    x: str
    y: str


@dataclass(frozen=True)
class Eq:
    x: str
    y: str


@dataclass(frozen=True)
class MinAtom:
    x: str


@dataclass(frozen=True)
class MaxAtom:
    x: str


@dataclass(frozen=True)
class LabelAtom:
    x: str
    letter: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Not:
    inner: "Matrix"


@dataclass(frozen=True)
class And:
    items: tuple["Matrix", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["Matrix", ...]


Atom = Less | Succ | Eq | MinAtom | MaxAtom | LabelAtom | Top
Matrix = Atom | Not | And | Or


@dataclass(frozen=True)
class Exists:
    """A sentence: one block of existential variables over a matrix."""
    variables: tuple[str, ...]
    matrix: Matrix


FormulaAst = Exists | Not | And | Or  # Boolean nodes may combine sentences


def eval_matrix(node: Matrix, atom_eval) -> bool | None:
    """Three-valued evaluation: None propagates for undecided atoms."""
    if isinstance(node, Not):
        v = eval_matrix(node.inner, atom_eval)
        return None if v is None else not v
    if isinstance(node, And):
        out: bool | None = True
        for item in node.items:
            v = eval_matrix(item, atom_eval)
            if v is False:
                return False
            if v is None:
                out = None
        return out
    if isinstance(node, Or):
        out = False
        for item in node.items:
            v = eval_matrix(item, atom_eval)
            if v is True:
                return True
            if v is None:
                out = None
        return out
    return atom_eval(node)


def _word_atom_eval(w: str, assignment: dict[str, int]):
    def ev(atom: Atom) -> bool | None:
        if isinstance(atom, Top):
            return True
        if isinstance(atom, LabelAtom):
            p = assignment.get(atom.x)
            return None if p is None else w[p] == atom.letter
        if isinstance(atom, (MinAtom, MaxAtom)):
            p = assignment.get(atom.x)
            if p is None:
                return None
            return p == 0 if isinstance(atom, MinAtom) else p == len(w) - 1
        px, py = assignment.get(atom.x), assignment.get(atom.y)
        if px is None or py is None:
            return None
        if isinstance(atom, Less):
            return px < py
        if isinstance(atom, Succ):
            return px == py + 1
        return px == py  # Eq
    return ev


def free_variables(matrix: Matrix) -> frozenset[str]:
    return frozenset(v for atom in _atoms(matrix) for v in _atom_vars(atom))


def eval_formula(f: FormulaAst, w: str) -> bool:
    """Model checking by assignment backtracking with early matrix cuts.

    Two always-sound rewrites keep the search small: an existential block
    distributes over a disjunction matrix, and variables the matrix never
    mentions are dropped (they exist vacuously in a non-empty word).
    """
    if w == "":
        raise EmptyWordError("models are non-empty words")
    if isinstance(f, Exists):
        if isinstance(f.matrix, Or):
            return any(eval_formula(Exists(f.variables, item), w)
                       for item in f.matrix.items)
        free = free_variables(f.matrix)
        variables = tuple(v for v in f.variables if v in free)
        if not free <= set(f.variables):
            raise InputError("matrix uses a variable outside the block")
        assignment: dict[str, int] = {}

        def search(i: int) -> bool:
            verdict = eval_matrix(f.matrix, _word_atom_eval(w, assignment))
            if verdict is True:
                return True  # remaining variables may sit anywhere
            if verdict is False:
                return False
            for p in range(len(w)):
                assignment[variables[i]] = p
                if search(i + 1):
                    return True
            del assignment[variables[i]]
            return False

        return search(0)
    if isinstance(f, Not):
        return not eval_formula(f.inner, w)
    if isinstance(f, And):
        return all(eval_formula(g, w) for g in f.items)
    if isinstance(f, Or):
        return any(eval_formula(g, w) for g in f.items)
    raise InputError(f"not a formula: {f!r}")


def predicates_used(f: FormulaAst) -> frozenset[str]:
    out: set[str] = set()

    def walk(node) -> None:
        if isinstance(node, Exists):
            walk(node.matrix)
        elif isinstance(node, (Not,)):
            walk(node.inner)
        elif isinstance(node, (And, Or)):
            for item in node.items:
                walk(item)
        elif isinstance(node, Less):
            out.add("less")
        elif isinstance(node, Succ):
            out.add("succ")
        elif isinstance(node, Eq):
            out.add("eq")
        elif isinstance(node, MinAtom):
            out.add("min")
        elif isinstance(node, MaxAtom):
            out.add("max")
        elif isinstance(node, LabelAtom):
            out.add("label")

    walk(f)
    return frozenset(out)


def signature_of(f: FormulaAst) -> frozenset[str]:
    """The min/max part of the signature actually used by the formula
    (order and successor are always permitted)."""
    return predicates_used(f) & {"min", "max"}


# --- monomial -> sentence ----------------------------------------------------

def from_monomial(m: Monomial) -> Exists:
    """One variable per block letter: successor chains inside blocks, order
    between blocks, min/max where the pattern is anchored."""
    if Gap.PLUS in m.gaps:
        raise PreconditionError("sentences are built from STAR-gap monomials")
    if m.block_count == 0:
        matrix: Matrix = Top() if m.gaps[0] == Gap.STAR else Not(Top())
        return Exists(("x1",), matrix)
    names: list[list[str]] = []
    counter = itertools.count(1)
    for b in m.blocks:
        names.append([f"x{next(counter)}" for _ in b])
    conjuncts: list[Matrix] = []
    for b, vs in zip(m.blocks, names):
        for c, v in zip(b, vs):
            conjuncts.append(LabelAtom(v, c))
        for prev, nxt in zip(vs, vs[1:]):
            conjuncts.append(Succ(nxt, prev))
    for left, right in zip(names, names[1:]):
        conjuncts.append(Less(left[-1], right[0]))
    if m.left_gap == Gap.NONE:
        conjuncts.append(MinAtom(names[0][0]))
    if m.right_gap == Gap.NONE:
        conjuncts.append(MaxAtom(names[-1][-1]))
    variables = tuple(v for vs in names for v in vs)
    matrix = conjuncts[0] if len(conjuncts) == 1 else And(tuple(conjuncts))
    return Exists(variables, matrix)


def union_formula(sentences: list[Exists]) -> Exists:
    """One sentence equivalent to the disjunction: variables renamed apart,
    matrices joined under a disjunction.  Sound because a single existential
    block distributes over disjunction on non-empty words."""
    if not sentences:
        return Exists(("x1",), Not(Top()))
    if len(sentences) == 1:
        return sentences[0]
    counter = itertools.count(1)
    variables: list[str] = []
    disjuncts: list[Matrix] = []
    for sentence in sentences:
        renaming = {v: f"x{next(counter)}" for v in sentence.variables}
        variables.extend(renaming.values())
        disjuncts.append(_rename(sentence.matrix, renaming))
    return Exists(tuple(variables), Or(tuple(disjuncts)))


def _rename(node: Matrix, renaming: dict[str, str]) -> Matrix:
    if isinstance(node, Not):
        return Not(_rename(node.inner, renaming))
    if isinstance(node, And):
        return And(tuple(_rename(i, renaming) for i in node.items))
    if isinstance(node, Or):
        return Or(tuple(_rename(i, renaming) for i in node.items))
    if isinstance(node, (Less, Succ, Eq)):
        return type(node)(renaming[node.x], renaming[node.y])
    if isinstance(node, (MinAtom, MaxAtom)):
        return type(node)(renaming[node.x])
    if isinstance(node, LabelAtom):
        return LabelAtom(renaming[node.x], node.letter)
    return node  # Top


# --- sentence -> monomials ---------------------------------------------------

def _compositions(max_total: int):
    """Non-empty tuples of positive integers with sum <= max_total."""
    for total in range(1, max_total + 1):
        def rec(rest):
            if rest == 0:
                yield ()
                return
            for first in range(1, rest + 1):
                for tail in rec(rest - first):
                    yield (first,) + tail
        yield from rec(total)


def sigma1_to_monomials(f: Exists, alphabet: Alphabet,
                        variable_cap: int = TEMPLATE_VARIABLE_CAP
                        ) -> frozenset[Monomial]:
    """The finite union of PLUS-gap monomials equal to the sentence's language.

    A template places every variable (plus two implicit markers for the first
    and last word position) on a bounded sequence of marked positions grouped
    into blocks; every atom is decidable from the template, and satisfying
    templates contribute their block pattern.  Degree and block count stay
    within (variable count + 2).
    """
    if not isinstance(f, Exists):
        raise PreconditionError("expected a single sentence without Boolean prefix")
    m = len(f.variables)
    if m > variable_cap:
        raise ResourceError("too many variables for template enumeration",
                            variable_cap)
    out: set[Monomial] = set()
    for comp in _compositions(m + 2):
        nslots = sum(comp)
        # slot -> (block index, offset); global slot order is position order
        block_of: list[int] = []
        offset_of: list[int] = []
        for bi, size in enumerate(comp):
            for off in range(size):
                block_of.append(bi)
                offset_of.append(off)
        endpoints = {0, nslots - 1}
        for assignment in itertools.product(range(nslots), repeat=m):
            used = set(assignment) | endpoints
            if len(used) < nslots:
                continue  # some slot is marked by nobody
            slot_of = dict(zip(f.variables, assignment))
            letters: dict[int, str] = {}

            def atom_eval(atom):
                if isinstance(atom, Top):
                    return True
                if isinstance(atom, LabelAtom):
                    s = slot_of[atom.x]
                    got = letters.get(s)
                    return None if got is None else got == atom.letter
                if isinstance(atom, MinAtom):
                    return slot_of[atom.x] == 0
                if isinstance(atom, MaxAtom):
                    return slot_of[atom.x] == nslots - 1
                sx, sy = slot_of[atom.x], slot_of[atom.y]
                if isinstance(atom, Less):
                    return sx < sy
                if isinstance(atom, Eq):
                    return sx == sy
                # successor: adjacent offsets in one block; never across a gap
                return block_of[sx] == block_of[sy] and \
                    offset_of[sx] == offset_of[sy] + 1

            def emit(slot: int) -> None:
                verdict = eval_matrix(f.matrix, atom_eval)
                if verdict is False:
                    return
                if verdict is True and slot < nslots:
                    # remaining letters are free: emit every completion
                    free = [s for s in range(slot, nslots)]
                    for choice in itertools.product(alphabet.letters,
                                                    repeat=len(free)):
                        for s, c in zip(free, choice):
                            letters[s] = c
                        _collect()
                    for s in free:
                        letters.pop(s, None)
                    return
                if slot == nslots:
                    if verdict is True:
                        _collect()
                    return
                for c in alphabet.letters:
                    letters[slot] = c
                    emit(slot + 1)
                del letters[slot]

            def _collect() -> None:
                blocks = []
                s = 0
                for size in comp:
                    blocks.append("".join(letters[s + i] for i in range(size)))
                    s += size
                gaps = (Gap.NONE,) + (Gap.PLUS,) * (len(comp) - 1) + (Gap.NONE,)
                out.add(Monomial.make(tuple(blocks), gaps))

            emit(0)
    return frozenset(out)


# --- s-expression text format ------------------------------------------------

def formula_text(f: FormulaAst) -> str:
    if isinstance(f, Exists):
        vars_ = " ".join(f.variables)
        return f"(exists ({vars_}) {formula_text(f.matrix)})"
    if isinstance(f, Not):
        return f"(not {formula_text(f.inner)})"
    if isinstance(f, (And, Or)):
        head = "and" if isinstance(f, And) else "or"
        return "(" + head + "".join(" " + formula_text(i) for i in f.items) + ")"
    if isinstance(f, Less):
        return f"(less {f.x} {f.y})"
    if isinstance(f, Succ):
        return f"(succ {f.x} {f.y})"
    if isinstance(f, Eq):
        return f"(eq {f.x} {f.y})"
    if isinstance(f, MinAtom):
        return f"(min {f.x})"
    if isinstance(f, MaxAtom):
        return f"(max {f.x})"
    if isinstance(f, LabelAtom):
        return f"(label {f.x} {f.letter})"
    if isinstance(f, Top):
        return "(top)"
    raise InputError(f"not a formula node: {f!r}")


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise InputError("unexpected end of formula text")
    tok = tokens[pos]
    if tok == ")":
        raise InputError("unexpected ')'")
    if tok != "(":
        return tok, pos + 1
    items = []
    pos += 1
    while pos < len(tokens) and tokens[pos] != ")":
        item, pos = _read(tokens, pos)
        items.append(item)
    if pos >= len(tokens):
        raise InputError("missing ')'")
    return items, pos + 1


def _build(sexp) -> FormulaAst | Matrix:
    if isinstance(sexp, str):
        if sexp == "top":
            return Top()
        raise InputError(f"bare symbol {sexp!r} is not a formula")
    if not sexp:
        raise InputError("empty form")
    head = sexp[0]
    if head == "exists":
        if len(sexp) != 3 or not isinstance(sexp[1], list) or \
                not all(isinstance(v, str) for v in sexp[1]):
            raise InputError("exists needs a variable list and a matrix")
        return Exists(tuple(sexp[1]), _build(sexp[2]))
    if head == "not":
        if len(sexp) != 2:
            raise InputError("not takes one argument")
        return Not(_build(sexp[1]))
    if head in ("and", "or"):
        items = tuple(_build(i) for i in sexp[1:])
        return And(items) if head == "and" else Or(items)
    if head == "top":
        return Top()
    if head in ("less", "succ", "eq"):
        if len(sexp) != 3:
            raise InputError(f"{head} takes two variables")
        cls = {"less": Less, "succ": Succ, "eq": Eq}[head]
        return cls(sexp[1], sexp[2])
    if head in ("min", "max"):
        if len(sexp) != 2:
            raise InputError(f"{head} takes one variable")
        return MinAtom(sexp[1]) if head == "min" else MaxAtom(sexp[1])
    if head == "label":
        if len(sexp) != 3:
            raise InputError("label takes a variable and a letter")
        return LabelAtom(sexp[1], sexp[2])
    raise InputError(f"unknown form {head!r}")


def parse_formula(text: str) -> FormulaAst:
    tokens = _tokenize(text)
    sexp, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise InputError("trailing tokens after the formula")
    node = _build(sexp)
    _check_formula(node)
    return node


def _check_formula(node, inside_matrix=False) -> None:
    if isinstance(node, Exists):
        if inside_matrix:
            raise InputError("nested quantifier blocks are not supported")
        declared = set(node.variables)
        for atom in _atoms(node.matrix):
            for v in _atom_vars(atom):
                if v not in declared:
                    raise InputError(f"variable {v!r} is not declared")
        return
    if isinstance(node, Not):
        _check_formula(node.inner, inside_matrix)
        return
    if isinstance(node, (And, Or)):
        for item in node.items:
            _check_formula(item, inside_matrix)
        return
    if not inside_matrix:
        raise InputError("a formula must be a sentence or a Boolean combination")


def _atoms(matrix: Matrix):
    if isinstance(matrix, Exists):
        raise InputError("nested quantifier blocks are not supported")
    if isinstance(matrix, Not):
        yield from _atoms(matrix.inner)
    elif isinstance(matrix, (And, Or)):
        for item in matrix.items:
            yield from _atoms(item)
    else:
        yield matrix


def _atom_vars(atom: Atom) -> tuple[str, ...]:
    if isinstance(atom, (Less, Succ, Eq)):
        return (atom.x, atom.y)
    if isinstance(atom, (MinAtom, MaxAtom, LabelAtom)):
        return (atom.x,)
    return ()
