"""Equation classes for finite (ordered) semigroups and exhaustive
cross-check suites.

Three classes drive the whole classifier:

  B_HALF  x^w y x^w <= x^w          (needs the compatible partial order)
  KNAST   (exfy)^w exf (tesf)^w = (exfy)^w esf (tesf)^w   for e, f idempotent
  LR      (exeye)^w exe = (exeye)^w                       for e idempotent

B_HALF implies KNAST implies LR; `inclusion_chain_report` asserts the chain
on a concrete semigroup.  All checks are brute force over the table with
deterministic witness search: nested loops in variable order, elements in
index order, first violation returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FalsificationError, PreconditionError, ResourceError
from .semigroup import FiniteSemigroup, green

KNAST_SIZE_CAP = 60

B_HALF = "B_HALF"
KNAST = "KNAST"
LR = "LR"

_VARIABLES = {B_HALF: ("x", "y"), KNAST: ("e", "f", "x", "y", "s", "t"), LR: ("e", "x", "y")}


@dataclass(frozen=True)
class EquationWitness:
    """A violating assignment; re-evaluating it must reproduce lhs and rhs."""

    equation: str
    assignment: tuple[tuple[str, int], ...]
    lhs: int
    rhs: int

    def recheck(self, sg: FiniteSemigroup) -> bool:
        lhs, rhs, holds = evaluate_equation(sg, self.equation, dict(self.assignment))
        return lhs == self.lhs and rhs == self.rhs and not holds

    def as_json(self, sg: FiniteSemigroup) -> dict:
        return {
            "equation": self.equation,
            "assignment": {var: sg.names[el] for var, el in self.assignment},
            "lhs": sg.names[self.lhs],
            "rhs": sg.names[self.rhs],
            "holds": False,
        }


def evaluate_equation(sg: FiniteSemigroup, equation: str,
                      assignment: dict[str, int]) -> tuple[int, int, bool]:
    """Both sides of the equation under the assignment, and the verdict."""
    m = sg.mult
    a = assignment
    if equation == B_HALF:
        xo = sg.omega(a["x"])
        lhs = m[m[xo][a["y"]]][xo]
        return lhs, xo, sg.leq(lhs, xo)
    if equation == KNAST:
        e, f, x, y, s, t = (a[v] for v in _VARIABLES[KNAST])
        exf = m[m[e][x]][f]
        esf = m[m[e][s]][f]
        head = sg.omega(m[exf][y])
        tail = sg.omega(m[t][esf])
        lhs = m[m[head][exf]][tail]
        rhs = m[m[head][esf]][tail]
        return lhs, rhs, lhs == rhs
    if equation == LR:
        e, x, y = (a[v] for v in _VARIABLES[LR])
        exe = m[m[e][x]][e]
        head = sg.omega(m[m[exe][y]][e])
        lhs = m[head][exe]
        return lhs, head, lhs == head
    raise ValueError(f"unknown equation {equation!r}")


def _witness(equation: str, values: tuple[int, ...], lhs: int, rhs: int) -> EquationWitness:
    return EquationWitness(equation, tuple(zip(_VARIABLES[equation], values)), lhs, rhs)


def check_b_half(sg: FiniteSemigroup) -> tuple[bool, EquationWitness | None]:
    """x^w y x^w <= x^w for all x, y; the order must be present."""
    if sg.order is None:
        raise PreconditionError("B_HALF needs the compatible partial order")
    n = sg.size
    m = sg.mult
    omegas = [sg.omega(x) for x in range(n)]
    for x in range(n):
        xo = omegas[x]
        for y in range(n):
            lhs = m[m[xo][y]][xo]
            if (lhs, xo) not in sg.order:
                return False, _witness(B_HALF, (x, y), lhs, xo)
    return True, None


def check_knast(sg: FiniteSemigroup) -> tuple[bool, EquationWitness | None]:
    """The dot-depth-one equation; O(|E|^2 * size^4) table lookups."""
    if sg.size > KNAST_SIZE_CAP:
        raise ResourceError("KNAST check refuses semigroups above the cap",
                            KNAST_SIZE_CAP)
    n = sg.size
    m = sg.mult
    omegas = [sg.omega(x) for x in range(n)]
    for e in sg.idempotents:
        for f in sg.idempotents:
            ef_row = [m[m[e][x]][f] for x in range(n)]  # exf as a function of x
            for x in range(n):
                exf = ef_row[x]
                for y in range(n):
                    head = omegas[m[exf][y]]
                    head_exf = m[head][exf]
                    for s in range(n):
                        esf = ef_row[s]
                        head_esf = m[head][esf]
                        if head_exf == head_esf:
                            continue  # both sides share the tail factor
                        for t in range(n):
                            tail = omegas[m[t][esf]]
                            lhs = m[head_exf][tail]
                            rhs = m[head_esf][tail]
                            if lhs != rhs:
                                return False, _witness(KNAST, (e, f, x, y, s, t), lhs, rhs)
    return True, None


def check_lr(sg: FiniteSemigroup) -> tuple[bool, EquationWitness | None]:
    """(exeye)^w exe = (exeye)^w for all idempotents e and all x, y."""
    n = sg.size
    m = sg.mult
    for e in sg.idempotents:
        for x in range(n):
            exe = m[m[e][x]][e]
            for y in range(n):
                head = sg.omega(m[m[exe][y]][e])
                lhs = m[head][exe]
                if lhs != head:
                    return False, _witness(LR, (e, x, y), lhs, head)
    return True, None


def is_in_lr(sg: FiniteSemigroup) -> bool:
    return check_lr(sg)[0]


def is_in_knast(sg: FiniteSemigroup) -> bool:
    return check_knast(sg)[0]


# --- suites ------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteReport:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def as_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed,
                "checked": self.checked, "detail": self.detail}


@dataclass(frozen=True)
class InclusionReport:
    b_half: bool
    knast: bool
    lr: bool

    def as_json(self) -> dict:
        return {"B_HALF": self.b_half, "KNAST": self.knast, "LR": self.lr}


def inclusion_chain_report(sg: FiniteSemigroup) -> InclusionReport:
    """Verdicts for the three classes; the chain B_HALF => KNAST => LR is
    asserted, so a violation here falsifies the implementation."""
    b, _ = check_b_half(sg)
    k, _ = check_knast(sg)
    lr, _ = check_lr(sg)
    if b and not k:
        raise FalsificationError("B_HALF holds but KNAST fails")
    if k and not lr:
        raise FalsificationError("KNAST holds but LR fails")
    return InclusionReport(b, k, lr)


def r_stability_report(sg: FiniteSemigroup) -> SuiteReport:
    """In LR: if u and x share a right-stabilizing idempotent and ux stays
    R-equivalent to u, then ux = u."""
    if not is_in_lr(sg):
        raise PreconditionError("suite needs the semigroup in LR")
    g = green(sg)
    m = sg.mult
    checked = 0
    for e in sg.idempotents:
        for u in range(sg.size):
            if m[u][e] != u:
                continue
            for x in range(sg.size):
                if m[x][e] != x:
                    continue
                ux = m[u][x]
                if g.r_related(ux, u):
                    checked += 1
                    if ux != u:
                        return SuiteReport("r-stability", False, checked,
                                           f"u={sg.names[u]} x={sg.names[x]} e={sg.names[e]}")
    return SuiteReport("r-stability", True, checked)


def _element_factors(word: tuple[int, ...], k: int) -> frozenset[tuple[int, ...]]:
    return frozenset(word[i:i + k] for i in range(len(word) - k + 1))


def descent_factor_report(sg: FiniteSemigroup, size_cap: int = 3) -> SuiteReport:
    """In LR with window k = size+1: an R-descent after ux forces the set of
    length-k factors to change when the descending letter is appended."""
    if not is_in_lr(sg):
        raise PreconditionError("suite needs the semigroup in LR")
    if sg.size > size_cap:
        raise ResourceError("descent-factor suite refuses semigroups above the cap",
                            size_cap)
    g = green(sg)
    k = sg.size + 1
    m = sg.mult
    checked = 0
    for u in range(sg.size):
        for length in (k, k + 1):
            for word in itertools.product(range(sg.size), repeat=length):
                hx = sg.eval_word(word)
                ux = m[u][hx]
                if not g.r_related(u, ux):
                    continue
                for a in range(sg.size):
                    uxa = m[ux][a]
                    if g.r_related(ux, uxa):
                        continue  # descent must be strict
                    checked += 1
                    if _element_factors(word, k) == _element_factors(word + (a,), k):
                        return SuiteReport(
                            "descent-factor", False, checked,
                            f"u={sg.names[u]} x={word} a={sg.names[a]}")
    return SuiteReport("descent-factor", True, checked)


def context_swap_report(sg: FiniteSemigroup) -> SuiteReport:
    """In the KNAST class: u R uexf and esfv L v allow swapping exf for esf
    between u and v without changing the product."""
    if not is_in_knast(sg):
        raise PreconditionError("suite needs the semigroup in the KNAST class")
    g = green(sg)
    m = sg.mult
    n = sg.size
    checked = 0
    for e in sg.idempotents:
        for f in sg.idempotents:
            ef_row = [m[m[e][z]][f] for z in range(n)]
            for x in range(n):
                exf = ef_row[x]
                for s in range(n):
                    esf = ef_row[s]
                    for u in range(n):
                        if not g.r_related(u, m[u][exf]):
                            continue
                        for v in range(n):
                            if not g.l_related(m[esf][v], v):
                                continue
                            checked += 1
                            if m[m[u][exf]][v] != m[m[u][esf]][v]:
                                return SuiteReport(
                                    "context-swap", False, checked,
                                    f"u={sg.names[u]} v={sg.names[v]} x={sg.names[x]} "
                                    f"s={sg.names[s]} e={sg.names[e]} f={sg.names[f]}")
    return SuiteReport("context-swap", True, checked)
