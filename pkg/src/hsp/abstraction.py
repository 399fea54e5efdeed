"""Weak abstraction of BG subterms and its inverse."""

from __future__ import annotations

from dataclasses import dataclass

from .core.clauses import Clause, Literal
from .core.terms import (ABSTRACTION, ORDINARY, Term, fresh_var, replace_at, subterms)
from .core.unify import Substitution


@dataclass(frozen=True)
class TargetOccurrence:
    literal: int
    side: int  # 0 = lhs, 1 = rhs
    path: tuple[int, ...]
    term: Term

    @property
    def pure(self) -> bool:
        return self.term.is_pure

    @property
    def purity(self) -> str:
        return "pure" if self.pure else "impure"


def _is_target(parent: Term, i: int, abstract_domain_elements: bool) -> bool:
    q = parent.args[i]
    if q.is_var or q.has_fg:
        return False
    if q.op.is_domain_element and not abstract_domain_elements:
        return False
    if not parent.op.bg:
        return True
    return any(j != i and (a.has_fg or a.has_ordinary) for j, a in enumerate(parent.args))


def _find_in(t: Term, path: tuple[int, ...], flag: bool):
    if t.is_var or not t.args:
        return None
    for i, a in enumerate(t.args):
        r = _find_in(a, path + (i,), flag)
        if r is not None:
            return r
    for i in range(len(t.args)):
        if _is_target(t, i, flag):
            return path + (i,), t.args[i]
    return None


def find_target(c: Clause, abstract_domain_elements: bool = False) -> TargetOccurrence | None:
    """Leftmost-innermost target occurrence, or None if c is weakly abstracted."""
    for li, lit in enumerate(c.literals):
        for side, t in enumerate(lit.sides):
            r = _find_in(t, (), abstract_domain_elements)
            if r is not None:
                return TargetOccurrence(li, side, r[0], r[1])
    return None


def is_weakly_abstracted(c: Clause, abstract_domain_elements: bool = False) -> bool:
    return find_target(c, abstract_domain_elements) is None


def _measure(c: Clause) -> list[int]:
    # non-variable occurrence counts of literal sides, largest first
    return sorted((sum(1 for s in subterms(t) if not s.is_var) for t in c.terms()), reverse=True)


def _multiset_decreases(new: list[int], old: list[int]) -> bool:
    from collections import Counter
    cn, co = Counter(new), Counter(old)
    rn, ro = cn - co, co - cn
    if not ro:
        return False
    return all(any(x > y for x in ro) for y in rn.elements())


def weakly_abstract(c: Clause, abstract_domain_elements: bool = False) -> Clause:
    occ = find_target(c, abstract_domain_elements)
    if occ is None:
        return c
    lits = list(c.literals)
    while occ is not None:
        q = occ.term
        v = fresh_var(q.sort, ABSTRACTION if q.is_pure else ORDINARY)
        lit = lits[occ.literal]
        sides = [lit.lhs, lit.rhs]
        sides[occ.side] = replace_at(sides[occ.side], occ.path, v)
        before = _measure(Clause(lits)) if __debug__ else None
        lits[occ.literal] = Literal(sides[0], sides[1], lit.positive)
        lits.append(Literal(v, q, False))
        nxt = Clause(lits)
        if __debug__:
            assert _multiset_decreases(_measure(nxt), before), "abstraction measure must decrease"
        occ = find_target(nxt, abstract_domain_elements)
    return Clause(lits, c.selected)


abstr = weakly_abstract


def _eliminable(lit: Literal):
    if lit.positive:
        return None
    for z, t in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
        if z.is_var and (t is z or z not in t.varset):
            return z, t
    return None


def unabstract_with_subst(c: Clause) -> tuple[Clause, Substitution]:
    lits = list(c.literals)
    sigma = Substitution()
    while True:
        for i, lit in enumerate(lits):
            e = _eliminable(lit)
            if e is not None:
                break
        else:
            return Clause(lits), sigma
        z, t = e
        del lits[i]
        if t is not z:
            step = Substitution({z: t})
            lits = [step.literal(x) for x in lits]
            sigma = sigma.compose(step)


def unabstract(c: Clause) -> Clause:
    return unabstract_with_subst(c)[0]


unabstr = unabstract


def bg_subterms(c: Clause):
    """Every BG subterm (with multiplicity removed), in occurrence order."""
    seen: dict[Term, None] = {}
    for t in c.terms():
        for s in subterms(t):
            if not s.has_fg:
                seen[s] = None
    return list(seen)


def is_gbt(c: Clause) -> bool:
    """All BG-sorted terms of the unabstracted clause are ground."""
    return all(s.ground for t in unabstract(c).terms() for s in subterms(t) if s.sort.bg)


def _bg_sorted_fg(s: Term) -> bool:
    return not s.is_var and not s.op.bg and s.sort.bg


def is_clean(c: Clause) -> bool:
    for t in c.terms():
        for s in subterms(t):
            if not s.has_fg and not s.is_pure:
                return False
    u = unabstract(c)
    for t in u.terms():
        for s in subterms(t):
            if not s.has_fg and not s.ground:
                return False
    for lit in u.literals:
        for side, other in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
            for pos_term in subterms(side):
                if not _bg_sorted_fg(pos_term):
                    continue
                if not (pos_term is side and lit.positive and not other.has_fg and other.ground):
                    return False
    return True


def is_definition(c: Clause) -> bool:
    """c unabstracts to a ground positive unit f(t1..tn) = t with f a
    BG-sorted FG operator, no such operator below it, and t a BG term."""
    u = unabstract(c)
    if len(u) != 1 or not u[0].positive:
        return False
    lit = u[0]
    for lhs, rhs in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
        if (_bg_sorted_fg(lhs) and lhs.ground and not rhs.has_fg and rhs.ground
                and not any(_bg_sorted_fg(s) for a in lhs.args for s in subterms(a))):
            return True
    return False
