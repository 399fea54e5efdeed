"""Hierarchic path ordering on terms, its multiset extensions, and the
weight-based ordering used to bound simplification results."""

from __future__ import annotations

from collections import Counter
from enum import Enum

from .core.clauses import Clause, Literal
from .core.terms import OpSymbol, Term
from .kernel import lpo_gt


class Cmp(Enum):
    GT = ">"
    LT = "<"
    EQ = "="
    INC = "?"


GT, LT, EQ, INC = Cmp.GT, Cmp.LT, Cmp.EQ, Cmp.INC


class Precedence:
    """Total order on operators.

    FG operators sit above BG operators, which sit above domain elements.
    Among FG symbols predicates come first, then by arity, then by name;
    names listed in `override` (highest first) beat all other FG symbols.
    Domain elements are ranked by magnitude, negative above positive.
    """

    def __init__(self, override=()):
        self.override = {name: len(override) - i for i, name in enumerate(override)}
        self._cache: dict[OpSymbol, tuple] = {}

    def key(self, op: OpSymbol) -> tuple:
        k = self._cache.get(op)
        if k is None:
            k = self._cache[op] = self._key(op)
        return k

    __call__ = key

    def _key(self, op: OpSymbol) -> tuple:
        if op.is_domain_element:
            return (0, abs(op.value), 1 if op.value < 0 else 0)
        if op.bg:
            if op.is_true:
                return (1, 0, op.name)
            if op.is_parameter:
                # parameters minted by Define rank above user parameters
                return (1, 1, 1 if op.defines is not None else 0, op.name)
            return (1, 2, op.arity, op.name)
        if op.is_true:
            return (2, op.name)
        if op.name in self.override:
            return (4, self.override[op.name])
        return (3, 1 if op.is_predicate else 0, op.arity, op.name)

    def gt(self, f: OpSymbol, g: OpSymbol) -> bool:
        return self.key(f) > self.key(g)


class Ordering:
    """LPO with lexicographic status, plus literal and clause extensions."""

    def __init__(self, precedence: Precedence | None = None, cache_limit: int = 200_000):
        self.precedence = precedence or Precedence()
        self._cache: dict = {}
        self._limit = cache_limit

    def gt(self, s: Term, t: Term) -> bool:
        if len(self._cache) > self._limit:
            self._cache.clear()
        return lpo_gt(s, t, self.precedence.key, self._cache)

    def ge(self, s: Term, t: Term) -> bool:
        return s is t or self.gt(s, t)

    def compare(self, s: Term, t: Term) -> Cmp:
        if s is t:
            return EQ
        if self.gt(s, t):
            return GT
        if self.gt(t, s):
            return LT
        return INC

    # literals are compared through their multiset encodings
    @staticmethod
    def literal_multiset(lit: Literal) -> list[Term]:
        if lit.positive:
            return [lit.lhs, lit.rhs]
        return [lit.lhs, lit.lhs, lit.rhs, lit.rhs]

    def literal_gt(self, a: Literal, b: Literal) -> bool:
        return multiset_gt(self.literal_multiset(a), self.literal_multiset(b), self.gt)

    def literal_compare(self, a: Literal, b: Literal) -> Cmp:
        if a == b:
            return EQ
        if self.literal_gt(a, b):
            return GT
        if self.literal_gt(b, a):
            return LT
        return INC

    def clause_gt(self, c: Clause, d: Clause) -> bool:
        return multiset_gt(list(c.literals), list(d.literals), self.literal_gt)

    def clause_compare(self, c: Clause, d: Clause) -> Cmp:
        if c.key() == d.key():
            return EQ
        if self.clause_gt(c, d):
            return GT
        if self.clause_gt(d, c):
            return LT
        return INC

    def is_maximal(self, i: int, c: Clause, strict: bool = False) -> bool:
        lit = c.literals[i]
        for j, other in enumerate(c.literals):
            if j == i:
                continue
            if strict and other == lit:
                return False
            if self.literal_gt(other, lit):
                return False
        return True

    def maximality(self, lit: Literal, c: Clause, strict: bool = False) -> bool:
        for i, other in enumerate(c.literals):
            if other == lit:
                return self.is_maximal(i, c, strict)
        raise ValueError(f"{lit} does not occur in {c}")


def multiset_gt(m: list, n: list, gt) -> bool:
    """Dershowitz-Manna extension of the strict order gt."""
    cm, cn = Counter(m), Counter(n)
    rm = list((cm - cn).elements())
    rn = list((cn - cm).elements())
    if not rm:
        return False
    return all(any(gt(x, y) for x in rm) for y in rn)


def lpo_compare(s: Term, t: Term, ordering: Ordering | None = None) -> Cmp:
    return (ordering or _default).compare(s, t)


def literal_compare(a: Literal, b: Literal, ordering: Ordering | None = None) -> Cmp:
    return (ordering or _default).literal_compare(a, b)


def maximality(lit: Literal, c: Clause, strict: bool = False, ordering: Ordering | None = None) -> bool:
    return (ordering or _default).maximality(lit, c, strict)


_default = Ordering()


def default_ordering() -> Ordering:
    return _default


# ---------------------------------------------------------------------------
# Weight ordering for ground BG terms. Non-numeral symbols weigh 1; a numeral
# n weighs 1 + bit_length(|n|), so only finitely many numerals share a weight
# and evaluating a ground arithmetic subterm never increases the weight.

def fin_weight(t: Term) -> int:
    if t.is_var:
        raise ValueError("fin ordering is defined on ground terms only")
    op = t.op
    w = 1 + abs(op.value).bit_length() if op.is_domain_element else 1
    return w + sum(fin_weight(a) for a in t.args)


def fin_compare(s: Term, t: Term, precedence: Precedence | None = None) -> Cmp:
    if s is t:
        return EQ
    ws, wt = fin_weight(s), fin_weight(t)
    if ws != wt:
        return GT if ws > wt else LT
    prec = precedence or _default.precedence
    ks, kt = prec.key(s.op), prec.key(t.op)
    if ks != kt:
        return GT if ks > kt else LT
    for a, b in zip(s.args, t.args):
        r = fin_compare(a, b, prec)
        if r is not EQ:
            return r
    return EQ
