"""Simplification: deletion, BG evaluation, demodulation and subsumption.

Every entry point returns a `SimpResult` or None when nothing applies. An
empty `clauses` list means the clause is deleted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..abstraction import unabstract, weakly_abstract
from ..bgsolver.linear import linearize
from ..core.clauses import Clause, Literal
from ..core.terms import (ARITH_OPS, DIFFERENCE, LESS, LESSEQ, PRODUCT, SUM, UMINUS, Term, app,
                          num, positions, replace_at, subterms, term_key)
from ..core.unify import Substitution, simple_match, subsumes
from ..ordering import Cmp, Ordering, default_ordering, fin_compare

CAUTIOUS, AGGRESSIVE, OFF = "cautious", "aggressive", "off"

TAUTOLOGY = "Taut"
DELETE_LITERALS = "DelLit"
EVALUATE = "Eval"
INSTANTIATE = "Inst"
NORMALIZE = "Norm"
DEMODULATE = "Demod"
SUBSUMED = "Subsumed"


@dataclass
class SimpResult:
    rule: str
    clauses: list
    premises: tuple = ()

    @property
    def deleted(self) -> bool:
        return not self.clauses


@dataclass
class SimpTrace:
    """The outcome of exhaustive forward simplification of one clause."""

    clause: Clause | None
    steps: list = field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.steps)


# --- ground arithmetic ----------------------------------------------------

def _value(t: Term):
    return t.op.value if not t.is_var and t.op.is_domain_element else None


def eval_term(t: Term) -> Term:
    """Evaluate arithmetic on numerals, bottom-up."""
    if t.is_var or not t.args:
        return t
    args = tuple(eval_term(a) for a in t.args)
    op = t.op
    if op in ARITH_OPS:
        vals = [_value(a) for a in args]
        if all(v is not None for v in vals):
            if op is SUM:
                return num(vals[0] + vals[1])
            if op is DIFFERENCE:
                return num(vals[0] - vals[1])
            if op is PRODUCT:
                return num(vals[0] * vals[1])
            if op is UMINUS:
                return num(-vals[0])
    return t if args == t.args else app(op, *args)


def _difference(a: Term, b: Term):
    """b - a as an integer when it does not depend on any atom."""
    try:
        d = linearize(b) - linearize(a)
    except ValueError:
        return None
    return d.const if d.is_constant else None


def eval_literal(lit: Literal):
    """Truth value of a BG literal if arithmetic alone fixes it, else None."""
    if not lit.is_bg:
        return None
    if lit.is_atom:
        op = lit.lhs.op
        if op not in (LESS, LESSEQ):
            return None
        a, b = lit.lhs.args
        d = _difference(a, b)
        if d is None:
            return None
        val = d > 0 if op is LESS else d >= 0
    elif lit.lhs is lit.rhs:
        val = True
    elif lit.lhs.sort.name == "$int":
        d = _difference(lit.lhs, lit.rhs)
        if d is None:
            return None
        val = d == 0
    else:
        return None
    return val if lit.positive else not val


# --- polynomial normal form -----------------------------------------------

def _is_arith(t: Term) -> bool:
    return not t.is_var and (t.op in ARITH_OPS or t.op.is_domain_element)


def _atom_group(t: Term) -> tuple:
    if t.has_fg:
        return (2,)
    return (1,) if t.has_ordinary else (0,)


def normal_form(t: Term) -> Term:
    """Canonical linear form of maximal arithmetic subterms.

    Atoms are listed pure BG first, then impure, then FG, each group in a
    fixed structural order; the constant comes last. Nonlinear products
    are left in place with normalized arguments.
    """
    if t.is_var or not t.args:
        return t
    if t.op not in ARITH_OPS:
        args = tuple(normal_form(a) for a in t.args)
        return t if args == t.args else app(t.op, *args)
    leaves: dict = {}

    def atom(leaf: Term):
        n = normal_form(leaf) if not leaf.is_var else leaf
        leaves[n] = None
        return n

    try:
        lin = linearize(t, atom)
    except ValueError:
        args = tuple(normal_form(a) for a in t.args)
        return t if args == t.args else app(t.op, *args)
    atoms = sorted(lin.coeffs, key=lambda a: (_atom_group(a), term_key(a)))
    parts = []
    for a in atoms:
        c = lin.coeffs[a]
        parts.append(a if c == 1 else app(PRODUCT, num(c), a))
    if lin.const or not parts:
        parts.append(num(lin.const))
    out = parts[0]
    for p in parts[1:]:
        out = app(SUM, out, p)
    return out


# --- the simplifier -------------------------------------------------------

@dataclass
class Simplifier:
    ordering: Ordering = field(default_factory=default_ordering)
    mode: str = CAUTIOUS
    abstract_domain_elements: bool = False
    # enforce the bounded-BG-term conditions required for guaranteed termination
    suitable_only: bool = False

    def abstr(self, c: Clause) -> Clause:
        return weakly_abstract(c, self.abstract_domain_elements)

    # deletion
    def is_tautology(self, c: Clause) -> bool:
        seen = set()
        for lit in c.literals:
            if lit.positive and lit.lhs is lit.rhs:
                return True
            if lit.negated() in seen:
                return True
            seen.add(lit)
            if self.mode != OFF and eval_literal(lit) is True:
                return True
        return False

    def tautology(self, c: Clause) -> SimpResult | None:
        return SimpResult(TAUTOLOGY, []) if self.is_tautology(c) else None

    def delete_literals(self, c: Clause) -> SimpResult | None:
        keep, seen = [], set()
        for lit in c.literals:
            if not lit.positive and lit.lhs is lit.rhs:
                continue
            if self.mode != OFF and eval_literal(lit) is False:
                continue
            if lit in seen:
                continue
            seen.add(lit)
            keep.append(lit)
        if len(keep) == len(c):
            return None
        return SimpResult(DELETE_LITERALS, [Clause(keep)])

    def evaluate(self, c: Clause) -> SimpResult | None:
        if self.mode == OFF:
            return None
        d = c.map(eval_term)
        if d.key() == c.key():
            return None
        return self._checked(EVALUATE, c, self.abstr(Clause(d.literals)))

    def instantiate(self, c: Clause) -> SimpResult | None:
        """C or z != d with d a numeral becomes C[z -> d]."""
        if self.mode == OFF or self.abstract_domain_elements:
            return None
        for i, lit in enumerate(c.literals):
            if lit.positive:
                continue
            for z, d in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
                if z.is_var and _value(d) is not None:
                    sigma = Substitution({z: d})
                    rest = Clause(c.without(i))
                    return SimpResult(INSTANTIATE, [self.abstr(sigma.clause(rest))])
        return None

    def normalize(self, c: Clause) -> SimpResult | None:
        if self.mode != AGGRESSIVE:
            return None
        d = c.map(normal_form)
        if d.key() == c.key():
            return None
        d = self.abstr(Clause(d.literals))
        if not self.ordering.clause_gt(c, d):
            return None
        return self._checked(NORMALIZE, c, d)

    def demodulate(self, c: Clause, units) -> SimpResult | None:
        for u in units:
            if u is c or len(u) != 1 or not u[0].positive:
                continue
            res = self.demodulate_with(c, u)
            if res is not None:
                return res
        return None

    def demodulate_with(self, c: Clause, unit: Clause) -> SimpResult | None:
        eq = unit[0]
        ordg = self.ordering
        for l, r in ((eq.lhs, eq.rhs), (eq.rhs, eq.lhs)):
            if l.is_var or not l.has_fg:
                continue
            if ordg.gt(r, l):
                continue
            for li, lit in enumerate(c.literals):
                for side, top in enumerate(lit.sides):
                    for path, s in positions(top):
                        if s.is_var or s.sort != l.sort or s.op is not l.op:
                            continue
                        sigma = simple_match(l, s)
                        if sigma is None:
                            continue
                        rs = sigma(r)
                        if not rs.varset <= s.varset or not ordg.gt(s, rs):
                            continue
                        inst = Literal(s, rs, True)
                        if not any(ordg.literal_gt(k, inst) for k in c.literals):
                            continue
                        sides = [lit.lhs, lit.rhs]
                        sides[side] = replace_at(top, path, rs)
                        lits = list(c.literals)
                        lits[li] = Literal(sides[0], sides[1], lit.positive)
                        res = self._checked(DEMODULATE, c, self.abstr(Clause(lits)), (unit,))
                        if res is not None:
                            return res
        return None

    def subsumed(self, c: Clause, clauses) -> SimpResult | None:
        for d in clauses:
            if d is not c and len(d) <= len(c) and subsumes(d, c):
                return SimpResult(SUBSUMED, [], (d,))
        return None

    def _checked(self, rule: str, c: Clause, d: Clause, premises=()) -> SimpResult | None:
        if self.suitable_only and not suitable(c, [d], premises):
            return None
        return SimpResult(rule, [d], premises)

    # drivers
    def step(self, c: Clause, active=(), units=None) -> SimpResult | None:
        """One simplification of c by itself or by the active clauses."""
        for f in (self.tautology, self.delete_literals, self.evaluate, self.instantiate,
                  self.normalize):
            r = f(c)
            if r is not None:
                return r
        if units is None:
            units = [a for a in active if len(a) == 1 and a[0].positive]
        r = self.demodulate(c, units)
        if r is not None:
            return r
        return self.subsumed(c, active)

    def simplify(self, c: Clause, active=(), units=None, limit: int = 1000) -> SimpTrace:
        """Simplify c exhaustively. The final clause is None when deleted."""
        if units is None:
            units = [a for a in active if len(a) == 1 and a[0].positive]
        steps = []
        cur = c
        for _ in range(limit):
            r = self.step(cur, active, units)
            if r is None:
                break
            steps.append((cur, r))
            if not r.clauses:
                return SimpTrace(None, steps)
            cur = r.clauses[0]
        return SimpTrace(cur, steps)

    def replay(self, rule: str, c: Clause, premises) -> SimpResult | None:
        if rule == DEMODULATE:
            return self.demodulate_with(c, premises[0])
        if rule == SUBSUMED:
            return self.subsumed(c, premises)
        f = {TAUTOLOGY: self.tautology, DELETE_LITERALS: self.delete_literals,
             EVALUATE: self.evaluate, INSTANTIATE: self.instantiate,
             NORMALIZE: self.normalize}[rule]
        return f(c)


def simp(c: Clause, active=(), mode: str = CAUTIOUS, ordering: Ordering | None = None):
    """Exhaustively simplify c against active; None when nothing applies,
    otherwise the (possibly empty) list of resulting clauses."""
    s = Simplifier(ordering or default_ordering(), mode)
    t = s.simplify(c, active)
    if not t.changed:
        return None
    return [] if t.clause is None else [t.clause]


# --- suitability for the ground BG term fragment -------------------------

def _bg_terms(c: Clause):
    out = set()
    for t in c.terms():
        for s in subterms(t):
            if not s.has_fg:
                out.add(s)
    return out


def _bg_sorted_fg(t: Term) -> bool:
    return not t.is_var and not t.op.bg and t.sort.bg


def suitable(c: Clause, results, premises=()) -> bool:
    """Termination-safe simplification check.

    Every BG term of an unabstracted result must be bounded by a BG term of
    the unabstracted premise or of a simplifying clause; BG-sorted FG
    operators may only appear in definition shape; BG terms stay pure;
    groundness of BG terms is preserved.
    """
    uc = unabstract(c)
    bound = _bg_terms(uc)
    for p in premises:
        bound |= _bg_terms(unabstract(p))
    ground_bounds = [s for s in bound if s.ground]
    c_ground = all(s.ground for s in _bg_terms(uc))
    for d in results:
        for t in d.terms():
            for s in subterms(t):
                if not s.has_fg and not s.is_pure:
                    return False
        ud = unabstract(d)
        for s in _bg_terms(ud):
            if c_ground and not s.ground:
                return False
            if s.ground and s not in bound and not any(
                    fin_compare(b, s) in (Cmp.GT, Cmp.EQ) for b in ground_bounds):
                return False
        for lit in ud.literals:
            for side, other in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
                for s in subterms(side):
                    if _bg_sorted_fg(s) and not (s is side and not other.has_fg and other.ground):
                        return False
    return True
