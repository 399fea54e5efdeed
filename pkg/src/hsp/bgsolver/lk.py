"""Finite saturation of linear integer clause sets via shifted orders.

A literal `s <_k t` stands for s < t + k. Clauses whose variables only occur
as whole arguments (or as the shifted right side `s < x + k`) can be turned
into an equivalent finite set of ground clauses over the ground terms of the
input, which is then handed to the Presburger procedure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.clauses import Clause
from ..core.terms import INT, LESS, LESSEQ, SUM, Term, term_key
from .linear import linearize
from .presburger import decide, eq, exists, lt, mk_and, mk_or, ne

EQ, NE, LT = "eq", "ne", "lt"


class FragmentError(ValueError):
    pass


def _err(msg: str):
    raise FragmentError(f"outside fo-vs-int fragment: {msg}")


@dataclass(frozen=True)
class LkLit:
    rel: str
    s: Term
    t: Term
    k: int = 0

    @staticmethod
    def make(rel: str, s: Term, t: Term, k: int = 0) -> "LkLit":
        if rel != LT and term_key(t) < term_key(s):
            s, t = t, s
        return LkLit(rel, s, t, k)

    def pair(self) -> tuple:
        return (self.s, self.t) if term_key(self.s) <= term_key(self.t) else (self.t, self.s)

    def __str__(self):
        if self.rel == LT:
            return f"{self.s} <_{self.k} {self.t}"
        return f"{self.s} {'=' if self.rel == EQ else '!='} {self.t}"


@dataclass
class LKClauseSet:
    clauses: frozenset
    terms: frozenset
    removed: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)


def _proper(t: Term):
    if t.is_var or t.ground:
        return t
    _err(f"term {t} is neither ground nor a variable")


def _shifted(t: Term):
    """(x, k) when t is x + k for a variable x and numeral k >= 0."""
    if t.is_var or t.op is not SUM:
        return None
    a, b = t.args
    for v, n in ((a, b), (b, a)):
        if v.is_var and not n.is_var and n.op.is_domain_element and n.op.value >= 0:
            return v, n.op.value
    return None


def _decode(lit) -> LkLit:
    if lit.lhs.has_fg or lit.rhs.has_fg:
        _err(f"literal {lit} is not over linear arithmetic")
    if lit.is_atom:
        op = lit.lhs.op
        if op not in (LESS, LESSEQ):
            _err(f"unexpected atom {lit}")
        s, t = lit.lhs.args
        strict = op is LESS
        if not lit.positive:
            # not(s < t) is t <= s, not(s <= t) is t < s
            s, t, strict = t, s, not strict
        if strict:
            sh = _shifted(t)
            if sh is not None:
                return LkLit(LT, _proper(s), sh[0], sh[1])
            return LkLit(LT, _proper(s), _proper(t), 0)
        return LkLit(LT, _proper(s), _proper(t), 1)
    if lit.lhs.sort != INT:
        _err(f"literal {lit} is not over the integers")
    return LkLit.make(EQ if lit.positive else NE, _proper(lit.lhs), _proper(lit.rhs))


def _subst(lit: LkLit, x, t) -> LkLit:
    s2 = t if lit.s is x else lit.s
    t2 = t if lit.t is x else lit.t
    if lit.rel == LT:
        return LkLit(LT, s2, t2, lit.k)
    return LkLit.make(lit.rel, s2, t2)


def _eliminate_equalities(clause: frozenset) -> list[frozenset]:
    work = [clause]
    out = []
    while work:
        c = work.pop()
        for lit in c:
            if lit.rel == LT or not (lit.s.is_var or lit.t.is_var):
                continue
            rest = c - {lit}
            z, t = (lit.s, lit.t) if lit.s.is_var else (lit.t, lit.s)
            if lit.rel == NE:
                if t is z:
                    work.append(rest)
                else:
                    work.append(frozenset(_subst(m, z, t) for m in rest))
            elif t is not z:
                work.append(rest | {LkLit(LT, z, t, 1)})
                work.append(rest | {LkLit(LT, t, z, 1)})
            break
        else:
            out.append(c)
    return out


def _fourier_motzkin(clause: frozenset):
    """Eliminate every variable; None when the clause becomes a tautology."""
    c = clause
    while True:
        var = next((v for lit in c for v in (lit.s, lit.t) if v.is_var), None)
        if var is None:
            return c
        upper, lower, rest = [], [], set()
        for lit in c:
            if lit.s is var and lit.t is var:
                if lit.k >= 1:
                    return None
                continue
            if lit.s is var:
                upper.append(lit)       # var <_k s_i
            elif lit.t is var:
                lower.append(lit)       # t_j <_n var
            else:
                rest.add(lit)
        for u in upper:
            for lo in lower:
                rest.add(LkLit(LT, lo.s, u.t, u.k + lo.k))
        c = frozenset(rest)


def _same(a: Term, b: Term) -> bool:
    return a is b


def _normalize_pairs(clause: frozenset):
    """Apply the pair rules until each pair of terms has one literal."""
    lits = set(clause)
    changed = True
    while changed:
        changed = False
        for lit in list(lits):
            if _same(lit.s, lit.t):
                if lit.rel == EQ or (lit.rel == LT and lit.k >= 1):
                    return None
                lits.discard(lit)
                changed = True
        groups: dict = {}
        for lit in lits:
            groups.setdefault(lit.pair(), []).append(lit)
        for (a, b), ls in groups.items():
            if len(ls) < 2:
                continue
            has_eq = any(x.rel == EQ for x in ls)
            has_ne = any(x.rel == NE for x in ls)
            if has_eq and has_ne:
                return None
            fwd = [x for x in ls if x.rel == LT and x.s is a]
            bwd = [x for x in ls if x.rel == LT and x.s is b]
            new = set(x for x in ls if x.rel != LT)
            if len(fwd) > 1 or len(bwd) > 1:
                changed = True
            kf = max((x.k for x in fwd), default=None)
            kb = max((x.k for x in bwd), default=None)
            if kf is not None and kb is not None:
                if kf + kb >= 1:
                    return None
                new.add(LkLit.make(NE, a, b))
                kf = kb = None
                changed = True
            for k, (s, t) in ((kf, (a, b)), (kb, (b, a))):
                if k is None:
                    continue
                if has_ne:
                    if k >= 1:
                        return None
                    changed = True          # s <_0 t | s != t  ->  s != t
                    continue
                if has_eq:
                    new.discard(LkLit.make(EQ, a, b))
                    changed = True
                    k = max(k, 1)
                new.add(LkLit(LT, s, t, k))
            if NE in {x.rel for x in new} and EQ in {x.rel for x in new}:
                return None
            for x in ls:
                lits.discard(x)
            lits |= new
    return frozenset(lits)


def _class_key(c: frozenset):
    items = sorted(c, key=lambda x: (x.rel, term_key(x.s), term_key(x.t)))
    return tuple((x.rel, x.s, x.t) for x in items), tuple(x.k for x in items)


def dickson_filter(clauses, removed: list | None = None) -> set:
    """Keep only clauses whose shift vector is minimal within their class."""
    classes: dict = {}
    for c in clauses:
        skel, ks = _class_key(c)
        classes.setdefault(skel, []).append((ks, c))
    kept = set()
    for members in classes.values():
        members.sort(key=lambda m: (sum(m[0]), m[0]))
        minimal: list = []
        for ks, c in members:
            dom = next((m for m in minimal if all(a <= b for a, b in zip(m[0], ks))), None)
            if dom is None:
                minimal.append((ks, c))
            else:
                assert all(a <= b for a, b in zip(dom[0], ks)), "removed clause must be dominated"
                if removed is not None:
                    removed.append((c, dom[1]))
        kept.update(c for _, c in minimal)
    return kept


def lk_transform(clauses) -> LKClauseSet:
    """Equivalent finite set of ground shifted-order clauses (see module doc)."""
    clauses = list(clauses)
    check_fragment([c if isinstance(c, Clause) else Clause(c) for c in clauses])
    encoded = []
    for c in clauses:
        lits = c.literals if isinstance(c, Clause) else c
        encoded.append(frozenset(_decode(lit) for lit in lits))
    terms = frozenset(t for c in encoded for lit in c for t in (lit.s, lit.t) if t.ground)
    stage: list = []
    for c in encoded:
        stage.extend(_eliminate_equalities(c))
    ground = []
    for c in stage:
        g = _fourier_motzkin(c)
        if g is not None:
            ground.append(g)
    normal = set()
    for c in ground:
        n = _normalize_pairs(c)
        if n is not None:
            normal.add(n)
    removed: list = []
    kept = dickson_filter(normal, removed)
    return LKClauseSet(frozenset(kept), terms, removed)


def _lin_atom(t: Term) -> str:
    return f"p:{t}"


def lk_literal_formula(lit: LkLit):
    s = linearize(lit.s, _lin_atom)
    t = linearize(lit.t, _lin_atom)
    if lit.rel == EQ:
        return eq(s, t)
    if lit.rel == NE:
        return ne(s, t)
    return lt(s, t + lit.k)


def lk_formula(n: LKClauseSet):
    return mk_and([mk_or([lk_literal_formula(lit) for lit in c]) for c in n.clauses])


def lk_decide(n: LKClauseSet) -> bool:
    """True when the ground set is satisfiable over the integers."""
    for c in n.clauses:
        for lit in c:
            if not (lit.s.ground and lit.t.ground):
                raise ValueError("lk_decide expects a ground clause set")
    f = lk_formula(n)
    from .presburger import free_vars
    return decide(exists(sorted(free_vars(f)), f))


def check_fragment(clauses) -> None:
    """Raise FragmentError unless every proper BG-sorted term is ground, a
    variable, or z + k (k >= 0) on the right of a positive `<` atom."""
    for c in clauses:
        for lit in c.literals:
            tops = [lit.lhs, lit.rhs]
            allowed = None
            if lit.is_atom and lit.lhs.op in (LESS, LESSEQ):
                tops = list(lit.lhs.args)
                if lit.positive and lit.lhs.op is LESS and _shifted(tops[1]) is not None:
                    allowed = tops[1]
            for top in tops:
                _check_proper(top, top is allowed)


def _check_proper(t: Term, shifted_ok: bool):
    if t.is_var or t.ground:
        return
    if t.sort == INT and not shifted_ok:
        _err(f"term {t} is neither ground, a variable, nor a shifted variable on the right of <")
    for a in t.args:
        _check_proper(a, False)
