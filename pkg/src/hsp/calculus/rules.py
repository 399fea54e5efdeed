"""The generating inference rules on weakly abstracted clauses."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..abstraction import weakly_abstract
from ..core.clauses import Clause, Literal
from ..core.terms import positions, replace_at
from ..core.unify import Substitution, rename_apart, simple_mgu
from ..ordering import Ordering, default_ordering

ER, NEG_SUP, POS_SUP, EF, CLOSE, DEFINE = "ER", "NegSup", "PosSup", "EF", "Close", "Define"


@dataclass
class Inference:
    rule: str
    premises: tuple
    conclusion: Clause
    sigma: Substitution = field(default_factory=Substitution)
    detail: dict = field(default_factory=dict)

    @property
    def premise_ids(self) -> tuple[int, ...]:
        return tuple(p.id for p in self.premises)


@dataclass
class Calculus:
    ordering: Ordering = field(default_factory=default_ordering)
    abstract_domain_elements: bool = False

    def abstr(self, c: Clause) -> Clause:
        return weakly_abstract(c, self.abstract_domain_elements)


def _orient(lit: Literal):
    yield lit.lhs, lit.rhs
    if lit.lhs is not lit.rhs:
        yield lit.rhs, lit.lhs


def equality_resolution(c: Clause, calc: Calculus | None = None) -> list[Inference]:
    calc = calc or Calculus()
    out = []
    for i, lit in enumerate(c.literals):
        if lit.positive or (c.selected and i not in c.selected):
            continue
        sigma = simple_mgu(lit.lhs, lit.rhs)
        if sigma is None or sigma(lit.lhs).is_pure:
            continue
        inst = sigma.clause(c)
        if not c.selected and not calc.ordering.is_maximal(i, inst):
            continue
        concl = calc.abstr(Clause(inst.without(i)))
        out.append(Inference(ER, (c,), concl, sigma, {"literal": i}))
    return out


def _superposition(left: Clause, right: Clause, calc: Calculus, positive: bool) -> list[Inference]:
    if left.selected or (positive and right.selected):
        return []
    ordg = calc.ordering
    renamed, _ = rename_apart(left)
    out = []
    for i, llit in enumerate(renamed.literals):
        if not llit.positive:
            continue
        for l, r in _orient(llit):
            for j, rlit in enumerate(right.literals):
                if rlit.positive != positive:
                    continue
                if right.selected and j not in right.selected:
                    continue
                for s, t in _orient(rlit):
                    for path, u in positions(s):
                        if u.is_var or u.sort != l.sort:
                            continue
                        sigma = simple_mgu(l, u)
                        if sigma is None:
                            continue
                        ls = sigma(l)
                        if ls.is_pure:
                            continue
                        rs = sigma(r)
                        if ordg.ge(rs, ls):
                            continue
                        ss, ts = sigma(s), sigma(t)
                        if ordg.ge(ts, ss):
                            continue
                        left_inst = sigma.clause(renamed)
                        if not ordg.is_maximal(i, left_inst, strict=True):
                            continue
                        right_inst = sigma.clause(right)
                        if positive:
                            if not ordg.is_maximal(j, right_inst, strict=True):
                                continue
                        elif not right.selected and not ordg.is_maximal(j, right_inst):
                            continue
                        new_lit = Literal(replace_at(ss, path, rs), ts, positive)
                        lits = [new_lit] + left_inst.without(i) + right_inst.without(j)
                        concl = calc.abstr(Clause(lits))
                        rule = POS_SUP if positive else NEG_SUP
                        out.append(Inference(rule, (left, right), concl, sigma,
                                             {"left": i, "right": j, "path": path}))
    return out


def negative_superposition(left: Clause, right: Clause, calc: Calculus | None = None) -> list[Inference]:
    return _superposition(left, right, calc or Calculus(), positive=False)


def positive_superposition(left: Clause, right: Clause, calc: Calculus | None = None) -> list[Inference]:
    return _superposition(left, right, calc or Calculus(), positive=True)


def equality_factoring(c: Clause, calc: Calculus | None = None) -> list[Inference]:
    calc = calc or Calculus()
    if c.selected:
        return []
    ordg = calc.ordering
    out = []
    for i, a in enumerate(c.literals):
        if not a.positive:
            continue
        for s, t in _orient(a):
            for j, b in enumerate(c.literals):
                if j == i or not b.positive:
                    continue
                for l, r in _orient(b):
                    sigma = simple_mgu(s, l)
                    if sigma is None:
                        continue
                    ss = sigma(s)
                    if ss.is_pure:
                        continue
                    ts, ls, rs = sigma(t), sigma(l), sigma(r)
                    if ordg.ge(ts, ss) or ordg.ge(rs, ls):
                        continue
                    inst = sigma.clause(c)
                    if not ordg.is_maximal(i, inst):
                        continue
                    lits = [Literal(ls, rs, True), Literal(ts, rs, False)]
                    lits += [lit for k, lit in enumerate(inst.literals) if k not in (i, j)]
                    concl = calc.abstr(Clause(lits))
                    out.append(Inference(EF, (c,), concl, sigma, {"literals": (i, j)}))
    return out


def generate(given: Clause, active, calc: Calculus) -> list[Inference]:
    """All generating inferences between given and the active clauses (given included)."""
    out = equality_resolution(given, calc) + equality_factoring(given, calc)
    for other in active:
        out += negative_superposition(given, other, calc)
        out += positive_superposition(given, other, calc)
        if other is not given:
            out += negative_superposition(other, given, calc)
            out += positive_superposition(other, given, calc)
    return out
