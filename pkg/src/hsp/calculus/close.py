"""Refuting sets of BG clauses with the Presburger procedure."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bgsolver.linear import linearize
from ..bgsolver.presburger import (FALSE, TRUE, Formula, decide, eq, exists, forall, free_vars,
                                   le, lt, mk_and, mk_or, negate, qe)
from ..core.clauses import Clause, Literal
from ..core.terms import INT, LESS, LESSEQ, Term


class NotBackgroundError(ValueError):
    pass


class NonlinearClause(ValueError):
    pass


def _atom_name(t: Term) -> str:
    if t.is_var:
        return f"v{t.vid}"
    if t.op.is_parameter:
        return f"p:{t.op.name}"
    raise NonlinearClause(f"unexpected BG leaf {t}")


def _lin(t: Term):
    try:
        return linearize(t, _atom_name)
    except ValueError as e:
        raise NonlinearClause(str(e)) from e


def _atom_formula(t: Term) -> Formula:
    if t.is_var:
        raise NonlinearClause(f"variable of predicate sort {t}")
    if t.op.is_true:
        return TRUE
    a, b = (_lin(x) for x in t.args)
    if t.op is LESS:
        return lt(a, b)
    if t.op is LESSEQ:
        return le(a, b)
    raise NonlinearClause(f"unexpected predicate {t}")


def literal_formula(lit: Literal) -> Formula:
    if lit.lhs.sort == INT:
        f = eq(_lin(lit.lhs), _lin(lit.rhs))
    else:
        a, b = _atom_formula(lit.lhs), _atom_formula(lit.rhs)
        f = mk_or([mk_and([a, b]), mk_and([negate(a), negate(b)])])
    return f if lit.positive else negate(f)


def clause_formula(c: Clause) -> Formula:
    """The clause with its variables universally quantified."""
    body = mk_or([literal_formula(lit) for lit in c.literals])
    vs = sorted(v for v in free_vars(body) if v.startswith("v"))
    return forall(vs, body) if vs else body


@dataclass
class CloseResult:
    unsat: bool
    core: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.unsat


class CloseChecker:
    """Decides BG clause sets, caching the quantifier-free form of each clause."""

    def __init__(self, core_limit: int = 60):
        self._cache: dict = {}
        self.core_limit = core_limit
        self.calls = 0

    def qf(self, c: Clause):
        key = c.render(canonical=True)
        f = self._cache.get(key)
        if f is None:
            try:
                f = qe(clause_formula(c))
            except NonlinearClause:
                f = None
            self._cache[key] = f
        return f

    def satisfiable(self, clauses) -> bool:
        self.calls += 1
        parts = [self.qf(c) for c in clauses]
        body = mk_and([p for p in parts if p is not None])
        if body == FALSE:
            return False
        return decide(exists(sorted(free_vars(body)), body))

    def check(self, clauses) -> CloseResult:
        clauses = list(clauses)
        for c in clauses:
            if not c.is_bg:
                raise NotBackgroundError(f"Close needs BG clauses, got {c}")
        usable = [c for c in clauses if self.qf(c) is not None]
        skipped = [c for c in clauses if self.qf(c) is None]
        if any(len(c) == 0 for c in usable):
            return CloseResult(True, [next(c for c in usable if len(c) == 0)], skipped)
        if self.satisfiable(usable):
            return CloseResult(False, [], skipped)
        return CloseResult(True, self.core(usable), skipped)

    def core(self, clauses: list) -> list:
        """Unsatisfiable subset: shortest unsat prefix, then greedy deletion."""
        lo, hi = 1, len(clauses)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.satisfiable(clauses[:mid]):
                lo = mid + 1
            else:
                hi = mid
        core = clauses[:lo]
        if len(core) > self.core_limit:
            return core
        i = 0
        while i < len(core) - 1:
            trial = core[:i] + core[i + 1:]
            if not self.satisfiable(trial):
                core = trial
            else:
                i += 1
        return core


def close_check(bg_clauses) -> CloseResult:
    """Unsat (with a core) when no integer model satisfies the clauses."""
    return CloseChecker().check(bg_clauses)
