"""Naming ground BG-sorted FG terms by fresh parameters."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from ..abstraction import is_definition, unabstract_with_subst, weakly_abstract
from ..core.clauses import Clause, Literal
from ..core.terms import OpSymbol, Term, app, positions, render, subterms
from ..core.unify import subsumes
from ..ordering import Ordering, default_ordering

_registry: dict[Term, OpSymbol] = {}
_registry_lock = threading.Lock()


def _bg_sorted_fg(t: Term) -> bool:
    return not t.is_var and not t.op.bg and t.sort.bg


def parameter_for(t: Term) -> OpSymbol:
    """The parameter naming ground term t; the same term always gets the same one."""
    with _registry_lock:
        op = _registry.get(t)
        if op is None:
            op = OpSymbol(f"#{render(t)}", (), t.sort, bg=True, is_parameter=True, defines=t)
            _registry[t] = op
        return op


@dataclass
class DefinitionTable:
    """Parameters minted during one run, keyed by the term they name."""

    entries: dict = field(default_factory=dict)

    def parameter(self, t: Term) -> OpSymbol:
        op = self.entries.get(t)
        if op is None:
            op = self.entries[t] = parameter_for(t)
        return op

    def __contains__(self, t: Term) -> bool:
        return t in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class DefineResult:
    definition: Clause
    replacement: Clause
    term: Term
    parameter: OpSymbol


def _is_minimal(t: Term) -> bool:
    return all(not _bg_sorted_fg(s) for a in t.args for s in subterms(a))


def define_candidates(c: Clause):
    """(literal, side, path, term, ground term) for each Define-able occurrence."""
    _, sigma = unabstract_with_subst(c)
    for li, lit in enumerate(c.literals):
        for side, top in enumerate(lit.sides):
            for path, s in positions(top):
                if not _bg_sorted_fg(s) or not _is_minimal(s):
                    continue
                g = sigma(s)
                if g.ground:
                    yield li, side, path, s, g


def define(c: Clause, table: DefinitionTable | None = None, reckless: bool = False,
           ordering: Ordering | None = None, abstract_domain_elements: bool = False) -> DefineResult | None:
    table = table if table is not None else DefinitionTable()
    if reckless and is_definition(c):
        return None
    ordering = ordering or default_ordering()
    for _li, _side, _path, s, g in define_candidates(c):
        alpha = parameter_for(g)
        a = app(alpha)
        # every occurrence of the same subterm is named at once
        lits = [lit.map(lambda t: _replace_all(t, s, a)) for lit in c.literals]
        definition = weakly_abstract(Clause([Literal(g, a)]), abstract_domain_elements)
        replacement = weakly_abstract(Clause(lits), abstract_domain_elements)
        if not reckless and not _redundant_after(c, definition, replacement, ordering):
            continue
        table.entries[g] = alpha
        return DefineResult(definition, replacement, g, alpha)
    return None


def _replace_all(t: Term, old: Term, new: Term) -> Term:
    if t is old:
        return new
    if t.is_var or not t.args:
        return t
    args = tuple(_replace_all(a, old, new) for a in t.args)
    return t if args == t.args else app(t.op, *args)


def _redundant_after(c: Clause, d1: Clause, d2: Clause, ordering: Ordering) -> bool:
    if ordering.clause_gt(c, d1) and ordering.clause_gt(c, d2):
        return True
    return any(subsumes(d, c) and not subsumes(c, d) for d in (d1, d2))
