"""Writing problems and clauses back in the input syntax."""

from __future__ import annotations

from ..core.clauses import Clause, Literal
from ..core.terms import ABSTRACTION, LESS, LESSEQ, Term


def _var_names(c: Clause) -> dict:
    names, n = {}, {"^X": 0, "?x": 0, "U": 0}
    for v in c.vars:
        if not v.sort.bg:
            base = "U"
        else:
            base = "^X" if v.kind == ABSTRACTION else "?x"
        n[base] += 1
        names[v] = f"{base}{n[base]}"
    return names


def term_tff(t: Term, names: dict) -> str:
    if t.is_var:
        return names[t]
    name = t.op.name
    if t.op.defines is not None:
        name = "'" + name.replace("'", "\\'") + "'"
    if not t.args:
        return name
    return f"{name}({', '.join(term_tff(a, names) for a in t.args)})"


def literal_tff(lit: Literal, names: dict) -> str:
    if lit.is_atom:
        a = lit.lhs
        if a.op in (LESS, LESSEQ):
            s = f"{a.op.name}({term_tff(a.args[0], names)}, {term_tff(a.args[1], names)})"
        else:
            s = term_tff(a, names)
        return s if lit.positive else f"~ {s}"
    rel = "=" if lit.positive else "!="
    return f"{term_tff(lit.lhs, names)} {rel} {term_tff(lit.rhs, names)}"


def clause_tff(c: Clause) -> str:
    if c.is_empty:
        return "$false"
    names = _var_names(c)
    body = " | ".join(literal_tff(lit, names) for lit in c.literals)
    if not names:
        return body
    quant = ", ".join(f"{names[v]}: {v.sort.name}" for v in c.vars)
    return f"![{quant}]: ({body})"


def print_problem(problem) -> str:
    lines = []
    for d in problem.declarations:
        if d.kind == "sort":
            lines.append(f"tff({d.name}, type, {d.symbol}: $tType).")
        elif d.kind == "parameter":
            lines.append(f"tff({d.name}, parameter, {d.symbol}: {d.result}).")
        else:
            if d.arg_sorts:
                args = d.arg_sorts[0] if len(d.arg_sorts) == 1 else "(" + " * ".join(d.arg_sorts) + ")"
                lines.append(f"tff({d.name}, type, {d.symbol}: {args} > {d.result}).")
            else:
                lines.append(f"tff({d.name}, type, {d.symbol}: {d.result}).")
    for ic in problem.clauses:
        lines.append(f"tff({ic.name}, {ic.role}, {clause_tff(ic.clause)}).")
    return "\n".join(lines) + "\n"
