"""Reader for a clausal subset of the TPTP typed first-order (TFF) format.

Accepted statements:

    tff(name, type, s: $tType).              new sort
    tff(name, type, f: ($int * s) > $int).   function or predicate ($o result)
    tff(name, parameter, alpha: $int).       BG parameter
    tff(name, axiom, <clause>).              also hypothesis, negated_conjecture
    include('file.p').

A clause is a disjunction of literals `s = t`, `s != t`, `p(..)` and
`~ p(..)`, optionally under `![X: sort, ..]:`. Upper-case variables get
the run-level kind for integer variables; `^X` is always an abstraction
variable and `?x` always ordinary. Integer variables without a sort in a
quantifier list have their sort inferred from use.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from ..core.clauses import Clause, Literal
from ..core.signature import Signature
from ..core.terms import (ABSTRACTION, INT, LESS, LESSEQ, ORDINARY, PRODUCT, Sort, Term, app,
                          mk_var, num)
from ..engine.loop import InputClause

ROLES = ("axiom", "hypothesis", "negated_conjecture", "lemma")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0, file: str | None = None):
        self.msg, self.line, self.col, self.file = msg, line, col, file
        where = f"{file}:" if file else ""
        super().__init__(f"{where}{line}:{col}: {msg}")


@dataclass
class Declaration:
    name: str
    symbol: str
    kind: str            # sort | function | predicate | parameter
    arg_sorts: tuple = ()
    result: str = ""


@dataclass
class ProblemFile:
    signature: Signature
    declarations: list = field(default_factory=list)
    clauses: list = field(default_factory=list)      # InputClause
    positions: list = field(default_factory=list)    # (line, col) per clause
    path: str | None = None


_TOKEN = re.compile(r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<int>-?\d+)
  | (?P<str>'(?:[^'\\]|\\.)*')
  | (?P<var>[\^?][A-Za-z_][A-Za-z0-9_]*|[A-Z][A-Za-z0-9_]*)
  | (?P<word>\$?\$?[a-z][A-Za-z0-9_]*|\$[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>!=|=>|[()\[\],.:>*|~=!&])
""", re.X | re.S)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, file: str | None = None) -> list[Tok]:
    toks = []
    pos, line, lstart = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1, file)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            toks.append(Tok(kind, s, line, pos - lstart + 1))
        nl = s.count("\n")
        if nl:
            line += nl
            lstart = pos + s.rfind("\n") + 1
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - lstart + 1))
    return toks


_CMP = {"$less": (LESS, False), "$lesseq": (LESSEQ, False),
        "$greater": (LESS, True), "$greatereq": (LESSEQ, True)}


class Parser:
    def __init__(self, int_vars: str = ABSTRACTION, include_path=(), signature: Signature | None = None):
        self.int_vars = int_vars
        self.include_path = list(include_path)
        env = os.environ.get("HSP_INCLUDE_PATH")
        if env:
            self.include_path += [p for p in env.split(os.pathsep) if p]
        self.problem = ProblemFile(signature or Signature())
        self._including: list[str] = []

    @property
    def sig(self) -> Signature:
        return self.problem.signature

    # token helpers
    def _peek(self) -> Tok:
        return self.toks[self.i]

    def _next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _err(self, msg: str, tok: Tok | None = None):
        tok = tok or self._peek()
        raise ParseError(msg, tok.line, tok.col, self.file)

    def _expect(self, text: str) -> Tok:
        t = self._next()
        if t.text != text:
            self._err(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return t

    def _accept(self, text: str) -> bool:
        if self._peek().text == text:
            self.i += 1
            return True
        return False

    # entry points
    def parse_text(self, text: str, file: str | None = None) -> ProblemFile:
        saved = getattr(self, "toks", None), getattr(self, "i", 0), getattr(self, "file", None)
        self.toks, self.i, self.file = tokenize(text, file), 0, file
        try:
            while self._peek().kind != "eof":
                self._statement()
        finally:
            self.toks, self.i, self.file = saved
        return self.problem

    def parse_file(self, path: str) -> ProblemFile:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        if self.problem.path is None:
            self.problem.path = path
        self._including.append(os.path.dirname(os.path.abspath(path)))
        try:
            return self.parse_text(text, path)
        finally:
            self._including.pop()

    def _statement(self):
        t = self._next()
        if t.text == "include":
            self._include(t)
            return
        if t.text not in ("tff", "cnf"):
            self._err(f"expected tff(...) or include(...), found {t.text!r}", t)
        self._expect("(")
        name_tok = self._next()
        if name_tok.kind not in ("word", "int", "str", "var"):
            self._err("expected a statement name", name_tok)
        name = name_tok.text.strip("'")
        self._expect(",")
        role_tok = self._next()
        role = role_tok.text
        self._expect(",")
        if role == "type":
            self._type_decl(name)
        elif role == "parameter":
            self._param_decl(name)
        elif role in ROLES:
            pos = (name_tok.line, name_tok.col)
            c = self._clause()
            self.problem.clauses.append(InputClause(c, name, role))
            self.problem.positions.append(pos)
        else:
            self._err(f"unsupported role {role!r}", role_tok)
        self._expect(")")
        self._expect(".")

    def _include(self, tok: Tok):
        self._expect("(")
        s = self._next()
        if s.kind != "str":
            self._err("include expects a quoted file name", s)
        self._expect(")")
        self._expect(".")
        rel = s.text[1:-1]
        dirs = (self._including[-1:] if self._including else [os.getcwd()]) + self.include_path
        for d in dirs:
            p = os.path.join(d, rel)
            if os.path.isfile(p):
                self.parse_file(p)
                return
        self._err(f"cannot find included file {rel!r}", s)

    # declarations
    def _sort_name(self) -> str:
        t = self._next()
        if t.kind != "word":
            self._err(f"expected a sort, found {t.text!r}", t)
        return t.text

    def _lookup_sort(self, name: str, tok: Tok) -> Sort:
        try:
            return self.sig.sort(name)
        except KeyError:
            self._err(f"undeclared sort {name}", tok)

    def _type_decl(self, name: str):
        paren = self._accept("(")
        sym_tok = self._next()
        if sym_tok.kind != "word" or sym_tok.text.startswith("$"):
            self._err("expected a symbol to declare", sym_tok)
        self._expect(":")
        args: list[tuple[str, Tok]] = []
        if self._accept("("):
            while True:
                tk = self._peek()
                args.append((self._sort_name(), tk))
                if not self._accept("*"):
                    break
            self._expect(")")
            self._expect(">")
            res_tok = self._peek()
            result = self._sort_name()
        else:
            tk = self._peek()
            first = self._sort_name()
            if self._accept(">"):
                args.append((first, tk))
                res_tok = self._peek()
                result = self._sort_name()
            else:
                res_tok, result = tk, first
        if paren:
            self._expect(")")
        sym = sym_tok.text
        try:
            if result == "$tType":
                if args:
                    self._err("sort constructors with arguments are not supported", sym_tok)
                self.sig.add_sort(sym)
                self.problem.declarations.append(Declaration(name, sym, "sort"))
                return
            arg_sorts = tuple(self._lookup_sort(a, t) for a, t in args)
            if result == "$o":
                self.sig.add_predicate(sym, arg_sorts)
                kind = "predicate"
            else:
                self.sig.add_function(sym, arg_sorts, self._lookup_sort(result, res_tok))
                kind = "function"
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            self._err(str(e), sym_tok)
        self.problem.declarations.append(Declaration(name, sym, kind, tuple(a for a, _ in args), result))

    def _param_decl(self, name: str):
        sym_tok = self._next()
        self._expect(":")
        tk = self._peek()
        sort = self._lookup_sort(self._sort_name(), tk)
        try:
            self.sig.add_parameter(sym_tok.text, sort)
        except ValueError as e:
            self._err(str(e), sym_tok)
        self.problem.declarations.append(Declaration(name, sym_tok.text, "parameter", (), sort.name))

    # clauses
    def _clause(self) -> Clause:
        self.vars: dict[str, object] = {}
        self.var_sorts: dict[str, Sort] = {}
        if self._accept("!"):
            self._expect("[")
            while True:
                vt = self._next()
                if vt.kind != "var":
                    self._err("expected a variable", vt)
                if self._accept(":"):
                    tk = self._peek()
                    self.var_sorts[vt.text] = self._lookup_sort(self._sort_name(), tk)
                if not self._accept(","):
                    break
            self._expect("]")
            self._expect(":")
        raw = self._disjunction()
        return Clause([lit for lit in (self._literal(r) for r in raw) if lit is not None])

    def _disjunction(self) -> list:
        if self._peek().text == "(" and self._paren_is_group():
            self._next()
            lits = self._disjunction()
            self._expect(")")
        else:
            lits = [self._raw_literal()]
        while self._accept("|"):
            lits.append(self._raw_literal())
        return lits

    def _paren_is_group(self) -> bool:
        # a '(' at literal start always groups literals; terms never start with '('
        return True

    def _raw_literal(self):
        tok = self._peek()
        if self._accept("~"):
            if self._peek().text == "(":
                self._next()
                inner = self._raw_literal()
                self._expect(")")
            else:
                inner = self._raw_literal()
            return ("not", inner, tok)
        if self._peek().text == "(":
            self._next()
            inner = self._raw_literal()
            self._expect(")")
            return inner
        lhs = self._raw_term()
        if self._accept("="):
            return ("eq", lhs, self._raw_term(), tok)
        if self._accept("!="):
            return ("ne", lhs, self._raw_term(), tok)
        return ("atom", lhs, tok)

    def _raw_term(self):
        t = self._next()
        if t.kind == "int":
            return ("int", int(t.text), t)
        if t.kind == "var":
            return ("var", t.text, t)
        if t.kind == "word" or t.kind == "str":
            args = []
            if self._accept("("):
                while True:
                    args.append(self._raw_term())
                    if not self._accept(","):
                        break
                self._expect(")")
            return ("app", t.text, args, t)
        self._err(f"expected a term, found {t.text or 'end of input'!r}", t)

    # elaboration with sort checking
    def _literal(self, raw) -> Literal | None:
        positive = True
        while raw[0] == "not":
            positive = not positive
            raw = raw[1]
        tok = raw[-1]
        if raw[0] == "atom":
            head = raw[1]
            if head[0] == "app" and head[1] in ("$true", "$false") and not head[2]:
                val = head[1] == "$true"
                if val == positive:
                    self._err("$true literals are not supported in clauses", tok)
                return None
            return self._atom(head, positive)
        lhs_raw, rhs_raw = raw[1], raw[2]
        hint = self._sort_hint(lhs_raw) or self._sort_hint(rhs_raw)
        lhs = self._term(lhs_raw, hint)
        rhs = self._term(rhs_raw, lhs.sort)
        if lhs.sort != rhs.sort:
            self._err(f"sort error: {_show(rhs_raw)} has sort {rhs.sort}, expected {lhs.sort}", tok)
        return Literal(lhs, rhs, positive if raw[0] == "eq" else not positive)

    def _atom(self, raw, positive: bool) -> Literal:
        tok = raw[-1]
        if raw[0] != "app":
            self._err(f"expected an atom, found {_show(raw)}", tok)
        name, args = raw[1], raw[2]
        if name in _CMP:
            op, swap = _CMP[name]
            if len(args) != 2:
                self._err(f"{name} expects 2 arguments", tok)
            a, b = (self._term(x, INT) for x in args)
            for x, t in zip(args, (a, b)):
                if t.sort != INT:
                    self._err(f"sort error: {_show(x)} has sort {t.sort}, expected $int", x[-1])
            if swap:
                a, b = b, a
            atom = app(op, a, b)
            return Literal(atom, app(self.sig.true_of[op]), positive)
        op = self.sig.ops.get(name)
        if op is None:
            self._err(f"undeclared symbol {name}", tok)
        if not op.is_predicate:
            self._err(f"{name} is not a predicate", tok)
        atom = self._apply(op, args, tok)
        return Literal(atom, self.sig.true_term(op), positive)

    def _sort_hint(self, raw) -> Sort | None:
        if raw[0] == "int":
            return INT
        if raw[0] == "var":
            return self.var_sorts.get(raw[1])
        op = self.sig.ops.get(raw[1])
        return op.result_sort if op is not None and not op.is_predicate else None

    def _term(self, raw, expected: Sort | None) -> Term:
        kind = raw[0]
        tok = raw[-1]
        if kind == "int":
            return num(raw[1])
        if kind == "var":
            return self._var(raw[1], expected, tok)
        name, args = raw[1], raw[2]
        op = self.sig.ops.get(name)
        if op is None:
            self._err(f"undeclared symbol {name}", tok)
        if op.is_predicate:
            self._err(f"predicate {name} used as a term", tok)
        t = self._apply(op, args, tok)
        if op is PRODUCT and not any(_numeric(a) for a in t.args):
            self._err(f"nonlinear product {_show(raw)}: one factor must be an integer literal", tok)
        return t

    def _apply(self, op, args, tok) -> Term:
        if len(args) != op.arity:
            self._err(f"{op.name} expects {op.arity} arguments, got {len(args)}", tok)
        terms = []
        for a, s in zip(args, op.arg_sorts):
            t = self._term(a, s)
            if t.sort != s:
                self._err(f"sort error: {_show(a)} has sort {t.sort}, expected {s} in {op.name}", a[-1])
            terms.append(t)
        return app(op, *terms)

    def _var(self, text: str, expected: Sort | None, tok: Tok):
        v = self.vars.get(text)
        if v is not None:
            return v
        sort = self.var_sorts.get(text) or expected
        if sort is None:
            self._err(f"cannot infer the sort of variable {text}", tok)
        if text[0] == "^":
            kind = ABSTRACTION
        elif text[0] == "?":
            kind = ORDINARY
        elif not sort.bg:
            kind = ORDINARY
        else:
            kind = self.int_vars
        if kind == ABSTRACTION and not sort.bg:
            self._err(f"abstraction variable {text} needs a BG sort, not {sort}", tok)
        v = mk_var(sort, kind, text)
        self.vars[text] = v
        return v


def _numeric(t: Term) -> bool:
    if t.is_var:
        return False
    if t.op.is_domain_element:
        return True
    return t.op.bg and not t.op.is_parameter and all(_numeric(a) for a in t.args)


def _show(raw) -> str:
    if raw[0] == "int":
        return str(raw[1])
    if raw[0] == "var":
        return raw[1]
    if raw[0] == "app":
        if not raw[2]:
            return raw[1]
        return f"{raw[1]}({', '.join(_show(a) for a in raw[2])})"
    return str(raw)


def parse(text: str, int_vars: str = ABSTRACTION, include_path=(), file: str | None = None) -> ProblemFile:
    return Parser(int_vars, include_path).parse_text(text, file)


def parse_file(path: str, int_vars: str = ABSTRACTION, include_path=()) -> ProblemFile:
    return Parser(int_vars, include_path).parse_file(path)
