"""Sorts, operator symbols, variables and hash-consed terms.

Terms are interned: building the same application twice returns the same
object, so structural equality is object identity and hashing is O(1).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from enum import Enum

ABSTRACTION = "abstraction"
ORDINARY = "ordinary"


class TermClass(Enum):
    FG = "FG"
    PURE_BG = "PureBG"
    IMPURE_BG = "ImpureBG"


@dataclass(frozen=True)
class Sort:
    name: str
    bg: bool = False

    def __str__(self) -> str:
        return self.name


INT = Sort("$int", bg=True)
INDIVIDUAL = Sort("$i")


@dataclass(frozen=True, eq=False)
class OpSymbol:
    """An operator. Identity is the object itself; signatures intern them."""

    name: str
    arg_sorts: tuple[Sort, ...]
    result_sort: Sort
    bg: bool = False
    is_domain_element: bool = False
    is_parameter: bool = False
    value: int | None = None
    is_predicate: bool = False
    is_true: bool = False
    # ground term this parameter names, for parameters minted by Define
    defines: "Term | None" = field(default=None, compare=False)

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    def __post_init__(self):
        if self.is_domain_element and not (self.bg and not self.arg_sorts and self.result_sort.bg):
            raise ValueError(f"domain element {self.name} must be a nullary BG operator")
        if self.is_parameter and not (self.bg and not self.arg_sorts):
            raise ValueError(f"parameter {self.name} must be a nullary BG operator")

    def __repr__(self) -> str:
        return f"OpSymbol({self.name})"

    def __str__(self) -> str:
        return self.name


# Built-in arithmetic vocabulary. Comparison predicates get private BG sorts
# and true constants so that atoms can be stored as equations.
LESS_SORT = Sort("$o_less", bg=True)
LESSEQ_SORT = Sort("$o_lesseq", bg=True)
SUM = OpSymbol("$sum", (INT, INT), INT, bg=True)
DIFFERENCE = OpSymbol("$difference", (INT, INT), INT, bg=True)
UMINUS = OpSymbol("$uminus", (INT,), INT, bg=True)
PRODUCT = OpSymbol("$product", (INT, INT), INT, bg=True)
LESS = OpSymbol("$less", (INT, INT), LESS_SORT, bg=True, is_predicate=True)
LESSEQ = OpSymbol("$lesseq", (INT, INT), LESSEQ_SORT, bg=True, is_predicate=True)
TRUE_LESS = OpSymbol("$true_less", (), LESS_SORT, bg=True, is_true=True)
TRUE_LESSEQ = OpSymbol("$true_lesseq", (), LESSEQ_SORT, bg=True, is_true=True)
ARITH_OPS = (SUM, DIFFERENCE, UMINUS, PRODUCT)
BUILTIN_OPS = {op.name: op for op in (SUM, DIFFERENCE, UMINUS, PRODUCT, LESS, LESSEQ)}
TRUE_OF = {LESS: TRUE_LESS, LESSEQ: TRUE_LESSEQ}


class Term:
    """Base class of interned terms. Never instantiate directly."""

    __slots__ = ("sort", "is_var", "ground", "has_fg", "has_ordinary", "size",
                 "vars", "varset", "depth", "_hash", "__weakref__")

    @property
    def term_class(self) -> TermClass:
        if self.has_fg:
            return TermClass.FG
        return TermClass.IMPURE_BG if self.has_ordinary else TermClass.PURE_BG

    @property
    def is_bg_term(self) -> bool:
        return not self.has_fg

    @property
    def is_pure(self) -> bool:
        return not self.has_fg and not self.has_ordinary

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Term") -> bool:
        # only for deterministic sorting of otherwise unordered collections
        return term_key(self) < term_key(other)


class Var(Term):
    __slots__ = ("vid", "kind", "name")

    def __init__(self, vid: int, sort: Sort, kind: str, name: str | None):
        self._hash = hash(("var", vid))
        self.vid = vid
        self.sort = sort
        self.kind = kind
        self.name = name
        self.is_var = True
        self.ground = False
        self.has_fg = not sort.bg
        self.has_ordinary = sort.bg and kind == ORDINARY
        self.size = 1
        self.vars = (self,)
        self.varset = frozenset((self,))
        self.depth = 0

    @property
    def is_abstraction(self) -> bool:
        return self.kind == ABSTRACTION

    def __repr__(self) -> str:
        return f"Var({self})"

    def __str__(self) -> str:
        if self.name is not None:
            return self.name
        base = "X" if self.kind == ABSTRACTION else ("x" if self.sort.bg else "u")
        return f"{base}{self.vid}"


class App(Term):
    __slots__ = ("op", "args")

    def __init__(self, op: OpSymbol, args: tuple[Term, ...]):
        self.op = op
        self.args = args
        self.sort = op.result_sort
        self.is_var = False
        self.has_fg = not op.bg or any(a.has_fg for a in args)
        self.has_ordinary = any(a.has_ordinary for a in args)
        self.size = 1 + sum(a.size for a in args)
        self.depth = 1 + max((a.depth for a in args), default=-1)
        if args:
            seen: dict[Var, None] = {}
            for a in args:
                for v in a.vars:
                    seen[v] = None
            self.vars = tuple(seen)
        else:
            self.vars = ()
        self.varset = frozenset(self.vars)
        self.ground = not self.vars
        self._hash = hash((id(op), tuple(a._hash for a in args)))

    def __repr__(self) -> str:
        return f"App({self})"

    def __str__(self) -> str:
        return render(self)


_lock = threading.Lock()
_apps: dict[tuple, App] = {}
_vars: dict[int, Var] = {}
_counter = itertools.count(1)
_numerals: dict[int, OpSymbol] = {}


def fresh_id() -> int:
    with _lock:
        return next(_counter)


def mk_var(sort: Sort, kind: str = ORDINARY, name: str | None = None, vid: int | None = None) -> Var:
    if not sort.bg:
        kind = ORDINARY
    if vid is None:
        vid = fresh_id()
    v = _vars.get(vid)
    if v is None:
        v = Var(vid, sort, kind, name)
        _vars[vid] = v
    return v


def fresh_var(sort: Sort, kind: str = ORDINARY) -> Var:
    return mk_var(sort, kind)


def app(op: OpSymbol, *args: Term) -> App:
    key = (op, args)
    t = _apps.get(key)
    if t is None:
        if len(args) != op.arity:
            raise ValueError(f"{op.name} expects {op.arity} arguments, got {len(args)}")
        for a, s in zip(args, op.arg_sorts):
            if a.sort != s:
                raise TypeError(f"ill-sorted argument {a} of sort {a.sort} for {op.name}, expected {s}")
        with _lock:
            t = _apps.get(key)
            if t is None:
                t = App(op, args)
                _apps[key] = t
    return t


def numeral_op(n: int) -> OpSymbol:
    op = _numerals.get(n)
    if op is None:
        op = OpSymbol(str(n), (), INT, bg=True, is_domain_element=True, value=n)
        op = _numerals.setdefault(n, op)
    return op


def num(n: int) -> App:
    return app(numeral_op(n))


def is_numeral(t: Term) -> bool:
    return not t.is_var and t.op.is_domain_element


def classify(t: Term) -> TermClass:
    return t.term_class


def true_const(pred_op: OpSymbol) -> OpSymbol:
    return TRUE_OF[pred_op]


# Convenience builders for arithmetic.
def plus(a: Term, b: Term) -> App:
    return app(SUM, a, b)


def minus(a: Term, b: Term) -> App:
    return app(DIFFERENCE, a, b)


def neg(a: Term) -> App:
    return app(UMINUS, a)


def times(a: Term, b: Term) -> App:
    return app(PRODUCT, a, b)


def subterms(t: Term):
    """All subterms, pre-order, with repetitions."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if not s.is_var:
            stack.extend(reversed(s.args))


def positions(t: Term, path: tuple[int, ...] = ()):
    """Yield (path, subterm) pairs in pre-order."""
    yield path, t
    if not t.is_var:
        for i, a in enumerate(t.args):
            yield from positions(a, path + (i,))


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = t.args[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], r: Term) -> Term:
    if not path:
        return r
    i = path[0]
    args = list(t.args)
    args[i] = replace_at(args[i], path[1:], r)
    return app(t.op, *args)


def contains_op(t: Term, pred) -> bool:
    return any(not s.is_var and pred(s.op) for s in subterms(t))


def term_key(t: Term) -> tuple:
    """A deterministic structural sort key (does not depend on interning order)."""
    if t.is_var:
        return (0, t.vid)
    return (1, t.op.name, tuple(term_key(a) for a in t.args))


_INFIX = {"$sum": "+", "$difference": "-", "$product": "*", "$less": "<", "$lesseq": "<="}


def render(t: Term, names: dict | None = None) -> str:
    """Readable infix rendering; `names` optionally renames variables."""
    if t.is_var:
        if names is not None and t in names:
            return names[t]
        return str(t)
    op = t.op
    if op.name in _INFIX:
        a, b = t.args
        return f"{_wrap(a, names)}{_INFIX[op.name]}{_wrap(b, names)}"
    if op is UMINUS:
        return f"-{_wrap(t.args[0], names)}"
    if not t.args:
        return op.name
    return f"{op.name}({', '.join(render(a, names) for a in t.args)})"


def _wrap(t: Term, names) -> str:
    s = render(t, names)
    if not t.is_var and t.op.name in _INFIX:
        return f"({s})"
    return s
