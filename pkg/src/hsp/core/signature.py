from __future__ import annotations

from .terms import (BUILTIN_OPS, INDIVIDUAL, INT, TRUE_OF, OpSymbol, Sort, app)


class Signature:
    """Declared sorts and operators of a problem.

    Predicates are operators into a private sort with a matching true
    constant, so `P(t)` is stored as the equation `P(t) = true_P`.
    """

    def __init__(self):
        self.sorts: dict[str, Sort] = {INT.name: INT, INDIVIDUAL.name: INDIVIDUAL}
        self.ops: dict[str, OpSymbol] = dict(BUILTIN_OPS)
        self.true_of: dict[OpSymbol, OpSymbol] = dict(TRUE_OF)

    def add_sort(self, name: str) -> Sort:
        if name in self.sorts:
            return self.sorts[name]
        s = Sort(name)
        self.sorts[name] = s
        return s

    def sort(self, name: str) -> Sort:
        try:
            return self.sorts[name]
        except KeyError:
            raise KeyError(f"undeclared sort {name}") from None

    def _check_new(self, name: str):
        if name in self.ops:
            raise ValueError(f"symbol {name} declared twice")

    def add_function(self, name: str, arg_sorts, result: Sort) -> OpSymbol:
        self._check_new(name)
        op = OpSymbol(name, tuple(arg_sorts), result, bg=False)
        self.ops[name] = op
        return op

    def add_parameter(self, name: str, sort: Sort = INT) -> OpSymbol:
        self._check_new(name)
        if not sort.bg:
            raise ValueError(f"parameter {name} must have a BG sort")
        op = OpSymbol(name, (), sort, bg=True, is_parameter=True)
        self.ops[name] = op
        return op

    def add_predicate(self, name: str, arg_sorts) -> OpSymbol:
        self._check_new(name)
        psort = Sort(f"$o_{name}")
        op = OpSymbol(name, tuple(arg_sorts), psort, bg=False, is_predicate=True)
        true = OpSymbol(f"$true_{name}", (), psort, bg=False, is_true=True)
        self.ops[name] = op
        self.true_of[op] = true
        return op

    def true_term(self, pred: OpSymbol):
        return app(self.true_of[pred])

    def lookup(self, name: str) -> OpSymbol:
        return self.ops[name]

    def user_ops(self):
        return [op for name, op in self.ops.items() if name not in BUILTIN_OPS]
