"""Sorted terms, literals, clauses, substitutions and simple unification."""

from .clauses import Clause, Literal, weight
from .signature import Signature
from .terms import (ABSTRACTION, INDIVIDUAL, INT, LESS, LESSEQ, ORDINARY, App, OpSymbol, Sort, Term,
                    TermClass, Var, app, classify, fresh_var, is_numeral, mk_var, num, plus, minus,
                    neg, times)
from .unify import (Substitution, apply, bounded_simple_ground_instances, is_variant, rename_apart,
                    simple_match, simple_mgu, subsumes)

__all__ = [
    "ABSTRACTION", "ORDINARY", "INT", "INDIVIDUAL", "LESS", "LESSEQ", "App", "Clause", "Literal",
    "OpSymbol", "Signature", "Sort", "Substitution", "Term", "TermClass", "Var", "app", "apply",
    "bounded_simple_ground_instances", "classify", "fresh_var", "is_numeral", "is_variant", "mk_var",
    "num", "plus", "minus", "neg", "times", "rename_apart", "simple_match", "simple_mgu", "subsumes",
    "weight",
]
