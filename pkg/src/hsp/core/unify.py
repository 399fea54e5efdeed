from __future__ import annotations

import itertools

from ..kernel import apply_bindings, match, unify
from .clauses import Clause, Literal
from .terms import ABSTRACTION, Term, Var, fresh_var, is_numeral, render


class Substitution:
    """A finite map from variables to terms."""

    __slots__ = ("bindings",)

    def __init__(self, bindings=None):
        self.bindings: dict[Var, Term] = dict(bindings or {})

    def __call__(self, t: Term) -> Term:
        return apply_bindings(self.bindings, t)

    apply = __call__

    def literal(self, lit: Literal) -> Literal:
        return Literal(self(lit.lhs), self(lit.rhs), lit.positive)

    def clause(self, c: Clause) -> Clause:
        if not self.bindings:
            return c
        return Clause([self.literal(lit) for lit in c.literals], c.selected)

    def compose(self, other: "Substitution") -> "Substitution":
        """The substitution applying self first, then other."""
        out = {v: other(t) for v, t in self.bindings.items()}
        for v, t in other.bindings.items():
            out.setdefault(v, t)
        return Substitution({v: t for v, t in out.items() if t is not v})

    def is_simple(self) -> bool:
        return all(t.is_pure for v, t in self.bindings.items() if v.kind == ABSTRACTION)

    def is_restricted(self) -> bool:
        return all((t.is_var and t.kind == ABSTRACTION) or is_numeral(t)
                   for v, t in self.bindings.items() if v.kind == ABSTRACTION)

    def __getitem__(self, v: Var) -> Term:
        return self.bindings[v]

    def __contains__(self, v) -> bool:
        return v in self.bindings

    def __len__(self) -> int:
        return len(self.bindings)

    def __eq__(self, other) -> bool:
        return isinstance(other, Substitution) and self.bindings == other.bindings

    def items(self):
        return self.bindings.items()

    def render(self, names=None) -> str:
        parts = [f"{render(v, names)}->{render(t, names)}" for v, t in self.bindings.items()]
        return "[" + ", ".join(parts) + "]"

    def __repr__(self) -> str:
        return f"Substitution({self.render()})"


def apply(sigma: Substitution, t: Term) -> Term:
    return sigma(t)


def simple_mgu(s: Term, t: Term) -> Substitution | None:
    if s.sort != t.sort:
        return None
    b = unify(s, t)
    return None if b is None else Substitution(b)


def simple_match(pattern: Term, target: Term, sigma: Substitution | None = None) -> Substitution | None:
    b = dict(sigma.bindings) if sigma else {}
    return Substitution(b) if match(pattern, target, b) else None


def rename_apart(c: Clause) -> tuple[Clause, Substitution]:
    sigma = Substitution({v: fresh_var(v.sort, v.kind) for v in c.vars})
    return sigma.clause(c), sigma


def bounded_simple_ground_instances(c: Clause, depth: int, ground_pool) -> set[Clause]:
    """Ground instances of c over the pool, respecting variable kinds.

    Abstraction variables only receive pure BG pool terms. Instances are
    compared as literal multisets, so the result is returned as a dict of
    unique clauses keyed by multiset.
    """
    pool = [t for t in ground_pool if t.ground and t.depth <= depth]
    candidates = []
    for v in c.vars:
        opts = [t for t in pool if t.sort == v.sort and (v.kind != ABSTRACTION or t.is_pure)]
        if not opts:
            raise ValueError("uninhabited sort pool")
        candidates.append(opts)
    out: dict = {}
    vs = c.vars
    for combo in itertools.product(*candidates):
        inst = Substitution(dict(zip(vs, combo))).clause(c)
        out.setdefault(inst.key(), inst)
    return set(out.values())


def _match_literal(p: Literal, t: Literal, b: dict):
    if p.positive != t.positive or p.lhs.sort != t.lhs.sort:
        return
    for tl, tr in ((t.lhs, t.rhs), (t.rhs, t.lhs)):
        nb = dict(b)
        if match(p.lhs, tl, nb) and match(p.rhs, tr, nb):
            yield nb
        if t.lhs is t.rhs:
            break


def subsumption_matcher(d: Clause, c: Clause, injective_vars: bool = False) -> dict | None:
    """A simple substitution b with d·b a sub-multiset of c, or None."""
    if len(d) > len(c):
        return None
    dl = sorted(d.literals, key=lambda lit: -(lit.lhs.size + lit.rhs.size))
    used = [False] * len(c)

    def search(i: int, b: dict):
        if i == len(dl):
            if injective_vars:
                vals = list(b.values())
                if not all(t.is_var and t.kind == v.kind for v, t in b.items()) or len(set(vals)) != len(vals):
                    return None
            return b
        for j, lit in enumerate(c.literals):
            if used[j]:
                continue
            for nb in _match_literal(dl[i], lit, b):
                used[j] = True
                r = search(i + 1, nb)
                used[j] = False
                if r is not None:
                    return r
        return None

    return search(0, {})


def subsumes(d: Clause, c: Clause) -> bool:
    return subsumption_matcher(d, c) is not None


def is_variant(c: Clause, d: Clause) -> bool:
    """Equal up to a kind-preserving variable renaming and literal order."""
    if len(c) != len(d) or len(c.vars) != len(d.vars):
        return False
    return subsumption_matcher(c, d, injective_vars=True) is not None
