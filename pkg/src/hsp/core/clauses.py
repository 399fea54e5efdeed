from __future__ import annotations

from collections import Counter

from .terms import Term, Var, render


class Literal:
    """An unordered equation or disequation between two terms of one sort."""

    __slots__ = ("lhs", "rhs", "positive", "_hash")

    def __init__(self, lhs: Term, rhs: Term, positive: bool = True):
        if lhs.sort != rhs.sort:
            raise TypeError(f"sort mismatch in literal: {lhs} : {lhs.sort} vs {rhs} : {rhs.sort}")
        self.lhs = lhs
        self.rhs = rhs
        self.positive = positive
        a, b = lhs._hash, rhs._hash
        self._hash = hash((positive, a, b) if a <= b else (positive, b, a))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Literal) or self.positive != other.positive:
            return False
        return ((self.lhs is other.lhs and self.rhs is other.rhs)
                or (self.lhs is other.rhs and self.rhs is other.lhs))

    def __hash__(self) -> int:
        return self._hash

    @property
    def sides(self) -> tuple[Term, Term]:
        return (self.lhs, self.rhs)

    @property
    def is_atom(self) -> bool:
        return not self.rhs.is_var and self.rhs.op.is_true

    @property
    def vars(self) -> tuple[Var, ...]:
        seen = dict.fromkeys(self.lhs.vars)
        seen.update(dict.fromkeys(self.rhs.vars))
        return tuple(seen)

    @property
    def is_bg(self) -> bool:
        return not self.lhs.has_fg and not self.rhs.has_fg

    def negated(self) -> "Literal":
        return Literal(self.lhs, self.rhs, not self.positive)

    def map(self, f) -> "Literal":
        return Literal(f(self.lhs), f(self.rhs), self.positive)

    def render(self, names=None) -> str:
        if self.is_atom and not (not self.lhs.is_var and self.lhs.op.is_true):
            s = render(self.lhs, names)
            return s if self.positive else f"~{_paren(self.lhs, s)}"
        if self.lhs.is_var is False and self.lhs.op.is_true and not self.rhs.is_var and self.rhs.op.is_predicate:
            s = render(self.rhs, names)
            return s if self.positive else f"~{_paren(self.rhs, s)}"
        rel = "=" if self.positive else "!="
        return f"{render(self.lhs, names)} {rel} {render(self.rhs, names)}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Literal({self})"


def _paren(t: Term, s: str) -> str:
    return f"({s})" if not t.is_var and t.op.name in ("$less", "$lesseq") else s


class Clause:
    """A multiset of literals. Literal order is kept for determinism only."""

    __slots__ = ("literals", "selected", "id", "step", "_key")

    def __init__(self, literals=(), selected=frozenset()):
        self.literals: tuple[Literal, ...] = tuple(literals)
        self.selected: frozenset[int] = frozenset(selected)
        self.id: int = -1
        self.step = None
        self._key = None

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __getitem__(self, i: int) -> Literal:
        return self.literals[i]

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def vars(self) -> tuple[Var, ...]:
        seen: dict[Var, None] = {}
        for lit in self.literals:
            for v in lit.lhs.vars:
                seen[v] = None
            for v in lit.rhs.vars:
                seen[v] = None
        return tuple(seen)

    @property
    def is_ground(self) -> bool:
        return all(lit.lhs.ground and lit.rhs.ground for lit in self.literals)

    @property
    def is_bg(self) -> bool:
        return all(lit.is_bg for lit in self.literals)

    @property
    def is_pure_bg(self) -> bool:
        return all(lit.lhs.is_pure and lit.rhs.is_pure for lit in self.literals)

    def terms(self):
        for lit in self.literals:
            yield lit.lhs
            yield lit.rhs

    def key(self) -> frozenset:
        """Multiset identity of the clause (ignores literal order)."""
        if self._key is None:
            self._key = frozenset(Counter(self.literals).items())
        return self._key

    def same_as(self, other: "Clause") -> bool:
        return self.key() == other.key()

    def map(self, f) -> "Clause":
        return Clause([lit.map(f) for lit in self.literals], self.selected)

    def without(self, *indices: int) -> list[Literal]:
        drop = set(indices)
        return [lit for i, lit in enumerate(self.literals) if i not in drop]

    def canonical_names(self) -> dict:
        """Variable names X1, X2, .. / x1, .. / u1, .. by first occurrence."""
        names = {}
        counts = {"X": 0, "x": 0, "u": 0}
        for v in self.vars:
            base = "X" if v.kind == "abstraction" else ("x" if v.sort.bg else "u")
            counts[base] += 1
            names[v] = f"{base}{counts[base]}"
        return names

    def render(self, canonical: bool = True) -> str:
        if not self.literals:
            return "$false"
        names = self.canonical_names() if canonical else None
        return " | ".join(lit.render(names) for lit in self.literals)

    def __str__(self) -> str:
        return self.render(canonical=False)

    def __repr__(self) -> str:
        return f"Clause({self})"


def weight(c: Clause) -> int:
    return sum(lit.lhs.size + lit.rhs.size for lit in c.literals) + 2 * len(c.vars)
