from __future__ import annotations

from ..core.terms import DIFFERENCE, PRODUCT, SUM, UMINUS, Term


def _atom_key(a) -> str:
    return str(a) if not isinstance(a, str) else a


class LinearTerm:
    """sum(c_i * a_i) + const with integer coefficients; zero coefficients dropped."""

    __slots__ = ("coeffs", "const", "_hash")

    def __init__(self, coeffs=None, const: int = 0):
        items = [(a, c) for a, c in (coeffs or {}).items() if c]
        items.sort(key=lambda ac: _atom_key(ac[0]))
        self.coeffs: dict = dict(items)
        self.const = const
        self._hash = hash((tuple(items), const))

    @classmethod
    def constant(cls, k: int) -> "LinearTerm":
        return cls({}, k)

    @classmethod
    def atom(cls, a, c: int = 1) -> "LinearTerm":
        return cls({a: c}, 0)

    def __add__(self, other: "LinearTerm | int") -> "LinearTerm":
        if isinstance(other, int):
            return LinearTerm(self.coeffs, self.const + other)
        d = dict(self.coeffs)
        for a, c in other.coeffs.items():
            d[a] = d.get(a, 0) + c
        return LinearTerm(d, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> "LinearTerm":
        return self.scale(-1)

    def __sub__(self, other: "LinearTerm | int") -> "LinearTerm":
        return self + (-other)

    def __rsub__(self, other: int) -> "LinearTerm":
        return (-self) + other

    def scale(self, k: int) -> "LinearTerm":
        if k == 0:
            return LinearTerm({}, 0)
        return LinearTerm({a: c * k for a, c in self.coeffs.items()}, self.const * k)

    def __mul__(self, k: int) -> "LinearTerm":
        return self.scale(k)

    __rmul__ = __mul__

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    def coeff(self, a) -> int:
        return self.coeffs.get(a, 0)

    def drop(self, a) -> "LinearTerm":
        return LinearTerm({b: c for b, c in self.coeffs.items() if b != a}, self.const)

    def substitute(self, a, t: "LinearTerm") -> "LinearTerm":
        c = self.coeffs.get(a, 0)
        if not c:
            return self
        return self.drop(a) + t.scale(c)

    def evaluate(self, env) -> int:
        return self.const + sum(c * env[a] for a, c in self.coeffs.items())

    def atoms(self):
        return self.coeffs.keys()

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearTerm) and self.const == other.const and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{c}*{a}" for a, c in self.coeffs.items()]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)


def linearize(t: Term, atom=None) -> LinearTerm:
    """Linear form of an arithmetic term.

    Leaves that are not +, -, unary -, products or numerals become atoms;
    `atom` maps such a leaf to the key used in the result (default: the
    leaf itself). A product needs a factor that linearizes to a constant.
    """
    if atom is None:
        atom = _identity
    if t.is_var:
        return LinearTerm.atom(atom(t))
    op = t.op
    if op.is_domain_element:
        return LinearTerm.constant(op.value)
    if op is SUM:
        return linearize(t.args[0], atom) + linearize(t.args[1], atom)
    if op is DIFFERENCE:
        return linearize(t.args[0], atom) - linearize(t.args[1], atom)
    if op is UMINUS:
        return -linearize(t.args[0], atom)
    if op is PRODUCT:
        a = linearize(t.args[0], atom)
        b = linearize(t.args[1], atom)
        if a.is_constant:
            return b.scale(a.const)
        if b.is_constant:
            return a.scale(b.const)
        raise ValueError(f"nonlinear term {t}")
    return LinearTerm.atom(atom(t))


def _identity(t):
    return t
