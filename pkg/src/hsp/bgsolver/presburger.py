"""Presburger formulas and Cooper's quantifier elimination.

Atoms are kept normalized: `Le(t)` means t <= 0, `Eq(t)` means t = 0,
`Dvd(d, t)` means d divides t and `NDvd(d, t)` its negation. Variables are
plain strings; quantifiers bind them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import product

from .linear import LinearTerm


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return mk_and([self, other])

    def __or__(self, other):
        return mk_or([self, other])

    def __invert__(self):
        return negate(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __repr__(self):
        return "T" if self.value else "F"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Le(Formula):
    t: LinearTerm

    def __repr__(self):
        return f"({self.t!r} <= 0)"


@dataclass(frozen=True)
class Eq(Formula):
    t: LinearTerm

    def __repr__(self):
        return f"({self.t!r} = 0)"


@dataclass(frozen=True)
class Dvd(Formula):
    d: int
    t: LinearTerm

    def __repr__(self):
        return f"({self.d} | {self.t!r})"


@dataclass(frozen=True)
class NDvd(Formula):
    d: int
    t: LinearTerm

    def __repr__(self):
        return f"~({self.d} | {self.t!r})"


@dataclass(frozen=True)
class Not(Formula):
    f: Formula

    def __repr__(self):
        return f"~{self.f!r}"


@dataclass(frozen=True)
class And(Formula):
    fs: tuple

    def __repr__(self):
        return "(" + " & ".join(map(repr, self.fs)) + ")"


@dataclass(frozen=True)
class Or(Formula):
    fs: tuple

    def __repr__(self):
        return "(" + " | ".join(map(repr, self.fs)) + ")"


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"?[{self.var}]: {self.body!r}"


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def __repr__(self):
        return f"![{self.var}]: {self.body!r}"


# -- smart constructors -----------------------------------------------------

def _gcd_all(values) -> int:
    return reduce(math.gcd, values, 0)


def mk_le(t: LinearTerm) -> Formula:
    if t.is_constant:
        return TRUE if t.const <= 0 else FALSE
    g = _gcd_all(abs(c) for c in t.coeffs.values())
    if g > 1:
        # g*s + k <= 0  <=>  s + ceil(k/g) <= 0
        t = LinearTerm({a: c // g for a, c in t.coeffs.items()}, -((-t.const) // g))
    return Le(t)


def mk_eq(t: LinearTerm) -> Formula:
    if t.is_constant:
        return TRUE if t.const == 0 else FALSE
    g = _gcd_all(abs(c) for c in t.coeffs.values())
    if t.const % g:
        return FALSE
    if g > 1:
        t = LinearTerm({a: c // g for a, c in t.coeffs.items()}, t.const // g)
    if next(iter(t.coeffs.values())) < 0:
        t = -t
    return Eq(t)


def _dvd_norm(d: int, t: LinearTerm):
    d = abs(d)
    t = LinearTerm({a: c % d for a, c in t.coeffs.items()}, t.const % d)
    g = math.gcd(d, _gcd_all(t.coeffs.values()), t.const)
    if g > 1:
        d //= g
        t = LinearTerm({a: c // g for a, c in t.coeffs.items()}, t.const // g)
    return d, t


def mk_dvd(d: int, t: LinearTerm) -> Formula:
    if d == 0:
        return mk_eq(t)
    d, t = _dvd_norm(d, t)
    if d == 1:
        return TRUE
    if t.is_constant:
        return TRUE if t.const % d == 0 else FALSE
    return Dvd(d, t)


def mk_ndvd(d: int, t: LinearTerm) -> Formula:
    f = mk_dvd(d, t)
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Eq):
        return mk_or([mk_le(f.t + 1), mk_le(-f.t + 1)])
    return NDvd(f.d, f.t)


def mk_and(fs) -> Formula:
    out: dict = {}
    for f in fs:
        if isinstance(f, And):
            for g in f.fs:
                out[g] = None
        elif f == FALSE:
            return FALSE
        elif f != TRUE:
            out[f] = None
    if FALSE in out:
        return FALSE
    if not out:
        return TRUE
    if len(out) == 1:
        return next(iter(out))
    return And(tuple(out))


def mk_or(fs) -> Formula:
    out: dict = {}
    for f in fs:
        if isinstance(f, Or):
            for g in f.fs:
                out[g] = None
        elif f == TRUE:
            return TRUE
        elif f != FALSE:
            out[f] = None
    if TRUE in out:
        return TRUE
    if not out:
        return FALSE
    if len(out) == 1:
        return next(iter(out))
    return Or(tuple(out))


# -- user-facing atom builders over LinearTerms ---------------------------

def _lin(a) -> LinearTerm:
    if isinstance(a, LinearTerm):
        return a
    if isinstance(a, int):
        return LinearTerm.constant(a)
    return LinearTerm.atom(a)


def lt(a, b) -> Formula:
    return mk_le(_lin(a) - _lin(b) + 1)


def le(a, b) -> Formula:
    return mk_le(_lin(a) - _lin(b))


def gt(a, b) -> Formula:
    return lt(b, a)


def ge(a, b) -> Formula:
    return le(b, a)


def eq(a, b) -> Formula:
    return mk_eq(_lin(a) - _lin(b))


def ne(a, b) -> Formula:
    return negate(eq(a, b))


def implies(a: Formula, b: Formula) -> Formula:
    return mk_or([negate(a), b])


def exists(vars_, body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Exists(v, body)
    return body


def forall(vars_, body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Forall(v, body)
    return body


# -- structural helpers -------------------------------------------------------

def negate(f: Formula) -> Formula:
    """Negation pushed down to atoms (NNF)."""
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Le):
        return mk_le(-f.t + 1)
    if isinstance(f, Eq):
        return mk_or([mk_le(f.t + 1), mk_le(-f.t + 1)])
    if isinstance(f, Dvd):
        return mk_ndvd(f.d, f.t)
    if isinstance(f, NDvd):
        return mk_dvd(f.d, f.t)
    if isinstance(f, Not):
        return f.f
    if isinstance(f, And):
        return mk_or([negate(g) for g in f.fs])
    if isinstance(f, Or):
        return mk_and([negate(g) for g in f.fs])
    if isinstance(f, Exists):
        return Forall(f.var, negate(f.body))
    if isinstance(f, Forall):
        return Exists(f.var, negate(f.body))
    raise TypeError(f)


def free_vars(f: Formula) -> set:
    if isinstance(f, (Le, Eq, Dvd, NDvd)):
        return set(f.t.atoms())
    if isinstance(f, Const):
        return set()
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, (And, Or)):
        out = set()
        for g in f.fs:
            out |= free_vars(g)
        return out
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f)


def substitute(f: Formula, x, t: LinearTerm) -> Formula:
    """Replace variable x by the linear term t in a quantifier-free formula."""
    if isinstance(f, Le):
        return mk_le(f.t.substitute(x, t)) if f.t.coeff(x) else f
    if isinstance(f, Eq):
        return mk_eq(f.t.substitute(x, t)) if f.t.coeff(x) else f
    if isinstance(f, Dvd):
        return mk_dvd(f.d, f.t.substitute(x, t)) if f.t.coeff(x) else f
    if isinstance(f, NDvd):
        return mk_ndvd(f.d, f.t.substitute(x, t)) if f.t.coeff(x) else f
    if isinstance(f, Const):
        return f
    if isinstance(f, And):
        return mk_and([substitute(g, x, t) for g in f.fs])
    if isinstance(f, Or):
        return mk_or([substitute(g, x, t) for g in f.fs])
    if isinstance(f, Not):
        return negate(substitute(f.f, x, t))
    raise TypeError(f"substitute expects a quantifier-free formula, got {f!r}")


def evaluate(f: Formula, env: dict, bound: int | None = None) -> bool:
    """Truth value under env; quantifiers range over [-bound, bound]."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Le):
        return f.t.evaluate(env) <= 0
    if isinstance(f, Eq):
        return f.t.evaluate(env) == 0
    if isinstance(f, Dvd):
        return f.t.evaluate(env) % f.d == 0
    if isinstance(f, NDvd):
        return f.t.evaluate(env) % f.d != 0
    if isinstance(f, Not):
        return not evaluate(f.f, env, bound)
    if isinstance(f, And):
        return all(evaluate(g, env, bound) for g in f.fs)
    if isinstance(f, Or):
        return any(evaluate(g, env, bound) for g in f.fs)
    if isinstance(f, (Exists, Forall)):
        if bound is None:
            raise ValueError("quantified formula needs a bound for evaluation")
        test = any if isinstance(f, Exists) else all
        saved = env.get(f.var, None)
        try:
            def gen():
                for v in range(-bound, bound + 1):
                    env[f.var] = v
                    yield evaluate(f.body, env, bound)
            return test(gen())
        finally:
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
    raise TypeError(f)


# -- Cooper's method --------------------------------------------------------------

def _atoms_with(f: Formula, x, acc: list):
    if isinstance(f, (Le, Eq, Dvd, NDvd)):
        if f.t.coeff(x):
            acc.append(f)
    elif isinstance(f, (And, Or)):
        for g in f.fs:
            _atoms_with(g, x, acc)
    return acc


def _expand_eq(f: Formula, x) -> Formula:
    if isinstance(f, Eq) and f.t.coeff(x):
        return mk_and([mk_le(f.t), mk_le(-f.t)])
    if isinstance(f, And):
        return mk_and([_expand_eq(g, x) for g in f.fs])
    if isinstance(f, Or):
        return mk_or([_expand_eq(g, x) for g in f.fs])
    return f


def _scale_x(f: Formula, x, lcm: int) -> Formula:
    """Scale every atom so x has coefficient +-lcm, then read x as lcm*x."""
    if isinstance(f, (Le, Dvd, NDvd)):
        c = f.t.coeff(x)
        if not c:
            return f
        m = lcm // abs(c)
        t = f.t.scale(m)
        t = t.drop(x) + LinearTerm.atom(x, 1 if c > 0 else -1)
        if isinstance(f, Le):
            return Le(t)
        return type(f)(f.d * m, t)
    if isinstance(f, And):
        return mk_and([_scale_x(g, x, lcm) for g in f.fs])
    if isinstance(f, Or):
        return mk_or([_scale_x(g, x, lcm) for g in f.fs])
    return f


def _at_infinity(f: Formula, x, minus: bool) -> Formula:
    if isinstance(f, Le):
        c = f.t.coeff(x)
        if not c:
            return f
        # c = +1 is an upper bound on x, c = -1 a lower bound
        return TRUE if (c > 0) == minus else FALSE
    if isinstance(f, And):
        return mk_and([_at_infinity(g, x, minus) for g in f.fs])
    if isinstance(f, Or):
        return mk_or([_at_infinity(g, x, minus) for g in f.fs])
    return f


def _cooper(x, f: Formula) -> Formula:
    f = _expand_eq(f, x)
    atoms = _atoms_with(f, x, [])
    if not atoms:
        return f
    lcm = reduce(math.lcm, (abs(a.t.coeff(x)) for a in atoms), 1)
    f = _scale_x(f, x, lcm)
    if lcm > 1:
        f = mk_and([f, mk_dvd(lcm, LinearTerm.atom(x))])
    atoms = _atoms_with(f, x, [])
    delta = reduce(math.lcm, (a.d for a in atoms if isinstance(a, (Dvd, NDvd))), 1)
    lower: dict = {}
    upper: dict = {}
    for a in atoms:
        if isinstance(a, Le):
            rest = a.t.drop(x)
            if a.t.coeff(x) < 0:
                lower[rest] = None      # x >= rest
            else:
                upper[-rest] = None     # x <= -rest
    disjuncts = []
    if len(lower) <= len(upper):
        f_inf = _at_infinity(f, x, minus=True)
        for j in range(1, delta + 1):
            disjuncts.append(substitute(f_inf, x, LinearTerm.constant(j)))
        for b in lower:
            for j in range(delta):
                disjuncts.append(substitute(f, x, b + j))
    else:
        f_inf = _at_infinity(f, x, minus=False)
        for j in range(1, delta + 1):
            disjuncts.append(substitute(f_inf, x, LinearTerm.constant(-j)))
        for b in upper:
            for j in range(delta):
                disjuncts.append(substitute(f, x, b - j))
    return mk_or(disjuncts)


def _solve_unit_eq(conjuncts, x):
    for a in conjuncts:
        if isinstance(a, Eq) and abs(a.t.coeff(x)) == 1:
            c = a.t.coeff(x)
            # c*x + r = 0  =>  x = -c*r
            return a, a.t.drop(x).scale(-c)
    return None


def eliminate(x, f: Formula) -> Formula:
    """Quantifier-free equivalent of exists x. f for quantifier-free f."""
    if x not in free_vars(f):
        return f
    if isinstance(f, Or):
        return mk_or([eliminate(x, g) for g in f.fs])
    if isinstance(f, And):
        inside = [g for g in f.fs if x in free_vars(g)]
        outside = [g for g in f.fs if x not in free_vars(g)]
        solved = _solve_unit_eq(inside, x)
        if solved is not None:
            a, t = solved
            rest = mk_and([substitute(g, x, t) for g in inside if g is not a])
            return mk_and(outside + [rest])
        return mk_and(outside + [_cooper(x, mk_and(inside))])
    return _cooper(x, f)


def qe(f: Formula) -> Formula:
    """Quantifier elimination, innermost quantifier first."""
    if isinstance(f, Exists):
        return eliminate(f.var, qe(f.body))
    if isinstance(f, Forall):
        return negate(eliminate(f.var, negate(qe(f.body))))
    if isinstance(f, Not):
        return negate(qe(f.f))
    if isinstance(f, And):
        return mk_and([qe(g) for g in f.fs])
    if isinstance(f, Or):
        return mk_or([qe(g) for g in f.fs])
    return f


cooper_qe = qe


def decide(f: Formula) -> bool:
    """Truth of a closed formula over the integers."""
    r = qe(f)
    if not isinstance(r, Const):
        if free_vars(r):
            raise ValueError(f"formula is not closed: free {sorted(map(str, free_vars(r)))}")
        r = Const(evaluate(r, {}))
    return r.value


def brute_force(f: Formula, bound: int) -> bool:
    """Truth with every quantifier ranging over [-bound, bound]."""
    return evaluate(f, {}, bound)


def brute_force_qf(f: Formula, vars_, bound: int):
    """A satisfying assignment in the box for a quantifier-free formula, or None."""
    vs = list(vars_)
    for vals in product(range(-bound, bound + 1), repeat=len(vs)):
        env = dict(zip(vs, vals))
        if evaluate(f, env):
            return env
    return None
