"""Shared helpers for the test suites: a small fixed signature, parsing
shortcuts, random term/clause generators and a brute-force evaluator."""

from __future__ import annotations

import random
from pathlib import Path

from hsp.core.clauses import Clause, Literal
from hsp.core.signature import Signature
from hsp.core.terms import (ABSTRACTION, INDIVIDUAL, INT, LESS, LESSEQ, ORDINARY, PRODUCT,
                            SUM, UMINUS, DIFFERENCE, app, mk_var, num, subterms)
from hsp.frontend.parser import parse

FIXTURES = Path(__file__).parent / "fixtures"

DECLS = """
tff(alpha_d, parameter, alpha: $int).
tff(beta_d, parameter, beta: $int).
tff(c_t, type, c: $int).
tff(d_t, type, d: $int).
tff(f_t, type, f: $int > $int).
tff(g_t, type, g: ($int * $int) > $int).
tff(a_t, type, a: $i).
tff(b_t, type, b: $i).
tff(h_t, type, h: $i > $int).
tff(p_t, type, p: $int > $o).
tff(q_t, type, q: $int > $o).
tff(r_t, type, r: $i > $o).
"""


def problem(body: str, decls: str = DECLS, int_vars: str = ABSTRACTION):
    return parse(decls + body, int_vars)


def clauses(*texts: str, decls: str = DECLS, int_vars: str = ABSTRACTION) -> list[Clause]:
    """Parse clause bodies against one shared signature, so symbols agree."""
    body = "".join(f"tff(c{i}, axiom, {t}).\n" for i, t in enumerate(texts))
    return [ic.clause for ic in problem(body, decls, int_vars).clauses]


def clause(text: str, **kw) -> Clause:
    return clauses(text, **kw)[0]


# --- a fixed signature for generated terms --------------------------------

class Sig:
    def __init__(self):
        s = Signature()
        self.sig = s
        self.f = s.add_function("f", [INT], INT)
        self.g = s.add_function("g", [INT, INT], INT)
        self.h = s.add_function("h", [INDIVIDUAL], INT)
        self.k = s.add_function("k", [INT], INDIVIDUAL)
        self.a = s.add_function("a", [], INDIVIDUAL)
        self.c = s.add_function("c", [], INT)
        self.alpha = s.add_parameter("alpha")
        self.beta = s.add_parameter("beta")
        self.p = s.add_predicate("p", [INT])
        self.q = s.add_predicate("q", [INDIVIDUAL])
        self.X = mk_var(INT, ABSTRACTION, "X")
        self.Y = mk_var(INT, ABSTRACTION, "Y")
        self.x = mk_var(INT, ORDINARY, "x")
        self.y = mk_var(INT, ORDINARY, "y")
        self.u = mk_var(INDIVIDUAL, ORDINARY, "u")
        self.v = mk_var(INDIVIDUAL, ORDINARY, "v")

    def true(self, pred):
        return self.sig.true_term(pred)


S = Sig()


def rand_int_term(rng: random.Random, depth: int, *, ground=False, bg_only=False,
                  ordinary=True, fg_leaf=True) -> object:
    """A random $int term. bg_only keeps FG symbols out."""
    leaves = [lambda: num(rng.randint(-2, 2)), lambda: app(S.alpha), lambda: app(S.beta)]
    if not ground:
        leaves.append(lambda: S.X)
        leaves.append(lambda: S.Y)
        if ordinary:
            leaves.append(lambda: S.x)
            leaves.append(lambda: S.y)
    if not bg_only and fg_leaf:
        leaves.append(lambda: app(S.c))
    if depth <= 0:
        return rng.choice(leaves)()
    kw = dict(ground=ground, bg_only=bg_only, ordinary=ordinary, fg_leaf=fg_leaf)
    ops = ["leaf", "leaf", "sum", "sum", "neg", "scale"]
    if not bg_only:
        ops += ["f", "f", "g", "h"]
    op = rng.choice(ops)
    sub = lambda: rand_int_term(rng, depth - 1, **kw)  # noqa: E731
    if op == "leaf":
        return rng.choice(leaves)()
    if op == "sum":
        return app(SUM, sub(), sub())
    if op == "neg":
        return app(UMINUS, sub())
    if op == "scale":
        return app(PRODUCT, num(rng.randint(-3, 3)), sub())
    if op == "f":
        return app(S.f, sub())
    if op == "g":
        return app(S.g, sub(), sub())
    return app(S.h, rand_i_term(rng, depth - 1, ground=ground, ordinary=ordinary))


def rand_i_term(rng: random.Random, depth: int, *, ground=False, ordinary=True):
    opts = ["a"]
    if not ground:
        opts += ["u", "v"]
    if depth > 0:
        opts += ["k"]
    op = rng.choice(opts)
    if op == "a":
        return app(S.a)
    if op == "u":
        return S.u
    if op == "v":
        return S.v
    return app(S.k, rand_int_term(rng, depth - 1, ground=ground, ordinary=ordinary))


def rand_literal(rng: random.Random, depth: int = 2, **kw) -> Literal:
    kind = rng.choice(["eq", "eq", "p", "q", "less", "lesseq"])
    pos = rng.random() < 0.5
    if kind == "eq":
        return Literal(rand_int_term(rng, depth, **kw), rand_int_term(rng, depth, **kw), pos)
    if kind == "p":
        return Literal(app(S.p, rand_int_term(rng, depth, **kw)), S.true(S.p), pos)
    if kind == "q":
        kw.pop("bg_only", None)
        kw.pop("fg_leaf", None)
        return Literal(app(S.q, rand_i_term(rng, depth, **kw)), S.true(S.q), pos)
    op = LESS if kind == "less" else LESSEQ
    atom = app(op, rand_int_term(rng, depth, **kw), rand_int_term(rng, depth, **kw))
    return Literal(atom, app(S.sig.true_of[op]), pos)


def rand_clause(rng: random.Random, max_lits: int = 3, depth: int = 2, **kw) -> Clause:
    return Clause([rand_literal(rng, depth, **dict(kw)) for _ in range(rng.randint(1, max_lits))])


def rand_ground_int(rng: random.Random, depth: int, bg_only: bool = False):
    return rand_int_term(rng, depth, ground=True, bg_only=bg_only)


# --- a brute-force interpretation of the fixed signature ------------------

class Interp:
    """Random finite interpretation: FG sort $i has two elements, integer
    functions return values in [-2, 2], parameters range over [-2, 2]."""

    def __init__(self, rng: random.Random):
        self.fa = [rng.randint(-2, 2) for _ in range(5)]
        self.fb = rng.randint(-2, 2)
        self.ga = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(5)]
        self.ha = [rng.randint(-2, 2) for _ in range(2)]
        self.ka = [rng.randint(0, 1) for _ in range(5)]
        self.a = rng.randint(0, 1)
        self.c = rng.randint(-2, 2)
        self.alpha = rng.randint(-2, 2)
        self.beta = rng.randint(-2, 2)
        self.pa = [rng.random() < 0.5 for _ in range(5)]
        self.qa = [rng.random() < 0.5 for _ in range(2)]

    def value(self, t, env):
        if t.is_var:
            return env[t]
        op = t.op
        if op.is_domain_element:
            return op.value
        if op is SUM:
            return self.value(t.args[0], env) + self.value(t.args[1], env)
        if op is DIFFERENCE:
            return self.value(t.args[0], env) - self.value(t.args[1], env)
        if op is UMINUS:
            return -self.value(t.args[0], env)
        if op is PRODUCT:
            return self.value(t.args[0], env) * self.value(t.args[1], env)
        if op is S.f:
            return self.fa[self.value(t.args[0], env) % 5]
        if op is S.g:
            return self.ga[self.value(t.args[0], env) % 5][self.value(t.args[1], env) % 5]
        if op is S.h:
            return self.ha[self.value(t.args[0], env)]
        if op is S.k:
            return self.ka[self.value(t.args[0], env) % 5]
        if op is S.a:
            return self.a
        if op is S.c:
            return self.c
        if op is S.alpha:
            return self.alpha
        if op is S.beta:
            return self.beta
        if op is S.p:
            return self.pa[self.value(t.args[0], env) % 5]
        if op is S.q:
            return self.qa[self.value(t.args[0], env)]
        if op is LESS:
            return self.value(t.args[0], env) < self.value(t.args[1], env)
        if op is LESSEQ:
            return self.value(t.args[0], env) <= self.value(t.args[1], env)
        if op.is_true:
            return True
        raise KeyError(op)

    def holds(self, c: Clause, env) -> bool:
        return any((self.value(lit.lhs, env) == self.value(lit.rhs, env)) == lit.positive
                   for lit in c.literals)

    def int_values(self, c: Clause, env) -> set:
        """Values of the ground-under-env integer subterms of c."""
        out = set()
        for t in c.terms():
            for s in subterms(t):
                if s.sort == INT:
                    out.add(self.value(s, env))
        return out
