"""Randomized invariants, driven by hypothesis."""

import itertools
import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hsp.abstraction import (find_target, is_clean, is_weakly_abstracted, unabstract,
                             weakly_abstract)
from hsp.bgsolver.linear import LinearTerm, linearize
from hsp.bgsolver.presburger import eq, evaluate, exists, le, lt, mk_dvd, ne, qe
from hsp.calculus import rules
from hsp.calculus.close import close_check
from hsp.calculus.define import define
from hsp.calculus.simp import simp
from hsp.core.clauses import Clause, Literal
from hsp.core.terms import ABSTRACTION, INT, app, subterms
from hsp.core.unify import Substitution, simple_mgu
from hsp.ordering import EQ, GT, LT, lpo_compare

from util import S, Interp, rand_clause, rand_ground_int, rand_int_term

SEEDS = st.integers(0, 2**32 - 1)
PROP = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
VARS = (S.X, S.Y, S.x, S.y)


def rand_subst(rng, simple=True):
    b = {}
    for v in VARS:
        if rng.random() < 0.6:
            pure = v.kind == ABSTRACTION and simple
            b[v] = rand_int_term(rng, 2, bg_only=pure, ordinary=not pure)
    return Substitution(b)


# substitutions and unification

@PROP
@given(SEEDS)
def test_substitution_preserves_sorts(seed):
    rng = random.Random(seed)
    sigma = rand_subst(rng, simple=False)
    for _ in range(5):
        t = rand_int_term(rng, 3)
        assert sigma(t).sort == t.sort
        lit = rand_clause(rng, 1)[0]
        out = sigma.literal(lit)
        assert out.lhs.sort == lit.lhs.sort and out.rhs.sort == lit.rhs.sort


@PROP
@given(SEEDS)
def test_simple_substitution_keeps_term_classes(seed):
    rng = random.Random(seed)
    sigma = rand_subst(rng)
    assert sigma.is_simple()
    for _ in range(5):
        t = rand_int_term(rng, 3, ordinary=False)
        u = sigma(t)
        if t.is_pure:
            assert u.is_pure
        elif not t.has_fg:
            assert not u.has_fg
        else:
            assert u.has_fg


@PROP
@given(SEEDS)
def test_mgu_is_idempotent_unifier(seed):
    rng = random.Random(seed)
    for _ in range(10):
        s, t = rand_int_term(rng, 2), rand_int_term(rng, 2)
        sigma = simple_mgu(s, t)
        if sigma is None:
            continue
        assert sigma(s) is sigma(t)
        assert sigma.compose(sigma) == sigma
        assert sigma.is_simple()


# ordering

@PROP
@given(SEEDS)
def test_lpo_strict_order_on_ground_terms(seed):
    rng = random.Random(seed)
    ts = [rand_ground_int(rng, 3) for _ in range(6)]
    for s in ts:
        assert lpo_compare(s, s) is EQ
    for s, t in itertools.permutations(ts, 2):
        c = lpo_compare(s, t)
        if s is t:
            assert c is EQ
        else:
            # total on distinct ground terms, and antisymmetric
            assert c in (GT, LT)
            assert lpo_compare(t, s) is (LT if c is GT else GT)
    for s, t, u in itertools.permutations(ts, 3):
        if lpo_compare(s, t) is GT and lpo_compare(t, u) is GT:
            assert lpo_compare(s, u) is GT


@PROP
@given(SEEDS)
def test_lpo_compatible_with_contexts(seed):
    rng = random.Random(seed)
    s, t = rand_ground_int(rng, 2), rand_ground_int(rng, 2)
    if lpo_compare(s, t) is not GT:
        s, t = t, s
    if lpo_compare(s, t) is not GT:
        return
    ctx = rand_int_term(rng, 2, ground=False, ordinary=True)
    hole = S.x
    plug = lambda w: Substitution({hole: w})(ctx)  # noqa: E731
    ground_rest = Substitution({v: rand_ground_int(rng, 1) for v in VARS if v is not hole})
    ctx = ground_rest(ctx)
    if hole not in {v for v in subterms(ctx) if v.is_var}:
        ctx = app(S.g, hole, ctx)
    assert lpo_compare(plug(s), plug(t)) is GT


# abstraction

def _env_values(rng, c):
    env = {}
    for v in c.vars:
        env[v] = rng.randint(0, 1) if v.sort != INT else rng.randint(-3, 3)
    return env


@PROP
@given(SEEDS)
def test_abstraction_target_free_and_idempotent(seed):
    rng = random.Random(seed)
    c = rand_clause(rng, 3, 2)
    a = weakly_abstract(c)
    assert find_target(a) is None and is_weakly_abstracted(a)
    assert weakly_abstract(a) is a


@PROP
@given(SEEDS)
def test_abstraction_preserves_simple_ground_instances(seed):
    rng = random.Random(seed)
    c = rand_clause(rng, 2, 2)
    a = weakly_abstract(c)
    new = [v for v in a.vars if v not in set(c.vars)]
    interp = Interp(rng)
    for _ in range(4):
        env = _env_values(rng, c)
        cands = sorted(interp.int_values(c, env) | set(range(-3, 4)))
        combos = len(cands) ** len(new)
        if combos > 20000:
            return
        holds = interp.holds(c, env)
        every = all(interp.holds(a, {**env, **dict(zip(new, vals))})
                    for vals in itertools.product(cands, repeat=len(new)))
        assert holds == every, (c.render(), a.render(), env)


@PROP
@given(SEEDS)
def test_gbt_round_trip(seed):
    rng = random.Random(seed)
    c = rand_clause(rng, 3, 2, ground=True)
    back = unabstract(weakly_abstract(c))
    assert back.key() == c.key(), (c.render(), back.render())


# linear forms and Cooper

@PROP
@given(SEEDS)
def test_linearize_round_trip(seed):
    rng = random.Random(seed)
    t = rand_int_term(rng, 3, bg_only=True)
    interp = Interp(rng)
    env = {v: rng.randint(-9, 9) for v in VARS}
    lin_env = {**env, app(S.alpha): interp.alpha, app(S.beta): interp.beta}
    assert linearize(t).evaluate(lin_env) == interp.value(t, env)


X_, A_ = LinearTerm.atom("x"), LinearTerm.atom("a")
lin_terms = st.builds(lambda cx, ca, k: X_.scale(cx) + A_.scale(ca) + k,
                      st.integers(-3, 3), st.integers(-3, 3), st.integers(-5, 5))
atoms = st.one_of(
    st.builds(lt, lin_terms, lin_terms), st.builds(le, lin_terms, lin_terms),
    st.builds(eq, lin_terms, lin_terms), st.builds(ne, lin_terms, lin_terms),
    st.builds(mk_dvd, st.sampled_from([2, 3]), lin_terms))
formulas = st.recursive(atoms, lambda sub: st.one_of(
    st.builds(lambda a, b: a & b, sub, sub), st.builds(lambda a, b: a | b, sub, sub),
    st.builds(lambda a: ~a, sub)), max_leaves=5)


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_cooper_matches_bounded_search(phi):
    # with these coefficient and constant bounds any solution has a
    # representative in [-40, 40], so the bounded search is exact
    psi = qe(exists(["x"], phi))
    for a in range(-4, 5):
        want = evaluate(exists(["x"], phi), {"a": a}, 40)
        assert evaluate(psi, {"a": a}) == want


# cleanness

def rand_clean_literal(rng):
    kind = rng.choice(["q", "hdef", "fdef", "p", "bg"])
    pos = rng.random() < 0.5
    if kind == "q":
        arg = rng.choice([app(S.a), S.u, app(S.k, rand_ground_int(rng, 1, bg_only=True))])
        return Literal(app(S.q, arg), S.true(S.q), pos)
    if kind == "hdef":
        return Literal(app(S.h, rng.choice([app(S.a), S.u])), rand_ground_int(rng, 1, bg_only=True))
    if kind == "fdef":
        return Literal(app(S.f, rand_ground_int(rng, 1, bg_only=True)),
                       rand_ground_int(rng, 1, bg_only=True))
    if kind == "p":
        return Literal(app(S.p, rand_ground_int(rng, 1, bg_only=True)), S.true(S.p), pos)
    return Literal(rand_ground_int(rng, 1, bg_only=True), rand_ground_int(rng, 1, bg_only=True), pos)


def rand_clean_clause(rng):
    c = weakly_abstract(Clause([rand_clean_literal(rng) for _ in range(rng.randint(1, 3))]))
    return c


def _bg_terms(c):
    return {s for t in unabstract(c).terms() for s in subterms(t) if not s.has_fg}


@PROP
@given(SEEDS)
def test_inferences_preserve_cleanness(seed):
    rng = random.Random(seed)
    left, right = rand_clean_clause(rng), rand_clean_clause(rng)
    assert is_clean(left) and is_clean(right), (left.render(), right.render())
    infs = (rules.equality_resolution(left) + rules.equality_factoring(left)
            + rules.positive_superposition(left, right) + rules.negative_superposition(left, right))
    known = _bg_terms(left) | _bg_terms(right)
    for inf in infs:
        assert is_clean(inf.conclusion), (inf.rule, inf.conclusion.render())
        assert _bg_terms(inf.conclusion) <= known, (inf.rule, inf.conclusion.render())


# simplification and Define soundness on ground inputs

class DefInterp(Interp):
    """Interp that also reads parameters minted by Define."""

    def value(self, t, env):
        if not t.is_var and t.op.defines is not None:
            return self.value(t.op.defines, env)
        return super().value(t, env)


def _ground_holds(interp, c):
    u = unabstract(c)
    assert not u.vars, u.render()
    return interp.holds(u, {})


@PROP
@given(SEEDS)
def test_simp_sound_on_ground_fg_clauses(seed):
    rng = random.Random(seed)
    c = weakly_abstract(rand_clause(rng, 3, 2, ground=True))
    active = [weakly_abstract(rand_clause(rng, 1, 1, ground=True)) for _ in range(2)]
    out = simp(c, active)
    if out is None:
        return
    for _ in range(10):
        interp = Interp(rng)
        premises = all(_ground_holds(interp, d) for d in active)
        if not premises:
            continue
        # the results follow from c, and c follows from the results
        assert (not _ground_holds(interp, c)) or all(_ground_holds(interp, d) for d in out)
        assert (not all(_ground_holds(interp, d) for d in out)) or _ground_holds(interp, c)


def _negation(c):
    return [Clause([Literal(lit.lhs, lit.rhs, not lit.positive)]) for lit in c.literals]


def _entails(premises, goal):
    return close_check(list(premises) + _negation(goal)).unsat


def _pure_bg_clause(rng, max_lits):
    while True:
        c = rand_clause(rng, max_lits, 1, ground=True, bg_only=True)
        if c.is_bg:
            return c


@settings(max_examples=60, deadline=None)
@given(SEEDS)
def test_simp_sound_on_pure_bg_clauses(seed):
    rng = random.Random(seed)
    c = _pure_bg_clause(rng, 2)
    active = [_pure_bg_clause(rng, 1)]
    out = simp(c, active)
    if out is None:
        return
    for d in out:
        d = unabstract(d)
        assert not d.vars and _entails(active + [c], d), (c.render(), d.render())
    if out:
        assert _entails(active + [unabstract(d) for d in out], c)
    else:
        assert _entails(active, c)


@PROP
@given(SEEDS)
def test_define_sound_on_ground_clauses(seed):
    rng = random.Random(seed)
    c = weakly_abstract(rand_clause(rng, 3, 2, ground=True))
    r = define(c, reckless=rng.random() < 0.5)
    if r is None:
        return
    for _ in range(10):
        interp = DefInterp(rng)
        assert _ground_holds(interp, r.definition)
        assert _ground_holds(interp, r.replacement) == _ground_holds(interp, c)
