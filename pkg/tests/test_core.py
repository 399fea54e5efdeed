import random

import pytest

from hsp import _kernel
from hsp.core.clauses import Clause, Literal
from hsp.core.signature import Signature
from hsp.core.terms import (ABSTRACTION, INDIVIDUAL, INT, ORDINARY, OpSymbol, TermClass, app,
                            classify, fresh_var, mk_var, num, plus)
from hsp.core.unify import (Substitution, bounded_simple_ground_instances, is_variant,
                            simple_mgu, subsumes)
from hsp.kernel import COMPILED

from util import S, rand_clause, rand_int_term


# classification

def test_classify_pure_bg():
    assert classify(plus(app(S.alpha), num(1))) is TermClass.PURE_BG


def test_classify_impure_bg():
    assert classify(plus(num(1), S.y)) is TermClass.IMPURE_BG


def test_classify_fg():
    t = plus(app(S.f, num(1)), plus(app(S.alpha), num(1)))
    assert classify(t) is TermClass.FG


def test_fg_variable_is_fg():
    assert classify(S.u) is TermClass.FG


# symbols and variables

def test_domain_element_must_be_nullary_bg():
    with pytest.raises(ValueError):
        OpSymbol("7", (INT,), INT, bg=True, is_domain_element=True)


def test_parameter_must_be_nullary_bg():
    with pytest.raises(ValueError):
        OpSymbol("p", (), INT, bg=False, is_parameter=True)


def test_fg_sorted_variable_is_ordinary():
    assert mk_var(INDIVIDUAL, ABSTRACTION).kind == ORDINARY


def test_duplicate_symbol_rejected():
    s = Signature()
    s.add_function("f", [INT], INT)
    with pytest.raises(ValueError):
        s.add_function("f", [INT], INT)


def test_ill_sorted_application_rejected():
    with pytest.raises(TypeError):
        app(S.f, app(S.a))


def test_hash_consing_shares_terms():
    assert app(S.f, num(3)) is app(S.f, num(3))
    assert num(10**30) is num(10**30)


def test_literal_sides_must_agree():
    with pytest.raises(TypeError):
        Literal(app(S.a), num(1))


# substitutions

def test_apply_substitution():
    c = app(S.c)
    assert Substitution({S.x: c})(plus(num(1), S.x)) is plus(num(1), c)


def test_identity_substitution():
    t = app(S.g, S.x, S.X)
    assert Substitution()(t) is t


def test_composition_law():
    y = mk_var(INT, ORDINARY)
    sigma, tau = Substitution({S.x: y}), Substitution({y: num(0)})
    assert sigma.compose(tau)(S.x) is num(0)
    assert tau(sigma(S.x)) is num(0)


# simple unification

def test_mgu_abstraction_var_against_impure_sum():
    z = mk_var(INT, ABSTRACTION, "Z")
    s = simple_mgu(z, plus(S.x, S.y))
    assert s is not None
    bx, by = s(S.x), s(S.y)
    assert bx.is_var and by.is_var and bx.kind == ABSTRACTION and by.kind == ABSTRACTION
    assert bx is not by
    assert s(z) is plus(bx, by)
    assert s.is_simple()


def test_mgu_abstraction_var_rejects_fg():
    assert simple_mgu(S.X, app(S.f, num(1))) is None


def test_mgu_ordinary_var_takes_fg():
    s = simple_mgu(S.x, app(S.f, num(1)))
    assert s is not None and s(S.x) is app(S.f, num(1))


def test_mgu_abstraction_var_domain_element():
    s = simple_mgu(S.X, num(1))
    assert s is not None and s(S.X) is num(1)


def test_mgu_occurs_check():
    assert simple_mgu(S.x, app(S.f, S.x)) is None


def test_mgu_clash():
    assert simple_mgu(app(S.f, num(1)), app(S.f, num(2))) is None


# ground instances

def test_ground_instances_ordinary():
    c = Clause([Literal(app(S.p, S.x), S.true(S.p))])
    got = bounded_simple_ground_instances(c, 3, [num(0), num(1)])
    assert {str(d) for d in got} == {"p(0)", "p(1)"}


def test_ground_instances_of_ground_clause():
    c = Clause([Literal(app(S.p, num(4)), S.true(S.p))])
    got = bounded_simple_ground_instances(c, 2, [num(0), num(1)])
    assert len(got) == 1 and next(iter(got)).same_as(c)


def test_ground_instances_abstraction_var_only_pure():
    c = Clause([Literal(app(S.p, S.X), S.true(S.p))])
    got = bounded_simple_ground_instances(c, 3, [num(0), app(S.f, num(0))])
    assert {str(d) for d in got} == {"p(0)"}


def test_ground_instances_uninhabited():
    c = Clause([Literal(app(S.q, S.u), S.true(S.q))])
    with pytest.raises(ValueError, match="uninhabited sort pool"):
        bounded_simple_ground_instances(c, 2, [num(0)])


# subsumption and variants

def test_subsumes_instance():
    d = Clause([Literal(app(S.p, S.x), S.true(S.p))])
    c = Clause([Literal(app(S.p, num(1)), S.true(S.p)), Literal(app(S.c), num(0))])
    assert subsumes(d, c) and not subsumes(c, d)


def test_variant_respects_kind():
    c1 = Clause([Literal(app(S.f, S.X), num(0))])
    c2 = Clause([Literal(app(S.f, fresh_var(INT, ABSTRACTION)), num(0))])
    c3 = Clause([Literal(app(S.f, S.x), num(0))])
    assert is_variant(c1, c2)
    assert not is_variant(c1, c3)


# the compiled kernel agrees with the pure one

@pytest.mark.skipif(not COMPILED, reason="compiled kernel not built")
def test_compiled_kernel_matches_pure():
    from hsp import _ckernel
    from hsp.ordering import Precedence
    rng = random.Random(7)
    key = Precedence().key
    for _ in range(2000):
        s = rand_int_term(rng, 3)
        t = rand_int_term(rng, 3)
        u1, u2 = _kernel.unify(s, t), _ckernel.unify(s, t)
        assert (u1 is None) == (u2 is None)
        if u1 is not None:
            assert _kernel.apply_bindings(u1, s) is _kernel.apply_bindings(u1, t)
            assert _ckernel.apply_bindings(u2, s) is _ckernel.apply_bindings(u2, t)
        b1, b2 = {}, {}
        assert _kernel.match(s, t, b1) == _ckernel.match(s, t, b2)
        assert _kernel.lpo_gt(s, t, key, {}) == _ckernel.lpo_gt(s, t, key, {})


def test_clause_render_and_identity():
    rng = random.Random(1)
    for _ in range(50):
        c = rand_clause(rng)
        assert c.same_as(Clause(reversed(c.literals)))
        assert isinstance(c.render(), str)


@pytest.mark.parametrize("entry", ["hsp", "hsp.kernel", "hsp.ordering"])
def test_kernel_choice_independent_of_import_order(entry):
    import importlib.util
    import os
    import subprocess
    import sys
    built = importlib.util.find_spec("hsp._ckernel") is not None
    code = f"import {entry}, hsp.kernel as k; print(k.COMPILED)"
    env = {k: v for k, v in os.environ.items() if k != "HSP_PURE_PYTHON"}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == str(built), out.stderr
    env["HSP_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "False", out.stderr
