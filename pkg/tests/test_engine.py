import time

import pytest

from hsp.abstraction import is_weakly_abstracted
from hsp.engine.auto import portfolio_configs, run_portfolio
from hsp.engine.config import Config, lia_config
from hsp.engine.loop import (ASSERTED, GBT_CERTIFIED, REFUTATION, RESOURCE_OUT, SATURATED, UNKNOWN,
                             Prover, prove)
from hsp.engine.proof import ProofError, ancestors, explain, replay
from hsp.frontend.parser import parse_file

from util import FIXTURES, problem

RECKLESS = Config(define="reckless-pre")


def load(name, cfg=None):
    cfg = cfg or Config()
    return parse_file(str(FIXTURES / name), cfg.int_vars).clauses


def run(inputs, cfg=None):
    res, prover = prove(inputs, cfg or Config())
    return res, prover


@pytest.mark.parametrize("name", ["motivating.p", "define3.p", "factoring.p",
                                  "weak_abstraction.p", "ordinary_var.p"])
def test_refutations_replay(name):
    t0 = time.monotonic()
    res, prover = run(load(name))
    assert res.verdict == REFUTATION
    assert time.monotonic() - t0 < 5
    assert replay(res.empty_id, prover.clauses, prover) == []


def test_define3_proof_uses_define_and_close():
    res, prover = run(load("define3.p"))
    rules = {prover.clauses[i].step.rule for i in ancestors(res.empty_id, prover.clauses)}
    assert {"Define", "Close"} <= rules


def test_factoring_proof_uses_ef():
    res, prover = run(load("factoring.p"))
    rules = {prover.clauses[i].step.rule for i in ancestors(res.empty_id, prover.clauses)}
    assert "EF" in rules


def test_close_only_proof_lists_core():
    inputs = problem("tff(c1, axiom, $greater(alpha, 3)).\n"
                     "tff(c2, axiom, beta = 1).\n"
                     "tff(c3, axiom, $less(alpha, 2)).\n").clauses
    res, prover = run(inputs)
    assert res.refuted
    empty = prover.clauses[res.empty_id]
    assert empty.step.rule == "Close"
    names = sorted(prover.clauses[i].step.detail.get("name")
                   for i in ancestors(res.empty_id, prover.clauses) if prover.clauses[i].step.rule == "input")
    assert names == ["c1", "c3"]


def test_explain_is_deterministic():
    a = explain(*_refute("define3.p"))
    b = explain(*_refute("define3.p"))
    assert a == b
    assert ": $false  [Close " in a[-1]


def _refute(name):
    res, prover = run(load(name))
    return res.empty_id, prover.clauses


def test_preprocess_defines_ground_terms():
    prover = Prover(load("motivating.p"), RECKLESS)
    prover.preprocess()
    rendered = {c.render() for c in prover.clauses.values()}
    assert "f(1) = #f(1)" in rendered
    assert "#f(1)<#f(1)" in rendered
    assert prover.sufficiency == GBT_CERTIFIED


def test_preprocess_pure_bg_identity():
    inputs = problem("tff(c1, axiom, $less(alpha, $sum(beta, 1))).").clauses
    prover = Prover(inputs, RECKLESS)
    prover.preprocess()
    (only,) = prover.clauses.values()
    assert only.same_as(inputs[0].clause)


def test_reckless_falls_back_outside_gbt():
    res, prover = run(load("sat_p0.p") + problem("tff(c9, axiom, q(f(X))).").clauses, RECKLESS)
    assert prover.define_mode == "standard"
    assert res.sufficiency == UNKNOWN


def test_saturation_verdicts():
    res, _ = run(load("sat_p0.p"))
    assert res.verdict == SATURATED and not res.satisfiable
    res, _ = run(load("sat_p0.p"), RECKLESS)
    assert res.verdict == SATURATED and res.satisfiable and res.sufficiency == GBT_CERTIFIED
    res, _ = run(load("sat_p0.p"), Config(assume_sufficiently_complete=True))
    assert res.satisfiable and res.sufficiency == ASSERTED


def test_resource_limits():
    res, _ = run(load("divergent.p"), Config(max_seconds=0))
    assert res.verdict == RESOURCE_OUT
    res, _ = run(load("divergent.p"), Config(max_steps=20))
    assert res.verdict == RESOURCE_OUT and res.stats.given <= 21


def test_active_clauses_are_abstracted_and_interreduced():
    for name in ("sat_p0.p", "gbt/g08_pure_fg_sat.p", "gbt/g15_choice_sat.p"):
        res, prover = run(load(name), RECKLESS)
        assert res.verdict == SATURATED
        act = list(prover.active.values())
        for c in act:
            assert is_weakly_abstracted(c)
            others = [d for d in act if d is not c]
            assert prover.simplifier.step(c, others) is None, c.render()


def test_conjecture_status():
    res, _ = run(load("ordinary_var_conj.p", Config(int_vars="ordinary")))
    assert res.refuted and res.uses_conjecture
    res, _ = run(load("define3.p"))
    assert not res.uses_conjecture


def test_lia_config_and_guard():
    cfg = lia_config()
    assert cfg.abstract_domain_elements and cfg.define == "reckless-pre" and cfg.lia
    res, prover = run(load("gbt/g05_factoring.p"), RECKLESS.with_(strict_guard=True))
    assert res.refuted and res.stats.guard_violations == 0


def test_broken_derivation_is_reported():
    res, prover = run(load("motivating.p"))
    prover.clauses[res.empty_id].step.premise_ids = (10**6,)
    with pytest.raises(ProofError):
        ancestors(res.empty_id, prover.clauses)


def _square(n):
    return n * n


def test_portfolio_picks_definitive_result():
    i, out = run_portfolio(_square, [1, 2, 3], lambda r: r == 4)
    assert (i, out) == (1, 4)
    i, out = run_portfolio(_square, [1, 2], lambda r: False)
    assert (i, out) == (0, 1)
    kinds = [c.int_vars for c in portfolio_configs(Config())]
    assert kinds == ["abstraction", "ordinary"]
