"""Derivation records, proof extraction, rendering and replay."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..abstraction import weakly_abstract
from ..calculus import rules
from ..calculus.close import close_check
from ..calculus.define import define
from ..core.clauses import Clause
from ..core.terms import ABSTRACTION, render
from ..core.unify import Substitution, is_variant

INPUT = "input"
ABSTR = "abstr"
SIMP = "Simp"
DEFINE = "Define"
CLOSE = "Close"


@dataclass
class ProofStep:
    clause_id: int
    rule: str
    premise_ids: tuple = ()
    subst: str = ""
    detail: dict = field(default_factory=dict)


class ProofError(RuntimeError):
    pass


def render_subst(sigma: Substitution | None) -> str:
    """Deterministic rendering with variables named by first appearance."""
    if sigma is None or not len(sigma):
        return ""
    names: dict = {}
    counts = {"X": 0, "x": 0, "u": 0}

    def name(v):
        if v not in names:
            base = "X" if v.kind == ABSTRACTION else ("x" if v.sort.bg else "u")
            counts[base] += 1
            names[v] = f"{base}{counts[base]}"
        return names[v]

    for v, t in sigma.items():
        name(v)
        for w in t.vars:
            name(w)
    return "[" + ", ".join(f"{names[v]}->{render(t, names)}" for v, t in sigma.items()) + "]"


def ancestors(root: int, clauses: dict) -> list[int]:
    """Ids of root's derivation, premises before conclusions."""
    order: list[int] = []
    state: dict[int, int] = {}
    stack = [(root, False)]
    while stack:
        cid, done = stack.pop()
        if done:
            state[cid] = 2
            order.append(cid)
            continue
        if state.get(cid) == 2:
            continue
        if state.get(cid) == 1:
            raise ProofError(f"cycle through clause {cid}")
        c = clauses.get(cid)
        if c is None or c.step is None:
            raise ProofError(f"clause {cid} has no derivation record")
        state[cid] = 1
        stack.append((cid, True))
        for p in reversed(c.step.premise_ids):
            if state.get(p) != 2:
                stack.append((p, False))
    return order


def explain(root: int, clauses: dict) -> list[str]:
    """One line per step of the derivation of clause `root`."""
    lines = []
    for cid in ancestors(root, clauses):
        c = clauses[cid]
        st = c.step
        if st.rule == INPUT:
            just = f"input {st.detail.get('name', '')}".rstrip()
            role = st.detail.get("role")
            if role:
                just += f", {role}"
        else:
            rule = st.rule if st.rule != SIMP else f"Simp/{st.detail['variant']}"
            just = f"{rule} " + ",".join(f"c{p}" for p in st.premise_ids)
            if st.subst:
                just += f" {st.subst}"
        lines.append(f"c{cid}: {c.render()}  [{just}]")
    return lines


def _any_variant(target: Clause, candidates) -> bool:
    return any(d is not None and is_variant(target, d) for d in candidates)


def replay_step(c: Clause, clauses: dict, prover) -> bool:
    """Re-run the rule that produced c and check that c comes out again."""
    st = c.step
    prem = [clauses[p] for p in st.premise_ids]
    calc = prover.calc
    if st.rule == INPUT:
        return True
    if st.rule == ABSTR:
        return is_variant(c, weakly_abstract(prem[0], calc.abstract_domain_elements))
    if st.rule == rules.ER:
        return _any_variant(c, (i.conclusion for i in rules.equality_resolution(prem[0], calc)))
    if st.rule == rules.EF:
        return _any_variant(c, (i.conclusion for i in rules.equality_factoring(prem[0], calc)))
    if st.rule == rules.NEG_SUP:
        return _any_variant(c, (i.conclusion for i in rules.negative_superposition(prem[0], prem[1], calc)))
    if st.rule == rules.POS_SUP:
        return _any_variant(c, (i.conclusion for i in rules.positive_superposition(prem[0], prem[1], calc)))
    if st.rule == DEFINE:
        r = define(prem[0], reckless=st.detail.get("reckless", False), ordering=calc.ordering,
                   abstract_domain_elements=calc.abstract_domain_elements)
        if r is None:
            return False
        return is_variant(c, r.definition if st.detail["part"] == "definition" else r.replacement)
    if st.rule == SIMP:
        r = prover.simplifier.replay(st.detail["variant"], prem[0], prem[1:])
        return r is not None and bool(r.clauses) and is_variant(c, r.clauses[0])
    if st.rule == CLOSE:
        return c.is_empty and close_check(prem).unsat
    raise ProofError(f"unknown rule {st.rule}")


def replay(root: int, clauses: dict, prover) -> list[int]:
    """Ids of steps that fail to replay (empty when the proof checks)."""
    return [cid for cid in ancestors(root, clauses) if not replay_step(clauses[cid], clauses, prover)]
