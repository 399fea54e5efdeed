"""The given-clause saturation loop."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from ..abstraction import bg_subterms, is_gbt, unabstract, weakly_abstract
from ..bgsolver.lk import FragmentError, lk_decide, lk_transform
from ..calculus import rules
from ..calculus.close import CloseChecker
from ..calculus.define import DefinitionTable, define
from ..calculus.rules import Calculus
from ..calculus.simp import Simplifier
from ..core.clauses import Clause, weight
from ..core.terms import subterms
from ..ordering import Cmp, Ordering, Precedence, fin_compare
from .config import DEFINE_OFF, DEFINE_RECKLESS_PRE, DEFINE_STANDARD, Config
from .proof import ABSTR, CLOSE, DEFINE, INPUT, SIMP, ProofStep, render_subst

REFUTATION = "Refutation"
SATURATED = "Saturated"
RESOURCE_OUT = "ResourceOut"

GBT_CERTIFIED = "gbt-certified"
ASSERTED = "asserted"
UNKNOWN = "unknown"


def _bg_sorted_fg_ground(c: Clause) -> bool:
    """Every term headed by a BG-sorted FG operator is ground after unabstraction."""
    for t in unabstract(c).terms():
        for s in subterms(t):
            if not s.is_var and not s.op.bg and s.sort.bg and not s.ground:
                return False
    return True


class GuardViolation(AssertionError):
    pass


@dataclass
class InputClause:
    clause: Clause
    name: str = ""
    role: str = "axiom"


@dataclass
class Stats:
    given: int = 0
    generated: int = 0
    simplified: int = 0
    deleted: int = 0
    close_calls: int = 0
    defines: int = 0
    guard_violations: int = 0
    lk_checks: int = 0
    lk_disagreements: int = 0
    seconds: float = 0.0


@dataclass
class ProverResult:
    verdict: str
    sufficiency: str = UNKNOWN
    empty_id: int | None = None
    reason: str = ""
    stats: Stats = field(default_factory=Stats)
    uses_conjecture: bool = False

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTATION

    @property
    def satisfiable(self) -> bool:
        return self.verdict == SATURATED and self.sufficiency in (GBT_CERTIFIED, ASSERTED)


class _Refuted(Exception):
    def __init__(self, cid: int):
        self.cid = cid


class Prover:
    """One saturation run over a fixed clause set."""

    def __init__(self, inputs, cfg: Config | None = None):
        self.cfg = cfg or Config()
        self.ordering = Ordering(Precedence(self.cfg.precedence))
        self.calc = Calculus(self.ordering, self.cfg.abstract_domain_elements)
        self.simplifier = Simplifier(self.ordering, self.cfg.bg_simp, self.cfg.abstract_domain_elements)
        self.closer = CloseChecker()
        self.table = DefinitionTable()
        self.stats = Stats()
        self.clauses: dict[int, Clause] = {}
        self.active: dict[int, Clause] = {}
        self.passive_w: list = []
        self.passive_a: list = []
        self.in_passive: set[int] = set()
        self.accumulator: dict[str, Clause] = {}
        self._acc_dirty = False
        self._close_pending = False
        self._since_close = 0
        self._next_id = 1
        self.sufficiency = ASSERTED if self.cfg.assume_sufficiently_complete else UNKNOWN
        self.define_mode = self.cfg.define
        self.input_bg_terms: list = []
        self._bg_term_set: set = set()
        self.inputs = [x if isinstance(x, InputClause) else InputClause(x) for x in inputs]
        self._start = 0.0

    # bookkeeping
    def _register(self, c: Clause, rule: str, premises=(), sigma=None, **detail) -> Clause:
        c = Clause(c.literals, self._select(c))
        c.id = self._next_id
        self._next_id += 1
        c.step = ProofStep(c.id, rule, tuple(p.id for p in premises), render_subst(sigma), detail)
        self.clauses[c.id] = c
        return c

    def _select(self, c: Clause) -> frozenset:
        if not self.cfg.selection:
            return frozenset()
        best = None
        for i, lit in enumerate(c.literals):
            if lit.positive or lit.is_bg:
                continue
            w = lit.lhs.size + lit.rhs.size
            if best is None or w > best[0]:
                best = (w, i)
        return frozenset() if best is None else frozenset((best[1],))

    def _push(self, c: Clause):
        if c.is_empty:
            raise _Refuted(c.id)
        self._guard(c)
        heapq.heappush(self.passive_w, (weight(c), c.id))
        heapq.heappush(self.passive_a, c.id)
        self.in_passive.add(c.id)
        if c.is_bg:
            self._accumulate(c)

    def _accumulate(self, c: Clause):
        key = c.render(canonical=True)
        if key not in self.accumulator:
            self.accumulator[key] = c
            self._acc_dirty = True
            if c.is_ground and len(c) == 1:
                self._close_pending = True

    def _pop(self) -> Clause | None:
        use_age = self.cfg.age_ratio > 0 and self.stats.given % self.cfg.age_ratio == self.cfg.age_ratio - 1
        heaps = (self.passive_a, self.passive_w) if use_age else (self.passive_w, self.passive_a)
        h = heaps[0]
        while h:
            item = heapq.heappop(h)
            cid = item if isinstance(item, int) else item[1]
            if cid in self.in_passive:
                self.in_passive.discard(cid)
                return self.clauses[cid]
        return None

    # resources
    def _elapsed(self) -> float:
        return time.monotonic() - self._start

    def _out_of_resources(self) -> str | None:
        cfg = self.cfg
        if cfg.max_seconds is not None and self._elapsed() >= cfg.max_seconds:
            return "timeout"
        if cfg.max_steps is not None and self.stats.given >= cfg.max_steps:
            return "steps"
        if cfg.max_clauses is not None and len(self.clauses) >= cfg.max_clauses:
            return "clauses"
        return None

    # the bounded BG term guard of the ground fragment
    def _guard(self, c: Clause):
        if self.sufficiency != GBT_CERTIFIED or not self.input_bg_terms:
            return
        for s in bg_subterms(unabstract(c)):
            if not s.ground or s.sort.name != "$int":
                continue
            if s in self._bg_term_set:
                continue
            if not any(fin_compare(b, s) in (Cmp.GT, Cmp.EQ) for b in self.input_bg_terms):
                self.stats.guard_violations += 1
                if self.cfg.strict_guard:
                    raise GuardViolation(f"BG term {s} of clause c{c.id} exceeds the input bound")
                return

    # phases
    def preprocess(self):
        """Register and abstract the input, then run the reckless pre-derivation."""
        work = []
        for inp in self.inputs:
            c = self._register(inp.clause, INPUT, name=inp.name, role=inp.role)
            a = weakly_abstract(c, self.cfg.abstract_domain_elements)
            if a is not c:
                a = self._register(a, ABSTR, (c,))
            work.append(a)
        if self.define_mode == DEFINE_RECKLESS_PRE:
            eligible = all(_bg_sorted_fg_ground(c) for c in work) if self.cfg.lia \
                else all(is_gbt(c) for c in work)
            if eligible:
                work = self._pre_derivation(work)
                self.simplifier.suitable_only = True
                self.define_mode = DEFINE_OFF
                if self.cfg.lia:
                    self.sufficiency = ASSERTED
                else:
                    self.sufficiency = GBT_CERTIFIED
                    terms = {}
                    for c in work:
                        for s in bg_subterms(unabstract(c)):
                            if s.ground:
                                terms[s] = None
                    self.input_bg_terms = list(terms)
                    self._bg_term_set = set(terms)
            else:
                self.define_mode = DEFINE_STANDARD
        for c in work:
            self._push(c)

    def _pre_derivation(self, clauses: list) -> list:
        out = []
        work = list(reversed(clauses))
        while work:
            c = work.pop()
            r = define(c, self.table, reckless=True, ordering=self.ordering,
                       abstract_domain_elements=self.cfg.abstract_domain_elements)
            if r is None:
                out.append(c)
                continue
            self.stats.defines += 1
            d = self._register(r.definition, DEFINE, (c,), part="definition", reckless=True)
            e = self._register(r.replacement, DEFINE, (c,), part="replacement", reckless=True)
            work.append(d)
            work.append(e)
        return out

    def _close(self) -> bool:
        self._close_pending = False
        self._since_close = 0
        if not self._acc_dirty:
            return False
        self._acc_dirty = False
        self.stats.close_calls += 1
        acc = list(self.accumulator.values())
        res = self.closer.check(acc)
        if self.cfg.lk_monitor:
            self._lk_monitor(acc, res.unsat)
        if res.unsat:
            e = self._register(Clause([]), CLOSE, tuple(res.core))
            raise _Refuted(e.id)
        return False

    def _lk_monitor(self, acc, unsat: bool):
        try:
            n = lk_transform([unabstract(c) for c in acc])
            verdict = not lk_decide(n)
        except (FragmentError, ValueError):
            return
        self.stats.lk_checks += 1
        if verdict != unsat:
            self.stats.lk_disagreements += 1

    def _forward(self, c: Clause) -> Clause | None:
        trace = self.simplifier.simplify(c, list(self.active.values()), self._units())
        cur = c
        for _, r in trace.steps:
            if not r.clauses:
                self.stats.deleted += 1
                return None
            cur = self._register(r.clauses[0], SIMP, (cur,) + tuple(r.premises), variant=r.rule)
            self.stats.simplified += 1
            self._guard(cur)
            if cur.is_empty:
                raise _Refuted(cur.id)
        return cur

    def _units(self):
        return [a for a in self.active.values() if len(a) == 1 and a[0].positive]

    def _backward(self, given: Clause):
        s = self.simplifier
        unit = len(given) == 1 and given[0].positive
        for aid, a in list(self.active.items()):
            if len(given) <= len(a) and s.subsumed(a, (given,)) is not None:
                del self.active[aid]
                self.stats.deleted += 1
                continue
            if unit:
                r = s.demodulate_with(a, given)
                if r is not None:
                    del self.active[aid]
                    d = self._register(r.clauses[0], SIMP, (a, given), variant=r.rule)
                    self.stats.simplified += 1
                    self._push(d)

    def _lazy_define(self) -> bool:
        """Name ground BG-sorted FG terms of active clauses; True if anything changed."""
        changed = False
        for aid, a in list(self.active.items()):
            r = define(a, self.table, reckless=False, ordering=self.ordering,
                       abstract_domain_elements=self.cfg.abstract_domain_elements)
            if r is None:
                continue
            self.stats.defines += 1
            del self.active[aid]
            d = self._register(r.definition, DEFINE, (a,), part="definition", reckless=False)
            e = self._register(r.replacement, DEFINE, (a,), part="replacement", reckless=False)
            self._push(d)
            self._push(e)
            changed = True
        return changed

    def saturate(self) -> ProverResult:
        cfg = self.cfg
        while True:
            why = self._out_of_resources()
            if why:
                return self._result(RESOURCE_OUT, reason=why)
            if self._close_pending or self._since_close >= cfg.close_period:
                self._close()
            given = self._pop()
            if given is None:
                self._close()
                if self.define_mode == DEFINE_STANDARD and self._lazy_define():
                    continue
                return self._result(SATURATED)
            given = self._forward(given)
            if given is None:
                continue
            self.stats.given += 1
            self._since_close += 1
            if given.is_bg:
                self._accumulate(given)
            self._backward(given)
            self.active[given.id] = given
            for inf in rules.generate(given, list(self.active.values()), self.calc):
                concl = inf.conclusion
                if self.simplifier.is_tautology(concl):
                    continue
                self.stats.generated += 1
                c = self._register(concl, inf.rule, inf.premises, inf.sigma)
                self._push(c)

    def run(self) -> ProverResult:
        self._start = time.monotonic()
        try:
            why = self._out_of_resources()
            if why:
                return self._result(RESOURCE_OUT, reason=why)
            self.preprocess()
            return self.saturate()
        except _Refuted as r:
            return self._result(REFUTATION, empty_id=r.cid)

    def _result(self, verdict: str, empty_id=None, reason: str = "") -> ProverResult:
        self.stats.seconds = self._elapsed()
        res = ProverResult(verdict, self.sufficiency, empty_id, reason, self.stats)
        if empty_id is not None:
            from .proof import ancestors
            res.uses_conjecture = any(
                self.clauses[i].step.rule == INPUT
                and self.clauses[i].step.detail.get("role") == "negated_conjecture"
                for i in ancestors(empty_id, self.clauses))
        return res


def prove(clauses, cfg: Config | None = None) -> tuple[ProverResult, Prover]:
    p = Prover(clauses, cfg)
    return p.run(), p
