from __future__ import annotations

from dataclasses import dataclass, field, replace

ABSTRACTION_VARS = "abstraction"
ORDINARY_VARS = "ordinary"

DEFINE_OFF = "off"
DEFINE_STANDARD = "standard"
DEFINE_RECKLESS_PRE = "reckless-pre"


@dataclass(frozen=True)
class Config:
    """Run-level settings of the prover."""

    int_vars: str = ABSTRACTION_VARS
    bg_simp: str = "cautious"            # cautious | aggressive | off
    define: str = DEFINE_STANDARD        # off | standard | reckless-pre
    close_period: int = 10
    max_seconds: float | None = 30.0
    max_steps: int | None = None
    max_clauses: int | None = 200_000
    age_ratio: int = 5                   # every n-th given clause is the oldest
    selection: bool = False              # select the heaviest negative FG literal
    assume_sufficiently_complete: bool = False
    abstract_domain_elements: bool = False
    precedence: tuple = field(default_factory=tuple)
    lk_monitor: bool = False
    # LIA over the integers: BG variables allowed in the restricted shapes
    lia: bool = False
    # raise instead of counting when a generated BG term escapes the input bound
    strict_guard: bool = False

    def with_(self, **kw) -> "Config":
        return replace(self, **kw)


def lia_config(base: Config | None = None) -> Config:
    """Settings for saturation of LIA problems over the integers."""
    base = base or Config()
    return base.with_(abstract_domain_elements=True, define=DEFINE_RECKLESS_PRE,
                     lk_monitor=True, lia=True)
