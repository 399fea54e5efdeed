"""Command line driver: `hsp [options] FILE` and `hsp lia-saturate [options] FILE`."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from ..bgsolver.lk import FragmentError, check_fragment
from ..engine.auto import portfolio_configs, run_portfolio
from ..engine.config import Config, lia_config
from ..engine.loop import REFUTATION, SATURATED, Prover
from ..engine.proof import explain
from .parser import ParseError, parse_file

THEOREM = "Theorem"
UNSATISFIABLE = "Unsatisfiable"
SATISFIABLE = "Satisfiable"
UNKNOWN = "Unknown"
TIMEOUT = "Timeout"
GAVE_UP = "GaveUp"
DEFINITIVE = (THEOREM, UNSATISFIABLE, SATISFIABLE)


class InputError(Exception):
    pass


@dataclass
class Outcome:
    status: str
    proof: list = field(default_factory=list)
    message: str = ""

    @property
    def exit_code(self) -> int:
        return 0 if self.status in DEFINITIVE else 1


def status_line(status: str, path: str) -> str:
    return f"% SZS status {status} for {path}"


def solve(path: str, cfg: Config, include_path=(), want_proof: bool = False) -> Outcome:
    """Parse and run one problem. Raises InputError on unreadable or ill-formed input."""
    try:
        problem = parse_file(path, cfg.int_vars, include_path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    except (ParseError, TypeError, ValueError) as e:
        raise InputError(str(e)) from e
    if cfg.lia:
        try:
            check_fragment([ic.clause for ic in problem.clauses])
        except FragmentError as e:
            return Outcome(GAVE_UP, message=str(e))
    prover = Prover(problem.clauses, cfg)
    res = prover.run()
    if res.verdict == REFUTATION:
        status = THEOREM if res.uses_conjecture else UNSATISFIABLE
        lines = explain(res.empty_id, prover.clauses) if want_proof else []
        return Outcome(status, lines)
    if res.verdict == SATURATED:
        return Outcome(SATISFIABLE if res.satisfiable else UNKNOWN)
    return Outcome(TIMEOUT if res.reason == "timeout" else GAVE_UP, message=res.reason)


def _portfolio_job(job) -> Outcome:
    path, cfg, include_path, want_proof = job
    try:
        return solve(path, cfg, include_path, want_proof)
    except InputError as e:
        return Outcome(GAVE_UP, message=str(e))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hsp", description="Hierarchic superposition prover for "
                                "first-order logic modulo linear integer arithmetic.")
    p.add_argument("file")
    p.add_argument("--int-vars", choices=("abstraction", "ordinary"), default="abstraction",
                   help="kind of unmarked integer variables")
    p.add_argument("--bg-simp", choices=("cautious", "aggressive", "off"), default="cautious")
    p.add_argument("--define", choices=("off", "standard", "reckless-pre"), default="standard")
    p.add_argument("--timeout", type=float, default=60.0, metavar="SECS")
    p.add_argument("--close-period", type=int, default=10, metavar="N")
    p.add_argument("--max-steps", type=int, default=None, metavar="N")
    p.add_argument("--selection", action="store_true", help="select the heaviest negative FG literal")
    p.add_argument("--assume-sufficiently-complete", action="store_true")
    p.add_argument("--precedence", default="", metavar="F,G,..",
                   help="FG operators ranked highest, in decreasing order")
    p.add_argument("--include-path", action="append", default=[], metavar="DIR")
    p.add_argument("--proof", action="store_true", help="print the refutation")
    p.add_argument("--auto", action="store_true", help="run both variable kinds in parallel")
    return p


def config_from_args(args, lia: bool = False) -> Config:
    if args.timeout < 0 or args.close_period < 1:
        raise InputError("--timeout must be >= 0 and --close-period >= 1")
    cfg = Config(
        int_vars=args.int_vars, bg_simp=args.bg_simp, define=args.define,
        close_period=args.close_period, max_seconds=args.timeout, max_steps=args.max_steps,
        selection=args.selection, assume_sufficiently_complete=args.assume_sufficiently_complete,
        precedence=tuple(x.strip() for x in args.precedence.split(",") if x.strip()))
    return lia_config(cfg) if lia else cfg


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    lia = bool(argv) and argv[0] == "lia-saturate"
    if lia:
        argv = argv[1:]
    parser = build_parser()
    if lia:
        parser.prog = "hsp lia-saturate"
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = config_from_args(args, lia)
        if args.auto:
            jobs = [(args.file, c, args.include_path, args.proof) for c in portfolio_configs(cfg)]
            # input errors surface in the parent before any worker starts
            parse_file(args.file, cfg.int_vars, args.include_path)
            _, out = run_portfolio(_portfolio_job, jobs, lambda o: o.status in DEFINITIVE)
        else:
            out = solve(args.file, cfg, args.include_path, args.proof)
    except InputError as e:
        print(f"hsp: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"hsp: cannot read {args.file}: {e.strerror or e}", file=sys.stderr)
        return 2
    except (ParseError, TypeError, ValueError) as e:
        print(f"hsp: {e}", file=sys.stderr)
        return 2
    print(status_line(out.status, args.file))
    if out.message and out.status == GAVE_UP:
        print(f"hsp: {out.message}", file=sys.stderr)
    if args.proof and out.proof:
        print(f"% SZS output start Refutation for {args.file}")
        for line in out.proof:
            print(line)
        print(f"% SZS output end Refutation for {args.file}")
    sys.stdout.flush()
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
