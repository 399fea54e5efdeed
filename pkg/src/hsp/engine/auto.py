"""Running several configurations side by side and keeping the first answer."""

from __future__ import annotations

import multiprocessing as mp

from .config import ABSTRACTION_VARS, ORDINARY_VARS, Config


def portfolio_configs(base: Config) -> list[Config]:
    """The default slices: both kinds of input BG variables."""
    return [base.with_(int_vars=ABSTRACTION_VARS), base.with_(int_vars=ORDINARY_VARS)]


def run_portfolio(worker, jobs: list, definitive) -> tuple[int, object]:
    """Run worker(job) for each job in its own process.

    Returns (index, result) of the first result for which definitive(result)
    holds, or of the first job when none is definitive. Remaining workers
    are terminated as soon as an answer is accepted.
    """
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    results: dict[int, object] = {}
    with ctx.Pool(processes=len(jobs)) as pool:
        it = pool.imap_unordered(_call, [(worker, i, job) for i, job in enumerate(jobs)])
        for i, res in it:
            results[i] = res
            if definitive(res):
                pool.terminate()
                return i, res
    return 0, results[0]


def _call(arg):
    worker, i, job = arg
    return i, worker(job)
