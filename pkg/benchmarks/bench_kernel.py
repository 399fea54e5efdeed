"""Compare the compiled and pure-Python kernels on random term pairs.

    python benchmarks/bench_kernel.py [--pairs N] [--repeat R] [--seed S]
"""

import argparse
import random
import time

from hsp import _kernel
from hsp.core.signature import Signature
from hsp.core.terms import ABSTRACTION, INT, ORDINARY, SUM, app, mk_var, num
from hsp.ordering import Ordering

try:
    from hsp import _ckernel
except ImportError:
    _ckernel = None


def make_terms(rng, n):
    sig = Signature()
    f = sig.add_function("f", [INT], INT)
    g = sig.add_function("g", [INT, INT], INT)
    alpha = sig.add_parameter("alpha")
    vs = [mk_var(INT, ABSTRACTION, "X"), mk_var(INT, ABSTRACTION, "Y"),
          mk_var(INT, ORDINARY, "x"), mk_var(INT, ORDINARY, "y")]

    def term(depth):
        if depth == 0 or rng.random() < 0.25:
            return rng.choice([lambda: num(rng.randint(-3, 3)), lambda: app(alpha),
                               lambda: rng.choice(vs)])()
        op = rng.choice(["f", "g", "sum"])
        if op == "f":
            return app(f, term(depth - 1))
        if op == "g":
            return app(g, term(depth - 1), term(depth - 1))
        return app(SUM, term(depth - 1), term(depth - 1))

    return [(term(4), term(4)) for _ in range(n)]


def bench(mod, pairs, repeat, key):
    out = {}
    t0 = time.perf_counter()
    for _ in range(repeat):
        for s, t in pairs:
            mod.unify(s, t)
    out["unify"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for _ in range(repeat):
        for s, t in pairs:
            mod.match(s, t, {})
    out["match"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for _ in range(repeat):
        cache = {}
        for s, t in pairs:
            mod.lpo_gt(s, t, key, cache)
    out["lpo_gt"] = time.perf_counter() - t0
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    pairs = make_terms(random.Random(args.seed), args.pairs)
    key = Ordering().precedence.key
    pure = bench(_kernel, pairs, args.repeat, key)
    print(f"{'op':8} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    comp = bench(_ckernel, pairs, args.repeat, key) if _ckernel else None
    for op, tp in pure.items():
        if comp:
            tc = comp[op]
            print(f"{op:8} {tp:10.3f} {tc:13.3f} {tp / tc:7.1f}x")
        else:
            print(f"{op:8} {tp:10.3f} {'n/a':>13} {'':>8}")
    if not comp:
        print("compiled kernel not built; install Cython and reinstall to compare")


if __name__ == "__main__":
    main()
