#!/usr/bin/env python3
"""Survey which tau functionals satisfy the carry inequality, including the
floor functional at m = 2 and a few custom candidates, and compare the
descent bound with the brute-force minimum over S wherever the contract holds."""

import argparse

from digitbounds.descent import (
    CEIL_DIV_M,
    FLOOR_DIV_M_MINUS_1,
    TauFunctional,
    check_tau_contract,
    contexts,
    min_tau_over_S,
    theorem1_bound,
)

CANDIDATES = [
    CEIL_DIV_M,
    FLOOR_DIV_M_MINUS_1,
    TauFunctional.custom(lambda xs, m: sum(xs), "coordinate-sum"),
    TauFunctional.custom(lambda xs, m: sum(1 for x in xs if x), "support-size"),
    TauFunctional.custom(lambda xs, m: max(xs) // m, "max-over-m"),
    TauFunctional.custom(lambda xs, m: sum(-(-x // (m - 1)) for x in xs), "ceil-over-m-minus-1"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=5)
    ap.add_argument("--k-max", type=int, default=3)
    ap.add_argument("--sample-bound", type=int, default=10)
    args = ap.parse_args()

    for tau in CANDIDATES:
        print(f"== {tau.name}")
        for m in range(2, args.m_max + 1):
            for k in range(1, args.k_max + 1):
                ctxs = contexts(m, k)
                res = check_tau_contract(tau, ctxs[0], args.sample_bound)
                if not res.holds:
                    print(f"  m={m} k={k}: contract fails, {res.counterexample}")
                    continue
                gaps = []
                for ctx in ctxs:
                    bound = theorem1_bound(tau, ctx)
                    brute = min_tau_over_S(tau, ctx, 2 * m)
                    if brute != bound:
                        gaps.append((ctx.d, brute, bound))
                print(f"  m={m} k={k}: contract holds; {len(ctxs)} divisors, bound mismatches {gaps}")


if __name__ == "__main__":
    main()
