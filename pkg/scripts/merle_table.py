#!/usr/bin/env python3
"""Tabulate jacobian polygons and invariant bundles over small plane-branch
semigroups, enumerated exhaustively up to a generator bound."""

import argparse

from newtonpoly.errors import DomainError
from newtonpoly.invariants import (
    invariants_from_polygon,
    merle_polygon,
    semigroup_from_polygon,
    validate_semigroup,
)


def enumerate_semigroups(max_b0, max_last):
    for b0 in range(2, max_b0 + 1):
        for b1 in range(b0 + 1, max_last + 1):
            try:
                yield validate_semigroup([b0, b1])
            except DomainError:
                pass
            for b2 in range(b1 + 1, max_last + 1):
                try:
                    yield validate_semigroup([b0, b1, b2])
                except DomainError:
                    pass


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-b0", type=int, default=6)
    ap.add_argument("--max-last", type=int, default=24)
    args = ap.parse_args()

    header = f"{'semigroup':<16} {'nu_j':<24} {'mu':>4} {'mu^1':>4} {'theta2':>8} {'N':>3}  roundtrip"
    print(header)
    print("-" * len(header))
    for s in enumerate_semigroups(args.max_b0, args.max_last):
        j = merle_polygon(s)
        rep = invariants_from_polygon(j)
        back = semigroup_from_polygon(j)
        print(
            f"{str(s):<16} {str(j):<24} {rep.mu_n:>4} {rep.mu_n1:>4} "
            f"{str(rep.theta2):>8} {rep.determinacy:>3}  {'ok' if back == s else 'FAIL'}"
        )


if __name__ == "__main__":
    main()
