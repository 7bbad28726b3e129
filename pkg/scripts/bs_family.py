#!/usr/bin/env python3
"""Walk the Briancon-Speder family and report how the special-fibre jacobian
polygon sits above the generic one while lengths and heights stay rigid.

Optionally writes an SVG overlay of the two polygons for one parameter."""

import argparse

from newtonpoly.errors import ParameterOutOfRange
from newtonpoly.invariants import briancon_speder_polygons
from newtonpoly.polygon import dominates
from newtonpoly.render import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-beta", type=int, default=22)
    ap.add_argument("--svg", metavar="BETA", type=int, default=None,
                    help="write bs_<beta>.svg overlaying both polygons")
    args = ap.parse_args()

    print(f"{'beta':>4} {'alpha':>5} {'special':<28} {'generic':<16} "
          f"{'len':>5} {'h0':>3} {'ht':>3} dom")
    for beta in range(4, args.max_beta + 1):
        try:
            special, generic = briancon_speder_polygons(beta)
        except ParameterOutOfRange:
            continue
        alpha = (2 * beta + 1) // 3
        dom = dominates(special.view, generic.view)
        print(f"{beta:>4} {alpha:>5} {str(special):<28} {str(generic):<16} "
              f"{special.length():>5} {special.height():>3} {generic.height():>3} "
              f"{'yes' if dom else 'NO'}")

    if args.svg is not None:
        special, generic = briancon_speder_polygons(args.svg)
        path = f"bs_{args.svg}.svg"
        with open(path, "w") as fh:
            fh.write(render_svg([special.view, generic.view],
                                labels=["special", "generic"], shade_between=True))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
