#!/usr/bin/env python3
"""Frobenius flatness: Jacobian verdict next to the pushforward-module oracle."""

import argparse

from ringcheck.lang import parse_program
from ringcheck.ringstruct import frobenius_flat

RINGS = [
    "GF(2)[]", "GF(3)[x]", "GF(2)[x,y]", "GF(5)[x,y]",
    "GF(3)[x,y]/(y^2 - x^3)", "GF(5)[x,y]/(y^2 - x^3 + x)",
    "GF(2)[x]/(x^2)", "GF(3)[x,y]/(x*y)", "GF(5)[x,y]/(y^2 - x^2 - x^3)",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("rings", nargs="*", help="ring expressions, e.g. 'GF(3)[x,y]/(x*y)'")
    args = ap.parse_args()
    print(f"{'ring':34s} {'jacobian':10s} {'oracle':10s} pruned F_*A")
    for text in args.rings or RINGS:
        A = parse_program(f"ring R = {text};").rings["R"]
        rep = frobenius_flat(A, oracle=True)
        gens = rep.oracle_detail.get("pruned_generators", "-")
        print(f"{text:34s} {str(rep.verdict):10s} {str(rep.oracle):10s} {gens}")


if __name__ == "__main__":
    main()
