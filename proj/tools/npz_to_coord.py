#!/usr/bin/env python3
"""Convert a scipy linprog benchmark .npz (A_ub / A_eq) into the coordinate format.

Rows are written as A_ub followed by A_eq. Values are emitted through repr()
so the decimal literal of the source file is recovered exactly.
"""
import argparse
import sys

import numpy as np


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("npz")
    ap.add_argument("-o", "--out", default="-")
    ap.add_argument("--name", default=None)
    args = ap.parse_args()

    data = np.load(args.npz, allow_pickle=True)
    blocks = [data[k] for k in ("A_ub", "A_eq") if data[k].size]
    a = np.vstack(blocks) if blocks else np.zeros((0, 0))
    rows, cols = np.nonzero(a)

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    name = args.name or args.npz.rsplit("/", 1)[-1].removesuffix(".npz")
    out.write(f"% {name}: A_ub rows then A_eq rows\n")
    out.write(f"{a.shape[0]} {a.shape[1]} {len(rows)}\n")
    for i, j in zip(rows, cols):
        out.write(f"{i + 1} {j + 1} {repr(float(a[i, j]))}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
