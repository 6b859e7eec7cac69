#!/usr/bin/env python3
"""Regenerate data/zeta_zeros_100.txt from mpmath (reference data only)."""
import sys
import mpmath as mp

mp.mp.dps = 45
count = int(sys.argv[1]) if len(sys.argv) > 1 else 100
print("# Ordinates of the first %d nontrivial zeros of zeta(s), 30 decimals." % count)
print("# Generated with mpmath.zetazero; re-verified by `moebius zeros --verify`.")
for k in range(1, count + 1):
    print(mp.nstr(mp.zetazero(k).imag, 33, min_fixed=-1, max_fixed=4, strip_zeros=False))
