#!/usr/bin/env python3
"""Tabulate ordinates of the first N nontrivial zeros of the Riemann zeta function.

Usage: gen_zeta_zeros.py N OUT

Needs python-flint (Arb). A few ordinates are cross-checked against mpmath
when it is installed.
"""
import sys

import flint


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]
    flint.ctx.prec = 96
    zeros = flint.acb.zeta_zeros(1, count)
    ords = [z.imag for z in zeros]
    for z in zeros:
        assert z.real == flint.arb(0.5), z
    try:
        import mpmath as mp

        mp.mp.dps = 25
        for n in (1, 2, 100, count):
            ref = mp.zetazero(n).imag
            mid = mp.mpf(ords[n - 1].mid().str(25, radius=False))
            assert abs(mid - ref) < mp.mpf("1e-15"), (n, mid, ref)
    except ImportError:
        pass
    with open(out, "w") as fh:
        fh.write(f"# imaginary parts of the first {count} nontrivial zeros of zeta(s)\n")
        fh.write("# computed with Arb (python-flint acb.zeta_zeros), 18 significant digits\n")
        for t in ords:
            fh.write(t.mid().str(18, radius=False) + "\n")


if __name__ == "__main__":
    main()
