#!/usr/bin/env python3
"""Regenerate crates/core/data/zeta_zeros.txt.

Writes the imaginary parts of the first COUNT nontrivial zeros of the
Riemann zeta function, computed with mpmath.zetazero at 30 digits and
rounded to 12 decimals.

    python3 scripts/prepare_zeros.py [COUNT]
"""
import pathlib
import sys

import mpmath

COUNT = int(sys.argv[1]) if len(sys.argv) > 1 else 100
mpmath.mp.dps = 30

out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/zeta_zeros.txt"
lines = [
    f"# Imaginary parts of the first {COUNT} nontrivial zeros of zeta(s).",
    f"# Source: mpmath {mpmath.__version__} zetazero(n), mp.dps=30, rounded to 12 decimals.",
    "# Regenerate with scripts/prepare_zeros.py.",
]
for n in range(1, COUNT + 1):
    gamma = mpmath.zetazero(n).imag
    lines.append(mpmath.nstr(gamma, 12 + len(str(int(gamma))), strip_zeros=False))
out.write_text("\n".join(lines) + "\n")
print(f"wrote {COUNT} zeros to {out}")
