"""Regenerate the shipped Weber polynomial files from q-expansions.

usage: python3 scripts/gen_weber.py [--out DIR] [degrees...]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from pi_prover.modeq import weber_polynomial_qseries
from pi_prover.polyring import format_poly_file, parity_split

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "pi_prover" / "data"

Q17 = "(u^18+v^18) + 17(u^16 v^10+u^10 v^16) + 119(u^12 v^6+u^6 v^12) + 272(u^8 v^2+u^2 v^8)"
R17 = "-u^16 v^16 - 34(u^14 v^2+u^2 v^14) + 34 u^12 v^12 + 340 u^8 v^8 + 544 u^4 v^4 - 256"


def comments(d, poly):
    lines = [
        f"Weber modular polynomial of degree {d} for Weber's f: Phi(f(tau), f({d} tau)) = 0.",
        "Generated by scripts/gen_weber.py as the integer kernel of the q-expansion system;",
        "validated with `pi-prover validate-modeq`.",
    ]
    if d == 17:
        split = parity_split(poly)
        lines += [
            "provenance: parity split Phi = Q + u*v*R with",
            f"  Q = {Q17}",
            f"  R = {R17}",
            "The sign of the odd-odd block is fixed by f; Q - u*v*R is the image under",
            "u -> -u and has the same squared transform P.",
        ]
        assert split.q_part.coefficient(16, 10) == 17 and split.r_part.coefficient(0, 0) == 256
    return lines


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("degrees", type=int, nargs="*", default=[5, 7, 11, 17, 41])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for d in args.degrees:
        poly = weber_polynomial_qseries(d)
        path = args.out / f"weber_{d}.txt"
        path.write_text(format_poly_file(poly, d, "raw24", comments(d, poly)), encoding="utf-8")
        print(f"wrote {path} ({len(poly)} terms)")


if __name__ == "__main__":
    main()
