# app/scripts/convergence_study.py
"""Scarto massimo tra assemblaggio esatto e in quadratura al variare dell'ordine radiale.

    python -m app.scripts.convergence_study --caps 16 --orders 8,16,32,64
"""
import argparse
import sys

import numpy as np

from app.bergman.basis import Truncation
from app.bergman.parser import parse_symbol
from app.bergman.toeplitz import assemble
from app.config import PHI_TEXT, PSI_TEXT

CORPUS = [
    PHI_TEXT,
    PSI_TEXT,
    "1 - z1*conj(z1)",
    "z1^3*conj(z1)",
    "radial(z1; [0,1/3]: 1, [1/3,1]: 3/2 - 3/2*r)*z1",
]


def study(caps: int, orders: list[int], corpus: list[str] = CORPUS) -> dict[str, list[float]]:
    t = Truncation((caps,))
    out = {}
    for text in corpus:
        f = parse_symbol(text, 1)
        exact = assemble(f, t, "exact").entries
        out[text] = [float(np.max(np.abs(assemble(f, t, "quadrature", qr=q).entries - exact))) for q in orders]
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--caps", type=int, default=16)
    ap.add_argument("--orders", default="8,16,32,64")
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args(argv)
    orders = [int(x) for x in args.orders.split(",") if x.strip()]
    if not orders:
        print("[ERR] nessun ordine di quadratura")
        return 2

    worst = 0.0
    for text, errors in study(args.caps, orders).items():
        print(f"[RUN] {text}")
        for q, e in zip(orders, errors):
            print(f"      qr={q:<4d} max |quad - exact| = {e:.3e}")
        worst = max(worst, errors[-1])

    if worst > args.tol:
        print(f"[WARN] scarto {worst:.3e} sopra la tolleranza {args.tol:g} all'ordine {orders[-1]}")
        return 1
    print(f"[OK] ordine {orders[-1]}: scarto massimo {worst:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
