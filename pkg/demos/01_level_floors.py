#!/usr/bin/env python3
"""Where can maximal entanglement live?

For a mode structure (n_1, ..., n_N) a pure state spread over L basis
levels cannot push every single-mode reduction below the minimal purity
P(n_m, L).  Averaging the mode-wise entanglement deficit gives a floor
M(L); the L values that reach the global minimum M* form the set L*.
M* = 0 means full maximal entanglement is reachable at those L.

This demo prints the floor table for a few structures and marks L*.
"""
from __future__ import annotations

from mmekit import ModeStructure, lstar, mpsrp_purity

STRUCTURES = [
    (2, 2),
    (2, 3),
    (2, 5),
    (2, 2, 2),
    (3, 3, 4),
    (2, 2, 3, 3),
]

for dims in STRUCTURES:
    s = ModeStructure(dims)
    ls = lstar(s)
    print(f"\n{s}  (n = {s.n})")
    print(f"  L* = {ls.values}, floor M* = {ls.min_mean:.6g}")
    for L, m in sorted(ls.per_L_mean.items()):
        star = " <-- L*" if L in ls.values else ""
        mode_floors = ", ".join(
            f"P({d},{L})={mpsrp_purity(d, L):.4f}" for d in s.dims
        )
        print(f"  L={L:2d}  M(L)={m:.6f}  [{mode_floors}]{star}")

print(
    "\nWhen M* > 0 (2x5, 3x3x4) no state can make every reduction"
    " maximally mixed; the floor is the best reachable average, and"
    " entanglement is measured relative to it.  States hitting the"
    " floor at some L in L* are the maximally entangled ones here."
)
