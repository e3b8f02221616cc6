"""
A4 with rad^3 = 0: a tau-rigid set that is one summand short
==============================================================
Over 1 -> 2 -> 3 -> 4 with all paths of length 3 killed, take

    X = P1 (dims 1110)  +  S2 (0100)  +  S4 (0001).

X is tau-rigid with three summands, so it sits in exactly two support
tau-tilting pairs.  We compute both from the two-term side, read them back
as modules, and run the left Bongartz construction for every support
tau-tilting L in the interval below the Bongartz completion.

Run with:  python demos/truncated_window.py
"""

from reltilt import Workbench, completions, linear_a
from reltilt.atlas import knit_atlas
from reltilt.torsion import (
    bongartz_pair,
    enumerate_support_tau_tilting,
    fac_set,
    left_bongartz,
    partial_order_ge,
)

alg = linear_a(4, 3)
wb = Workbench(alg, knit_atlas(alg))
atlas = wb.atlas
by_dims = {M.dims: i for i, M in enumerate(atlas.modules)}
print(f"algebra: {alg!r}, {len(atlas)} indecomposables")

X = tuple(sorted(("mod", by_dims[d]) for d in [(1, 1, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)]))
print(f"X = {wb.labels(X)}  rigid: {wb.is_rigid(X)}")

# ------------------------------------------------------------
# both completions
# ------------------------------------------------------------
res = completions(wb, X)
for name, side in (("M_X", res.m_x), ("N_X", res.n_x)):
    added = [wb.label(k) for k in side if k not in X]
    pair = wb.to_pair(side)
    print(f"{name} adds {added}; as a pair: modules={[atlas.label(i) for i in pair.modules]} E={list(pair.e_vertices)}")
print(f"exhaustive search found {len(res.found)} completions; checks pass: {res.ok}")

# ------------------------------------------------------------
# torsion classes
# ------------------------------------------------------------
Mp, Np = wb.to_pair(res.m_x), wb.to_pair(res.n_x)
print(f"|Fac M_X| = {len(fac_set(atlas, Mp.modules))}, |Fac N_X| = {len(fac_set(atlas, Np.modules))}")

# ------------------------------------------------------------
# left Bongartz over the interval below N_X
# ------------------------------------------------------------
Xp = wb.to_pair(X)
N = bongartz_pair(atlas, Xp)
print("\nleft Bongartz completions:")
for L in enumerate_support_tau_tilting(atlas):
    if not partial_order_ge(atlas, N, L):
        continue
    out = left_bongartz(atlas, Xp, L)
    print(f"  L={[atlas.label(i) for i in L.modules]}{list(L.e_vertices)}"
          f"  ->  {[atlas.label(i) for i in out.pair.modules]}{list(out.pair.e_vertices)}"
          f"  (|T| = {len(out.torsion_class)})")
