"""
Arcs in a hexagon
=================
The cluster category of type A3 is drawn as diagonals of a hexagon.  A set
of non-crossing diagonals R gives an algebra Γ_R, and the arcs that lie in
R * R[1] become two-term complexes over it.

Below:
  * a partial triangulation R with two arcs, which arcs are reachable;
  * completions of a single arc, drawn back as arcs;
  * for the "triangle" triangulation, its algebra (a 3-cycle with
    relations) and the 14 weak cluster tilting sets, which are exactly the
    14 triangulations.

Run with:  python demos/hexagon.py
"""

from reltilt import completions, exchange_graph
from reltilt.polygon import RelativeProblem, arcs_text, parse_arcs, tiling_end_algebra, triangulations

M = 6

# ------------------------------------------------------------
# a partial triangulation
# ------------------------------------------------------------
R = parse_arcs("0-2,0-4", M)
P = RelativeProblem(R)
print(f"R = {arcs_text(R)}:  Gamma_R = {P.algebra!r}")
print(f"  arcs in R*R[1]: {arcs_text(P.key_of)}")
print(f"  arcs outside:   {arcs_text(P.outside)}")

for x in sorted(P.key_of):
    if x in R:
        continue
    res = completions(P.workbench, P.realize([x]))
    print(f"  X = {x}:  M_X = {arcs_text(P.arcs(res.m_x))}   N_X = {arcs_text(P.arcs(res.n_x))}")

# ------------------------------------------------------------
# the triangle triangulation
# ------------------------------------------------------------
T = parse_arcs("0-2,2-4,0-4", M)
alg = tiling_end_algebra(T)
print(f"\nT = {arcs_text(T)}: {alg!r}")
for rel in alg.to_dict()["relations"]:
    print("  relation: " + " + ".join(f"{t['coeff']}*{'.'.join(t['path'])}" for t in rel))

P = RelativeProblem(T)
g = exchange_graph(P.workbench)
found = {P.arcs(U) for U in g.vertices}
expected = {tuple(sorted(t)) for t in triangulations(M)}
print(f"weak cluster tilting sets over Gamma_T: {len(found)}; equal to the triangulations: {found == expected}")
