"""
Cones, vertex figures, and lifting stresses
===========================================

Coning a complex does not change its stress dimensions, and with the
right coordinates a stress lifts through the cone with its signs
intact: the base coefficient at F equals the lifted one scaled by the
product of the heights over F.  Vertex figures run the construction
in reverse and come out of the library already in that normal form.
"""
from polystress import corpus
from polystress.geometry import Embedding, vertex_figure
from polystress.rat import rat
from polystress.simplicial import cone
from polystress.stress import cone_lift, expand_squarefree, stress_basis

P = corpus.generate("cyclic", n=6, d=4)
K, p = P.complex, P.embedding

# pick heights a_v > 0 and place v at (a_v p(v); a_v), apex at 0
apex = max(K.vertices) + 1
a = {v: rat(v + 1) for v in K.vertices}
coords = {v: tuple(a[v] * x for x in p.point(v)) + (a[v],) for v in K.vertices}
coords[apex] = (rat(0),) * (P.d + 1)
CK, cp = cone(apex, K), Embedding(dim=P.d + 1, coords=coords)

for k in (1, 2):
    print(f"dim Stress_{k}: base {len(stress_basis(K, p, k))}, "
          f"cone {len(stress_basis(CK, cp, k))}")

# lift the 2-stress and check the height-product identity on each edge
omega = expand_squarefree(stress_basis(K, p, 2)[0], K, p)
lifted = cone_lift(omega, a, apex)
ok = all(omega.coeff(F) == a[F[0]] * a[F[1]] * lifted.coeff(F) for F in K.faces_of_size(2))
print("omega_F == (prod of heights) * lift_F on every edge:", ok)
print("apex edges in the lift:", sorted(F for F in lifted.support() if apex in F)[:4], "...")

# vertex figures provide the heights for free
oct3 = corpus.generate("cross", d=3)
Q, heights = vertex_figure(oct3, 0)
print("\nvertex figure of the octahedron at 0:",
      len(Q.complex.vertices), "vertices in dimension", Q.d)
print("heights:", {v: str(h) for v, h in heights.items()})
