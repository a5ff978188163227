"""
Stress spaces and the g-vector
==============================

Every boundary complex of a simplicial d-polytope carries spaces of
affine k-stresses, and their dimensions are the entries of the
g-vector.  This script computes both sides for a cyclic polytope and
prints a basis element to look at.
"""
from polystress import corpus
from polystress.simplicial import fg_vector
from polystress.stress import stress_basis

P = corpus.generate("cyclic", n=7, d=4)
K, p = P.complex, P.embedding
print("cyclic(7,4):", len(K.vertices), "vertices,", len(K.facet_keys), "facets")

# f- and g-vector straight from the complex
fg = fg_vector(K, P.d)
print("f-vector:", fg.f)
print("g-vector:", fg.g)

# stress dimensions must match the g-vector entry by entry
for k in (1, 2):
    basis = stress_basis(K, p, k)
    print(f"dim Stress_{k} = {len(basis)}  (g_{k} = {fg.g_at(k)})")

# a 2-stress is determined by its squarefree part: one rational per edge
omega = stress_basis(K, p, 2)[0]
print("support of a basis stress:", len(omega.support()), "edges")
for F in sorted(omega.support())[:6]:
    print("  lambda", F, "=", omega.coeff(F))

# the stress survives any affine change of coordinates
q = p.transformed([[1, 0, 0, 0], [2, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, 1]])
print("after a shear, dim Stress_2 =", len(stress_basis(K, q, 2)))
