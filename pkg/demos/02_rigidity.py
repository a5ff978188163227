# Infinitesimal rigidity from the 2-rigidity matrix.
#
# A simplicial d-polytope boundary, d >= 3, is infinitesimally rigid:
# the rank of R_2 on its graph is d*f_0 - C(d+1,2).  In the plane that
# fails already for a square, whose frame flexes.

from polystress import corpus
from polystress.geometry import Embedding
from polystress.simplicial import build_complex
from polystress.stress import is_infinitesimally_rigid, rigidity_matrix

for fam, params in (("cross", {"d": 3}), ("cyclic", {"n": 8, "d": 4}), ("stacked", {"d": 4, "steps": 2, "seed": 2})):
    P = corpus.generate(fam, **params)
    rep = is_infinitesimally_rigid(P.complex, P.embedding)
    name = fam + "(" + ",".join(str(v) for v in params.values()) + ")"
    print(f"{name}: rigid={rep.rigid} rank={rep.rank}/{rep.expected_rank} stresses={rep.stress_dim}")

# the flexing square: 4 vertices, 4 edges, one motion beyond the
# trivial ones (rank 4 < 2*4 - 3)
square = build_complex([(0, 1), (1, 2), (2, 3), (0, 3)])
p = Embedding.build(2, {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)})
rep = is_infinitesimally_rigid(square, p)
print("square:", "rigid" if rep.rigid else f"flexible, rank {rep.rank} of {rep.expected_rank}")

# bracing the square makes the count tight again
braced = build_complex([(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
rep = is_infinitesimally_rigid(braced, p)
print("braced square:", "rigid" if rep.rigid else "flexible")

# the matrix itself: one row block per vertex, one column per edge
R = rigidity_matrix(square, p, 2)
print("R_2 of the square is", len(R.entries), "x", len(R.entries[0]))
