"""
Sign certificates for missing faces
===================================

A stress whose signs behave the right way around a face F proves that
a candidate set M containing F is NOT a face of the polytope.  The
octahedron's missing diagonal is the classical example; the sweep at
the end finds every missing 2-face of a cyclic polytope from its
graph and 2-stresses alone.
"""
from polystress import corpus
from polystress.detect import (
    certificate_sweep,
    find_certificate,
    missing_edge_stress,
    sign_changes,
    sign_vector,
)
from polystress.simplicial import skeleton
from polystress.stress import stress_basis

# --- the octahedron's diagonal -------------------------------------
oct3 = corpus.generate("cross", d=3)
omega = missing_edge_stress(oct3, 0, 1)
print("stress on graph + {0,1}, normalized to lambda_01 = 1:")
for F, s in sorted(sign_vector(omega).items()):
    print(f"  {F}: {'+' if s > 0 else '-'}  ({omega.coeff(F)})")

# negative on every edge at 0 and 1, positive around the equator;
# each equator vertex sees the sign alternate four times
print("sign changes around vertex 2:", sign_changes(omega, oct3, 2))

# --- certifying a non-face directly --------------------------------
P = corpus.generate("cyclic", n=6, d=4)
graph = skeleton(P.complex, 1)
basis = stress_basis(graph, P.embedding, 2)
cert = find_certificate(graph, basis, (1, 3, 5), (1,))
print("\ncyclic(6,4): certificate for M={1,3,5} at F={1}:")
for G in sorted(cert.pattern):
    print(f"  lambda{G} {'> 0' if cert.pattern[G] > 0 else '<= 0'}")

# a genuine face admits no such certificate, whichever base we try
print("M={1,2,3} (a face):",
      [find_certificate(graph, basis, (1, 2, 3), (v,)) for v in (1, 2, 3)])

# --- sweeping all candidates at once -------------------------------
certified, undecided = certificate_sweep(graph, basis, P.d, 2)
print("\nsweep over cyclic(6,4):", len(certified), "certified,", len(undecided), "left open")
print("certified:", certified)
