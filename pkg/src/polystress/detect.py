"""Missing-face detection through stress sign certificates.

A certificate is a triple (M, F, lambda): a vertex set M, a face F
inside it with |F| = k-1, and a k-stress whose squarefree
coefficients are nonpositive on every face F+u leaving M, with at
least one strictly negative.  Such a triple proves M is not a face.
The searches here find certificates by exact LP over a stress basis;
the constructive builders produce explicit stresses for missing
edges (d = 3 and d >= 4 routes) and for missing faces of
k-neighborly polytopes (powers of a linear form).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import exactla
from .errors import (
    InvalidArgument,
    InvalidCertificate,
    InvalidInput,
    NotAFace,
    NotAVertex,
    NotMissing,
    NotNeighborlyEnough,
    RigidityFailure,
)
from .geometry import (
    Embedding,
    PolytopeInstance,
    affine_rank,
    caratheodory_reduce,
    segment_hull_meet,
    validate,
)
from .rat import R0, R1, rat, sign
from .simplicial import (
    SimplicialComplex,
    build_complex,
    face_key,
    link,
    missing_faces,
    skeleton,
    star,
)
from .stress import (
    StressVector,
    balancing_residual,
    expand_squarefree,
    poly_partial,
    power_stress,
    rigidity_matrix,
    stress_basis,
)


def sign_vector(sv: StressVector, faces=None) -> dict:
    """Map face -> sign of the squarefree coefficient.

    With `faces` given, the domain is exactly those faces (zeros
    included); otherwise it is the support of the stress.
    """
    if faces is None:
        return {F: sign(c) for F, c in sorted(sv.coeffs.items())}
    return {face_key(F): sv.sign(F) for F in faces}


@dataclass(frozen=True)
class Certificate:
    """(M, F, stress) with the sign pattern over the faces F+u."""

    missing: tuple
    base: tuple
    stress: StressVector
    pattern: dict


def _pattern_for(sv: StressVector, carrier_faces, F, M, vertices) -> dict:
    Fset = set(F)
    Mset = set(M)
    out = {}
    for u in vertices:
        if u in Fset:
            continue
        S = face_key(Fset | {u})
        if S in carrier_faces:
            out[S] = sv.sign(S)
    return out


def certificate_check(cert: Certificate, K: SimplicialComplex, p: Embedding) -> bool:
    """Verify a certificate against the complex it claims to certify.

    Structural defects (wrong sizes, support escaping the allowed
    carrier, balancing failure) raise InvalidCertificate.  Returns
    True iff the sign condition holds: every face F+u with u outside
    M carries a nonpositive coefficient and at least one is strictly
    negative.
    """
    sv = cert.stress
    k = sv.degree
    if k < 2:
        raise InvalidCertificate("certificates need stress degree >= 2")
    F = face_key(cert.base)
    M = face_key(cert.missing)
    Fset, Mset = set(F), set(M)
    if len(F) != k - 1:
        raise InvalidCertificate(f"base face has {len(F)} vertices, expected {k - 1}")
    if not Fset < Mset:
        raise InvalidCertificate("base face must be a proper subset of M")
    if not Mset <= set(K.vertices):
        raise InvalidCertificate("M contains unknown vertices")
    if not K.has_face(F):
        raise InvalidCertificate(f"base face {F} is not a face")

    extra = None
    for S in sv.support():
        if len(S) != k:
            raise InvalidCertificate(f"support face {S} has size {len(S)}, expected {k}")
        if K.has_face(S):
            continue
        if not (Fset <= set(S) <= Mset):
            raise InvalidCertificate(f"support face {S} is outside the complex and not between F and M")
        if extra is not None and extra != S:
            raise InvalidCertificate("support leaves the complex on more than one face")
        extra = S

    carrier = K if extra is None else build_complex(list(K.facets) + [frozenset(extra)])
    residual = balancing_residual(sv, carrier, p)
    if any(not exactla.is_zero_vec(vec) for vec in residual.values()):
        raise InvalidCertificate("balancing condition fails; not a stress")

    strict_negative = False
    for u in K.vertices:
        if u in Mset:
            continue
        S = face_key(Fset | {u})
        if not K.has_face(S):
            continue
        s = sv.sign(S)
        if s > 0:
            return False
        if s < 0:
            strict_negative = True
    return strict_negative


def _feasible_certificate(k, face_order, index, vectors, skel, M, F):
    """Shared LP step: strict positivity on F+v inside M, nonpositive
    on F+u leaving M.  Returns a Certificate or None."""
    Fset = set(F)
    strict = []
    for v in sorted(set(M) - Fset):
        S = face_key(Fset | {v})
        if S not in index:
            raise InvalidArgument(f"{S} is not a face of the carrier")
        strict.append(index[S])
    weak = []
    for u in skel.vertices:
        if u in M or u in Fset:
            continue
        S = face_key(Fset | {u})
        j = index.get(S)
        if j is not None:
            weak.append(j)
    witness = exactla.strict_feasible(vectors, strict, weak)
    if witness is None:
        return None
    sv = StressVector.from_vector(k, face_order, witness)
    pattern = _pattern_for(sv, set(face_order), F, M, skel.vertices)
    return Certificate(missing=face_key(M), base=face_key(F), stress=sv, pattern=pattern)


def find_certificate(skel: SimplicialComplex, basis, M, F):
    """Search span(basis) for a stress certifying that M is not a face.

    F must be a (k-1)-subset of M and a face; every F+v for v in M
    must be a face of skel as well.  Returns None when the sign
    pattern is infeasible over the given stress space.
    """
    F = face_key(F)
    M = face_key(M)
    if not set(F) < set(M):
        raise InvalidArgument("F must be a proper subset of M")
    if not basis:
        return None
    k = len(F) + 1
    degrees = {b.degree for b in basis}
    if degrees != {k}:
        raise InvalidArgument(f"basis degrees {sorted(degrees)} do not match |F|+1 = {k}")
    if not skel.has_face(F):
        raise NotAFace(f"{F} is not a face")
    face_order = skel.faces_of_size(k)
    index = {S: i for i, S in enumerate(face_order)}
    vectors = [b.as_vector(face_order) for b in basis]
    return _feasible_certificate(k, face_order, index, vectors, skel, M, F)


def certificate_sweep(skel: SimplicialComplex, basis, d: int, k: int):
    """Candidate sets of size k+1 .. d-k+1 whose k-subsets are all
    faces, split into (certified minimal, admissible but uncertified).

    Certified supersets of already-certified sets are skipped, so the
    first list holds the minimal certified elements in (size, lex)
    order.
    """
    if k < 2:
        raise InvalidArgument("certificate sweeps need k >= 2")
    V = skel.vertices
    face_order = skel.faces_of_size(k)
    index = {S: i for i, S in enumerate(face_order)}
    vectors = [b.as_vector(face_order) for b in basis]
    certified: list[tuple] = []
    open_candidates: list[tuple] = []
    for size in range(k + 1, d - k + 2):
        for M in combinations(V, size):
            Mset = set(M)
            if any(set(prev) <= Mset for prev in certified):
                continue
            if any(S not in index for S in combinations(M, k)):
                continue
            if skel.has_face(M):
                continue  # visible face, nothing to certify
            found = False
            if vectors:
                for F in combinations(M, k - 1):
                    cert = _feasible_certificate(k, face_order, index, vectors, skel, M, F)
                    if cert is not None:
                        certified.append(M)
                        found = True
                        break
            if not found:
                open_candidates.append(M)
    return certified, open_candidates


def enumerate_missing_faces(skel: SimplicialComplex, basis, d: int, k: int) -> list[tuple]:
    """Minimal certified non-faces with k+1 <= |M| <= d-k+1.

    For k = 2 these are exactly the missing faces of the hidden
    polytope in that size range; for k >= 3 the uncertified
    candidates are undecided and not returned.
    """
    certified, _ = certificate_sweep(skel, basis, d, k)
    return certified


def quotient_certificate(P: PolytopeInstance, M, F, x0=None):
    """Certificate for M found inside the star of M minus (F + x0).

    Chooses G = F + {x0} (default: smallest vertex of M outside F),
    restricts to the subcomplex st(M - G) with G adjoined, computes
    its stress space, and searches it for the certificate pattern.
    The witness is also a stress of the ambient boundary union {G},
    supported near the contracted face.
    """
    K = P.complex
    p = P.embedding
    F = face_key(F)
    M = face_key(M)
    k = len(F) + 1
    if not set(F) < set(M):
        raise InvalidArgument("F must be a proper subset of M")
    rest = sorted(set(M) - set(F))
    if x0 is None:
        x0 = rest[0]
    if x0 not in rest:
        raise InvalidArgument(f"{x0} is not in M minus F")
    G = face_key(set(F) | {x0})
    tau = tuple(v for v in M if v not in G)
    if not tau:
        raise InvalidArgument("M minus G is empty; use find_certificate directly")
    if not K.has_face(tau):
        raise NotAFace(f"{tau} is not a face, cannot contract it")
    st = star(K, tau)
    carrier = build_complex(list(st.facets) + [frozenset(G)])
    for v in rest:
        if v != x0 and not carrier.has_face(set(F) | {v}):
            return None  # the star is too small to see the strict faces
    basis = stress_basis(carrier, p, k)
    if not basis:
        return None
    face_order = carrier.faces_of_size(k)
    index = {S: i for i, S in enumerate(face_order)}
    vectors = [b.as_vector(face_order) for b in basis]
    return _feasible_certificate(k, face_order, index, vectors, carrier, M, F)


# ---------------------------------------------------------------------------
# constructive stress builders for missing edges


def _component_of_b(K: SimplicialComplex, graph_adj, a: int, b: int):
    """Vertices reachable from b avoiding the link of a (and a itself),
    with BFS parents for path reconstruction.  Deterministic: neighbors
    are scanned in sorted order."""
    avoid = set(link(K, (a,)).vertices)
    avoid.add(a)
    dist = {b: 0}
    parent = {}
    queue = [b]
    while queue:
        nxt = []
        for w in queue:
            for u in graph_adj[w]:
                if u in avoid or u in dist:
                    continue
                dist[u] = dist[w] + 1
                parent[u] = w
                nxt.append(u)
        queue = nxt
    return dist, parent


def _extend_independent(points: dict, core: list, pool: list, d: int, avoid_pt):
    """Grow `core` to d affinely independent labels from `pool`, keeping
    avoid_pt outside the affine hull of the result.  Greedy with a
    one-swap repair; returns the extended list or None."""

    def independent(labels):
        return affine_rank([points[c] for c in labels]) == len(labels) - 1

    chosen = list(core)
    for c in pool:
        if len(chosen) == d:
            break
        if c in chosen:
            continue
        if independent(chosen + [c]):
            chosen.append(c)
    if len(chosen) < d:
        return None
    if affine_rank([points[c] for c in chosen] + [avoid_pt]) == d:
        return chosen
    # the hull of the greedy pick caught the forbidden point; try swaps
    for out in chosen:
        if out in core:
            continue
        for repl in pool:
            if repl in chosen:
                continue
            trial = [c for c in chosen if c != out] + [repl]
            if independent(trial) and affine_rank([points[c] for c in trial] + [avoid_pt]) == d:
                return sorted(trial)
    return None


def missing_edge_stress(P: PolytopeInstance, a: int, b: int) -> StressVector:
    """A 2-stress on G(P) + ab with coefficient 1 on the missing edge ab.

    d = 3: the kernel of the extended rigidity matrix is a line; its
    normalization is returned and is nonpositive on every edge at a
    or b.  d >= 4: built from a separator of link-of-a vertices whose
    hull meets [a, b]; the returned stress is nonpositive on every
    edge at a (the first argument).
    """
    if not P.validated:
        report = validate(P)
        if not report.ok:
            raise InvalidArgument("instance failed validation")
    K = P.complex
    p = P.embedding
    d = P.d
    if d < 3:
        raise InvalidArgument("missing-edge stresses need d >= 3")
    for v in (a, b):
        if v not in K.vertex_index:
            raise NotAVertex(f"{v} is not a vertex")
    if a == b:
        raise InvalidArgument("endpoints coincide")
    ab = face_key((a, b))
    if K.has_face(ab):
        raise NotMissing(f"{ab} is an edge of the complex")

    graph = skeleton(K, 1)
    if d == 3:
        aug = build_complex(list(graph.facets) + [frozenset(ab)])
        R = rigidity_matrix(aug, p, 2)
        _, kern = exactla.kernel_basis(R)
        if len(kern) != 1:
            raise RigidityFailure(f"extended kernel has dimension {len(kern)}, expected 1")
        sv = StressVector.from_vector(2, R.col_labels, kern[0])
        val = sv.coeff(ab)
        if val == 0:
            raise RigidityFailure("kernel element vanishes on the added edge")
        return sv.scaled(R1 / val)
    return _edge_stress_high_dim(P, graph, a, b)


def _edge_stress_high_dim(P: PolytopeInstance, graph: SimplicialComplex, a: int, b: int) -> StressVector:
    K = P.complex
    p = P.embedding
    d = P.d
    ab = face_key((a, b))

    adj: dict[int, list[int]] = {v: [] for v in graph.vertices}
    for e in graph.faces_of_size(2):
        adj[e[0]].append(e[1])
        adj[e[1]].append(e[0])
    for v in adj:
        adj[v].sort()

    dist, parent = _component_of_b(K, adj, a, b)
    link_a = set(link(K, (a,)).vertices)
    C = sorted(c for c in link_a if any(w in dist for w in adj[c]))
    if not C:
        raise RigidityFailure("no connector vertices; graph is disconnected around a")

    C_points = {c: p.point(c) for c in C}
    meet = segment_hull_meet(p.point(a), p.point(b), C_points)
    if meet is None:
        raise RigidityFailure("connector hull misses the segment; input is not a polytope boundary")
    _, mu = meet
    mu = caratheodory_reduce(C_points, mu)
    core = sorted(mu)
    Cp = _extend_independent(C_points, core, C, d, p.point(a))
    if Cp is None:
        raise RigidityFailure("no affinely independent connector extension avoids the apex hull")

    # union of stars over internal path vertices, paths chosen from the BFS tree
    path_vertices: set[int] = set()
    for c in Cp:
        cur = min((u for u in adj[c] if u in dist), key=lambda u: (dist[u], u))
        path_vertices.add(cur)
        while cur != b:
            cur = parent[cur]
            path_vertices.add(cur)
    sub_facets = [T for T in K.facets if T & path_vertices]
    Ksub = build_complex(sub_facets)
    Gsub = skeleton(Ksub, 1)
    extra = [frozenset((a, c)) for c in Cp] + [frozenset(ab)]
    carrier = build_complex(list(Gsub.facets) + extra)

    R = rigidity_matrix(carrier, p, 2)
    _, kern = exactla.kernel_basis(R)
    col = {S: j for j, S in enumerate(R.col_labels)}
    j_ab = col[ab]
    for vec in kern:
        if vec[j_ab] != 0:
            sv = StressVector.from_vector(2, R.col_labels, vec)
            return sv.scaled(R1 / vec[j_ab])
    raise RigidityFailure("no kernel element uses the added edge")


def _link_cycle(K: SimplicialComplex, v: int) -> list[int]:
    """Vertices of lk(v) in cyclic order; requires the link to be a
    single cycle, as in a 3-polytope boundary."""
    lk = link(K, (v,))
    edges = lk.faces_of_size(2)
    nbr: dict[int, list[int]] = {}
    for e in edges:
        nbr.setdefault(e[0], []).append(e[1])
        nbr.setdefault(e[1], []).append(e[0])
    if not nbr or any(len(us) != 2 for us in nbr.values()):
        raise InvalidInput(f"link of {v} is not a cycle")
    start = min(nbr)
    cycle = [start, min(nbr[start])]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        nxt = nbr[cur][0] if nbr[cur][0] != prev else nbr[cur][1]
        if nxt == start:
            break
        cycle.append(nxt)
    if len(cycle) != len(nbr):
        raise InvalidInput(f"link of {v} is not a single cycle")
    return cycle


def sign_changes(sv: StressVector, P: PolytopeInstance, v: int) -> int:
    """Sign changes of the edge labels around v, in link order, zeros
    skipped.  Only meaningful for d = 3."""
    if P.d != 3:
        raise InvalidArgument("sign-change counting is a d = 3 diagnostic")
    if v not in P.complex.vertex_index:
        raise NotAVertex(f"{v} is not a vertex")
    cycle = _link_cycle(P.complex, v)
    signs = [s for s in (sv.sign((v, u)) for u in cycle) if s != 0]
    if not signs:
        return 0
    return sum(1 for s, t in zip(signs, signs[1:] + signs[:1]) if s != t)


# ---------------------------------------------------------------------------
# neighborly polytopes


def _check_neighborly(K: SimplicialComplex, k: int) -> None:
    n = len(K.vertices)
    if len(K.faces_of_size(k)) != comb(n, k):
        raise NotNeighborlyEnough(f"not {k}-neighborly: some {k}-subset is not a face")


def neighborly_certificate(P: PolytopeInstance, M, k: int) -> Certificate:
    """Certificate for a missing face of a k-neighborly polytope.

    Finds an affine dependence splitting M against the rest by exact
    LP (positive on M) and returns its k-th power.  The sign pattern
    is positive on k-subsets of M and alternates with |G - M| parity
    elsewhere.
    """
    if k < 2:
        raise InvalidArgument("certificates need k >= 2")
    K = P.complex
    p = P.embedding
    _check_neighborly(K, k)
    M = face_key(M)
    Mset = set(M)
    if not Mset <= set(K.vertices):
        raise InvalidArgument("M contains unknown vertices")
    if K.has_face(M):
        raise NotMissing(f"{M} is a face")
    for W in combinations(M, len(M) - 1):
        if not K.has_face(W):
            raise NotMissing(f"{M} is not minimal: {W} is already a non-face")

    V = K.vertices
    n = len(V)
    d = P.d
    # vars: a_v for v in V, then t; maximize t subject to a_v >= t on M,
    # equal weighted barycenters, both sides summing to 1
    A_eq = []
    b_eq = []
    for i in range(d):
        row = []
        for v in V:
            x = p.point(v)[i]
            row.append(x if v in Mset else -x)
        row.append(R0)
        A_eq.append(row)
        b_eq.append(R0)
    A_eq.append([R1 if v in Mset else R0 for v in V] + [R0])
    b_eq.append(R1)
    A_eq.append([R0 if v in Mset else R1 for v in V] + [R0])
    b_eq.append(R1)
    A_ub = []
    b_ub = []
    for j, v in enumerate(V):
        if v in Mset:
            row = [R0] * (n + 1)
            row[j] = -R1
            row[n] = R1
            A_ub.append(row)
            b_ub.append(R0)
    A_ub.append([R0] * n + [R1])
    b_ub.append(R1)
    obj = [R0] * n + [R1]
    status, x, value = exactla.simplex(obj, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if status != "optimal" or value <= 0:
        raise NotMissing(f"relative interior of {M} misses the opposite hull; not a missing face")

    phi = {}
    for j, v in enumerate(V):
        if x[j] != 0:
            phi[v] = x[j] if v in Mset else -x[j]
    sv = power_stress(phi, k, K, p)
    F = M[: k - 1]
    faces_k = set(K.faces_of_size(k))
    pattern = _pattern_for(sv, faces_k | {face_key(set(F) | {v}) for v in M[k - 1:]}, F, M, V)
    return Certificate(missing=M, base=F, stress=sv, pattern=pattern)


def recover_stress1_from_stress2(P: PolytopeInstance) -> list[StressVector]:
    """Span of the partial derivatives of all 2-stresses, as 1-stresses.

    For a 2-neighborly polytope this equals the affine-dependence
    space of the vertices, so the degree-1 stress data is recoverable
    from degree 2.
    """
    K = P.complex
    p = P.embedding
    _check_neighborly(K, 2)
    V = K.vertices
    vidx = {v: i for i, v in enumerate(V)}
    rows = []
    for sv in stress_basis(K, p, 2):
        full = expand_squarefree(sv, K, p).full
        for v in V:
            der = poly_partial(full, v)
            if not der:
                continue
            row = [R0] * len(V)
            for mono, c in der.items():
                (u, _), = mono
                row[vidx[u]] = c
            rows.append(row)
    _, reduced = exactla.rref(rows)
    out = []
    for row in reduced:
        coeffs = {(v,): c for v, c in zip(V, row) if c != 0}
        out.append(StressVector(degree=1, coeffs=coeffs))
    return out


# ---------------------------------------------------------------------------
# conjecture probing


def probe_missing_faces(P: PolytopeInstance, k: int) -> list[dict]:
    """Per-(G, F) search for the missing-face stress pattern.

    For every missing (k-1)-face G of the boundary and every
    (k-1)-subset F of G, searches Stress_k(boundary + G) for a stress
    with positive coefficient on G and nonpositive ones on every face
    F+u.  Found certificates are re-verified independently.  Verdicts
    are deterministic and ordered by (G, F).
    """
    if k < 2:
        raise InvalidArgument("probing needs k >= 2")
    K = P.complex
    p = P.embedding
    results = []
    targets = [M for M in missing_faces(K, k) if len(M) == k]
    for G in targets:
        aug = build_complex(list(K.facets) + [frozenset(G)])
        basis = stress_basis(aug, p, k)
        face_order = aug.faces_of_size(k)
        index = {S: i for i, S in enumerate(face_order)}
        vectors = [b.as_vector(face_order) for b in basis]
        for F in combinations(G, k - 1):
            Fset = set(F)
            strict = [index[G]]
            weak = []
            for u in K.vertices:
                if u in G:
                    continue
                S = face_key(Fset | {u})
                j = index.get(S)
                if j is not None:
                    weak.append(j)
            witness = exactla.strict_feasible(vectors, strict, weak) if vectors else None
            entry = {"G": G, "F": F, "found": witness is not None, "verified": False}
            if witness is not None:
                sv = StressVector.from_vector(k, face_order, witness)
                pattern = _pattern_for(sv, set(face_order), F, G, K.vertices)
                cert = Certificate(missing=G, base=F, stress=sv, pattern=pattern)
                entry["verified"] = certificate_check(cert, K, p)
                entry["certificate"] = cert
            results.append(entry)
    return results
