"""Exact affine geometry for realized complexes.

Embeddings assign rational coordinate tuples to vertex labels.  A
PolytopeInstance couples a complex with an embedding claimed to
realize it as a simplicial polytope boundary; `validate` replays the
supporting-hyperplane and hull checks and flips the instance's
`validated` flag.  Everything here is exact, nothing ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import exactla
from .errors import (
    DegenerateEmbedding,
    DegenerateFace,
    DegenerateQuotient,
    InvalidArgument,
    NotAVertex,
    NotSimplicial,
)
from .rat import R0, R1, Rat, rat
from .simplicial import SimplicialComplex, build_complex, face_key, star_link


@dataclass(frozen=True)
class Embedding:
    """Rational point per vertex label, all in the same dimension."""

    dim: int
    coords: dict

    @staticmethod
    def build(dim: int, mapping) -> "Embedding":
        coords = {}
        for v, pt in mapping.items():
            tup = tuple(rat(x) for x in pt)
            if len(tup) != dim:
                raise InvalidArgument(f"point for vertex {v} has length {len(tup)}, expected {dim}")
            coords[v] = tup
        return Embedding(dim=dim, coords=coords)

    def point(self, v):
        try:
            return self.coords[v]
        except KeyError:
            raise NotAVertex(f"no coordinates for vertex {v}") from None

    def points(self, face) -> list:
        return [self.point(v) for v in face]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.coords))

    def transformed(self, matrix, shift=None) -> "Embedding":
        """Apply x -> Ax + b; used by the affine-invariance tests."""
        out = {}
        for v, pt in self.coords.items():
            img = [exactla.dot(row, pt) for row in matrix]
            if shift is not None:
                img = exactla.vec_add(img, shift)
            out[v] = tuple(img)
        return Embedding(dim=len(matrix), coords=out)


@dataclass(eq=True)
class PolytopeInstance:
    """A complex plus the embedding claimed to realize it.

    `validated` is runtime status: it is excluded from equality and
    from the serialized form.
    """

    complex: SimplicialComplex
    embedding: Embedding
    d: int
    meta: dict
    validated: bool = field(default=False, compare=False)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.complex.vertices


def affine_rank(points) -> int:
    """Dimension of the affine hull: -1 for no points, 0 for one."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [exactla.vec_sub(p, base) for p in pts[1:]]
    if not diffs:
        return 0
    return exactla.rank(diffs)


def altitude_vector(F, v: int, p: Embedding):
    """p(v) minus its orthogonal projection onto Aff(p(F)).

    Zero iff p(v) lies in that affine hull.  F must be nonempty with
    affinely independent points.
    """
    Fs = face_key(F)
    if not Fs:
        raise InvalidArgument("altitude needs a nonempty base face")
    if v in Fs:
        raise InvalidArgument(f"vertex {v} lies in the base face")
    q = p.point(v)
    base = p.point(Fs[0])
    if len(Fs) == 1:
        return exactla.vec_sub(q, base)
    D = [exactla.vec_sub(p.point(f), base) for f in Fs[1:]]
    if exactla.rank(D) < len(D):
        raise DegenerateFace(f"face {Fs} is affinely dependent")
    gram = [[exactla.dot(a, b) for b in D] for a in D]
    rhs = [exactla.dot(a, exactla.vec_sub(q, base)) for a in D]
    sol = exactla.solve_linear(gram, rhs)
    # Gram of independent vectors is invertible, so sol is unique
    proj = list(base)
    for c, a in zip(sol, D):
        if c:
            proj = exactla.vec_add(proj, exactla.vec_scale(c, a))
    return exactla.vec_sub(q, proj)


def _primitive(vec):
    """Scale a rational vector to coprime integers, keeping direction."""
    ints = exactla._integerize([rat(x) for x in vec])
    g = 0
    for x in ints:
        g = exactla._gcd(g, x if x >= 0 else -x)
    if g == 0:
        return [R0 for _ in ints]
    return [rat(x, g) for x in ints]


def facet_normal(S, p: Embedding, inward_witness):
    """Primitive normal of the hyperplane through p(S), oriented so the
    witness point sits on the positive side."""
    Sk = face_key(S)
    base = p.point(Sk[0])
    diffs = [exactla.vec_sub(p.point(s), base) for s in Sk[1:]]
    _, kern = exactla.kernel_basis(diffs)
    if len(kern) != 1:
        raise DegenerateFace(f"facet {Sk} does not span a hyperplane")
    n = _primitive(kern[0])
    val = exactla.dot(n, exactla.vec_sub(inward_witness, base))
    if val == 0:
        raise DegenerateFace(f"witness point lies on the hyperplane of {Sk}")
    if val < 0:
        n = [-x for x in n]
    return n


def separating_functional(P: PolytopeInstance, u: int):
    """A linear functional b and threshold alpha with
    b.p(u) < alpha < b.p(v) for every other vertex v.

    b is the sum of the inward primitive normals of the facets at u;
    alpha is the midpoint between b.p(u) and the nearest other value.
    """
    K = P.complex
    p = P.embedding
    if u not in K.vertex_index:
        raise NotAVertex(f"{u} is not a vertex")
    pu = p.point(u)
    b = [R0] * P.d
    incident = sorted(face_key(S) for S in K.facets if u in S)
    for S in incident:
        outside = next(v for v in K.vertices if v not in S)
        n = facet_normal(S, p, p.point(outside))
        b = exactla.vec_add(b, n)
    lo = exactla.dot(b, pu)
    hi = min(exactla.dot(b, p.point(v)) for v in K.vertices if v != u)
    if not lo < hi:
        raise DegenerateFace(f"facet normals at {u} fail to separate it")
    alpha = (lo + hi) / rat(2)
    return b, alpha


def vertex_figure(P: PolytopeInstance, u: int):
    """The vertex figure at u as a validated instance one dimension down.

    Coordinates follow the cone normal form: after translating u to
    the origin and a rational change of coordinates taking the
    separating functional to the last axis, each neighbor i sits at
    [a_i * p'(i); a_i] with a_i > 0, and the figure's embedding is
    p'.  Returns (instance, a) with a the per-vertex last coordinate;
    iterating over the vertices of a face yields its quotient.
    """
    if P.d < 2:
        raise InvalidArgument("vertex figures need d >= 2")
    K = P.complex
    p = P.embedding
    b, _ = separating_functional(P, u)
    pivot = next(j for j in range(P.d) if b[j] != 0)
    keep = [j for j in range(P.d) if j != pivot]
    pu = p.point(u)
    _, lk = star_link(K, {u})
    a = {}
    coords = {}
    for i in lk.vertices:
        shifted = exactla.vec_sub(p.point(i), pu)
        ai = exactla.dot(b, shifted)
        if ai == 0:
            raise DegenerateQuotient(f"neighbor {i} has zero height over {u}")
        a[i] = ai
        coords[i] = tuple(shifted[j] / ai for j in keep)
    Q = PolytopeInstance(
        complex=lk,
        embedding=Embedding(dim=P.d - 1, coords=coords),
        d=P.d - 1,
        meta={"family": "vertex_figure", "params": {"of": P.meta.get("family", "?"), "at": u}},
    )
    report = validate(Q)
    if not report.ok:
        raise DegenerateQuotient(f"vertex figure at {u} failed validation")
    return Q, a


def quotient(P: PolytopeInstance, tau):
    """Iterated vertex figure over the vertices of a face, sorted order.

    Returns (instance, heights) where heights maps each contraction
    step's vertex to its a-map.
    """
    inst = P
    heights = {}
    for v in face_key(tau):
        inst, a = vertex_figure(inst, v)
        heights[v] = a
    return inst, heights


def segment_hull_meet(a_pt, b_pt, C_points: dict):
    """Does conv(C) meet the segment [a, b]?

    C_points maps labels to coordinate tuples.  Returns (s, mu) with
    the smallest segment parameter s in [0, 1] such that
    a + s(b - a) = sum mu_c p(c), mu a convex combination, or None
    when hull and segment are disjoint.  Exact LP.
    """
    labels = sorted(C_points)
    if not labels:
        return None
    a_vec = [rat(x) for x in a_pt]
    b_vec = [rat(x) for x in b_pt]
    d = len(a_vec)
    seg = exactla.vec_sub(b_vec, a_vec)
    # vars: mu_c (len labels), s
    n = len(labels) + 1
    A_eq = []
    b_eq = []
    for i in range(d):
        row = [rat(C_points[c][i]) for c in labels] + [-seg[i]]
        A_eq.append(row)
        b_eq.append(a_vec[i])
    A_eq.append([R1] * len(labels) + [R0])
    b_eq.append(R1)
    A_ub = [[R0] * len(labels) + [R1]]
    b_ub = [R1]
    obj = [R0] * len(labels) + [-R1]  # minimize s
    status, x, _ = exactla.simplex(obj, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if status != "optimal":
        return None
    mu = {c: x[i] for i, c in enumerate(labels) if x[i] != 0}
    return x[-1], mu


def caratheodory_reduce(points: dict, mu: dict):
    """Shrink a convex representation to affinely independent support.

    points maps labels to coordinates; mu is a convex-coefficient map
    over a subset of them.  The represented point is preserved while
    support points with dependent positions are eliminated one at a
    time.  Returns the reduced coefficient map.
    """
    mu = {c: rat(w) for c, w in mu.items() if w != 0}
    while True:
        supp = sorted(mu)
        pts = [points[c] for c in supp]
        if affine_rank(pts) == len(supp) - 1:
            return mu
        # affine dependence: gamma with sum 0 and sum gamma_c p(c) = 0
        cols = [list(points[c]) + [R1] for c in supp]
        rows = [[cols[j][i] for j in range(len(supp))] for i in range(len(cols[0]))]
        _, kern = exactla.kernel_basis(rows)
        gamma = kern[0]
        if all(g <= 0 for g in gamma):
            gamma = [-g for g in gamma]
        t = None
        for c, g in zip(supp, gamma):
            if g > 0:
                cand = mu[c] / g
                if t is None or cand < t:
                    t = cand
        mu = {c: mu[c] - t * g for c, g in zip(supp, gamma) if mu[c] - t * g != 0}


def brute_force_facets(points: dict) -> frozenset:
    """Facets of conv(points) by exhaustive supporting-hyperplane tests.

    Every d-subset spanning a hyperplane with all remaining points
    strictly on one side is a facet.  A supporting hyperplane that
    picks up an extra point means the hull is not simplicial (or the
    input is degenerate) and raises.
    """
    labels = sorted(points)
    if not labels:
        raise InvalidArgument("no points")
    d = len(points[labels[0]])
    if affine_rank([points[v] for v in labels]) != d:
        raise DegenerateEmbedding("points do not span the ambient space")
    facets = set()
    for S in combinations(labels, d):
        base = points[S[0]]
        diffs = [exactla.vec_sub(points[s], base) for s in S[1:]]
        if diffs:
            _, kern = exactla.kernel_basis(diffs)
            if len(kern) != 1:
                continue  # affinely dependent d-subset, cannot be a simplex facet
            n = kern[0]
        else:
            n = [R1]  # d = 1: a facet is a single point
        pos = neg = zero = False
        for w in labels:
            if w in S:
                continue
            val = exactla.dot(n, exactla.vec_sub(points[w], base))
            if val > 0:
                pos = True
            elif val < 0:
                neg = True
            else:
                zero = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if zero:
            raise NotSimplicial(f"supporting hyperplane of {S} contains an extra point")
        facets.add(frozenset(S))
    return frozenset(facets)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    checks: tuple


def validate(P: PolytopeInstance) -> ValidationReport:
    """Replay the geometric checks that make P a simplicial polytope
    boundary realized by its embedding; sets P.validated."""
    K = P.complex
    p = P.embedding
    checks = []

    cover = set(K.vertices) == set(p.coords) and all(len(pt) == P.d for pt in p.coords.values())
    checks.append(("vertices_covered", cover, "complex vertices match embedded points"))

    span_ok = cover and affine_rank([p.point(v) for v in K.vertices]) == P.d
    checks.append(("ambient_span", span_ok, f"affine hull has dimension {P.d}"))

    pure = K.is_pure() and K.dim == P.d - 1
    checks.append(("pure_dimension", pure, f"all facets have {P.d} vertices"))

    indep = True
    if span_ok and pure:
        for S in K.facet_keys:
            if affine_rank(p.points(S)) != len(S) - 1:
                indep = False
                break
    else:
        indep = False
    checks.append(("facet_independence", indep, "facet points affinely independent"))

    supported = indep
    if indep:
        for S in K.facet_keys:
            base = p.point(S[0])
            diffs = [exactla.vec_sub(p.point(s), base) for s in S[1:]]
            if diffs:
                _, kern = exactla.kernel_basis(diffs)
                n = kern[0]
            else:
                n = [R1]
            vals = [exactla.dot(n, exactla.vec_sub(p.point(w), base)) for w in K.vertices if w not in S]
            if any(v == 0 for v in vals) or (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
                supported = False
                break
    checks.append(("supporting_hyperplanes", supported, "each facet hyperplane strictly supports"))

    hull_ok = False
    if supported:
        try:
            hull_ok = brute_force_facets(p.coords) == K.facets
        except NotSimplicial:
            hull_ok = False
    checks.append(("hull_facets_match", hull_ok, "hull facets equal the complex facets"))

    euler_ok = False
    if pure:
        f = K.f_counts()  # f_-1 .. f_{d-1}
        euler_ok = sum((-1) ** i * f[i + 1] for i in range(P.d)) == 1 + (-1) ** (P.d - 1)
    checks.append(("euler", euler_ok, "boundary-sphere Euler relation"))

    ok = all(c[1] for c in checks)
    P.validated = ok
    return ValidationReport(ok=ok, checks=tuple(checks))
