"""Affine stress spaces of realized simplicial complexes.

An affine k-stress is a homogeneous degree-k polynomial supported on
the faces of a complex that is annihilated by the d+1 derivative
operators coming from the coordinate rows of the embedding plus the
all-ones row.  Squarefree parts sit in the kernel of the k-rigidity
matrix, whose row blocks are indexed by (k-2)-faces (d rows each) and
whose columns are indexed by (k-1)-faces, with the altitude vector of
the containing pair as the block entry.

Polynomials are dicts keyed by monomials: sorted tuples of
(vertex, exponent) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb, factorial

from . import exactla
from .errors import (
    DegenerateEmbedding,
    DegenerateFace,
    ExpansionFailure,
    InvalidArgument,
    NotNeighborlyEnough,
)
from .exactla import RatMatrix
from .geometry import Embedding, affine_rank, altitude_vector
from .rat import R0, R1, Rat, rat, sign
from .simplicial import SimplicialComplex, face_key, skeleton


# ---------------------------------------------------------------------------
# monomials and polynomials

Monomial = tuple  # ((vertex, exponent), ...) sorted by vertex


def mono_from_face(face) -> Monomial:
    return tuple((v, 1) for v in face_key(face))


def mono_support(mono: Monomial) -> tuple[int, ...]:
    return tuple(v for v, _ in mono)


def mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def mono_mul_var(mono: Monomial, v: int) -> Monomial:
    out = []
    placed = False
    for u, e in mono:
        if u == v:
            out.append((u, e + 1))
            placed = True
        else:
            out.append((u, e))
    if not placed:
        out.append((v, 1))
        out.sort()
    return tuple(out)


def mono_div_var(mono: Monomial, v: int) -> Monomial:
    out = []
    for u, e in mono:
        if u == v:
            if e > 1:
                out.append((u, e - 1))
        else:
            out.append((u, e))
    return tuple(out)


def mono_exp(mono: Monomial, v: int) -> int:
    for u, e in mono:
        if u == v:
            return e
    return 0


def poly_partial(poly: dict, v: int) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        e = mono_exp(mono, v)
        if e:
            key = mono_div_var(mono, v)
            val = out.get(key, R0) + c * e
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
    return out


def poly_directional(poly: dict, weights: dict) -> dict:
    """Sum over v of weights[v] * d/dx_v, applied to poly."""
    out: dict = {}
    for mono, c in poly.items():
        for v, e in mono:
            w = weights.get(v, R0)
            if not w:
                continue
            key = mono_div_var(mono, v)
            val = out.get(key, R0) + c * e * w
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
    return out


def _compositions(total: int, parts: int):
    """Positive integer vectors of the given length summing to total."""
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in list(cuts) + [total]:
            out.append(c - prev)
            prev = c
        yield tuple(out)


# ---------------------------------------------------------------------------
# stress vectors


@dataclass(frozen=True)
class StressVector:
    """A k-stress: squarefree part always, full polynomial optionally.

    `coeffs` maps sorted vertex tuples of (k-1)-faces to rationals,
    zeros omitted.  `full` maps monomials to rationals once the
    unique full-polynomial completion has been computed.
    """

    degree: int
    coeffs: dict
    full: dict | None = None

    def coeff(self, face):
        return self.coeffs.get(face_key(face), R0)

    def sign(self, face) -> int:
        return sign(self.coeff(face))

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_vector(self, face_order) -> list:
        return [self.coeffs.get(face_key(F), R0) for F in face_order]

    def scaled(self, s) -> "StressVector":
        s = rat(s)
        coeffs = {F: s * c for F, c in self.coeffs.items() if s * c != 0}
        full = None
        if self.full is not None:
            full = {m: s * c for m, c in self.full.items() if s * c != 0}
        return StressVector(degree=self.degree, coeffs=coeffs, full=full)

    @staticmethod
    def from_vector(degree: int, face_order, vec) -> "StressVector":
        coeffs = {}
        for F, x in zip(face_order, vec):
            if x != 0:
                coeffs[face_key(F)] = rat(x)
        return StressVector(degree=degree, coeffs=coeffs)

    @staticmethod
    def from_full(degree: int, full: dict) -> "StressVector":
        clean = {m: rat(c) for m, c in full.items() if c != 0}
        coeffs = {}
        for m, c in clean.items():
            if all(e == 1 for _, e in m):
                coeffs[mono_support(m)] = c
        return StressVector(degree=degree, coeffs=coeffs, full=clean)


# ---------------------------------------------------------------------------
# matrices


def theta(p: Embedding, order=None) -> RatMatrix:
    """The (d+1) x n matrix of coordinate rows plus the all-ones row."""
    verts = tuple(order) if order is not None else p.vertices
    rows = []
    for i in range(p.dim):
        rows.append([p.point(v)[i] for v in verts])
    rows.append([R1] * len(verts))
    return RatMatrix.from_rows(rows, row_labels=tuple(range(p.dim + 1)), col_labels=verts)


def rigidity_matrix(K: SimplicialComplex, p: Embedding, k: int) -> RatMatrix:
    """The k-rigidity matrix of (K, p).

    Rows: d per (k-2)-face, in sorted face order; columns: (k-1)-faces
    in sorted order.  The (F, G) block is the altitude of the added
    vertex of G over Aff(p(F)).
    """
    if k < 2:
        raise InvalidArgument("rigidity matrices need k >= 2")
    d = p.dim
    Fs = K.faces_of_size(k - 1)
    Gs = K.faces_of_size(k)
    frow = {F: i for i, F in enumerate(Fs)}
    entries = [[R0] * len(Gs) for _ in range(d * len(Fs))]
    for j, G in enumerate(Gs):
        for v in G:
            F = tuple(u for u in G if u != v)
            pi = altitude_vector(F, v, p)
            if exactla.is_zero_vec(pi):
                raise DegenerateFace(f"face {G} has affinely dependent points")
            base = frow[F] * d
            for ax in range(d):
                entries[base + ax][j] = pi[ax]
    row_labels = tuple((F, ax) for F in Fs for ax in range(d))
    return RatMatrix.from_rows(entries, row_labels=row_labels, col_labels=tuple(Gs))


def stress_basis(K: SimplicialComplex, p: Embedding, k: int) -> list[StressVector]:
    """Deterministic basis of the space of affine k-stresses.

    For k = 1 these are the affine dependences (kernel of the theta
    matrix); for k >= 2, squarefree parts from the kernel of the
    k-rigidity matrix.
    """
    if k < 1:
        raise InvalidArgument("stress degree must be >= 1")
    if k == 1:
        verts = K.vertices
        _, kern = exactla.kernel_basis(theta(p, verts))
        out = []
        for vec in kern:
            coeffs = {(v,): x for v, x in zip(verts, vec) if x != 0}
            out.append(StressVector(degree=1, coeffs=coeffs))
        return out
    R = rigidity_matrix(K, p, k)
    _, kern = exactla.kernel_basis(R)
    return [StressVector.from_vector(k, R.col_labels, vec) for vec in kern]


def balancing_residual(sv: StressVector, K: SimplicialComplex, p: Embedding) -> dict:
    """Residual of the balancing condition at every (k-2)-face.

    Sums coeff(G) * altitude(F, G) over the k-faces G of K containing
    each F; a genuine stress returns all-zero vectors.  Computed by
    direct summation, independent of the matrix assembly.
    """
    k = sv.degree
    if k < 2:
        raise InvalidArgument("balancing residuals need degree >= 2")
    for F in sv.support():
        if not K.has_face(F):
            raise InvalidArgument(f"support face {F} is not in the complex")
    d = p.dim
    res = {F: [R0] * d for F in K.faces_of_size(k - 1)}
    for G in K.faces_of_size(k):
        c = sv.coeffs.get(G)
        if not c:
            continue
        for v in G:
            F = tuple(u for u in G if u != v)
            pi = altitude_vector(F, v, p)
            res[F] = [r + c * x for r, x in zip(res[F], pi)]
    return {F: tuple(vec) for F, vec in res.items()}


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    rank: int
    expected_rank: int
    stress_dim: int
    d: int
    f0: int
    f1: int


def is_infinitesimally_rigid(K: SimplicialComplex, p: Embedding) -> RigidityReport:
    """Rank test on the 2-rigidity matrix of the graph of K.

    Rigid iff rank equals d*f_0 - C(d+1, 2); the kernel dimension is
    the number of independent 2-stresses either way.
    """
    graph = K if K.dim <= 1 else skeleton(K, 1)
    d = p.dim
    pts = [p.point(v) for v in graph.vertices]
    if affine_rank(pts) != d:
        raise DegenerateEmbedding("embedding does not span the ambient space")
    R = rigidity_matrix(graph, p, 2)
    rnk = exactla.rank(R)
    f0 = len(graph.vertices)
    f1 = len(graph.faces_of_size(2))
    expected = d * f0 - comb(d + 1, 2)
    return RigidityReport(
        rigid=rnk == expected,
        rank=rnk,
        expected_rank=expected,
        stress_dim=f1 - rnk,
        d=d,
        f0=f0,
        f1=f1,
    )


# ---------------------------------------------------------------------------
# full polynomials


def expand_squarefree(sv: StressVector, K: SimplicialComplex, p: Embedding) -> StressVector:
    """The unique full polynomial with the given squarefree part.

    Unknowns are the non-squarefree face-supported monomials of
    degree k; the linear system says every derivative against the
    theta rows vanishes coefficientwise.  A kernel or an inconsistent
    system raises ExpansionFailure.
    """
    k = sv.degree
    if k == 1:
        full = {((v, 1),): c for (v,), c in sv.coeffs.items()}
        return StressVector(degree=1, coeffs=dict(sv.coeffs), full=full)
    for F in sv.support():
        if not K.has_face(F):
            raise ExpansionFailure(f"support face {F} is not in the complex")

    unknowns: list[Monomial] = []
    for size in range(1, k):
        for S in K.faces_of_size(size):
            for exps in _compositions(k, size):
                if any(e > 1 for e in exps):
                    unknowns.append(tuple(zip(S, exps)))
    unknowns.sort()
    col = {m: i for i, m in enumerate(unknowns)}

    th = theta(p)
    verts = th.col_labels
    vcol = {v: i for i, v in enumerate(verts)}

    rows = []
    rhs = []
    for size in range(1, k):
        for S in K.faces_of_size(size):
            for exps in _compositions(k - 1, size):
                nu = tuple(zip(S, exps))
                nu_supp = set(S)
                # candidate extension vertices: support stays a face
                cands = [v for v in verts if v in nu_supp or K.has_face(nu_supp | {v})]
                for i in range(p.dim + 1):
                    trow = th.entries[i]
                    row = [R0] * len(unknowns)
                    b = R0
                    touched = False
                    for v in cands:
                        tv = trow[vcol[v]]
                        if not tv:
                            continue
                        mu = mono_mul_var(nu, v)
                        factor = rat(mono_exp(nu, v) + 1) * tv
                        if mu in col:
                            row[col[mu]] += factor
                            touched = True
                        else:
                            c = sv.coeffs.get(mono_support(mu))
                            if c:
                                b -= factor * c
                                touched = True
                    if touched:
                        rows.append(row)
                        rhs.append(b)

    if unknowns:
        rnk, kern = exactla.kernel_basis(rows)
        if kern:
            raise ExpansionFailure("full polynomial is not unique for this support")
        sol = exactla.solve_linear(rows, rhs)
        if sol is None:
            raise ExpansionFailure("squarefree part admits no stress completion")
    else:
        if any(x != 0 for x in rhs):
            raise ExpansionFailure("squarefree part admits no stress completion")
        sol = []

    full = {mono_from_face(F): c for F, c in sv.coeffs.items()}
    for m, x in zip(unknowns, sol):
        if x != 0:
            full[m] = x
    return StressVector(degree=k, coeffs=dict(sv.coeffs), full=full)


def cone_lift(sv: StressVector, a: dict, apex: int) -> StressVector:
    """Lift a full stress of the base to the cone over it.

    The base embedding is the normal form p(i) = [a_i p'(i); a_i]
    with the apex at the origin.  Starting from the substituted
    polynomial w_0(x) = w'(x_i / a_i), each next slice is
    w_{j+1} = -(1/(j+1)) * sum_i d/dx_i w_j, and the lift is
    sum_j x_apex^j w_j.  Squarefree parts then satisfy
    w'_F = (prod_{i in F} a_i) w_F on base faces.
    """
    if sv.full is None:
        raise InvalidArgument("cone_lift needs the full polynomial; expand first")
    heights = {v: rat(x) for v, x in a.items()}
    for v, x in heights.items():
        if x == 0:
            raise InvalidArgument(f"zero height for vertex {v}")
    w = {}
    for mono, c in sv.full.items():
        scale = R1
        for v, e in mono:
            if v not in heights:
                raise InvalidArgument(f"no height for vertex {v}")
            scale *= heights[v] ** e
        w[mono] = c / scale
    if apex in heights:
        raise InvalidArgument("apex label collides with a base vertex")

    ones = {v: R1 for v in heights}
    k = sv.degree
    full_out: dict = {}
    wj = w
    j = 0
    while True:
        for mono, c in wj.items():
            if c == 0:
                continue
            key = tuple(sorted(mono + ((apex, j),))) if j else mono
            full_out[key] = full_out.get(key, R0) + c
        if j == k or not wj:
            break
        j += 1
        nxt = poly_directional(wj, ones)
        wj = {m: -c / rat(j) for m, c in nxt.items()}
    return StressVector.from_full(k, full_out)


def power_stress(phi: dict, k: int, K: SimplicialComplex, p: Embedding) -> StressVector:
    """The k-th power of an affine 1-stress, as a full k-stress.

    phi maps vertices to coefficients of a linear form annihilated by
    the theta rows.  Every min(k, |supp|)-subset of the support must
    be a face, otherwise the power leaves the face ring.
    """
    if k < 1:
        raise InvalidArgument("power must be >= 1")
    weights = {v: rat(c) for v, c in phi.items() if c != 0}
    if not weights:
        raise InvalidArgument("zero linear form")
    d = p.dim
    total = [R0] * (d + 1)
    for v, c in weights.items():
        pt = p.point(v)
        for i in range(d):
            total[i] += c * pt[i]
        total[d] += c
    if any(x != 0 for x in total):
        raise InvalidArgument("coefficients are not an affine dependence")
    supp = sorted(weights)
    m = min(k, len(supp))
    for S in combinations(supp, m):
        if not K.has_face(S):
            raise NotNeighborlyEnough(f"{S} is not a face, cannot raise to power {k}")
    full: dict = {}
    for pick in combinations_with_replacement(supp, k):
        counts: dict[int, int] = {}
        for v in pick:
            counts[v] = counts.get(v, 0) + 1
        coeff = rat(factorial(k))
        for v, e in counts.items():
            coeff = coeff / rat(factorial(e)) * weights[v] ** e
        if coeff != 0:
            full[tuple(sorted(counts.items()))] = coeff
    out = StressVector.from_full(k, full)
    for i in range(d + 1):
        wrow = {v: (p.point(v)[i] if i < d else R1) for v in supp}
        if poly_directional(full, wrow):
            raise ExpansionFailure("power is not a stress; embedding inconsistent")
    return out
