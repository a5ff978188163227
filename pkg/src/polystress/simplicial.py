"""Abstract simplicial complexes with integer vertex labels.

A complex is stored by its facets (inclusionwise maximal faces); all
other faces exist implicitly and membership is a subset-of-some-facet
test.  Face enumeration materializes single sizes on demand, which is
cheap at the scales this package targets.

Vertex labels are arbitrary nonnegative ints supplied by the caller.
`vertex_index` maps them to dense positions 0..n-1 (sorted label
order); matrix-building code uses those positions for stable row and
column indexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

from .errors import InvalidArgument, InvalidComplex, NotAFace

Face = frozenset  # of int vertex labels


def face_key(F) -> tuple[int, ...]:
    """Sorted-tuple form of a face, used wherever a total order is needed."""
    return tuple(sorted(F))


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable simplicial complex given by its facets.

    Build through `build_complex`, which normalizes input and drops
    dominated faces; the constructor itself trusts its argument.
    """

    facets: frozenset

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        vs = set()
        for F in self.facets:
            vs.update(F)
        return tuple(sorted(vs))

    @cached_property
    def vertex_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dim(self) -> int:
        return max(len(F) for F in self.facets) - 1

    @cached_property
    def facet_keys(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(face_key(F) for F in self.facets))

    def has_face(self, F) -> bool:
        F = frozenset(F)
        return any(F <= G for G in self.facets)

    __contains__ = has_face

    def faces_of_size(self, s: int) -> list[tuple[int, ...]]:
        """All faces with s vertices, as sorted tuples in sorted order."""
        if s < 0:
            return []
        if s == 0:
            return [()]
        found = set()
        for G in self.facets:
            if len(G) >= s:
                found.update(combinations(face_key(G), s))
        return sorted(found)

    def faces_of_dim(self, i: int) -> list[tuple[int, ...]]:
        return self.faces_of_size(i + 1)

    def all_faces(self, max_size: int | None = None) -> list[tuple[int, ...]]:
        top = self.dim + 1 if max_size is None else min(max_size, self.dim + 1)
        out: list[tuple[int, ...]] = []
        for s in range(top + 1):
            out.extend(self.faces_of_size(s))
        return out

    def f_counts(self) -> tuple[int, ...]:
        """(f_-1, f_0, ..., f_dim) as a plain tuple."""
        return tuple(len(self.faces_of_size(s)) for s in range(self.dim + 2))

    def is_pure(self) -> bool:
        return all(len(F) == self.dim + 1 for F in self.facets)


def build_complex(facets) -> SimplicialComplex:
    """Normalize a collection of faces into a complex.

    Dominated members are dropped, so any generating set of faces is
    accepted.  Vertex labels must be nonnegative ints and the
    collection must be nonempty (the complex {()} is allowed and is
    the result of an empty facet).
    """
    norm = set()
    for F in facets:
        G = frozenset(F)
        for v in G:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidComplex(f"vertex labels must be nonnegative ints, got {v!r}")
        norm.add(G)
    if not norm:
        raise InvalidComplex("a complex needs at least one face")
    maximal = {F for F in norm if not any(F < G for G in norm)}
    return SimplicialComplex(facets=frozenset(maximal))


def skeleton(K: SimplicialComplex, i: int) -> SimplicialComplex:
    """The subcomplex of faces of dimension at most i, for -1 <= i <= dim."""
    if not -1 <= i <= K.dim:
        raise InvalidArgument(f"skeleton index {i} outside [-1, {K.dim}]")
    if i == K.dim:
        return K
    gens = {frozenset(F) for F in K.faces_of_size(i + 1)}
    gens.update(F for F in K.facets if len(F) <= i)  # short facets survive
    return build_complex(gens)


def star_link(K: SimplicialComplex, F) -> tuple[SimplicialComplex, SimplicialComplex]:
    """(star, link) of a face.  star(K, {}) is K itself."""
    F = frozenset(F)
    if not K.has_face(F):
        raise NotAFace(f"{sorted(F)} is not a face")
    carrying = [G for G in K.facets if F <= G]
    st = SimplicialComplex(facets=frozenset(carrying))
    lk = build_complex([G - F for G in carrying])
    return st, lk


def star(K: SimplicialComplex, F) -> SimplicialComplex:
    return star_link(K, F)[0]


def link(K: SimplicialComplex, F) -> SimplicialComplex:
    return star_link(K, F)[1]


def missing_faces(K: SimplicialComplex, max_card: int) -> list[tuple[int, ...]]:
    """Minimal non-faces with at most max_card vertices, sorted.

    M is a missing face when M itself is not in K but every proper
    subset is.  Enumerates over subsets of the vertex set, which is
    fine for the vertex counts this package works at.
    """
    if max_card < 1:
        raise InvalidArgument("max_card must be at least 1")
    V = K.vertices
    out = []
    for s in range(1, min(max_card, len(V)) + 1):
        for M in combinations(V, s):
            MF = frozenset(M)
            if K.has_face(MF):
                continue
            boundary_in = all(K.has_face(MF - {v}) for v in M)
            if boundary_in:
                out.append(M)
    return sorted(out, key=lambda M: (len(M), M))


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertex sets must be disjoint."""
    if set(A.vertices) & set(B.vertices):
        raise InvalidArgument("join requires disjoint vertex sets")
    return build_complex([F | G for F in A.facets for G in B.facets])


def cone(apex: int, K: SimplicialComplex) -> SimplicialComplex:
    """The cone apex * K.  cone(v, {()}) is the single vertex v."""
    return join(build_complex([{apex}]), K)


@dataclass(frozen=True)
class FGVector:
    """f- and g-numbers of a (d-1)-dimensional complex.

    f runs f_-1..f_{d-1}; g runs g_0..g_{ceil(d/2)} and is zero
    outside that range, which `g_at` encodes.
    """

    d: int
    f: tuple[int, ...]
    g: tuple[int, ...]

    def f_at(self, i: int) -> int:
        # i is a face dimension, -1-based
        if not -1 <= i <= self.d - 1:
            raise InvalidArgument(f"f_{i} undefined for d={self.d}")
        return self.f[i + 1]

    def g_at(self, i: int) -> int:
        if i < 0:
            raise InvalidArgument("g index must be nonnegative")
        if i >= len(self.g):
            return 0
        return self.g[i]


def fg_vector(K: SimplicialComplex, d: int) -> FGVector:
    """f- and g-vector of K viewed as a (d-1)-dimensional complex.

    g_0 = 1 and, for 1 <= i <= ceil(d/2),

        g_i = sum_{k=0}^{i} (-1)^(i-k) C(d-k+1, i-k) f_{k-1}.
    """
    if K.dim != d - 1:
        raise InvalidArgument(f"complex has dim {K.dim}, expected {d - 1}")
    f = K.f_counts()
    top = (d + 1) // 2
    g = [1]
    for i in range(1, top + 1):
        g.append(sum((-1) ** (i - k) * comb(d - k + 1, i - k) * f[k] for k in range(i + 1)))
    return FGVector(d=d, f=f, g=tuple(g))
