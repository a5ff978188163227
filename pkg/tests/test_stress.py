from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import instance
from oracles import f_vector, g_vector, gauss_rank, is_affine_stress, poly_from_full, supported_on
from polystress.errors import (
    DegenerateEmbedding,
    DegenerateFace,
    ExpansionFailure,
    InvalidArgument,
    NotNeighborlyEnough,
)
from polystress.exactla import kernel_basis, rref
from polystress.geometry import Embedding, vertex_figure
from polystress.rat import R0, R1, rat
from polystress.simplicial import build_complex, cone, skeleton
from polystress.stress import (
    RigidityReport,
    StressVector,
    balancing_residual,
    cone_lift,
    expand_squarefree,
    is_infinitesimally_rigid,
    power_stress,
    rigidity_matrix,
    stress_basis,
    theta,
)


def emb(pts, dim=None):
    dim = dim if dim is not None else len(pts[0])
    return Embedding.build(dim, {i: p for i, p in enumerate(pts)})


def linear_form(sv):
    """Vertex -> coefficient map of a degree-1 stress vector."""
    return {v: c for (v,), c in sv.coeffs.items()}


def octahedron_plus_diagonal(octahedron):
    return build_complex(list(skeleton(octahedron.complex, 1).facets) + [(0, 1)])


# ---------------------------------------------------------------------------
# theta


def test_theta_octahedron(octahedron):
    th = theta(octahedron.embedding)
    assert (th.nrows, th.ncols) == (4, 6)
    assert th.col_labels == (0, 1, 2, 3, 4, 5)
    assert th.entries[0] == (R1, -R1, R0, R0, R0, R0)
    assert th.entries[1] == (R0, R0, R1, -R1, R0, R0)
    assert th.entries[2] == (R0, R0, R0, R0, R1, -R1)
    assert th.entries[3] == (R1,) * 6


def test_theta_single_point():
    th = theta(Embedding.build(1, {7: (0,)}))
    assert th.entries == ((R0,), (R1,))


def test_theta_column_order():
    p = emb([(0, 0), (1, 0), (0, 1)])
    th = theta(p, order=(2, 0, 1))
    assert th.col_labels == (2, 0, 1)
    assert th.entries[0] == (R0, R0, R1)


def test_theta_translation_keeps_row_span(octahedron):
    p = octahedron.embedding
    ident = [[R1 if i == j else R0 for j in range(3)] for i in range(3)]
    q = p.transformed(ident, (rat(1), rat(-2), rat(1, 3)))
    assert rref([list(r) for r in theta(p).entries]) == rref([list(r) for r in theta(q).entries])


# ---------------------------------------------------------------------------
# rigidity matrices


def test_rigidity_matrix_triangle():
    K = build_complex([(0, 1, 2)])
    p = emb([(0, 0), (1, 0), (0, 1)])
    R = rigidity_matrix(K, p, 2)
    assert (R.nrows, R.ncols) == (6, 3)
    rows = {lab: R.entries[i] for i, lab in enumerate(R.row_labels)}
    j = R.col_labels.index((0, 1))
    # altitude over a single point is just the difference vector
    assert [rows[((0,), ax)][j] for ax in range(2)] == [R1, R0]
    assert [rows[((1,), ax)][j] for ax in range(2)] == [-R1, R0]
    j = R.col_labels.index((1, 2))
    assert [rows[((0,), ax)][j] for ax in range(2)] == [R0, R0]
    rank, kern = kernel_basis(R)
    assert (rank, kern) == (3, [])
    assert gauss_rank(R.entries) == 3


def test_rigidity_matrix_octahedron(octahedron):
    G = skeleton(octahedron.complex, 1)
    R = rigidity_matrix(G, octahedron.embedding, 2)
    assert (R.nrows, R.ncols) == (18, 12)
    rank, kern = kernel_basis(R)
    assert (rank, kern) == (12, [])
    assert gauss_rank(R.entries) == 12


def test_rigidity_matrix_octahedron_plus_diagonal(octahedron):
    aug = octahedron_plus_diagonal(octahedron)
    R = rigidity_matrix(aug, octahedron.embedding, 2)
    assert (R.nrows, R.ncols) == (18, 13)
    rank, kern = kernel_basis(R)
    assert rank == 12 and len(kern) == 1
    assert gauss_rank(R.entries) == 12


def test_rigidity_matrix_rejects():
    with pytest.raises(InvalidArgument):
        rigidity_matrix(build_complex([(0, 1)]), emb([(0,), (1,)], dim=1), 1)
    with pytest.raises(DegenerateFace):
        rigidity_matrix(build_complex([(0, 1)]), emb([(0,), (0,)], dim=1), 2)


# ---------------------------------------------------------------------------
# stress bases


def test_stress_basis_k1_affine_dependences(octahedron):
    basis = stress_basis(octahedron.complex, octahedron.embedding, 1)
    assert len(basis) == 2
    for sv in basis:
        assert sv.degree == 1
        total = R0
        drift = [R0, R0, R0]
        for (v,), c in sv.coeffs.items():
            total += c
            drift = [x + c * y for x, y in zip(drift, octahedron.embedding.point(v))]
        assert total == R0
        assert drift == [R0, R0, R0]


def test_stress_basis_simplex_empty():
    P = instance("simplex", d=4)
    for k in (1, 2):
        assert stress_basis(P.complex, P.embedding, k) == []


@pytest.mark.parametrize(
    "family,params,k,dim",
    [
        ("cross", {"d": 3}, 2, 0),
        ("cross", {"d": 4}, 2, 2),
        ("cyclic", {"n": 6, "d": 4}, 2, 1),
        ("cyclic", {"n": 7, "d": 4}, 2, 3),
        ("free_sum", {"i": 2, "d": 4}, 2, 1),
        ("cyclic", {"n": 9, "d": 6}, 3, 4),
    ],
)
def test_stress_basis_dims(family, params, k, dim):
    P = instance(family, **params)
    basis = stress_basis(P.complex, P.embedding, k)
    assert len(basis) == dim
    f = f_vector(P.complex.facets)
    assert len(basis) == g_vector(f, P.d)[k]
    for sv in basis:
        res = balancing_residual(sv, P.complex, P.embedding)
        assert all(all(x == R0 for x in vec) for vec in res.values())


def test_stress_basis_rejects_degree_zero(octahedron):
    with pytest.raises(InvalidArgument):
        stress_basis(octahedron.complex, octahedron.embedding, 0)


# ---------------------------------------------------------------------------
# balancing residuals


def test_balancing_residual_single_edge(octahedron):
    sv = StressVector(degree=2, coeffs={(0, 2): R1})
    res = balancing_residual(sv, octahedron.complex, octahedron.embedding)
    assert any(x != R0 for x in res[(0,)])
    assert any(x != R0 for x in res[(2,)])
    assert all(x == R0 for x in res[(4,)])


def test_balancing_residual_rejects(octahedron):
    with pytest.raises(InvalidArgument):
        balancing_residual(
            StressVector(degree=1, coeffs={(0,): R1}), octahedron.complex, octahedron.embedding
        )
    with pytest.raises(InvalidArgument):
        balancing_residual(
            StressVector(degree=2, coeffs={(0, 1): R1}), octahedron.complex, octahedron.embedding
        )


def test_octahedron_diagonal_kernel_values(octahedron):
    aug = octahedron_plus_diagonal(octahedron)
    p = octahedron.embedding
    (sv,) = stress_basis(aug, p, 2)
    lam = sv.scaled(1 / sv.coeff((0, 1)))
    assert lam.coeff((0, 1)) == R1
    for e in [(2, 4), (2, 5), (3, 4), (3, 5)]:
        assert lam.coeff(e) == rat(1, 2)
    for a in (0, 1):
        for v in (2, 3, 4, 5):
            assert lam.coeff((a, v)) == rat(-1, 2)
    # the other two diagonals are not faces of the carrier, so no coefficient
    assert lam.coeff((2, 3)) == R0 and lam.coeff((4, 5)) == R0
    full = expand_squarefree(lam, aug, p)
    assert is_affine_stress(poly_from_full(full.full), p.coords, aug.vertices, 3)


# ---------------------------------------------------------------------------
# rigidity reports


def test_rigid_octahedron(octahedron):
    rep = is_infinitesimally_rigid(octahedron.complex, octahedron.embedding)
    assert rep == RigidityReport(
        rigid=True, rank=12, expected_rank=12, stress_dim=0, d=3, f0=6, f1=12
    )


def test_flexible_four_cycle():
    K = build_complex([(0, 1), (1, 2), (2, 3), (0, 3)])
    rep = is_infinitesimally_rigid(K, emb([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert not rep.rigid
    assert (rep.rank, rep.expected_rank, rep.stress_dim) == (4, 5, 0)


def test_rigid_simplex_graph():
    P = instance("simplex", d=5)
    rep = is_infinitesimally_rigid(P.complex, P.embedding)
    assert rep.rigid and rep.stress_dim == 0


def test_rigidity_rejects_flat_embedding():
    K = build_complex([(0, 1), (1, 2)])
    with pytest.raises(DegenerateEmbedding):
        is_infinitesimally_rigid(K, emb([(0, 0), (1, 0), (2, 0)]))


# ---------------------------------------------------------------------------
# squarefree-to-full expansion


def test_expand_zero_and_degree_one(octahedron):
    z = expand_squarefree(StressVector(degree=2, coeffs={}), octahedron.complex, octahedron.embedding)
    assert z.is_zero() and z.full == {}
    phi = stress_basis(octahedron.complex, octahedron.embedding, 1)[0]
    e = expand_squarefree(phi, octahedron.complex, octahedron.embedding)
    assert e.full == {((v, 1),): c for (v,), c in phi.coeffs.items()}


def test_expand_reproduces_squared_form():
    P = instance("free_sum", i=2, d=4)
    (phi_sv,) = stress_basis(P.complex, P.embedding, 1)
    sq = power_stress(linear_form(phi_sv), 2, P.complex, P.embedding)
    e = expand_squarefree(StressVector(degree=2, coeffs=dict(sq.coeffs)), P.complex, P.embedding)
    assert e.full == sq.full
    assert any(any(x == 2 for _, x in m) for m in e.full)  # squares really appear


def test_expand_passes_direct_differentiation():
    P = instance("cyclic", n=6, d=4)
    (sv,) = stress_basis(P.complex, P.embedding, 2)
    e = expand_squarefree(sv, P.complex, P.embedding)
    poly = poly_from_full(e.full)
    assert is_affine_stress(poly, P.embedding.coords, P.complex.vertices, 4)
    faces = {F for s in (1, 2) for F in P.complex.faces_of_size(s)}
    assert supported_on(poly, faces)


def test_expand_rejects_non_stress(octahedron):
    with pytest.raises(ExpansionFailure):
        expand_squarefree(
            StressVector(degree=2, coeffs={(0, 2): R1, (0, 3): R1}),
            octahedron.complex,
            octahedron.embedding,
        )
    with pytest.raises(ExpansionFailure):
        expand_squarefree(
            StressVector(degree=2, coeffs={(0, 1): R1}), octahedron.complex, octahedron.embedding
        )


# ---------------------------------------------------------------------------
# cone lifts


def test_cone_lift_input_checks():
    sf_only = StressVector(degree=2, coeffs={(1, 2): R1})
    with pytest.raises(InvalidArgument):
        cone_lift(sf_only, {1: R1, 2: R1}, 0)
    full = StressVector(degree=2, coeffs={(1, 2): R1}, full={((1, 1), (2, 1)): R1})
    with pytest.raises(InvalidArgument):
        cone_lift(full, {1: R1, 2: R0}, 0)
    with pytest.raises(InvalidArgument):
        cone_lift(full, {1: R1}, 0)
    with pytest.raises(InvalidArgument):
        cone_lift(full, {1: R1, 2: R1}, 2)
    assert cone_lift(StressVector(degree=2, coeffs={}, full={}), {1: R1}, 0).is_zero()


def test_cone_lift_octahedron_vertex_figure(octahedron):
    Q, a = vertex_figure(octahedron, 0)
    # both diagonals added, so the quadrilateral carries exactly one 2-stress
    K4 = build_complex(list(Q.complex.facets) + [(2, 3), (4, 5)])
    (w,) = stress_basis(K4, Q.embedding, 2)
    w = expand_squarefree(w, K4, Q.embedding)
    lift = cone_lift(w, a, 0)
    assert lift.degree == 2

    apex_cone = cone(0, K4)
    pts = {0: (R0, R0, R0)}
    for v in K4.vertices:
        q = Q.embedding.point(v)
        pts[v] = (a[v] * q[0], a[v] * q[1], a[v])
    pc = Embedding.build(3, pts)

    assert is_affine_stress(poly_from_full(lift.full), pc.coords, apex_cone.vertices, 3)
    for F in K4.faces_of_size(2):
        assert w.coeff(F) == a[F[0]] * a[F[1]] * lift.coeff(F)
    for F in Q.complex.faces_of_size(2):
        assert lift.sign(F) == w.sign(F) != 0
    assert len(stress_basis(apex_cone, pc, 2)) == 1
    assert len(stress_basis(apex_cone, pc, 1)) == len(stress_basis(K4, Q.embedding, 1)) == 1


def test_cone_lift_cyclic_heights():
    P = instance("cyclic", n=6, d=4)
    (sv,) = stress_basis(P.complex, P.embedding, 2)
    w = expand_squarefree(sv, P.complex, P.embedding)
    a = {v: rat(v + 1) for v in P.complex.vertices}
    lift = cone_lift(w, a, 0)
    for F in P.complex.faces_of_size(2):
        assert w.coeff(F) == a[F[0]] * a[F[1]] * lift.coeff(F)
    assert any(any(v == 0 for v, _ in m) for m in lift.full)  # apex really enters
    C = cone(0, P.complex)
    pts = {0: (R0,) * 5}
    for v in P.complex.vertices:
        pts[v] = tuple([a[v] * x for x in P.embedding.point(v)] + [a[v]])
    pc = Embedding.build(5, pts)
    res = balancing_residual(StressVector(degree=2, coeffs=dict(lift.coeffs)), C, pc)
    assert all(all(x == R0 for x in vec) for vec in res.values())


# ---------------------------------------------------------------------------
# powers of linear forms


def test_power_stress_degree_one(octahedron):
    phi_sv = stress_basis(octahedron.complex, octahedron.embedding, 1)[0]
    phi = linear_form(phi_sv)
    out = power_stress(phi, 1, octahedron.complex, octahedron.embedding)
    assert out.coeffs == phi_sv.coeffs
    assert out.full == {((v, 1),): c for v, c in phi.items()}


def test_power_stress_free_sum_signs():
    P = instance("free_sum", i=2, d=4)
    (phi_sv,) = stress_basis(P.complex, P.embedding, 1)
    phi = linear_form(phi_sv)
    if phi[1] < 0:
        phi = {v: -c for v, c in phi.items()}
    assert all(phi[v] > 0 for v in (1, 2, 3))
    assert all(phi[v] < 0 for v in (4, 5, 6))
    sq = power_stress(phi, 2, P.complex, P.embedding)
    tau = {4, 5, 6}
    for u, v in combinations(sorted(phi), 2):
        assert sq.coeff((u, v)) == 2 * phi[u] * phi[v]
        assert sq.sign((u, v)) == (-1) ** len({u, v} & tau)


def test_power_stress_cyclic_pattern():
    P = instance("cyclic", n=6, d=4)
    (phi_sv,) = stress_basis(P.complex, P.embedding, 1)
    phi = linear_form(phi_sv)
    if phi[1] < 0:
        phi = {v: -c for v, c in phi.items()}
    M = {1, 3, 5}
    assert all(phi[v] > 0 for v in M)
    assert all(phi[v] < 0 for v in (2, 4, 6))
    sq = power_stress(phi, 2, P.complex, P.embedding)
    for G in sq.support():
        assert (-1) ** len(set(G) - M) * sq.coeff(G) > 0
    assert is_affine_stress(poly_from_full(sq.full), P.embedding.coords, P.complex.vertices, 4)
    with pytest.raises(NotNeighborlyEnough):
        power_stress(phi, 3, P.complex, P.embedding)


def test_power_stress_rejects(octahedron):
    with pytest.raises(InvalidArgument):
        power_stress({0: R1, 1: R1}, 0, octahedron.complex, octahedron.embedding)
    with pytest.raises(InvalidArgument):
        power_stress({}, 2, octahedron.complex, octahedron.embedding)
    with pytest.raises(InvalidArgument):
        power_stress({0: R1}, 2, octahedron.complex, octahedron.embedding)


# ---------------------------------------------------------------------------
# affine invariance


def test_rigidity_affine_invariant(octahedron):
    mat = [[rat(1), rat(1), rat(0)], [rat(0), rat(1), rat(1)], [rat(0), rat(0), rat(1)]]
    q = octahedron.embedding.transformed(mat, (rat(2), rat(-1, 3), rat(5)))
    rep = is_infinitesimally_rigid(octahedron.complex, q)
    assert rep.rigid and rep.rank == 12 and rep.stress_dim == 0


@given(data=st.data())
@settings(max_examples=30, deadline=None)
def test_stress_dim_affine_invariant(data):
    P = instance("cyclic", n=6, d=4)
    d = 4
    mat = data.draw(
        st.lists(st.lists(st.integers(-4, 4), min_size=d, max_size=d), min_size=d, max_size=d)
    )
    assume(gauss_rank(mat) == d)
    den = data.draw(st.integers(1, 3))
    shift = data.draw(st.lists(st.integers(-3, 3), min_size=d, max_size=d))
    q = P.embedding.transformed(
        [[rat(x, den) for x in row] for row in mat], tuple(rat(x) for x in shift)
    )
    assert len(stress_basis(P.complex, q, 1)) == 1
    assert len(stress_basis(P.complex, q, 2)) == 1


# ---------------------------------------------------------------------------
# StressVector plumbing


def test_stress_vector_helpers():
    sv = StressVector(degree=2, coeffs={(1, 2): rat(3), (2, 3): rat(-1, 2)})
    assert sv.coeff((2, 1)) == rat(3)
    assert sv.sign((2, 3)) == -1 and sv.sign((1, 3)) == 0
    assert sv.support() == [(1, 2), (2, 3)]
    order = [(1, 2), (1, 3), (2, 3)]
    vec = sv.as_vector(order)
    assert vec == [rat(3), R0, rat(-1, 2)]
    assert StressVector.from_vector(2, order, vec).coeffs == sv.coeffs
    assert sv.scaled(-2).coeff((1, 2)) == rat(-6)
    assert sv.scaled(0).is_zero()
    full = {((1, 1), (2, 1)): rat(5), ((1, 2),): rat(7)}
    fv = StressVector.from_full(2, full)
    assert fv.coeffs == {(1, 2): rat(5)}
    assert fv.full == full
