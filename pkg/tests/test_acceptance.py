"""End-to-end acceptance checks.

Each test covers one criterion and prints a single PASS/FAIL line
(run with -s to see them as they complete).  All checks are exact;
the timed ones also assert their wall-clock budget.
"""
import time
from contextlib import contextmanager

from polystress import corpus, exactla, reconstruct
from polystress.detect import (
    certificate_check,
    certificate_sweep,
    missing_edge_stress,
    neighborly_certificate,
    probe_missing_faces,
    recover_stress1_from_stress2,
    sign_changes,
)
from polystress.geometry import Embedding
from polystress.rat import R0, R1, rat
from polystress.simplicial import cone, missing_faces, skeleton
from polystress.stress import cone_lift, expand_squarefree, is_infinitesimally_rigid, stress_basis

from oracles import f_vector, g_vector


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        print(f"criterion {number:2d} ({title}): FAIL")
        raise
    print(f"criterion {number:2d} ({title}): PASS")


def ceil_half(d):
    return -(-d // 2)


CORPUS = corpus.default_corpus()


def test_criterion_01_g_dimensions():
    with criterion(1, "stress dimensions match g-vector"):
        t0 = time.monotonic()
        for P in CORPUS:
            g = g_vector(f_vector(P.complex.facet_keys), P.d)
            for k in range(1, ceil_half(P.d) + 1):
                basis = stress_basis(P.complex, P.embedding, k)
                assert len(basis) == g[k], (P.meta, k, len(basis), g[k])
        spots = {("cyclic", 7, 4): 3, ("cross", None, 3): 0, ("free_sum", 2, 4): 1}
        for (fam, n, d), want in spots.items():
            params = {"d": d} if n is None else ({"n": n, "d": d} if fam == "cyclic" else {"i": n, "d": d})
            P = corpus.generate(fam, **params)
            assert len(stress_basis(P.complex, P.embedding, 2)) == want
        elapsed = time.monotonic() - t0
        assert elapsed < 60, f"took {elapsed:.1f}s"


def test_criterion_02_rigidity():
    with criterion(2, "infinitesimal rigidity with exact rank"):
        t0 = time.monotonic()
        for P in CORPUS:
            if P.d < 3:
                continue
            rep = is_infinitesimally_rigid(P.complex, P.embedding)
            f0 = len(P.complex.vertices)
            assert rep.rigid, P.meta
            assert rep.rank == P.d * f0 - (P.d + 1) * P.d // 2, P.meta
        elapsed = time.monotonic() - t0
        assert elapsed < 30, f"took {elapsed:.1f}s"


def test_criterion_03_dehn_extension():
    with criterion(3, "octahedron missing-edge stress, exact values"):
        P = corpus.generate("cross", d=3)
        sv = missing_edge_stress(P, 0, 1)
        assert sv.coeff((0, 1)) == R1
        for a in (0, 1):
            for v in (2, 3, 4, 5):
                assert sv.coeff(tuple(sorted((a, v)))) == -rat(1, 2)
        for e in ((2, 4), (2, 5), (3, 4), (3, 5)):
            assert sv.coeff(e) == rat(1, 2)
        # kernel over the augmented graph is a line
        from polystress.simplicial import build_complex

        graph = skeleton(P.complex, 1)
        aug = build_complex(list(graph.facet_keys) + [(0, 1)])
        assert len(stress_basis(aug, P.embedding, 2)) == 1
        assert sign_changes(sv, P, 0) == 0 and sign_changes(sv, P, 1) == 0
        for v in (2, 3, 4, 5):
            assert sign_changes(sv, P, v) == 4


def test_criterion_04_separation_stress_builder():
    with criterion(4, "high-dimensional missing-edge builder, both roles"):
        from polystress.simplicial import build_complex

        for fam, params in (("cross", {"d": 4}), ("cross", {"d": 5}), ("cyclic", {"n": 8, "d": 4})):
            P = corpus.generate(fam, **params)
            graph = skeleton(P.complex, 1)
            for ab in missing_faces(P.complex, 2):
                a, b = ab
                for x in (a, b):
                    sv = missing_edge_stress(P, x, a if x == b else b)
                    assert sv.coeff(ab) == R1
                    for e in graph.faces_of_size(2):
                        if x in e:
                            assert sv.sign(e) <= 0, (P.meta, ab, x, e)
                # independent feasibility over the augmented stress space
                aug = build_complex(list(graph.facet_keys) + [ab])
                basis = stress_basis(aug, P.embedding, 2)
                order = aug.faces_of_size(2)
                idx = {e: i for i, e in enumerate(order)}
                weak = [idx[e] for e in order if a in e and e != ab]
                witness = exactla.strict_feasible([s.as_vector(order) for s in basis], [idx[ab]], weak)
                assert witness is not None, (P.meta, ab)


def test_criterion_05_certificate_soundness():
    with criterion(5, "sweep never certifies a genuine face"):
        t0 = time.monotonic()
        for P in CORPUS:
            if P.d < 4:
                continue
            graph = skeleton(P.complex, 1)
            basis = stress_basis(graph, P.embedding, 2)
            certified, _ = certificate_sweep(graph, basis, P.d, 2)
            for M in certified:
                assert not P.complex.has_face(M), (P.meta, M)
        elapsed = time.monotonic() - t0
        assert elapsed < 120, f"took {elapsed:.1f}s"


def test_criterion_06_reconstruction_round_trip():
    with criterion(6, "prime reconstruction from graph and 2-stresses"):
        cases = [("cyclic", {"n": n, "d": 4}) for n in range(6, 10)]
        cases += [("cross", {"d": 4}), ("cross", {"d": 5})]
        cases += [("free_sum", {"i": i, "d": d}) for i, d in ((2, 4), (2, 5), (2, 6), (3, 6))]
        for fam, params in cases:
            P = corpus.generate(fam, **params)
            graph = skeleton(P.complex, 1)
            basis = stress_basis(graph, P.embedding, 2)
            rep = reconstruct.run_pipeline(graph, basis, P.d, 2, prime=True, truth=P.complex)
            assert rep.status == "full", (fam, params, rep.status)
            assert rep.completion is not None and rep.diff is not None
            assert rep.diff.equal, (fam, params)


def test_criterion_07_neighborly_certificates():
    with criterion(7, "cyclic polytope sign patterns for all missing faces"):
        for P in CORPUS:
            if P.meta["family"] != "cyclic":
                continue
            all_missing = missing_faces(P.complex, len(P.complex.vertices))
            for k in (2, 3):
                if P.d < 2 * k or k > P.d // 2:
                    continue
                for M in all_missing:
                    cert = neighborly_certificate(P, M, k)
                    sv = cert.stress
                    Mset = set(M)
                    for G in P.complex.faces_of_size(k):
                        sgn = sv.sign(G)
                        if set(G) <= Mset:
                            assert sgn == 1, (P.meta, k, M, G)
                        else:
                            parity = (-1) ** len(set(G) - Mset)
                            assert sgn * parity >= 0, (P.meta, k, M, G)


def test_criterion_08_cone_lemma():
    with criterion(8, "cone stress dimensions and height-product lift identity"):
        for P in CORPUS:
            apex = max(P.complex.vertices) + 1
            CK = cone(apex, P.complex)
            heights = {v: rat(v + 1) for v in P.complex.vertices}
            coords = {v: tuple(heights[v] * x for x in P.embedding.point(v)) + (heights[v],)
                      for v in P.complex.vertices}
            coords[apex] = tuple(R0 for _ in range(P.d + 1))
            cp = Embedding(dim=P.d + 1, coords=coords)
            base2 = None
            for k in range(1, ceil_half(P.d) + 1):
                base = stress_basis(P.complex, P.embedding, k)
                lifted = stress_basis(CK, cp, k)
                assert len(base) == len(lifted), (P.meta, k)
                if k == 2:
                    base2 = base
            if not base2:
                continue
            sv = expand_squarefree(base2[0], P.complex, P.embedding)
            lift = cone_lift(sv, heights, apex)
            for F in P.complex.faces_of_size(2):
                prod = heights[F[0]] * heights[F[1]]
                assert sv.coeff(F) == prod * lift.coeff(F), (P.meta, F)
                assert sv.sign(F) == lift.sign(F), (P.meta, F)


def test_criterion_09_stress1_recovery():
    with criterion(9, "affine dependences recovered from 2-stresses"):
        for n, want in ((6, 1), (7, 2)):
            P = corpus.generate("cyclic", n=n, d=4)
            rec = recover_stress1_from_stress2(P)
            direct = stress_basis(P.complex, P.embedding, 1)
            assert len(rec) == want and len(direct) == want
            order = tuple((v,) for v in P.complex.vertices)
            span_rec = exactla.rref([s.as_vector(order) for s in rec])
            span_dir = exactla.rref([s.as_vector(order) for s in direct])
            assert span_rec == span_dir


def test_criterion_10_probe_determinism():
    with criterion(10, "probe verdicts deterministic and re-verifiable"):
        for fam, params, k in (("free_sum", {"i": 2, "d": 5}, 3), ("cyclic", {"n": 8, "d": 5}, 3)):
            P = corpus.generate(fam, **params)
            first = probe_missing_faces(P, k)
            second = probe_missing_faces(P, k)
            assert first == second
            for entry in first:
                if entry["found"]:
                    assert entry["verified"]
                    assert certificate_check(entry["certificate"], P.complex, P.embedding)
