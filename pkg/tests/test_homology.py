import random
import warnings

import pytest
from hypothesis import given, strategies as st

from nervekit import corpus
from nervekit.catcore import validate_functor
from nervekit.errors import NotChainMap, TruncationWarning
from nervekit.homology import (
    HomologyReport,
    QuasiIsoReport,
    boundary_squares_zero,
    determinant,
    homology,
    mapping_cone,
    matmul,
    normalized_chains,
    pi0,
    quasi_iso_check,
    smith_normal_form,
    snf_diagonal,
)
from nervekit.simpl import (
    SimplicialMap,
    boundary_simplex,
    build_sset,
    constant_smap,
    identity_smap,
    nerve,
    nerve_map,
    ordered_complex,
    standard_simplex,
)

import oracles

seeds = st.integers(0, 10**6)
matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def nerve_circle(cap):
    # the circle as Δ1 with both ends collapsed to one vertex v
    def simplices(n):
        out = {("v",) * (n + 1)}
        for k in range(1, n + 1):
            out.add(tuple("a" if i < k else "b" for i in range(n + 1)))
        return out

    def norm(x):
        return ("v",) * len(x) if len(set(x)) == 1 else x

    def face(n, i, x):
        return norm(x[:i] + x[i + 1:])

    def degeneracy(n, i, x):
        return x[: i + 1] + x[i:]

    return build_sset([simplices(n) for n in range(cap + 1)], face, degeneracy)


def test_snf_example():
    D, L, R = smith_normal_form([[2, 0], [0, 3]])
    assert D == [[1, 0], [0, 6]]
    assert matmul(matmul(L, [[2, 0], [0, 3]]), R) == D


@given(matrices)
def test_snf_properties(M):
    D, L, R = smith_normal_form(M)
    assert matmul(matmul(L, M), R) == D
    assert abs(determinant(L)) == 1 and abs(determinant(R)) == 1
    diag = snf_diagonal(M)
    assert diag == oracles.invariant_factors(M)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


@given(matrices)
def test_determinant_matches_oracle(M):
    k = min(len(M), len(M[0]))
    sq = [row[:k] for row in M[:k]]
    assert determinant(sq) == oracles.det(sq)


def test_boundary_matrix_interval():
    cx = normalized_chains(standard_simplex(1, 1))
    assert sorted(cx.dense(1)) == [[-1], [1]]


def test_homology_examples():
    assert homology(standard_simplex(2, 3)).render() == "H_0 = Z; H_1 = 0; H_2 = 0"
    assert homology(boundary_simplex(2, 3)).render() == "H_0 = Z; H_1 = Z; H_2 = 0"
    assert homology(nerve_circle(3)).render() == "H_0 = Z; H_1 = Z; H_2 = 0"
    assert homology(ordered_complex([(0,), (1,)], 2)).render() == "H_0 = Z^2; H_1 = 0"


def test_rp2_torsion():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = nerve(corpus.z2_monoid(), 3)
    rep = homology(K, 3)
    assert rep.group(1) == "Z/2"
    assert rep.truncated and rep.unreliable_from == 2


def test_report_round_trip():
    rep = homology(boundary_simplex(2, 3))
    assert HomologyReport.from_dict(rep.to_dict()) == rep


@given(seeds)
def test_betti0_is_pi0(seed):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = nerve(corpus.random_poset(random.Random(seed)), 2)
    rep = homology(K, 2)
    assert rep.betti[0] == len(pi0(K)) == rep.pi0


@given(seeds)
def test_betti_matches_rational_oracle(seed):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = nerve(corpus.random_category(random.Random(seed), max_objects=3, max_morphisms=8), 3)
    assert list(homology(K, 3).betti) == oracles.rational_betti(K, 3)


@given(seeds)
def test_homology_invariant_under_relabeling(seed):
    rng = random.Random(seed)
    facets = [tuple(sorted(rng.sample(range(5), rng.randint(1, 3)))) for _ in range(rng.randint(1, 4))]
    # relabeling must preserve the vertex order inside each facet for an
    # ordered complex, so compare against the reversed-order relabeling
    K = ordered_complex(facets, 3)
    L = ordered_complex([tuple(4 - v for v in f) for f in facets], 3)
    assert homology(K, 3).same_groups(homology(L, 3))


def test_chains_square_zero():
    assert boundary_squares_zero(normalized_chains(standard_simplex(3, 3)))


def test_quasi_iso_vertex_into_simplex():
    K = standard_simplex(0, 3)
    L = standard_simplex(2, 3)
    q = quasi_iso_check(constant_smap(K, L, (0,)), 3)
    assert q.quasi_iso and q.verdict() == "quasi-iso in range [0,2]"
    assert q.notes


def test_quasi_iso_vertex_into_circle():
    K = standard_simplex(0, 3)
    L = nerve_circle(3)
    q = quasi_iso_check(constant_smap(K, L, ("v",)), 3)
    assert not q.quasi_iso and q.failing_degree == 1
    assert q.verdict() == "not a quasi-iso: cone H_1 = Z"
    assert not q.notes
    assert QuasiIsoReport.from_dict(q.to_dict()) == q


def test_quasi_iso_pi0_failure():
    K = standard_simplex(0, 2)
    L = ordered_complex([(0,), (1,)], 2)
    q = quasi_iso_check(constant_smap(K, L, (0,)), 2)
    assert not q.quasi_iso and not q.pi0_bijective


def test_identity_is_quasi_iso():
    K = boundary_simplex(2, 3)
    assert quasi_iso_check(identity_smap(K), 3).quasi_iso


def test_nerve_of_terminal_map_is_quasi_iso():
    C = corpus.diamond()
    T = corpus.terminal()
    F = validate_functor(C, T, {x: "*" for x in C.objects}, {m: ("*", "*") for m in C.morphisms})
    assert quasi_iso_check(nerve_map(F, 3), 3).quasi_iso


def test_not_chain_map():
    K = standard_simplex(1, 1)
    L = standard_simplex(1, 1)
    bad = SimplicialMap(K, L, ({(0,): (0,), (1,): (0,)}, {x: (0, 1) if x == (0, 1) else x for x in K.levels[1]}))
    with pytest.raises(NotChainMap):
        mapping_cone(bad, 1)
