import random
import warnings

import pytest
from hypothesis import given, strategies as st

from nervekit import corpus
from nervekit.catcore import check_category_laws, find_isomorphism, opposite, validate_functor
from nervekit.errors import CapMismatch, CapTooSmall, NotFunctorial, NotRegular, NotSimplicial, TruncationWarning
from nervekit.simpl import (
    apply_operator,
    boundary_simplex,
    category_of_elements,
    category_of_simplices,
    chi,
    compose_smaps,
    constant_smap,
    diag,
    identity_smap,
    nerve,
    nerve_map,
    opposite_nerve_iso,
    ordered_complex,
    simplicial_identity_failures,
    smap_failures,
    sset_from_json,
    sset_to_json,
    standard_simplex,
    validate_smap,
)
from nervekit.doublecat import binerve, trivial_double

seeds = st.integers(0, 10**6)


def quiet_nerve(C, cap):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return nerve(C, cap)


def test_nerve_terminal():
    K = nerve(corpus.terminal(), 3)
    assert K.counts() == (1, 1, 1, 1)
    assert K.nondegenerate_counts() == (1, 0, 0, 0)
    assert not K.truncated


def test_nerve_chain1():
    K = nerve(corpus.chain(1), 2)
    assert K.nondegenerate_counts() == (2, 1, 0)


def test_nerve_parallel_pair():
    K = nerve(corpus.parallel_pair(), 2)
    assert K.nondegenerate_counts() == (2, 2, 0)
    assert K.face(1, 0, ("f",)) == "b" and K.face(1, 1, ("f",)) == "a"


def test_nerve_truncation_warning():
    with pytest.warns(TruncationWarning):
        K = nerve(corpus.chain(3), 2)
    assert K.truncated
    with pytest.warns(TruncationWarning):
        nerve(corpus.z2_monoid(), 3)
    with pytest.raises(CapTooSmall):
        nerve(corpus.chain(1), -1)


def test_nerve_diamond_counts():
    assert nerve(corpus.diamond(), 3).nondegenerate_counts() == (4, 5, 2, 0)


@given(seeds)
def test_nerve_identities_random_poset(seed):
    C = corpus.random_poset(random.Random(seed))
    assert simplicial_identity_failures(quiet_nerve(C, 3), limit=1) == []


@given(seeds)
def test_nerve_identities_random_category(seed):
    C = corpus.random_category(random.Random(seed))
    assert simplicial_identity_failures(quiet_nerve(C, 3), limit=1) == []


def test_broken_face_detected():
    K = standard_simplex(1, 2)
    raw = sset_to_json(K)
    raw["faces"][1][0]["(0,1)"] = "(0)"
    with pytest.raises(NotSimplicial):
        sset_from_json(raw)


def test_sset_json_round_trip():
    K = boundary_simplex(2, 2)
    L = sset_from_json(sset_to_json(K))
    assert sset_to_json(L) == sset_to_json(K)


def test_ordered_complex_counts():
    assert standard_simplex(2, 2).nondegenerate_counts() == (3, 3, 1)
    assert boundary_simplex(2, 2).nondegenerate_counts() == (3, 3, 0)
    assert ordered_complex([(0, 1), (1, 2)], 1).nondegenerate_counts() == (3, 2)


def test_nerve_map_and_composition():
    C = corpus.diamond()
    T = corpus.terminal()
    F = validate_functor(C, T, {x: "*" for x in C.objects}, {m: ("*", "*") for m in C.morphisms})
    f = nerve_map(F, 2)
    assert smap_failures(f) == []
    g = identity_smap(f.target)
    assert compose_smaps(g, f) == f


def test_constant_and_invalid_map():
    K = standard_simplex(1, 2)
    L = standard_simplex(2, 2)
    assert smap_failures(constant_smap(K, L, (0,))) == []
    maps = [{x: x for x in lv} for lv in K.levels]
    maps[0] = {(0,): (1,), (1,): (0,)}
    with pytest.raises(NotSimplicial):
        validate_smap(K, L, maps)


def test_apply_operator():
    K = standard_simplex(2, 3)
    assert apply_operator(K, 2, (0, 1, 2), (0, 2)) == (0, 2)
    assert apply_operator(K, 2, (0, 1, 2), (1, 1)) == (1, 1)
    assert apply_operator(K, 2, (0, 1, 2), (0, 0, 2)) == (0, 0, 2)


def test_category_of_simplices():
    D = category_of_simplices(standard_simplex(2, 2))
    assert len(D.objects) == 7
    assert check_category_laws(D) == []
    B = category_of_simplices(boundary_simplex(2, 2))
    assert (len(B.objects), len(B.morphisms)) == (6, 12)


def test_category_of_simplices_irregular():
    # in Z/2 the chain (s, s) is nondegenerate but d1 of it is the identity
    with pytest.warns(NotRegular):
        category_of_simplices(quiet_nerve(corpus.z2_monoid(), 2))


def test_category_of_elements():
    C = corpus.chain(1)
    E, proj = category_of_elements(
        C, {0: ["p"], 1: ["q", "r"]},
        {(0, 0): {"p": "p"}, (1, 1): {"q": "q", "r": "r"}, (0, 1): {"p": "q"}},
    )
    assert len(E.objects) == 3 and len(E.morphisms) == 4
    assert check_category_laws(E) == []
    assert proj.obj_map[(0, "p")] == 0 and proj.mor_map[((0, 1), "p")] == (0, 1)


def test_category_of_elements_not_functorial():
    C = corpus.chain(1)
    with pytest.raises(NotFunctorial):
        category_of_elements(C, {0: ["p"], 1: ["q"]}, {(0, 0): {"p": "p"}, (1, 1): {"q": "q"}, (0, 1): {}})


def test_elements_of_constant_point_is_base():
    C = corpus.diamond()
    E, _ = category_of_elements(C, {c: ["*"] for c in C.objects}, {m: {"*": "*"} for m in C.morphisms})
    assert find_isomorphism(E, C) is not None


def test_diag_cap_mismatch():
    B = binerve(trivial_double(corpus.chain(1)), 1, 2)
    with pytest.raises(CapMismatch):
        diag(B)


@pytest.mark.parametrize("name", ["terminal", "chain1", "chain2", "parallel", "diamond", "idempotent"])
def test_chi_sections(name):
    from nervekit.simpl import edge_map

    C = corpus.corpus_categories(extra=True)[name]
    D = trivial_double(C)
    L = diag(binerve(D, 2, 2))
    x = chi(C, 2, diagonal=L)
    for direction in "hv":
        e = edge_map(D, direction, 2, diagonal=L)
        assert compose_smaps(x, e) == identity_smap(e.source)


@given(seeds)
def test_opposite_nerve_iso(seed):
    C = corpus.random_category(random.Random(seed), max_objects=3, max_morphisms=8)
    f = opposite_nerve_iso(C, 2)
    assert smap_failures(f) == []
    assert all(len(set(m.values())) == len(m) for m in f.maps)
    assert opposite(opposite(C)) == C
