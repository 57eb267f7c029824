import random

import pytest
from hypothesis import given, strategies as st

from nervekit import corpus
from nervekit.catcore import (
    HomotopyEquivalenceCertificate,
    NaturalTransformation,
    ZigZag,
    category_to_json,
    check_category_laws,
    comma,
    compose_functors,
    failing_square,
    find_isomorphism,
    identity_functor,
    identity_transformation,
    make_category,
    nat_trans_search,
    opposite,
    product,
    search_bound,
    terminal_objects,
    universal_square,
    validate_category,
    validate_functor,
    verify_certificate,
)
from nervekit.errors import (
    AnchorNotFound,
    DanglingEndpoint,
    ExplosionGuard,
    IncompleteCompositionTable,
    MissingIdentity,
    NonAssociative,
    NotFound,
    NotPreservingComposition,
    NotPreservingIdentity,
    EndpointMismatch,
)

seeds = st.integers(0, 10**6)


def test_terminal_valid():
    C = validate_category({"objects": ["*"], "morphisms": [{"id": "i", "src": "*", "dst": "*"}],
                           "identities": {"*": "i"}})
    assert len(C.objects) == 1 and len(C.morphisms) == 1


def test_chain_counts():
    C = corpus.chain(2)
    assert (len(C.objects), len(C.morphisms)) == (3, 6)
    assert check_category_laws(C) == []


def test_auto_identities():
    C = validate_category({"objects": ["a", "b"], "morphisms": [{"id": "f", "src": "a", "dst": "b"}]},
                          auto_identities=True)
    assert C.id("a") == "id_a" and C.compose("f", "id_a") == "f"


def test_incomplete_table():
    raw = {
        "objects": ["a", "b", "c", "d"],
        "morphisms": [
            {"id": "f", "src": "a", "dst": "b"}, {"id": "g", "src": "b", "dst": "c"},
            {"id": "h", "src": "c", "dst": "d"}, {"id": "gf", "src": "a", "dst": "c"},
            {"id": "hg", "src": "b", "dst": "d"},
        ],
        "compose": [["g", "f", "gf"], ["h", "g", "hg"]],
    }
    with pytest.raises(IncompleteCompositionTable):
        validate_category(raw, auto_identities=True)


def test_missing_identity():
    with pytest.raises(MissingIdentity):
        validate_category({"objects": ["a"], "morphisms": []})


def test_dangling_endpoint():
    with pytest.raises(DanglingEndpoint):
        validate_category({"objects": ["a"], "morphisms": [{"id": "f", "src": "a", "dst": "z"}]},
                          auto_identities=True)


def test_non_associative():
    # one object, e identity, p and q with p∘p = q, q∘p = p, p∘q = q
    with pytest.raises(NonAssociative):
        make_category(["*"], {"e": ("*", "*"), "p": ("*", "*"), "q": ("*", "*")}, {"*": "e"},
                      {("p", "p"): "q", ("q", "p"): "p", ("p", "q"): "q", ("q", "q"): "p"})


def test_json_round_trip():
    C = corpus.parallel_pair()
    assert validate_category(category_to_json(C)) == C


def test_opposite_examples():
    T = corpus.terminal()
    assert opposite(T) == T
    C1 = opposite(corpus.chain(1))
    assert C1.morphisms[(0, 1)] == (1, 0)
    P = opposite(corpus.parallel_pair())
    assert P.morphisms["f"] == ("b", "a") and P.morphisms["g"] == ("b", "a")


@given(seeds)
def test_opposite_involution(seed):
    C = corpus.random_category(random.Random(seed))
    assert opposite(opposite(C)) == C
    assert check_category_laws(opposite(C)) == []


def test_product_examples():
    C = product(corpus.chain(1), corpus.chain(1))
    assert (len(C.objects), len(C.morphisms)) == (4, 9)
    assert check_category_laws(C) == []
    D = corpus.diamond()
    assert find_isomorphism(product(D, corpus.terminal()), D) is not None
    empty = make_category([], {}, {}, {})
    assert len(product(empty, D).objects) == 0


def test_comma_examples():
    C, _ = comma(corpus.terminal(), "*", "over")
    assert len(C.objects) == 1 and len(C.morphisms) == 1
    D = corpus.diamond()
    assert len(comma(D, "t", "over")[0].objects) == 4
    assert len(comma(D, "b", "under")[0].objects) == 4
    with pytest.raises(AnchorNotFound):
        comma(D, "nope", "over")


@given(seeds)
def test_comma_counts(seed):
    C = corpus.random_category(random.Random(seed))
    for x in C.objects:
        K, proj = comma(C, x, "over")
        assert len(K.objects) == len(list(C.into(x)))
        assert check_category_laws(K) == []
        validate_functor(K, C, proj.obj_map, proj.mor_map)


def test_functor_examples():
    C = corpus.diamond()
    validate_functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms})
    T = corpus.terminal()
    validate_functor(C, T, {x: "*" for x in C.objects}, {m: ("*", "*") for m in C.morphisms})
    P = corpus.parallel_pair()
    Z = corpus.z2_monoid()
    with pytest.raises(NotPreservingIdentity):
        validate_functor(Z, Z, {"*": "*"}, {"e": "s", "s": "s"})
    with pytest.raises(EndpointMismatch):
        validate_functor(P, P, {"a": "a", "b": "a"}, {"id_a": "id_a", "id_b": "id_a", "f": "f", "g": "g"})
    Ch = corpus.chain(2)
    # both generators go to e but the composite goes to s
    mor = {m: "e" for m in Ch.morphisms}
    mor[(0, 2)] = "s"
    with pytest.raises(NotPreservingComposition):
        validate_functor(Ch, Z, {x: "*" for x in Ch.objects}, mor)


def test_nat_trans_examples():
    T = corpus.terminal()
    assert len(nat_trans_search(identity_functor(T), identity_functor(T))) == 1
    C1 = corpus.chain(1)
    assert len(nat_trans_search(identity_functor(C1), identity_functor(C1))) == 1
    D2 = corpus.discrete(2)
    F = validate_functor(T, D2, {"*": 0}, {("*", "*"): (0, 0)})
    G = validate_functor(T, D2, {"*": 1}, {("*", "*"): (1, 1)})
    assert nat_trans_search(F, G) == []


def test_nat_trans_guard():
    D = corpus.diamond()
    F = validate_functor(D, D, {x: "b" for x in D.objects}, {m: ("b", "b") for m in D.morphisms})
    G = validate_functor(D, D, {x: "t" for x in D.objects}, {m: ("t", "t") for m in D.morphisms})
    assert len(nat_trans_search(F, G)) == 1
    with pytest.raises(ExplosionGuard):
        nat_trans_search(identity_functor(corpus.z2_monoid()), identity_functor(corpus.z2_monoid()), bound=1)


def test_search_bound_env(monkeypatch):
    monkeypatch.setenv("NERVEKIT_SEARCH_BOUND", "7")
    assert search_bound() == 7


@given(seeds)
def test_nat_trans_search_results_natural(seed):
    rng = random.Random(seed)
    C = corpus.random_category(rng, max_objects=3, max_morphisms=8)
    ident = identity_functor(C)
    for eta in nat_trans_search(ident, ident):
        assert failing_square(eta) is None


def test_certificate_identity():
    C = corpus.diamond()
    I = identity_functor(C)
    cert = HomotopyEquivalenceCertificate(I, I, ZigZag(compose_functors(I, I), I), ZigZag(I, I))
    assert verify_certificate(cert).ok


def test_certificate_corrupted():
    C = corpus.chain(1)
    I = identity_functor(C)
    eta = identity_transformation(I)
    bad = NaturalTransformation(I, I, {0: (0, 1), 1: (1, 1)})
    cert = HomotopyEquivalenceCertificate(I, I, ZigZag(I, I, ((eta, True),)), ZigZag(I, I, ((bad, True),)))
    rep = verify_certificate(cert)
    assert not rep.ok and "component at 0" in rep.failure


def test_universal_examples():
    D = corpus.diamond()
    assert universal_square(D, "pushout", (("b", "x"), ("b", "y")))[0] == "t"
    assert universal_square(D, "pullback", (("x", "t"), ("y", "t")))[0] == "b"


def test_universal_not_found():
    P = corpus.parallel_pair()
    # f and g out of a have no coequalizing cocone that is universal
    with pytest.raises(NotFound):
        universal_square(P, "pushout", ("f", "g"))


@given(seeds)
def test_universal_property(seed):
    C = corpus.random_lattice(random.Random(seed))
    for f in C.morphism_ids:
        for g in C.out_of(C.src(f)):
            p, i, j = universal_square(C, "pushout", (f, g))
            for q in C.objects:
                for a in C.hom(C.dst(f), q):
                    for b in C.hom(C.dst(g), q):
                        if C.compose(a, f) == C.compose(b, g):
                            meds = [m for m in C.hom(p, q) if C.compose(m, i) == a and C.compose(m, j) == b]
                            assert len(meds) == 1


def test_terminal_objects():
    assert terminal_objects(corpus.diamond()) == ("t",)
    assert terminal_objects(corpus.discrete(2)) == ()
