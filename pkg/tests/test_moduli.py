import random

import pytest
from hypothesis import given, settings, strategies as st

from nervekit import corpus
from nervekit.catcore import check_category_laws, ident_str, opposite, verify_certificate
from nervekit.errors import (
    FactorizationMissing,
    LiftMissing,
    NoTerminalObject,
    NotClosedUnderComposition,
    NotFibrant,
    ObjectNotFound,
    TwoOutOfThreeViolation,
    UnknownVariant,
)
from nervekit.moduli import (
    VARIANTS,
    TheoremReport,
    TwistedIsoReport,
    audit_strict,
    build_moduli,
    double_reduction,
    factorize,
    final_prop_check,
    is_cofibrant,
    is_fibrant,
    is_full_image,
    make_model,
    marked_comma,
    model_to_json,
    moduli_double,
    moduli_inclusion,
    retraction_functor,
    theorem_main,
    twisted_iso_check,
    validate_model_data,
)

seeds = st.integers(0, 10**6)


def nonid_count(cat):
    return sum(1 for m in cat.morphism_ids if not cat.is_identity(m))


def test_two_out_of_three_violation():
    C = corpus.chain(2)
    with pytest.raises(TwoOutOfThreeViolation):
        make_model(C, [C.id(0), C.id(1), C.id(2), (0, 1), (1, 2)], "all", "all")


def test_not_closed_under_composition():
    C = corpus.chain(2)
    with pytest.raises(NotClosedUnderComposition):
        make_model(C, "all", [C.id(0), C.id(1), C.id(2), (0, 1), (1, 2)], "all")


def test_strict_audits():
    C = corpus.chain(1)
    with pytest.raises(FactorizationMissing):
        make_model(C, "all", "identities", "identities", strict=True)
    # putting every map in all three classes fails the lifting axiom
    with pytest.raises(LiftMissing):
        make_model(corpus.diamond(), "all", "all", "all", strict=True)
    audit_strict(make_model(corpus.diamond(), "identities", "all", "all"))


def test_model_json_round_trip():
    M = corpus.diamond_model()
    N = validate_model_data(model_to_json(M))
    for a, b in ((N.W, M.W), (N.Fib, M.Fib), (N.Cof, M.Cof)):
        assert sorted(a) == sorted(map(ident_str, b))


def test_fibrancy():
    M = make_model(corpus.diamond(), "all", "identities", "all")
    assert [y for y in M.base.objects if is_fibrant(M, y)] == ["t"]
    assert is_cofibrant(M, "b")
    with pytest.raises(ObjectNotFound):
        is_fibrant(M, "nope")
    D = make_model(corpus.discrete(2), "all", "all", "all")
    with pytest.raises(NoTerminalObject):
        is_fibrant(D, 0)


def test_marked_comma():
    M = corpus.diamond_model()
    assert len(marked_comma(M, "t", "wfib-over").objects) == 4
    assert len(marked_comma(M, "b", "wcof-under").objects) == 4
    N = make_model(corpus.diamond(), "identities", "all", "all")
    assert len(marked_comma(N, "t", "wfib-over").objects) == 1


def test_diamond_variant_sizes():
    M = corpus.diamond_model()
    sizes = {v: build_moduli(M, "x", "y", v) for v in VARIANTS}
    expect = {
        "hom": (3, 3), "hom-f": (1, 0), "hom-tw": (3, 2),
        "restricted": (3, 3), "restricted-tw": (3, 2), "wfib-inv": (1, 0),
    }
    for v, cat in sizes.items():
        assert (len(cat.objects), nonid_count(cat)) == expect[v], v
        assert check_category_laws(cat) == []


def test_unknown_variant():
    with pytest.raises(UnknownVariant):
        build_moduli(corpus.diamond_model(), "x", "y", "nope")
    with pytest.raises(ObjectNotFound):
        build_moduli(corpus.diamond_model(), "x", "nope", "hom")


@pytest.mark.parametrize("name", sorted(corpus.named_strict_models()))
def test_inclusions_are_embeddings(name):
    M, X, Y = corpus.named_strict_models()[name]
    for sub, amb in (("hom-f", "hom"), ("restricted", "hom"), ("wfib-inv", "hom-f")):
        j = moduli_inclusion(M, X, Y, sub, amb)
        assert len(set(j.obj_map.values())) == len(j.source.objects)
        assert len(set(j.mor_map.values())) == len(j.source.morphisms)
        if sub == "hom-f":
            assert is_full_image(j)


def test_twisted_diamond():
    rep = twisted_iso_check(corpus.diamond_model(), "x", "y")
    assert rep.ok and rep.opposite_iso and rep.homology_agrees
    assert rep.elements_counts == rep.twisted_counts
    assert TwistedIsoReport.from_dict(rep.to_dict()) == rep


def test_moduli_double_diamond():
    D = moduli_double(corpus.diamond_model(), "x", "y")
    assert len(D.objects) == 3


def test_factorize():
    M = corpus.named_strict_models()["diamond-cof-id"][0]
    z, a, b = factorize(M, ("b", "t"), "cof-wfib")
    assert a in M.Cof and b in M.WFib and M.base.compose(b, a) == ("b", "t")


def test_theorem_diamond():
    rep = theorem_main(corpus.diamond_model(), "x", "y")
    assert rep.summary() == "hom-f → hom: quasi-iso in range [0,2]; certificate: PASS"
    assert TheoremReport.from_dict(rep.to_dict()) == rep


def test_theorem_not_fibrant():
    M = make_model(corpus.diamond(), "all", "identities", "all")
    with pytest.raises(NotFibrant):
        theorem_main(M, "x", "y")


@pytest.mark.parametrize("which", ["prop21", "prwe"])
def test_retractions_diamond(which):
    r = retraction_functor(corpus.diamond_model(), "x", "y", which)
    assert verify_certificate(r.certificate).ok


@pytest.mark.parametrize("name", sorted(corpus.named_strict_models()))
def test_named_strict_pipeline(name):
    M, X, Y = corpus.named_strict_models()[name]
    assert twisted_iso_check(M, X, Y).ok
    assert theorem_main(M, X, Y).ok
    rep = final_prop_check(M, X, Y, 2)
    assert rep.witnesses_ok and rep.implication_holds


def test_double_reduction_diamond():
    _, rh, rv = double_reduction(corpus.diamond_model(), "x", "y", 2)
    assert rh.ok and rv.ok


@settings(max_examples=10)
@given(seeds)
def test_random_strict_models(seed):
    rng = random.Random(seed)
    M = corpus.random_strict_model(rng, max_size=4)
    audit_strict(M)
    X, Y = corpus.interesting_pair(M)
    assert twisted_iso_check(M, X, Y).ok
    assert theorem_main(M, X, Y, 2).quasi_iso.quasi_iso


def test_opposite_of_twisted_counts():
    M = corpus.diamond_model()
    tw = build_moduli(M, "x", "y", "restricted-tw")
    assert len(opposite(tw).morphisms) == len(tw.morphisms)
