"""Finite model data and categories of zig-zags between two objects.

Four-term zig-zags X <-u- U -f-> V <-w- Y are stored as (U, V, u, f, w);
three-term ones X <-u- U -f-> Y as (U, u, f). Morphism ids carry their
endpoints: (src, dst, a, b) for four-term variants, (src, dst, a) for
three-term ones.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Mapping

from .catcore import (
    FiniteCategory,
    Functor,
    HomotopyEquivalenceCertificate,
    NaturalTransformation,
    ZigZag,
    _freeze,
    category_to_json,
    comma,
    compose_functors,
    find_isomorphism,
    identity_functor,
    ident_str,
    opposite,
    product,
    sort_idents,
    terminal_objects,
    universal_square,
    validate_category,
    validate_functor,
    verify_certificate,
)
from .doublecat import (
    DoubleCategory,
    ZDiagram,
    ZigZagWitness,
    binerve_diagonal,
    chain_category,
    reduction_check,
    transpose,
    validate_double,
)
from .errors import (
    AmbiguousUniversal,
    ChoiceNotFunctorial,
    ExplosionGuard,
    FactorizationMissing,
    FunctorError,
    LiftMissing,
    MarkingViolation,
    MissingLimit,
    ModelDataError,
    NoTerminalObject,
    NotBicommutative,
    NotClosedUnderComposition,
    NotFibrant,
    NotFound,
    ObjectNotFound,
    TruncationWarning,
    TwoOutOfThreeViolation,
    UnknownVariant,
)
from .homology import homology, quasi_iso_check
from .simpl import category_of_elements, nerve, nerve_map

VARIANTS = ("hom", "hom-f", "hom-tw", "restricted", "restricted-tw", "wfib-inv")
FOUR_TERM = ("hom", "hom-tw", "restricted", "restricted-tw")
TWISTED = ("hom-tw", "restricted-tw")


# -- model data ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModelData:
    base: FiniteCategory
    W: frozenset
    Fib: frozenset
    Cof: frozenset
    strict: bool = False

    @property
    def WFib(self) -> frozenset:
        return self.W & self.Fib

    @property
    def WCof(self) -> frozenset:
        return self.W & self.Cof


def _marking(cat: FiniteCategory, spec, name: str) -> frozenset:
    if spec == "all":
        return frozenset(cat.morphisms)
    if spec == "identities":
        return frozenset(cat.identity.values())
    out = frozenset(spec)
    unknown = [m for m in out if m not in cat.morphisms]
    if unknown:
        raise ModelDataError(f"{name} names unknown morphisms: {', '.join(map(ident_str, unknown))}")
    return out


def factorizations(cat: FiniteCategory, m, first: frozenset, second: frozenset) -> list:
    """All (z, a, b) with m = b∘a, a in ``first``, b in ``second``, least first."""
    s, t = cat.morphisms[m]
    out = [
        (z, a, b)
        for z in cat.objects
        for a in cat.hom(s, z) if a in first
        for b in cat.hom(z, t) if b in second and cat.compose(b, a) == m
    ]
    out.sort(key=lambda c: tuple(ident_str(x) for x in c))
    return out


def lifting_failure(cat: FiniteCategory, left: frozenset, right: frozenset):
    """First commuting square (i, p, top, bottom) with no diagonal filler."""
    for i in sort_idents(left):
        a, b = cat.morphisms[i]
        for p in sort_idents(right):
            x, y = cat.morphisms[p]
            for top in cat.hom(a, x):
                for bottom in cat.hom(b, y):
                    if cat.compose(p, top) != cat.compose(bottom, i):
                        continue
                    if not any(
                        cat.compose(h, i) == top and cat.compose(p, h) == bottom
                        for h in cat.hom(b, x)
                    ):
                        return i, p, top, bottom
    return None


def make_model(base: FiniteCategory, W, Fib, Cof, strict: bool = False) -> ModelData:
    W, Fib, Cof = (_marking(base, s, n) for s, n in ((W, "W"), (Fib, "Fib"), (Cof, "Cof")))
    for x in base.objects:
        i = base.id(x)
        if i not in W:
            raise TwoOutOfThreeViolation(f"W does not contain the identity of {ident_str(x)}")
        for cls, name in ((Fib, "Fib"), (Cof, "Cof")):
            if i not in cls:
                raise NotClosedUnderComposition(f"{name} does not contain the identity of {ident_str(x)}")
    for g, f in base.composable_pairs():
        gf = base.compose(g, f)
        marks = (f in W, g in W, gf in W)
        if sum(marks) == 2:
            raise TwoOutOfThreeViolation(
                f"two-out-of-three fails for ({ident_str(f)}, {ident_str(g)}, {ident_str(gf)})"
            )
        for cls, name in ((Fib, "Fib"), (Cof, "Cof")):
            if f in cls and g in cls and gf not in cls:
                raise NotClosedUnderComposition(
                    f"{name} contains {ident_str(f)} and {ident_str(g)} but not their composite"
                )
    M = ModelData(base, W, Fib, Cof, strict)
    if strict:
        audit_strict(M)
    return M


def audit_strict(M: ModelData) -> None:
    cat = M.base
    for m in cat.morphism_ids:
        if not factorizations(cat, m, M.Cof, M.WFib):
            raise FactorizationMissing(f"{ident_str(m)} has no (Cof, WFib) factorization")
        if not factorizations(cat, m, M.WCof, M.Fib):
            raise FactorizationMissing(f"{ident_str(m)} has no (WCof, Fib) factorization")
    for left, right, label in ((M.Cof, M.WFib, "Cof/WFib"), (M.WCof, M.Fib, "WCof/Fib")):
        bad = lifting_failure(cat, left, right)
        if bad:
            i, p, top, bottom = bad
            raise LiftMissing(
                f"{label}: no lift for {ident_str(i)} against {ident_str(p)}"
                f" (top {ident_str(top)}, bottom {ident_str(bottom)})"
            )


def validate_model_data(raw: Mapping[str, Any], strict: bool | None = None) -> ModelData:
    """Read the category format plus W/Fib/Cof lists ("all" and
    "identities" are accepted as shorthands) and an optional strict flag."""
    base = validate_category(raw, auto_identities=bool(raw.get("auto_identities", False)))
    for key in ("W", "Fib", "Cof"):
        if key not in raw:
            raise ModelDataError(f"model data needs a {key!r} entry")
    strict = bool(raw.get("strict", False)) if strict is None else strict
    return make_model(base, raw["W"], raw["Fib"], raw["Cof"], strict)


def model_to_json(M: ModelData) -> dict:
    out = category_to_json(M.base)
    for key, cls in (("W", M.W), ("Fib", M.Fib), ("Cof", M.Cof)):
        out[key] = [ident_str(m) for m in sort_idents(cls)]
    out["strict"] = M.strict
    return out


def terminal_object(M: ModelData):
    ts = terminal_objects(M.base)
    if not ts:
        raise NoTerminalObject("the base category has no terminal object")
    return ts[0]


def is_fibrant(M: ModelData, Y) -> bool:
    if Y not in M.base.identity:
        raise ObjectNotFound(f"{ident_str(Y)} is not an object")
    t = terminal_object(M)
    return M.base.hom(Y, t)[0] in M.Fib


def is_cofibrant(M: ModelData, X) -> bool:
    if X not in M.base.identity:
        raise ObjectNotFound(f"{ident_str(X)} is not an object")
    ts = terminal_objects(opposite(M.base))
    if not ts:
        raise NoTerminalObject("the base category has no initial object")
    return M.base.hom(ts[0], X)[0] in M.Cof


def marked_comma(M: ModelData, anchor, side: str) -> FiniteCategory:
    """(WFib ↓ anchor) for side 'wfib-over', (anchor ↓ WCof) for 'wcof-under'.

    Legs come from the marked class; connecting arrows must be weak
    equivalences.
    """
    W = M.W
    if side == "wfib-over":
        cat, _ = comma(M.base, anchor, "over", keep=M.WFib.__contains__, connecting=W.__contains__)
    elif side == "wcof-under":
        cat, _ = comma(M.base, anchor, "under", keep=M.WCof.__contains__, connecting=W.__contains__)
    else:
        raise ValueError(f"side must be 'wfib-over' or 'wcof-under', not {side!r}")
    return cat


# -- moduli categories --------------------------------------------------------


def _check_endpoints(M: ModelData, X, Y) -> None:
    for obj in (X, Y):
        if obj not in M.base.identity:
            raise ObjectNotFound(f"{ident_str(obj)} is not an object of the base category")


def moduli_objects(M: ModelData, X, Y, variant: str) -> list:
    C = M.base
    if variant not in VARIANTS:
        raise UnknownVariant(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    _check_endpoints(M, X, Y)
    restricted = variant in ("restricted", "restricted-tw", "wfib-inv")
    ucls = M.WFib if restricted else M.W
    out = []
    for U in C.objects:
        for u in C.hom(U, X):
            if u not in ucls:
                continue
            if variant in ("hom-f", "wfib-inv"):
                out.extend((U, u, f) for f in C.hom(U, Y))
                continue
            wcls = M.WCof if restricted else M.W
            for V in C.objects:
                for w in C.hom(Y, V):
                    if w in wcls:
                        out.extend((U, V, u, f, w) for f in C.hom(U, V))
    return out


def build_moduli(M: ModelData, X, Y, variant: str) -> FiniteCategory:
    C, W = M.base, M.W
    objects = moduli_objects(M, X, Y, variant)
    morphisms, identity, table = {}, {}, {}
    if variant in ("hom-f", "wfib-inv"):
        for s in objects:
            for t in objects:
                for a in C.hom(s[0], t[0]):
                    if a in W and C.compose(t[1], a) == s[1] and C.compose(t[2], a) == s[2]:
                        morphisms[(s, t, a)] = (s, t)
        identity = {o: (o, o, C.id(o[0])) for o in objects}
        out_of: dict = {}
        for m in morphisms:
            out_of.setdefault(m[0], []).append(m)
        for f in morphisms:
            for g in out_of.get(f[1], ()):
                table[(g, f)] = (f[0], g[1], C.compose(g[2], f[2]))
        return _freeze(objects, morphisms, identity, table)
    twisted = variant in TWISTED
    for s in objects:
        U, V, u, f, w = s
        for t in objects:
            U2, V2, u2, f2, w2 = t
            for a in C.hom(U, U2):
                if a not in W or C.compose(u2, a) != u:
                    continue
                if twisted:
                    for b in C.hom(V2, V):
                        if b in W and C.compose(b, w2) == w and C.compose_chain(b, f2, a) == f:
                            morphisms[(s, t, a, b)] = (s, t)
                else:
                    for b in C.hom(V, V2):
                        if b in W and C.compose(b, w) == w2 and C.compose(b, f) == C.compose(f2, a):
                            morphisms[(s, t, a, b)] = (s, t)
    identity = {o: (o, o, C.id(o[0]), C.id(o[1])) for o in objects}
    out_of = {}
    for m in morphisms:
        out_of.setdefault(m[0], []).append(m)
    for f in morphisms:
        for g in out_of.get(f[1], ()):
            b = C.compose(f[3], g[3]) if twisted else C.compose(g[3], f[3])
            table[(g, f)] = (f[0], g[1], C.compose(g[2], f[2]), b)
    return _freeze(objects, morphisms, identity, table)


def embed_three_term(M: ModelData, Y, obj: tuple) -> tuple:
    U, u, f = obj
    return (U, Y, u, f, M.base.id(Y))


_INCLUSIONS = {
    ("hom-f", "hom"), ("hom-f", "hom-tw"), ("restricted", "hom"),
    ("restricted-tw", "hom-tw"), ("wfib-inv", "hom-f"), ("wfib-inv", "restricted"),
    ("wfib-inv", "restricted-tw"), ("wfib-inv", "hom"), ("wfib-inv", "hom-tw"),
}


def moduli_inclusion(M: ModelData, X, Y, sub: str, ambient: str, cats: Mapping | None = None) -> Functor:
    """The evident inclusion functor between two variants."""
    if (sub, ambient) not in _INCLUSIONS:
        raise UnknownVariant(f"no inclusion {sub} -> {ambient}")
    cats = cats or {}
    S = cats.get(sub) or build_moduli(M, X, Y, sub)
    A = cats.get(ambient) or build_moduli(M, X, Y, ambient)
    if sub in FOUR_TERM or ambient in ("hom-f", "wfib-inv"):
        obj = {o: o for o in S.objects}
        mor = {m: m for m in S.morphisms}
    else:
        idY = M.base.id(Y)
        obj = {o: embed_three_term(M, Y, o) for o in S.objects}
        mor = {m: (obj[m[0]], obj[m[1]], m[2], idY) for m in S.morphisms}
    return validate_functor(S, A, obj, mor)


def is_full_image(F: Functor) -> bool:
    """True when F is injective on objects and hits every morphism between
    objects in its image."""
    image = set(F.obj_map.values())
    if len(image) != len(F.source.objects):
        return False
    hit = set(F.mor_map.values())
    return all(
        m in hit for m, (a, b) in F.target.morphisms.items() if a in image and b in image
    )


# -- the twisted identification -----------------------------------------------


@dataclass(frozen=True)
class TwistedIsoReport:
    elements_counts: tuple
    twisted_counts: tuple
    opposite_iso: bool
    direct_iso: bool
    untwisted_iso: bool
    homology_agrees: bool
    object_bijection: bool
    invariant: str | None = None

    @property
    def ok(self) -> bool:
        return (self.opposite_iso or self.direct_iso) and self.homology_agrees

    def verdict(self) -> str:
        if self.opposite_iso and self.direct_iso:
            which = "directly and up to opposite"
        elif self.opposite_iso:
            which = "up to opposite"
        elif self.direct_iso:
            which = "directly"
        else:
            return f"not isomorphic: {self.invariant}"
        return f"elements of K isomorphic to restricted-tw {which}"

    def to_dict(self) -> dict:
        return {
            "elements_counts": list(self.elements_counts),
            "twisted_counts": list(self.twisted_counts),
            "opposite_iso": self.opposite_iso,
            "direct_iso": self.direct_iso,
            "untwisted_iso": self.untwisted_iso,
            "homology_agrees": self.homology_agrees,
            "object_bijection": self.object_bijection,
            "invariant": self.invariant,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "TwistedIsoReport":
        return cls(
            tuple(d["elements_counts"]), tuple(d["twisted_counts"]), d["opposite_iso"],
            d["direct_iso"], d["untwisted_iso"], d["homology_agrees"], d["object_bijection"],
            d.get("invariant"),
        )


def hom_functor_elements(M: ModelData, X, Y) -> tuple:
    """Category of elements of (u, w) |-> M(U, V) on (WFib↓X)^op × (Y↓WCof).

    Returns (elements category, index category).
    """
    C = M.base
    A = product(opposite(marked_comma(M, X, "wfib-over")), marked_comma(M, Y, "wcof-under"))
    sets = {(u, w): C.hom(C.src(u), C.dst(w)) for (u, w) in A.objects}
    functions = {}
    for m in A.morphisms:
        (_, _, h), (_, _, k) = m
        (u2, w1), _ = A.morphisms[m]
        functions[m] = {phi: C.compose_chain(k, phi, h) for phi in sets[(u2, w1)]}
    el, _ = category_of_elements(A, sets, functions)
    return el, A


def _count(cat: FiniteCategory) -> tuple:
    return (len(cat.objects), len(cat.morphisms))


def twisted_iso_check(M: ModelData, X, Y, cap: int = 3, search: bool = True) -> TwistedIsoReport:
    C = M.base
    el, _ = hom_functor_elements(M, X, Y)
    tw = build_moduli(M, X, Y, "restricted-tw")
    untw = build_moduli(M, X, Y, "restricted")

    def label(o):
        (u, w), phi = o
        return (C.src(u), C.dst(w), u, phi, w)

    obj = {o: label(o) for o in el.objects}
    bijection = sorted(map(ident_str, obj.values())) == sorted(map(ident_str, tw.objects))
    opposite_iso = False
    if bijection:
        mor = {}
        for m, (s, t) in el.morphisms.items():
            ((_, _, h), (_, _, k)), _ = m
            mor[m] = (obj[t], obj[s], h, k)
        try:
            F = validate_functor(el, opposite(tw), obj, mor)
            opposite_iso = len(set(F.mor_map.values())) == len(tw.morphisms) == len(el.morphisms)
        except (FunctorError, KeyError):
            opposite_iso = False

    def iso(a, b):
        if not search:
            return False
        try:
            return find_isomorphism(a, b) is not None
        except ExplosionGuard:
            return False

    direct = iso(el, tw)
    if not opposite_iso and not direct:
        opposite_iso = iso(el, opposite(tw))
    untwisted = iso(el, untw) or iso(el, opposite(untw))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        h1 = homology(nerve(el, cap), cap)
        h2 = homology(nerve(tw, cap), cap)
    invariant = None
    if not (opposite_iso or direct):
        if _count(el) != _count(tw):
            invariant = f"(objects, morphisms) {_count(el)} vs {_count(tw)}"
        else:
            invariant = "no isomorphism found with equal object and morphism counts"
    return TwistedIsoReport(
        _count(el), _count(tw), opposite_iso, direct, untwisted,
        h1.same_groups(h2), bijection, invariant,
    )


# -- the double category of restricted zig-zags -------------------------------


def moduli_squares(M: ModelData, H: FiniteCategory, V: FiniteCategory) -> set:
    """Quadruples (top, bottom, left, right) commuting on U and V parts."""
    C = M.base
    hv_by_src: dict = {}
    for m, (a, b) in V.morphisms.items():
        hv_by_src.setdefault(a, []).append(m)
    out = set()
    for top, (a, b) in H.morphisms.items():
        for left in hv_by_src.get(a, ()):
            c = V.dst(left)
            for right in hv_by_src.get(b, ()):
                d = V.dst(right)
                for bottom in H.hom(c, d):
                    if C.compose(right[2], top[2]) != C.compose(bottom[2], left[2]):
                        continue
                    if C.compose(top[3], left[3]) != C.compose(right[3], bottom[3]):
                        continue
                    out.add((top, bottom, left, right))
    return out


def moduli_double(M: ModelData, X, Y) -> DoubleCategory:
    H = build_moduli(M, X, Y, "restricted")
    V = build_moduli(M, X, Y, "restricted-tw")
    return validate_double(H, V, moduli_squares(M, H, V))


def _hmor(D: DoubleCategory, s, t, a, b):
    m = (s, t, a, b)
    if m not in D.hcat.morphisms:
        raise NotBicommutative(f"expected h-map {ident_str(m)} is missing")
    return m


def _vmor(D: DoubleCategory, s, t, a, b):
    m = (s, t, a, b)
    if m not in D.vcat.morphisms:
        raise NotBicommutative(f"expected v-map {ident_str(m)} is missing")
    return m


def lemma_zigzag(M: ModelData, D: DoubleCategory, direction: str, arrow) -> ZDiagram:
    """The explicit zig-zag of squares attached to one arrow.

    direction 'v': ``arrow`` is a v-map A -> B with parts f: U -> U',
    g: V' -> V; the middle object is [X <- U' -> V <- Y] with leg g∘f'.
    direction 'h': ``arrow`` is an h-map A -> B with parts p, q; the middle
    object is [X <- U -> V' <- Y] with leg q∘f, and the diagram lives in
    the transpose.
    """
    C = M.base
    if direction == "v":
        A, B, f, g = arrow
        U2, V2, u2, f2, w2 = B
        U, V, u, phi, w = A
        mid = (U2, V, u2, C.compose(g, f2), w)
        idB_h, idB_v = D.hcat.id(B), D.vcat.id(B)
        h = (_hmor(D, A, mid, f, C.id(V)), _hmor(D, B, mid, C.id(U2), g), idB_h, idB_h)
        v = (arrow, _vmor(D, mid, B, C.id(U2), g), idB_v)
        z = ZDiagram((A, mid, B, B, B, B), h, v)
        squares = [(h[0], h[2], v[0], v[1]), (h[1], h[3], v[2], v[1])]
        where = D.squares
    elif direction == "h":
        A, B, p, q = arrow
        U, V, u, phi, w = A
        U2, V2, u2, f2, w2 = B
        mid = (U, V2, u, C.compose(q, phi), w2)
        idB_h, idB_v = D.hcat.id(B), D.vcat.id(B)
        h = (_vmor(D, mid, A, C.id(U), q), _vmor(D, mid, B, p, C.id(V2)), idB_v, idB_v)
        v = (arrow, _hmor(D, mid, B, p, C.id(V2)), idB_h)
        z = ZDiagram((A, mid, B, B, B, B), h, v)
        # zag squares in the transpose, stored back in D's orientation
        squares = [(v[1], v[0], h[0], h[2]), (v[1], v[2], h[1], h[3])]
        where = D.squares
    else:
        raise ValueError(f"direction must be 'v' or 'h', not {direction!r}")
    for sq in squares:
        if sq not in where:
            raise NotBicommutative(f"square {ident_str(sq)} is not bicommutative")
    return z


def lemma_witness(M: ModelData, D: DoubleCategory, direction: str) -> ZigZagWitness:
    """The witness over every arrow, with transformations for every ladder.

    'v' yields a zig witness for D (consumed by reduction_check with
    direction 'h'); 'h' yields a zag witness for transpose(D) (direction 'v').
    """
    T = D if direction == "v" else transpose(D)
    arrows = T.vcat.morphism_ids
    diagrams = {(a,): lemma_zigzag(M, D, direction, a) for a in arrows}
    C1 = chain_category(T, "v", 1)
    components = {}
    for lad in C1.morphism_ids:
        (a,), (b,), (p, q) = lad
        za, zb = diagrams[(a,)], diagrams[(b,)]
        if direction == "v":
            mid = (za.objs[1], zb.objs[1], q[2], p[3])
        else:
            mid = (za.objs[1], zb.objs[1], p[2], q[3])
        if mid not in T.hcat.morphisms:
            raise NotBicommutative(f"middle component {ident_str(mid)} is not a map")
        components[lad] = (p, mid, q, q, q, q)
    orientation = "zig" if direction == "v" else "zag"
    return ZigZagWitness(orientation, MappingProxyType(diagrams), MappingProxyType(components))


# -- factorizations and retractions -------------------------------------------


def factorize(M: ModelData, f, kind: str) -> tuple:
    """Least-identifier factorization f = b∘a; returns (object, a, b)."""
    if kind == "cof-wfib":
        first, second = M.Cof, M.WFib
    elif kind == "wcof-fib":
        first, second = M.WCof, M.Fib
    else:
        raise ValueError(f"kind must be 'cof-wfib' or 'wcof-fib', not {kind!r}")
    if f not in M.base.morphisms:
        raise ObjectNotFound(f"{ident_str(f)} is not a morphism")
    found = factorizations(M.base, f, first, second)
    if not found:
        raise NotFound(f"no {kind} factorization of {ident_str(f)}")
    return found[0]


def _universal(M: ModelData, kind: str, data: tuple) -> tuple:
    try:
        return universal_square(M.base, kind, data)
    except (NotFound, AmbiguousUniversal) as exc:
        raise MissingLimit(str(exc)) from None


def _factor(M: ModelData, f, kind: str) -> tuple:
    try:
        return factorize(M, f, kind)
    except NotFound as exc:
        raise MissingLimit(str(exc)) from None


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise MarkingViolation(msg)


def _extend(source: FiniteCategory, target: FiniteCategory, obj_map: Mapping, constraints) -> Functor:
    """Least choice of morphism images satisfying naturality constraints,
    then a functoriality audit.

    Each constraint is (G, eta, into) with eta a dict of components:
    into=True means eta: G => F (F(m)∘eta_x = eta_y∘G(m)), otherwise
    eta: F => G (G(m)∘eta_x = eta_y∘F(m)).
    """
    mor = {}
    for m in source.morphism_ids:
        x, y = source.morphisms[m]
        chosen = None
        for n in target.hom(obj_map[x], obj_map[y]):
            ok = True
            for G, eta, into in constraints:
                T = G.target
                if into:
                    ok = T.compose(n, eta[x]) == T.compose(eta[y], G(m))
                else:
                    ok = T.compose(G(m), eta[x]) == T.compose(eta[y], n)
                if not ok:
                    break
            if ok:
                chosen = n
                break
        if chosen is None:
            raise ChoiceNotFunctorial(f"no natural choice for the image of {ident_str(m)}")
        mor[m] = chosen
    try:
        return validate_functor(source, target, obj_map, mor)
    except FunctorError as exc:
        raise ChoiceNotFunctorial(f"chosen factorizations are not functorial: {exc}") from None


def _restrict(F: Functor, sub: FiniteCategory, target: FiniteCategory) -> Functor:
    return validate_functor(
        sub, target,
        {x: F.obj_map[x] for x in sub.objects},
        {m: F.mor_map[m] for m in sub.morphisms},
    )


def _nt(src: Functor, dst: Functor, comps: Mapping) -> NaturalTransformation:
    return NaturalTransformation(src, dst, MappingProxyType(dict(comps)))


def _trim(z: ZigZag) -> ZigZag:
    """Drop identity steps between equal functors."""
    steps = tuple(
        (eta, fw) for eta, fw in z.steps
        if not (eta.source == eta.target
                and all(eta.target.target.is_identity(c) for c in eta.components.values()))
    )
    return ZigZag(z.start, z.end, steps)


@dataclass(frozen=True, eq=False)
class Retraction:
    which: str
    inclusion: Functor
    F: Functor
    certificate: HomotopyEquivalenceCertificate


def _prop21(M: ModelData, X, Y) -> Retraction:
    C = M.base
    big = build_moduli(M, X, Y, "hom")
    small = build_moduli(M, X, Y, "restricted")
    j = moduli_inclusion(M, X, Y, "restricted", "hom", {"restricted": small, "hom": big})
    mid_obj, F_obj, eta, theta = {}, {}, {}, {}
    for A in big.objects:
        U, V, u, phi, w = A
        U1, i, u1 = _factor(M, u, "wcof-fib")
        V1, l1, l2 = _universal(M, "pushout", (i, phi))
        _need(l2 in M.WCof, f"pushout leg {ident_str(l2)} is not a trivial cofibration")
        V2, w2, r = _factor(M, C.compose(l2, w), "wcof-fib")
        U2, s, phi2 = _universal(M, "pullback", (l1, r))
        _need(r in M.WFib, f"{ident_str(r)} is not a trivial fibration")
        _need(s in M.W, f"pullback leg {ident_str(s)} is not a weak equivalence")
        mid = (U1, V1, u1, l1, C.compose(l2, w))
        fa = (U2, V2, C.compose(u1, s), phi2, w2)
        if mid not in big.identity:
            raise MarkingViolation(f"middle zig-zag {ident_str(mid)} is not an object")
        if fa not in small.identity:
            raise MarkingViolation(f"image {ident_str(fa)} is not a restricted zig-zag")
        mid_obj[A], F_obj[A] = mid, fa
        eta[A] = (A, mid, i, l2)
        theta[A] = (fa, mid, s, r)
    for A in big.objects:
        for m in (eta[A], theta[A]):
            if m not in big.morphisms:
                raise MarkingViolation(f"comparison map {ident_str(m)} is not a morphism")
    ident = identity_functor(big)
    Mid = _extend(big, big, mid_obj, [(ident, eta, True)])
    F = _extend(big, small, F_obj, [(Mid, {A: theta[A] for A in big.objects}, False)])
    jF = compose_functors(j, F)
    gf = ZigZag(jF, ident, ((_nt(jF, Mid, theta), True), (_nt(ident, Mid, eta), False)))
    # on restricted objects every piece stays restricted
    Fj = compose_functors(F, j)
    for A in small.objects:
        if mid_obj[A] not in small.identity:
            raise MarkingViolation(f"{ident_str(mid_obj[A])} leaves the restricted category")
    Mid_s = _restrict(Mid, small, small)
    ident_s = identity_functor(small)
    fg = ZigZag(
        Fj, ident_s,
        (
            (_nt(Fj, Mid_s, {A: theta[A] for A in small.objects}), True),
            (_nt(ident_s, Mid_s, {A: eta[A] for A in small.objects}), False),
        ),
    )
    cert = HomotopyEquivalenceCertificate(F, j, _trim(fg), _trim(gf))
    return Retraction("prop21", j, F, cert)


def product_object(M: ModelData, X, Y) -> tuple:
    """X × Y as the pullback over the terminal object: (P, pX, pY)."""
    try:
        t = terminal_object(M)
    except NoTerminalObject as exc:
        raise MissingLimit(str(exc)) from None
    C = M.base
    return _universal(M, "pullback", (C.hom(X, t)[0], C.hom(Y, t)[0]))


def _prwe(M: ModelData, X, Y) -> Retraction:
    C = M.base
    if not is_fibrant(M, Y):
        raise NotFibrant(f"{ident_str(Y)} is not fibrant")
    big = build_moduli(M, X, Y, "hom-f")
    small = build_moduli(M, X, Y, "wfib-inv")
    j = moduli_inclusion(M, X, Y, "wfib-inv", "hom-f", {"wfib-inv": small, "hom-f": big})
    P, pX, pY = product_object(M, X, Y)
    F_obj, eta = {}, {}
    for A in big.objects:
        U, u, phi = A
        ks = [k for k in C.hom(U, P) if C.compose(pX, k) == u and C.compose(pY, k) == phi]
        if len(ks) != 1:
            raise MissingLimit(f"no unique map {ident_str(U)} -> product")
        U1, i, p = _factor(M, ks[0], "wcof-fib")
        fa = (U1, C.compose(pX, p), C.compose(pY, p))
        if fa not in small.identity:
            raise MarkingViolation(f"{ident_str(fa)} is not in the trivial-fibration category")
        F_obj[A] = fa
        eta[A] = (A, fa, i)
        if eta[A] not in big.morphisms:
            raise MarkingViolation(f"comparison map {ident_str(eta[A])} is not a morphism")
    ident = identity_functor(big)
    # F is pinned down by Id => jF
    F_big = _extend(big, big, F_obj, [(ident, eta, True)])
    F = validate_functor(big, small, F_obj, dict(F_big.mor_map))
    jF = compose_functors(j, F)
    gf = ZigZag(jF, ident, ((_nt(ident, jF, eta), False),))
    Fj = compose_functors(F, j)
    ident_s = identity_functor(small)
    fg = ZigZag(Fj, ident_s, ((_nt(ident_s, Fj, {A: eta[A] for A in small.objects}), False),))
    cert = HomotopyEquivalenceCertificate(F, j, _trim(fg), _trim(gf))
    return Retraction("prwe", j, F, cert)


def retraction_functor(M: ModelData, X, Y, which: str) -> Retraction:
    _check_endpoints(M, X, Y)
    if which == "prop21":
        return _prop21(M, X, Y)
    if which == "prwe":
        return _prwe(M, X, Y)
    raise ValueError(f"which must be 'prop21' or 'prwe', not {which!r}")


# -- pipelines ----------------------------------------------------------------


@dataclass(frozen=True)
class TheoremReport:
    cap: int
    fibrant: bool
    quasi_iso: Any
    certificates: tuple  # (name, status, detail)
    counts: tuple  # (hom-f objects, hom objects)

    @property
    def certificate_status(self) -> str:
        statuses = {s for _, s, _ in self.certificates}
        if "FAIL" in statuses:
            return "FAIL"
        if statuses == {"PASS"}:
            return "PASS"
        return "n/a"

    @property
    def ok(self) -> bool:
        return self.quasi_iso.quasi_iso and self.certificate_status != "FAIL"

    def summary(self) -> str:
        return f"hom-f → hom: {self.quasi_iso.verdict()}; certificate: {self.certificate_status}"

    def to_dict(self) -> dict:
        return {
            "cap": self.cap,
            "fibrant": self.fibrant,
            "quasi_iso": self.quasi_iso.to_dict(),
            "certificates": [list(c) for c in self.certificates],
            "counts": list(self.counts),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "TheoremReport":
        from .homology import QuasiIsoReport

        return cls(
            d["cap"], d["fibrant"], QuasiIsoReport.from_dict(d["quasi_iso"]),
            tuple(tuple(c) for c in d["certificates"]), tuple(d["counts"]),
        )


def certify(M: ModelData, X, Y, which: str) -> tuple:
    """(name, PASS|FAIL|n/a, detail) for one retraction certificate."""
    try:
        r = retraction_functor(M, X, Y, which)
    except (MissingLimit, MarkingViolation, NotFibrant, NoTerminalObject) as exc:
        return (which, "n/a", f"{type(exc).__name__}: {exc}")
    except ChoiceNotFunctorial as exc:
        return (which, "FAIL", f"ChoiceNotFunctorial: {exc}")
    rep = verify_certificate(r.certificate)
    return (which, "PASS" if rep.ok else "FAIL", rep.failure or "")


def theorem_main(M: ModelData, X, Y, cap: int = 3) -> TheoremReport:
    """hom-f -> hom on nerves: cone acyclicity and pi_0 in degrees < cap,
    plus the two retraction certificates when their hypotheses hold."""
    _check_endpoints(M, X, Y)
    fibrant = is_fibrant(M, Y)
    if not fibrant:
        raise NotFibrant(f"{ident_str(Y)} is not fibrant")
    small = build_moduli(M, X, Y, "hom-f")
    big = build_moduli(M, X, Y, "hom")
    j = moduli_inclusion(M, X, Y, "hom-f", "hom", {"hom-f": small, "hom": big})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        q = quasi_iso_check(nerve_map(j, cap), cap)
    certs = (certify(M, X, Y, "prop21"), certify(M, X, Y, "prwe"))
    return TheoremReport(cap, fibrant, q, certs, (len(small.objects), len(big.objects)))


@dataclass(frozen=True)
class FinalPropReport:
    cap: int
    edge_h: bool
    edge_v: bool
    j1: bool
    j2: bool
    witnesses_ok: bool

    @property
    def implication_holds(self) -> bool:
        return not (self.edge_h and self.edge_v and self.j2) or self.j1

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def double_reduction(M: ModelData, X, Y, cap: int = 3) -> tuple:
    """moduli_double plus reduction_check in both directions."""
    D = moduli_double(M, X, Y)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        dg = binerve_diagonal(D, cap)
        rh = reduction_check(D, lemma_witness(M, D, "v"), cap, "h", diagonal=dg)
        rv = reduction_check(D, lemma_witness(M, D, "h"), cap, "v", diagonal=dg)
    return D, rh, rv


def final_prop_check(M: ModelData, X, Y, cap: int = 3) -> FinalPropReport:
    """The comparison of j1 and j2 through the diagonal of the binerve."""
    D, rh, rv = double_reduction(M, X, Y, cap)
    cats = {"wfib-inv": build_moduli(M, X, Y, "wfib-inv"), "restricted": D.hcat, "restricted-tw": D.vcat}
    j1 = moduli_inclusion(M, X, Y, "wfib-inv", "restricted", cats)
    j2 = moduli_inclusion(M, X, Y, "wfib-inv", "restricted-tw", cats)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        q1 = quasi_iso_check(nerve_map(j1, cap), cap)
        q2 = quasi_iso_check(nerve_map(j2, cap), cap)
    return FinalPropReport(cap, rh.quasi_iso, rv.quasi_iso, q1.quasi_iso, q2.quasi_iso,
                           rh.witness_ok and rv.witness_ok)
