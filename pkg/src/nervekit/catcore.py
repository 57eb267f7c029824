"""Finite categories given by explicit tables, plus functors, natural
transformations and brute-force universal constructions over them.

Identifiers are opaque hashables. Categories read from JSON use strings;
categories built by constructions (products, commas, moduli categories)
use nested tuples of the identifiers they are made from. ``ident_str``
renders either kind canonically and doubles as the sort key, so "least
identifier" always means least in that rendering.
"""
from __future__ import annotations

import os
from functools import lru_cache
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    AmbiguousUniversal,
    AnchorNotFound,
    DanglingEndpoint,
    EndpointMismatch,
    ExplosionGuard,
    IncompleteCompositionTable,
    MissingIdentity,
    NonAssociative,
    NotFound,
    NotNatural,
    NotPreservingComposition,
    NotPreservingIdentity,
)

Ident = Hashable

DEFAULT_SEARCH_BOUND = 10**6


@lru_cache(maxsize=1 << 18, typed=True)
def ident_str(x: Any) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(ident_str(y) for y in x) + ")"
    return str(x)


def sort_idents(xs: Iterable[Ident]) -> tuple:
    return tuple(sorted(xs, key=ident_str))


def search_bound() -> int:
    raw = os.environ.get("NERVEKIT_SEARCH_BOUND")
    return int(raw) if raw else DEFAULT_SEARCH_BOUND


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple
    morphisms: Mapping[Ident, tuple]  # id -> (src, dst)
    identity: Mapping[Ident, Ident]
    table: Mapping[tuple, Ident]  # (g, f) -> g∘f
    _hom: Mapping[tuple, tuple] = field(repr=False, default=MappingProxyType({}))
    _identities: frozenset = field(repr=False, default=frozenset())

    def src(self, m: Ident) -> Ident:
        return self.morphisms[m][0]

    def dst(self, m: Ident) -> Ident:
        return self.morphisms[m][1]

    def id(self, x: Ident) -> Ident:
        return self.identity[x]

    def is_identity(self, m: Ident) -> bool:
        return m in self._identities

    def compose(self, g: Ident, f: Ident) -> Ident:
        """g∘f; KeyError when the pair is not composable."""
        return self.table[(g, f)]

    def compose_chain(self, *ms: Ident) -> Ident:
        """Compose ``ms`` right to left: compose_chain(h, g, f) = h∘g∘f."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.table[(m, out)]
        return out

    def hom(self, x: Ident, y: Ident) -> tuple:
        return self._hom.get((x, y), ())

    def out_of(self, x: Ident) -> Iterator[Ident]:
        for y in self.objects:
            yield from self.hom(x, y)

    def into(self, y: Ident) -> Iterator[Ident]:
        for x in self.objects:
            yield from self.hom(x, y)

    @property
    def morphism_ids(self) -> tuple:
        return sort_idents(self.morphisms)

    def composable_pairs(self) -> Iterator[tuple]:
        for f, (_, b) in self.morphisms.items():
            for g in self.out_of(b):
                yield g, f

    def __len__(self) -> int:
        return len(self.objects)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and dict(self.morphisms) == dict(other.morphisms)
            and dict(self.identity) == dict(other.identity)
            and dict(self.table) == dict(other.table)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FiniteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def _freeze(objects, morphisms, identity, table) -> FiniteCategory:
    hom: dict[tuple, list] = {}
    for m, (a, b) in morphisms.items():
        hom.setdefault((a, b), []).append(m)
    return FiniteCategory(
        objects=sort_idents(objects),
        morphisms=MappingProxyType(dict(morphisms)),
        identity=MappingProxyType(dict(identity)),
        table=MappingProxyType(dict(table)),
        _hom=MappingProxyType({k: sort_idents(v) for k, v in hom.items()}),
        _identities=frozenset(identity.values()),
    )


def make_category(
    objects: Iterable[Ident],
    morphisms: Mapping[Ident, tuple],
    identity: Mapping[Ident, Ident],
    table: Mapping[tuple, Ident],
    check: bool = True,
) -> FiniteCategory:
    """Build a category from tables, filling in composites with identities.

    With ``check`` the identity laws, totality of the table and
    associativity are verified exhaustively.
    """
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise DanglingEndpoint("duplicate object identifiers")
    obset = set(objects)
    morphisms = dict(morphisms)
    for m, (a, b) in morphisms.items():
        if a not in obset or b not in obset:
            raise DanglingEndpoint(f"morphism {ident_str(m)} has endpoint outside the objects")
    for x in objects:
        i = identity.get(x)
        if i is None:
            raise MissingIdentity(f"object {ident_str(x)} has no identity")
        if i not in morphisms or morphisms[i] != (x, x):
            raise MissingIdentity(f"identity {ident_str(i)} of {ident_str(x)} is not an endomorphism of it")
    full = dict(table)
    for m, (a, b) in morphisms.items():
        for key, val in (((identity[b], m), m), ((m, identity[a]), m)):
            if key in full and full[key] != val:
                raise MissingIdentity(
                    f"identity law fails: {ident_str(key[0])}∘{ident_str(key[1])} = {ident_str(full[key])}"
                )
            full[key] = val
    cat = _freeze(objects, morphisms, identity, full)
    if check:
        _check_table(cat)
    return cat


def _check_table(cat: FiniteCategory) -> None:
    for (g, f), gf in cat.table.items():
        for name in (g, f, gf):
            if name not in cat.morphisms:
                raise DanglingEndpoint(f"composition entry names unknown morphism {ident_str(name)}")
        if cat.dst(f) != cat.src(g):
            raise IncompleteCompositionTable(
                f"entry {ident_str(g)}∘{ident_str(f)} given for a non-composable pair"
            )
        if cat.morphisms[gf] != (cat.src(f), cat.dst(g)):
            raise DanglingEndpoint(
                f"composite {ident_str(g)}∘{ident_str(f)} = {ident_str(gf)} has the wrong endpoints"
            )
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.table:
            raise IncompleteCompositionTable(f"missing composite {ident_str(g)}∘{ident_str(f)}")
    for g, f in cat.composable_pairs():
        gf = cat.table[(g, f)]
        for h in cat.out_of(cat.dst(g)):
            if cat.table[(h, gf)] != cat.table[(cat.table[(h, g)], f)]:
                raise NonAssociative(
                    f"({ident_str(h)}∘{ident_str(g)})∘{ident_str(f)} != {ident_str(h)}∘({ident_str(g)}∘{ident_str(f)})"
                )


def validate_category(raw: Mapping[str, Any], auto_identities: bool = False) -> FiniteCategory:
    """Validate a JSON-style description.

    ``raw`` has keys ``objects``, ``morphisms`` (list of {"id","src","dst"}),
    ``compose`` (list of [g, f, g∘f]) and optionally ``identities``
    (object -> morphism id). With ``auto_identities`` a morphism ``id_<x>``
    is created for every object lacking one.
    """
    objects = list(raw.get("objects", []))
    morphisms: dict = {}
    for m in raw.get("morphisms", []):
        if m["id"] in morphisms:
            raise DanglingEndpoint(f"duplicate morphism id {m['id']}")
        morphisms[m["id"]] = (m["src"], m["dst"])
    identity = dict(raw.get("identities", {}))
    if auto_identities:
        for x in objects:
            if x not in identity:
                name = f"id_{x}"
                if name in morphisms and morphisms[name] != (x, x):
                    raise DanglingEndpoint(f"cannot auto-generate {name}: id already used")
                morphisms[name] = (x, x)
                identity[x] = name
    table: dict = {}
    for entry in raw.get("compose", []):
        g, f, gf = entry
        if (g, f) in table and table[(g, f)] != gf:
            raise IncompleteCompositionTable(f"conflicting entries for {g}∘{f}")
        table[(g, f)] = gf
    return make_category(objects, morphisms, identity, table)


def category_to_json(cat: FiniteCategory) -> dict:
    s = ident_str
    return {
        "objects": [s(x) for x in cat.objects],
        "morphisms": [
            {"id": s(m), "src": s(cat.src(m)), "dst": s(cat.dst(m))} for m in cat.morphism_ids
        ],
        "identities": {s(x): s(cat.id(x)) for x in cat.objects},
        "compose": sorted(
            ([s(g), s(f), s(gf)] for (g, f), gf in cat.table.items()
             if not (cat.is_identity(g) or cat.is_identity(f))),
        ),
    }


def poset_category(elements: Sequence[Ident], leq: Callable[[Any, Any], bool]) -> FiniteCategory:
    """The thin category of a finite poset; the morphism a ≤ b is ``(a, b)``."""
    morphisms = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
    identity = {a: (a, a) for a in elements}
    table = {}
    for (b, c) in morphisms:
        for (a, b2) in morphisms:
            if b2 == b:
                table[((b, c), (a, b))] = (a, c)
    return make_category(elements, morphisms, identity, table)


def opposite(cat: FiniteCategory) -> FiniteCategory:
    morphisms = {m: (b, a) for m, (a, b) in cat.morphisms.items()}
    table = {(f, g): gf for (g, f), gf in cat.table.items()}
    return _freeze(cat.objects, morphisms, cat.identity, table)


def product(c: FiniteCategory, d: FiniteCategory) -> FiniteCategory:
    objects = [(x, y) for x in c.objects for y in d.objects]
    morphisms = {
        (f, g): ((c.src(f), d.src(g)), (c.dst(f), d.dst(g)))
        for f in c.morphisms for g in d.morphisms
    }
    identity = {(x, y): (c.id(x), d.id(y)) for x, y in objects}
    table = {
        ((f2, g2), (f1, g1)): (c.table[(f2, f1)], d.table[(g2, g1)])
        for (f2, f1) in c.table for (g2, g1) in d.table
    }
    return _freeze(objects, morphisms, identity, table)


def full_subcategory(cat: FiniteCategory, objects: Iterable[Ident]) -> FiniteCategory:
    keep = set(objects)
    morphisms = {m: e for m, e in cat.morphisms.items() if e[0] in keep and e[1] in keep}
    table = {k: v for k, v in cat.table.items() if k[0] in morphisms and k[1] in morphisms}
    return _freeze(keep, morphisms, {x: cat.id(x) for x in keep}, table)


# -- functors -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: Mapping[Ident, Ident]
    mor_map: Mapping[Ident, Ident]

    def __call__(self, m: Ident) -> Ident:
        return self.mor_map[m]

    def on_object(self, x: Ident) -> Ident:
        return self.obj_map[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.obj_map) == dict(other.obj_map)
            and dict(self.mor_map) == dict(other.mor_map)
        )

    __hash__ = None  # type: ignore[assignment]


def validate_functor(
    source: FiniteCategory,
    target: FiniteCategory,
    obj_map: Mapping[Ident, Ident],
    mor_map: Mapping[Ident, Ident],
) -> Functor:
    for x in source.objects:
        if obj_map.get(x) not in target.identity:
            raise EndpointMismatch(f"object {ident_str(x)} is not sent to an object of the target")
    for m, (a, b) in source.morphisms.items():
        fm = mor_map.get(m)
        if fm not in target.morphisms:
            raise EndpointMismatch(f"morphism {ident_str(m)} is not sent to a morphism of the target")
        if target.morphisms[fm] != (obj_map[a], obj_map[b]):
            raise EndpointMismatch(f"image of {ident_str(m)} has the wrong endpoints")
    for x in source.objects:
        if mor_map[source.id(x)] != target.id(obj_map[x]):
            raise NotPreservingIdentity(f"identity of {ident_str(x)} not sent to an identity")
    for (g, f), gf in source.table.items():
        if target.table[(mor_map[g], mor_map[f])] != mor_map[gf]:
            raise NotPreservingComposition(
                f"F({ident_str(g)}∘{ident_str(f)}) != F({ident_str(g)})∘F({ident_str(f)})"
            )
    return Functor(source, target, MappingProxyType(dict(obj_map)), MappingProxyType(dict(mor_map)))


def identity_functor(cat: FiniteCategory) -> Functor:
    return Functor(
        cat, cat,
        MappingProxyType({x: x for x in cat.objects}),
        MappingProxyType({m: m for m in cat.morphisms}),
    )


def compose_functors(g: Functor, f: Functor) -> Functor:
    """g∘f."""
    return Functor(
        f.source, g.target,
        MappingProxyType({x: g.obj_map[y] for x, y in f.obj_map.items()}),
        MappingProxyType({m: g.mor_map[n] for m, n in f.mor_map.items()}),
    )


def inclusion_functor(sub: FiniteCategory, cat: FiniteCategory) -> Functor:
    return validate_functor(
        sub, cat, {x: x for x in sub.objects}, {m: m for m in sub.morphisms}
    )


# -- natural transformations --------------------------------------------------


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    source: Functor
    target: Functor
    components: Mapping[Ident, Ident]


def failing_square(eta: NaturalTransformation) -> str | None:
    """Describe the first non-commuting naturality square, or return None."""
    F, G = eta.source, eta.target
    C, D = F.source, F.target
    for x in C.objects:
        c = eta.components.get(x)
        if c is None or D.morphisms.get(c) != (F.obj_map[x], G.obj_map[x]):
            return f"component at {ident_str(x)} is not a morphism F({ident_str(x)}) -> G({ident_str(x)})"
    for m in C.morphism_ids:
        a, b = C.morphisms[m]
        lhs = D.table[(eta.components[b], F.mor_map[m])]
        rhs = D.table[(G.mor_map[m], eta.components[a])]
        if lhs != rhs:
            return (
                f"naturality square at {ident_str(m)}: "
                f"{ident_str(lhs)} != {ident_str(rhs)}"
            )
    return None


def validate_nat_trans(
    source: Functor, target: Functor, components: Mapping[Ident, Ident]
) -> NaturalTransformation:
    eta = NaturalTransformation(source, target, MappingProxyType(dict(components)))
    msg = failing_square(eta)
    if msg:
        raise NotNatural(msg)
    return eta


def nat_trans_search(F: Functor, G: Functor, bound: int | None = None) -> list[NaturalTransformation]:
    """Every natural transformation F ⇒ G, by backtracking over components."""
    bound = search_bound() if bound is None else bound
    C, D = F.source, F.target
    choices = [D.hom(F.obj_map[x], G.obj_map[x]) for x in C.objects]
    space = 1
    for ch in choices:
        space *= len(ch)
        if space > bound:
            raise ExplosionGuard(
                f"component search space exceeds {bound} assignments"
            )
    order = list(C.objects)
    pos = {x: i for i, x in enumerate(order)}
    # morphisms checkable once both endpoints are assigned
    checks: list[list] = [[] for _ in order]
    for m, (a, b) in C.morphisms.items():
        checks[max(pos[a], pos[b])].append((m, a, b))
    found: list[NaturalTransformation] = []
    comp: dict = {}

    def extend(i: int) -> None:
        if i == len(order):
            found.append(NaturalTransformation(F, G, MappingProxyType(dict(comp))))
            return
        x = order[i]
        for c in choices[i]:
            comp[x] = c
            if all(
                D.table[(comp[b], F.mor_map[m])] == D.table[(G.mor_map[m], comp[a])]
                for m, a, b in checks[i]
            ):
                extend(i + 1)
        comp.pop(x, None)

    extend(0)
    return found


def identity_transformation(F: Functor) -> NaturalTransformation:
    return NaturalTransformation(
        F, F, MappingProxyType({x: F.target.id(F.obj_map[x]) for x in F.source.objects})
    )


# -- homotopy-equivalence certificates ---------------------------------------


@dataclass(frozen=True)
class ZigZag:
    """A finite alternating sequence of transformations between functors.

    ``steps`` holds (transformation, forward) pairs; a forward step goes
    from the current functor to the next one, a backward step points the
    other way. The zig-zag runs from ``start`` to ``end``.
    """

    start: Functor
    end: Functor
    steps: tuple = ()


@dataclass(frozen=True)
class HomotopyEquivalenceCertificate:
    F: Functor  # C -> D
    G: Functor  # D -> C
    fg_zigzag: ZigZag  # F∘G ~ id_D
    gf_zigzag: ZigZag  # G∘F ~ id_C


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_zigzag(z: ZigZag, start: Functor, end: Functor, label: str) -> str | None:
    if z.start != start:
        return f"{label}: zig-zag does not start at the declared composite"
    if z.end != end:
        return f"{label}: zig-zag does not end at the identity"
    current = z.start
    for k, (eta, forward) in enumerate(z.steps):
        here, there = (eta.source, eta.target) if forward else (eta.target, eta.source)
        if here != current:
            return f"{label}: step {k} does not start where the previous one ended"
        msg = failing_square(eta)
        if msg:
            return f"{label}: step {k}: {msg}"
        current = there
    if current != z.end:
        return f"{label}: last step does not reach the declared end"
    return None


def verify_certificate(cert: HomotopyEquivalenceCertificate) -> CertificateReport:
    F, G = cert.F, cert.G
    if F.source != G.target or F.target != G.source:
        return CertificateReport(False, "F and G are not opposite-facing functors")
    for fn, name in ((F, "F"), (G, "G")):
        try:
            validate_functor(fn.source, fn.target, fn.obj_map, fn.mor_map)
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            return CertificateReport(False, f"{name} is not a functor: {exc}")
    msg = _check_zigzag(cert.fg_zigzag, compose_functors(F, G), identity_functor(F.target), "F∘G")
    if msg is None:
        msg = _check_zigzag(cert.gf_zigzag, compose_functors(G, F), identity_functor(F.source), "G∘F")
    return CertificateReport(msg is None, msg)


# -- comma categories and universal constructions -----------------------------


def comma(
    cat: FiniteCategory,
    anchor: Ident,
    side: str,
    keep: Callable[[Ident], bool] = lambda m: True,
    connecting: Callable[[Ident], bool] | None = None,
) -> tuple[FiniteCategory, Functor]:
    """Objects over (or under) ``anchor`` selected by ``keep``.

    A morphism is a commuting triangle; its connecting arrow must satisfy
    ``connecting`` (defaults to ``keep``). Object ids are the legs, morphism
    ids are (leg, leg', connecting arrow). Returns the category and the
    projection forgetting the anchor leg.
    """
    if anchor not in cat.identity:
        raise AnchorNotFound(f"anchor {ident_str(anchor)} is not an object")
    if side not in ("over", "under"):
        raise ValueError(f"side must be 'over' or 'under', not {side!r}")
    connecting = keep if connecting is None else connecting
    over = side == "over"
    legs = [m for m in (cat.into(anchor) if over else cat.out_of(anchor)) if keep(m)]

    def foot(m):
        return cat.src(m) if over else cat.dst(m)

    morphisms, proj = {}, {}
    for l1 in legs:
        for l2 in legs:
            for h in cat.hom(foot(l1), foot(l2)):
                if not connecting(h):
                    continue
                ok = cat.compose(l2, h) == l1 if over else cat.compose(h, l1) == l2
                if ok:
                    morphisms[(l1, l2, h)] = (l1, l2)
                    proj[(l1, l2, h)] = h
    identity = {l: (l, l, cat.id(foot(l))) for l in legs}
    table = {}
    for (l2, l3, g) in morphisms:
        for (l1, l2b, f) in morphisms:
            if l2b == l2:
                table[((l2, l3, g), (l1, l2, f))] = (l1, l3, cat.compose(g, f))
    result = _freeze(legs, morphisms, identity, table)
    projection = Functor(
        result, cat,
        MappingProxyType({l: foot(l) for l in legs}),
        MappingProxyType(proj),
    )
    return result, projection


def terminal_objects(cat: FiniteCategory) -> tuple:
    return tuple(
        t for t in cat.objects if all(len(cat.hom(x, t)) == 1 for x in cat.objects)
    )


def universal_square(cat: FiniteCategory, kind: str, data: tuple) -> tuple:
    """Pushout of a span (f: c->a, g: c->b) or pullback of a cospan
    (f: a->c, g: b->c), found by exhaustive search.

    Returns (object, leg from a, leg from b) for a pushout, or
    (object, leg to a, leg to b) for a pullback; the least-identifier
    representative wins ties.
    """
    if kind == "pullback":
        p, i, j = universal_square(opposite(cat), "pushout", data)
        return p, i, j
    if kind != "pushout":
        raise ValueError(f"kind must be 'pushout' or 'pullback', not {kind!r}")
    f, g = data
    if cat.src(f) != cat.src(g):
        raise ValueError("pushout data must be a span with a common source")
    a, b = cat.dst(f), cat.dst(g)
    cocones = [
        (q, p1, p2)
        for q in cat.objects
        for p1 in cat.hom(a, q)
        for p2 in cat.hom(b, q)
        if cat.compose(p1, f) == cat.compose(p2, g)
    ]

    def mediators(src, tgt):
        (p, i1, i2), (q, j1, j2) = src, tgt
        return [
            m for m in cat.hom(p, q)
            if cat.compose(m, i1) == j1 and cat.compose(m, i2) == j2
        ]

    universal = [c for c in cocones if all(len(mediators(c, d)) == 1 for d in cocones)]
    if not universal:
        raise NotFound(f"no {kind} of ({ident_str(f)}, {ident_str(g)})")
    universal.sort(key=lambda c: tuple(ident_str(x) for x in c))
    best = universal[0]
    for other in universal[1:]:
        there, back = mediators(best, other)[0], mediators(other, best)[0]
        if cat.compose(back, there) != cat.id(best[0]) or cat.compose(there, back) != cat.id(other[0]):
            raise AmbiguousUniversal("two universal candidates are not isomorphic")
    return best


def find_isomorphism(
    c: FiniteCategory, d: FiniteCategory, bound: int | None = None
) -> Functor | None:
    """An isomorphism of categories c -> d found by backtracking, or None."""
    bound = search_bound() if bound is None else bound
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None

    def profile(cat, x):
        return (
            len(cat.hom(x, x)),
            tuple(sorted(len(cat.hom(x, y)) for y in cat.objects)),
            tuple(sorted(len(cat.hom(y, x)) for y in cat.objects)),
        )

    cobj, dobj = list(c.objects), list(d.objects)
    dprof = {y: profile(d, y) for y in dobj}
    steps = 0
    obj: dict = {}
    used: set = set()

    def objects_ok(x):
        fx = obj[x]
        for y, fy in obj.items():
            if len(c.hom(x, y)) != len(d.hom(fx, fy)) or len(c.hom(y, x)) != len(d.hom(fy, fx)):
                return False
        return True

    def morphism_maps():
        # per hom-set bijections, composition checked when all three are set
        order = [m for m in c.morphism_ids if not c.is_identity(m)]
        mor = {c.id(x): d.id(obj[x]) for x in cobj}
        usedm = set(mor.values())

        def consistent(m):
            for (g, f), gf in c.table.items():
                if m in (g, f, gf) and g in mor and f in mor and gf in mor:
                    if d.table[(mor[g], mor[f])] != mor[gf]:
                        return False
            return True

        def go(i):
            nonlocal steps
            if i == len(order):
                return dict(mor)
            m = order[i]
            a, b = c.morphisms[m]
            for n in d.hom(obj[a], obj[b]):
                steps += 1
                if steps > bound:
                    raise ExplosionGuard(f"isomorphism search exceeded {bound} steps")
                if n in usedm:
                    continue
                mor[m] = n
                usedm.add(n)
                if consistent(m):
                    r = go(i + 1)
                    if r is not None:
                        return r
                usedm.discard(n)
                del mor[m]
            return None

        return go(0)

    def place(i):
        nonlocal steps
        if i == len(cobj):
            return morphism_maps()
        x = cobj[i]
        px = profile(c, x)
        for y in dobj:
            if y in used or dprof[y] != px:
                continue
            steps += 1
            if steps > bound:
                raise ExplosionGuard(f"isomorphism search exceeded {bound} steps")
            obj[x] = y
            used.add(y)
            if objects_ok(x):
                r = place(i + 1)
                if r is not None:
                    return r
            used.discard(y)
            del obj[x]
        return None

    mor = place(0)
    if mor is None:
        return None
    return validate_functor(c, d, dict(obj), mor)


def is_isomorphism(F: Functor) -> bool:
    return (
        len(set(F.obj_map.values())) == len(F.target.objects) == len(F.source.objects)
        and len(set(F.mor_map.values())) == len(F.target.morphisms) == len(F.source.morphisms)
    )


def check_category_laws(cat: FiniteCategory) -> list[str]:
    """Exhaustive identity-law and associativity audit; returns failures."""
    out = []
    for m, (a, b) in cat.morphisms.items():
        if cat.table.get((cat.id(b), m)) != m or cat.table.get((m, cat.id(a))) != m:
            out.append(f"identity law fails at {ident_str(m)}")
    for g, f in cat.composable_pairs():
        gf = cat.table.get((g, f))
        if gf is None:
            out.append(f"missing {ident_str(g)}∘{ident_str(f)}")
            continue
        for h in cat.out_of(cat.dst(g)):
            if cat.table[(h, gf)] != cat.table[(cat.table[(h, g)], f)]:
                out.append(f"associativity fails at {ident_str((h, g, f))}")
    return out

