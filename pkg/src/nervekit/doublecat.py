"""Double categories: two categories on one object set plus a
pasting-closed set of bicommutative squares.

A square is stored as ``(top, bottom, left, right)``: top and bottom are
h-morphisms, left and right are v-morphisms, with
top: A -> B, bottom: C -> D, left: A -> C, right: B -> D.

Binerve elements are grids ``(objs, hs, vs)`` with q+1 rows and p+1
columns: ``objs[j][i]`` is an object, ``hs[j][i]`` the h-arrow from column
i to i+1 in row j, ``vs[j][i]`` the v-arrow from row j to j+1 in column i.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

from .catcore import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    ZigZag,
    _freeze,
    failing_square,
    identity_functor,
    compose_functors,
    ident_str,
    validate_category,
    validate_functor,
)
from .errors import (
    CapTooSmall,
    CornerMismatch,
    MissingIdentitySquare,
    NotPastingClosed,
    SharedObjectMismatch,
    TruncationWarning,
    WitnessNotFunctorial,
    WitnessShapeError,
)
from .simpl import BisimplicialSet, TruncatedSimplicialSet, build_bisset, build_sset, composable_chains, nerve


@dataclass(frozen=True, eq=False)
class DoubleCategory:
    hcat: FiniteCategory
    vcat: FiniteCategory
    squares: frozenset

    @property
    def objects(self) -> tuple:
        return self.hcat.objects

    def is_square(self, top, bottom, left, right) -> bool:
        return (top, bottom, left, right) in self.squares

    def __repr__(self) -> str:
        return (
            f"DoubleCategory({len(self.objects)} objects, {len(self.hcat.morphisms)} h, "
            f"{len(self.vcat.morphisms)} v, {len(self.squares)} squares)"
        )


def identity_squares(hcat: FiniteCategory, vcat: FiniteCategory) -> set:
    out = set()
    for a, (x, y) in vcat.morphisms.items():
        out.add((hcat.id(x), hcat.id(y), a, a))
    for b, (x, y) in hcat.morphisms.items():
        out.add((b, b, vcat.id(x), vcat.id(y)))
    return out


def _pastings(hcat, vcat, squares):
    """Yield (first, second, composite) for every horizontal and vertical
    pasting of two squares in ``squares``."""
    by_left: dict = {}
    by_top: dict = {}
    for sq in squares:
        by_left.setdefault(sq[2], []).append(sq)
        by_top.setdefault(sq[0], []).append(sq)
    for s1 in squares:
        t1, b1, l1, r1 = s1
        for s2 in by_left.get(r1, ()):
            t2, b2, _, r2 = s2
            yield s1, s2, (hcat.compose(t2, t1), hcat.compose(b2, b1), l1, r2)
        for s2 in by_top.get(b1, ()):
            _, b2, l2, r2 = s2
            yield s1, s2, (t1, b2, vcat.compose(l2, l1), vcat.compose(r2, r1))


def pasting_closure(hcat, vcat, squares) -> frozenset:
    closed = set(squares)
    while True:
        new = {c for _, _, c in _pastings(hcat, vcat, closed)} - closed
        if not new:
            return frozenset(closed)
        closed |= new


def validate_double(
    hcat: FiniteCategory,
    vcat: FiniteCategory,
    squares,
    identity_squares_auto: bool = False,
    auto_close: bool = False,
) -> DoubleCategory:
    if set(hcat.objects) != set(vcat.objects):
        raise SharedObjectMismatch("horizontal and vertical categories have different objects")
    squares = set(squares)
    for sq in squares:
        t, b, l, r = sq
        try:
            ok = (
                hcat.src(t) == vcat.src(l) and hcat.dst(t) == vcat.src(r)
                and hcat.src(b) == vcat.dst(l) and hcat.dst(b) == vcat.dst(r)
            )
        except KeyError:
            ok = False
        if not ok:
            raise CornerMismatch(f"square {ident_str(sq)} has mismatched corners")
    ids = identity_squares(hcat, vcat)
    if identity_squares_auto:
        squares |= ids
    else:
        missing = sorted((ident_str(s) for s in ids - squares))
        if missing:
            raise MissingIdentitySquare(f"missing identity square {missing[0]}")
    if auto_close:
        squares = set(pasting_closure(hcat, vcat, squares))
    else:
        for s1, s2, c in _pastings(hcat, vcat, squares):
            if c not in squares:
                raise NotPastingClosed(
                    f"pasting {ident_str(s1)} with {ident_str(s2)} gives missing square {ident_str(c)}"
                )
    return DoubleCategory(hcat, vcat, frozenset(squares))


def double_from_json(raw: Mapping[str, Any]) -> DoubleCategory:
    """Category format for the h-part plus ``vmorphisms``, ``vcompose``,
    optional ``videntities`` and ``squares`` as [top, bottom, left, right]."""
    auto = bool(raw.get("auto_identities", False))
    hcat = validate_category(raw, auto_identities=auto)
    vraw = {
        "objects": raw["objects"],
        "morphisms": raw.get("vmorphisms", []),
        "compose": raw.get("vcompose", []),
        "identities": raw.get("videntities", {}),
    }
    vcat = validate_category(vraw, auto_identities=auto)
    return validate_double(
        hcat, vcat, [tuple(s) for s in raw.get("squares", [])],
        identity_squares_auto=bool(raw.get("auto_identity_squares", False)),
        auto_close=bool(raw.get("auto_close", False)),
    )


def double_to_json(D: DoubleCategory) -> dict:
    from .catcore import category_to_json

    s = ident_str
    h = category_to_json(D.hcat)
    v = category_to_json(D.vcat)
    return {
        "format": "double",
        **h,
        "vmorphisms": v["morphisms"],
        "videntities": v["identities"],
        "vcompose": v["compose"],
        "squares": sorted([s(x) for x in sq] for sq in D.squares),
    }


def trivial_double(C: FiniteCategory) -> DoubleCategory:
    """C_bi: both structures are C and the squares are the commuting ones."""
    squares = set()
    for t, (a, b) in C.morphisms.items():
        for l in C.out_of(a):
            bl_targets = {}
            for bot in C.out_of(C.dst(l)):
                bl_targets.setdefault(C.compose(bot, l), []).append(bot)
            for r in C.out_of(b):
                for bot in bl_targets.get(C.compose(r, t), ()):
                    squares.add((t, bot, l, r))
    return DoubleCategory(C, C, frozenset(squares))


def transpose(D: DoubleCategory) -> DoubleCategory:
    """Swap the roles of h and v."""
    return DoubleCategory(D.vcat, D.hcat, frozenset((l, r, t, b) for t, b, l, r in D.squares))


# -- chain categories ---------------------------------------------------------


def chain_vertices(cat: FiniteCategory, chain: tuple) -> tuple:
    return (cat.src(chain[0]),) + tuple(cat.dst(a) for a in chain)


def _ladders(D: DoubleCategory, a: tuple, b: tuple) -> list:
    """All tuples of h-maps making every rung square bicommutative."""
    va, vb = chain_vertices(D.vcat, a), chain_vertices(D.vcat, b)
    partial = [(h,) for h in D.hcat.hom(va[0], vb[0])]
    for j in range(len(a)):
        nxt = []
        for hs in partial:
            for h in D.hcat.hom(va[j + 1], vb[j + 1]):
                if (hs[-1], h, a[j], b[j]) in D.squares:
                    nxt.append(hs + (h,))
        partial = nxt
    return partial


def chain_category(D: DoubleCategory, direction: str, n: int) -> FiniteCategory:
    """Map(Δ^n_v, D)_h for direction 'v' (the h-swapped analog for 'h').

    For n = 0 this is D_h (resp. D_v) itself. For n >= 1 objects are
    chains of n arrows and a morphism is ``(source, target, rungs)``.
    """
    if direction == "h":
        return chain_category(transpose(D), "v", n)
    if direction != "v":
        raise ValueError(f"direction must be 'h' or 'v', not {direction!r}")
    if n < 0:
        raise CapTooSmall("chain length must be >= 0")
    if n == 0:
        return D.hcat
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        chains = composable_chains(D.vcat, n)
    morphisms = {}
    by_src: dict = {}
    for a in chains:
        for b in chains:
            for hs in _ladders(D, a, b):
                morphisms[(a, b, hs)] = (a, b)
                by_src.setdefault(a, []).append((a, b, hs))
    identity = {
        a: (a, a, tuple(D.hcat.id(x) for x in chain_vertices(D.vcat, a))) for a in chains
    }
    table = {}
    for f in morphisms:
        for g in by_src.get(f[1], ()):
            table[(g, f)] = (f[0], g[1], tuple(D.hcat.compose(y, x) for x, y in zip(f[2], g[2])))
    return _freeze(chains, morphisms, identity, table)


def chain_shift(D: DoubleCategory, n: int, which: str) -> Functor:
    """``extend``: Map(Δ^{n-1}_v, D)_h -> Map(Δ^n_v, D)_h prepending an
    identity v-map; ``forget``: the other way, dropping the first v-map."""
    if n < 1:
        raise CapTooSmall("chain_shift needs n >= 1")
    small, big = chain_category(D, "v", n - 1), chain_category(D, "v", n)
    V, H = D.vcat, D.hcat
    if which == "extend":
        if n == 1:
            obj = {x: (V.id(x),) for x in small.objects}
            mor = {h: ((V.id(H.src(h)),), (V.id(H.dst(h)),), (h, h)) for h in small.morphisms}
        else:
            def ext(c):
                return (V.id(V.src(c[0])),) + c
            obj = {c: ext(c) for c in small.objects}
            mor = {m: (ext(m[0]), ext(m[1]), (m[2][0],) + m[2]) for m in small.morphisms}
        return validate_functor(small, big, obj, mor)
    if which == "forget":
        if n == 1:
            obj = {c: V.dst(c[0]) for c in big.objects}
            mor = {m: m[2][1] for m in big.morphisms}
        else:
            obj = {c: c[1:] for c in big.objects}
            mor = {m: (m[0][1:], m[1][1:], m[2][1:]) for m in big.morphisms}
        return validate_functor(big, small, obj, mor)
    raise ValueError(f"which must be 'extend' or 'forget', not {which!r}")


# -- binerve ------------------------------------------------------------------


def _grid_from_ladder_chain(D: DoubleCategory, p: int, q: int, x) -> tuple:
    V = D.vcat
    if q == 0:
        if p == 0:
            return (((x,),), ((),), ())
        objs = (D.hcat.src(x[0]),) + tuple(D.hcat.dst(h) for h in x)
        return ((objs,), (tuple(x),), ())
    if p == 0:
        chains = (x,)
        ladders = ()
    else:
        chains = (x[0][0],) + tuple(L[1] for L in x)
        ladders = x
    verts = [chain_vertices(V, c) for c in chains]
    objs = tuple(tuple(verts[i][j] for i in range(p + 1)) for j in range(q + 1))
    hs = tuple(tuple(L[2][j] for L in ladders) for j in range(q + 1))
    vs = tuple(tuple(chains[i][j] for i in range(p + 1)) for j in range(q))
    return objs, hs, vs


def grid_hface(D: DoubleCategory, g: tuple, i: int) -> tuple:
    objs, hs, vs = g
    p = len(objs[0]) - 1
    H = D.hcat
    objs2 = tuple(r[:i] + r[i + 1:] for r in objs)
    vs2 = tuple(r[:i] + r[i + 1:] for r in vs)
    if i == 0:
        hs2 = tuple(r[1:] for r in hs)
    elif i == p:
        hs2 = tuple(r[:-1] for r in hs)
    else:
        hs2 = tuple(r[: i - 1] + (H.compose(r[i], r[i - 1]),) + r[i + 1:] for r in hs)
    return objs2, hs2, vs2


def grid_hdeg(D: DoubleCategory, g: tuple, i: int) -> tuple:
    objs, hs, vs = g
    objs2 = tuple(r[: i + 1] + r[i:] for r in objs)
    vs2 = tuple(r[: i + 1] + r[i:] for r in vs)
    hs2 = tuple(h[:i] + (D.hcat.id(o[i]),) + h[i:] for h, o in zip(hs, objs))
    return objs2, hs2, vs2


def _transpose_grid(g: tuple) -> tuple:
    objs, hs, vs = g
    nrows, ncols = len(objs), len(objs[0])
    objs_t = tuple(tuple(objs[j][i] for j in range(nrows)) for i in range(ncols))
    # new h-rows are old columns' v-arrows; new v-rows are old rows' h-arrows
    hs_t = tuple(tuple(vs[j][i] for j in range(nrows - 1)) for i in range(ncols))
    vs_t = tuple(tuple(hs[j][i] for j in range(nrows)) for i in range(ncols - 1))
    return objs_t, hs_t, vs_t


def grid_vface(D: DoubleCategory, g: tuple, i: int) -> tuple:
    objs, hs, vs = g
    q = len(objs) - 1
    objs2 = objs[:i] + objs[i + 1:]
    hs2 = hs[:i] + hs[i + 1:]
    if i == 0:
        vs2 = vs[1:]
    elif i == q:
        vs2 = vs[:-1]
    else:
        V = D.vcat
        merged = tuple(V.compose(b, a) for a, b in zip(vs[i - 1], vs[i]))
        vs2 = vs[: i - 1] + (merged,) + vs[i + 1:]
    return objs2, hs2, vs2


def grid_vdeg(D: DoubleCategory, g: tuple, i: int) -> tuple:
    objs, hs, vs = g
    ids = tuple(D.vcat.id(o) for o in objs[i])
    return objs[: i + 1] + objs[i:], hs[: i + 1] + hs[i:], vs[:i] + (ids,) + vs[i:]


def grid_squares(g: tuple):
    objs, hs, vs = g
    for j in range(len(vs)):
        for i in range(len(hs[0])):
            yield hs[j][i], hs[j + 1][i], vs[j][i], vs[j][i + 1]


def binerve(D: DoubleCategory, pcap: int, qcap: int) -> BisimplicialSet:
    """Level (p, q) holds the p x q arrays of bicommutative squares."""
    if pcap < 0 or qcap < 0:
        raise CapTooSmall("caps must be >= 0")
    levels = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        for q in range(qcap + 1):
            col = nerve(chain_category(D, "v", q), pcap)
            for p in range(pcap + 1):
                levels[(p, q)] = [_grid_from_ladder_chain(D, p, q, x) for x in col.levels[p]]
    return build_bisset(
        pcap, qcap, levels,
        lambda g, i: grid_hface(D, g, i),
        lambda g, i: grid_vface(D, g, i),
        lambda g, i: grid_hdeg(D, g, i),
        lambda g, i: grid_vdeg(D, g, i),
    )


def binerve_diagonal(D: DoubleCategory, cap: int) -> TruncatedSimplicialSet:
    """diag(binerve(D, cap, cap)) built from the (n, n) levels alone, with
    d_i = vd_i∘hd_i and s_i = vs_i∘hs_i applied grid by grid."""
    if cap < 0:
        raise CapTooSmall("cap must be >= 0")
    levels = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        for n in range(cap + 1):
            chains = composable_chains(chain_category(D, "v", n), n)
            levels.append([_grid_from_ladder_chain(D, n, n, x) for x in chains])
    return build_sset(
        levels,
        lambda n, i, g: grid_vface(D, grid_hface(D, g, i), i),
        lambda n, i, g: grid_vdeg(D, grid_hdeg(D, g, i), i),
    )


def grid_from_hchain(D: DoubleCategory, n: int, x) -> tuple:
    """n x n grid repeating an h-chain in every row, identity verticals."""
    H, V = D.hcat, D.vcat
    if n == 0:
        return (((x,),), ((),), ())
    row = (H.src(x[0]),) + tuple(H.dst(h) for h in x)
    return (
        tuple(row for _ in range(n + 1)),
        tuple(tuple(x) for _ in range(n + 1)),
        tuple(tuple(V.id(o) for o in row) for _ in range(n)),
    )


def grid_from_vchain(D: DoubleCategory, n: int, x) -> tuple:
    """n x n grid repeating a v-chain in every column, identity h-maps."""
    return _transpose_grid(grid_from_hchain(transpose(D), n, x))


# -- reduction criterion ------------------------------------------------------

# The zig-zag shape Z has positions
#   0 -> 1 <- 2        (zig)        0 <- 1 -> 2   (zag)
#   |    |    |                     |    |    |
#   3 -> 4 <- 5                     3 <- 4 -> 5
# with h-arrows along the rows and v-arrows 0->3, 1->4, 2->5.
Z_HARROWS = {"zig": ((0, 1), (2, 1), (3, 4), (5, 4)), "zag": ((1, 0), (1, 2), (4, 3), (4, 5))}
Z_VARROWS = ((0, 3), (1, 4), (2, 5))


@dataclass(frozen=True)
class ZDiagram:
    objs: tuple  # six objects
    h: tuple  # four h-arrows in Z_HARROWS order
    v: tuple  # three v-arrows in Z_VARROWS order


@dataclass(frozen=True, eq=False)
class ZigZagWitness:
    """A functor chain_category(D, 'v', 1) -> Map(Z, D)_h, tabulated.

    ``diagrams`` sends each v-arrow to a Z-diagram; ``components`` sends
    each ladder to the six h-maps of a transformation of Z-diagrams.
    """

    orientation: str
    diagrams: Mapping
    components: Mapping


def _z_squares(orientation: str, z: ZDiagram):
    hl, hr, bl, br = z.h
    vl, vm, vr = z.v
    if orientation == "zig":
        yield hl, bl, vl, vm
        yield hr, br, vr, vm
    else:
        yield hl, bl, vm, vl
        yield hr, br, vm, vr


def check_witness_shape(D: DoubleCategory, w: ZigZagWitness) -> None:
    H, V = D.hcat, D.vcat
    arrows = Z_HARROWS[w.orientation]
    for alpha in V.morphism_ids:
        key = (alpha,)
        z = w.diagrams.get(key)
        if z is None:
            raise WitnessShapeError(f"no zig-zag for v-map {ident_str(alpha)}")
        x, y = V.morphisms[alpha]
        where = f"for v-map {ident_str(alpha)}"
        if z.objs[0] != x or any(z.objs[k] != y for k in (2, 3, 4, 5)):
            raise WitnessShapeError(f"boundary objects wrong {where}")
        if z.v[0] != alpha:
            raise WitnessShapeError(f"left column is not the given v-map {where}")
        if z.v[2] != V.id(y):
            raise WitnessShapeError(f"right column is not the identity {where}")
        if z.h[2] != H.id(y) or z.h[3] != H.id(y):
            raise WitnessShapeError(f"bottom row is not identities {where}")
        for e, (s, t) in zip(z.h, arrows):
            if H.morphisms.get(e) != (z.objs[s], z.objs[t]):
                raise WitnessShapeError(f"h-arrow {s}->{t} has wrong endpoints {where}")
        for e, (s, t) in zip(z.v, Z_VARROWS):
            if V.morphisms.get(e) != (z.objs[s], z.objs[t]):
                raise WitnessShapeError(f"v-arrow {s}->{t} has wrong endpoints {where}")
        for sq in _z_squares(w.orientation, z):
            if sq not in D.squares:
                raise WitnessShapeError(f"square {ident_str(sq)} is not bicommutative {where}")


def check_witness_functorial(D: DoubleCategory, w: ZigZagWitness) -> None:
    H = D.hcat
    C1 = chain_category(D, "v", 1)
    arrows = Z_HARROWS[w.orientation]
    for lad in C1.morphism_ids:
        a, b, (p, q) = lad
        comp = w.components.get(lad)
        za, zb = w.diagrams[a], w.diagrams[b]
        if comp is None or len(comp) != 6:
            raise WitnessNotFunctorial(f"no transformation for ladder {ident_str(lad)}")
        for k in range(6):
            if H.morphisms.get(comp[k]) != (za.objs[k], zb.objs[k]):
                raise WitnessNotFunctorial(f"component {k} of ladder {ident_str(lad)} has wrong endpoints")
        if comp[0] != p or any(comp[k] != q for k in (2, 3, 4, 5)):
            raise WitnessNotFunctorial(f"ladder {ident_str(lad)}: boundary components disagree with the ladder")
        for e1, e2, (s, t) in zip(za.h, zb.h, arrows):
            if H.compose(comp[t], e1) != H.compose(e2, comp[s]):
                raise WitnessNotFunctorial(f"ladder {ident_str(lad)}: h-square {s}->{t} does not commute")
        for e1, e2, (s, t) in zip(za.v, zb.v, Z_VARROWS):
            if (comp[s], comp[t], e1, e2) not in D.squares:
                raise WitnessNotFunctorial(f"ladder {ident_str(lad)}: v-square {s}->{t} not bicommutative")
    for a in C1.objects:
        ident = C1.id(a)
        if tuple(w.components[ident]) != tuple(H.id(o) for o in w.diagrams[a].objs):
            raise WitnessNotFunctorial(f"identity ladder of {ident_str(a)} not sent to the identity")
    for (g, f), gf in C1.table.items():
        lhs = tuple(H.compose(y, x) for x, y in zip(w.components[f], w.components[g]))
        if lhs != tuple(w.components[gf]):
            raise WitnessNotFunctorial(
                f"composite ladder {ident_str(gf)} not sent to the composite transformation"
            )


def witness_zigzag(D: DoubleCategory, w: ZigZagWitness) -> ZigZag:
    """The zig-zag of natural transformations between extend∘forget and the
    identity of chain_category(D, 'v', 1) that a witness provides."""
    C1 = chain_category(D, "v", 1)
    fu = compose_functors(chain_shift(D, 1, "extend"), chain_shift(D, 1, "forget"))
    mid_obj = {a: (w.diagrams[a].v[1],) for a in C1.objects}
    mid_mor = {
        m: (mid_obj[m[0]], mid_obj[m[1]], (w.components[m][1], w.components[m][4]))
        for m in C1.morphisms
    }
    mid = validate_functor(C1, C1, mid_obj, mid_mor)
    ident = identity_functor(C1)
    z = {a: w.diagrams[a] for a in C1.objects}
    if w.orientation == "zig":
        left = {a: (a, mid_obj[a], (z[a].h[0], z[a].h[2])) for a in C1.objects}
        right = {a: (fu.obj_map[a], mid_obj[a], (z[a].h[1], z[a].h[3])) for a in C1.objects}
        steps = (
            (NaturalTransformation(ident, mid, MappingProxyType(left)), True),
            (NaturalTransformation(fu, mid, MappingProxyType(right)), False),
        )
        return ZigZag(ident, fu, steps)
    left = {a: (mid_obj[a], a, (z[a].h[0], z[a].h[2])) for a in C1.objects}
    right = {a: (mid_obj[a], fu.obj_map[a], (z[a].h[1], z[a].h[3])) for a in C1.objects}
    steps = (
        (NaturalTransformation(mid, ident, MappingProxyType(left)), False),
        (NaturalTransformation(mid, fu, MappingProxyType(right)), True),
    )
    return ZigZag(ident, fu, steps)


def zigzag_failures(z: ZigZag) -> list[str]:
    out = []
    current = z.start
    for k, (eta, forward) in enumerate(z.steps):
        here, there = (eta.source, eta.target) if forward else (eta.target, eta.source)
        if here != current:
            out.append(f"step {k} does not continue the zig-zag")
        msg = failing_square(eta)
        if msg:
            out.append(f"step {k}: {msg}")
        current = there
    if current != z.end:
        out.append("zig-zag does not reach its declared end")
    return out


@dataclass(frozen=True)
class ReductionReport:
    direction: str
    cap: int
    witness_ok: bool
    quasi_iso: bool
    source_homology: Any = field(default=None)
    diag_homology: Any = field(default=None)
    cone: Any = field(default=None)

    @property
    def ok(self) -> bool:
        return self.witness_ok and self.quasi_iso


def reduction_check(
    D: DoubleCategory,
    witness: ZigZagWitness,
    hcap: int,
    direction: str = "h",
    diagonal=None,
) -> ReductionReport:
    """Verify a reduction witness, then test the edge map
    N D_h -> diag(N D) (or N D_v -> diag for ``direction='v'``, whose
    witness lives over the h-maps and is checked on the transpose)."""
    from .homology import homology, quasi_iso_check
    from .simpl import edge_map

    target = D if direction == "h" else transpose(D)
    check_witness_shape(target, witness)
    check_witness_functorial(target, witness)
    if diagonal is None:
        diagonal = binerve_diagonal(D, hcap)
    f = edge_map(D, direction, hcap, diagonal=diagonal)
    q = quasi_iso_check(f, hcap)
    return ReductionReport(
        direction=direction,
        cap=hcap,
        witness_ok=True,
        quasi_iso=q.quasi_iso,
        source_homology=homology(f.source, hcap),
        diag_homology=homology(diagonal, hcap),
        cone=q,
    )

