"""Truncated simplicial and bisimplicial sets.

Everything is tabulated: a simplicial set stores its simplices level by
level together with explicit face and degeneracy tables, so identity
checks and homology never recompute structure. Levels run 0..cap; faces
leave level n for n >= 1 and degeneracies leave level n for n < cap.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping, Sequence

from .catcore import (
    FiniteCategory,
    Functor,
    _freeze,
    ident_str,
    sort_idents,
)
from .errors import (
    CapMismatch,
    CapTooSmall,
    NotFunctorial,
    NotRegular,
    NotSimplicial,
    TruncationWarning,
)


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialSet:
    levels: tuple  # levels[n] = sorted simplices of dimension n
    faces: tuple  # faces[n][i]: level n -> level n-1 (faces[0] == ())
    degeneracies: tuple  # degeneracies[n][i]: level n -> level n+1, n < cap
    degenerate: tuple  # degenerate[n] = frozenset of degenerate n-simplices
    truncated: bool = False

    @property
    def cap(self) -> int:
        return len(self.levels) - 1

    def face(self, n: int, i: int, x):
        return self.faces[n][i][x]

    def degeneracy(self, n: int, i: int, x):
        return self.degeneracies[n][i][x]

    def nondegenerate(self, n: int) -> tuple:
        dg = self.degenerate[n]
        return tuple(x for x in self.levels[n] if x not in dg)

    def counts(self) -> tuple:
        return tuple(len(lv) for lv in self.levels)

    def nondegenerate_counts(self) -> tuple:
        return tuple(len(self.nondegenerate(n)) for n in range(self.cap + 1))

    def __repr__(self) -> str:
        return f"TruncatedSimplicialSet(cap={self.cap}, counts={self.counts()})"


def build_sset(
    levels: Sequence[Iterable],
    face: Callable[[int, int, Any], Any],
    degeneracy: Callable[[int, int, Any], Any],
    truncated: bool = False,
) -> TruncatedSimplicialSet:
    """Tabulate face/degeneracy callables over the given levels."""
    lv = tuple(sort_idents(level) for level in levels)
    cap = len(lv) - 1
    faces = [()]
    for n in range(1, cap + 1):
        faces.append(tuple(
            MappingProxyType({x: face(n, i, x) for x in lv[n]}) for i in range(n + 1)
        ))
    degs = []
    for n in range(cap):
        degs.append(tuple(
            MappingProxyType({x: degeneracy(n, i, x) for x in lv[n]}) for i in range(n + 1)
        ))
    degs.append(())
    degenerate = [frozenset()]
    for n in range(1, cap + 1):
        degenerate.append(frozenset(y for table in degs[n - 1] for y in table.values()))
    return TruncatedSimplicialSet(lv, tuple(faces), tuple(degs), tuple(degenerate), truncated)


def simplicial_identity_failures(K: TruncatedSimplicialSet, limit: int = 10) -> list[str]:
    """Check the five families of simplicial identities wherever defined."""
    out: list[str] = []
    d, s, cap = K.face, K.degeneracy, K.cap

    def fail(msg):
        out.append(msg)
        return len(out) >= limit

    for n in range(cap + 1):
        for x in K.levels[n]:
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        if d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x)):
                            if fail(f"d{i}d{j} != d{j-1}d{i} on {ident_str(x)}"):
                                return out
            if n < cap:
                for j in range(n + 1):
                    y = s(n, j, x)
                    if d(n + 1, j, y) != x or d(n + 1, j + 1, y) != x:
                        if fail(f"d{j}s{j} or d{j+1}s{j} != id on {ident_str(x)}"):
                            return out
                    for i in range(n + 2):
                        if i < j:
                            if d(n + 1, i, y) != s(n - 1, j - 1, d(n, i, x)):
                                if fail(f"d{i}s{j} != s{j-1}d{i} on {ident_str(x)}"):
                                    return out
                        elif i > j + 1:
                            if d(n + 1, i, y) != s(n - 1, j, d(n, i - 1, x)):
                                if fail(f"d{i}s{j} != s{j}d{i-1} on {ident_str(x)}"):
                                    return out
            if n + 1 < cap:
                for j in range(n + 1):
                    for i in range(j + 1):
                        if s(n + 1, i, s(n, j, x)) != s(n + 1, j + 1, s(n, i, x)):
                            if fail(f"s{i}s{j} != s{j+1}s{i} on {ident_str(x)}"):
                                return out
    return out


# -- nerves -------------------------------------------------------------------


def chain_vertex(C: FiniteCategory, n: int, x, i: int):
    """The i-th vertex of an n-simplex of the nerve."""
    if n == 0:
        return x
    return C.src(x[0]) if i == 0 else C.dst(x[i - 1])


def _nerve_face(C: FiniteCategory):
    def face(n, i, x):
        if n == 1:
            return C.dst(x[0]) if i == 0 else C.src(x[0])
        if i == 0:
            return x[1:]
        if i == n:
            return x[:-1]
        return x[: i - 1] + (C.table[(x[i], x[i - 1])],) + x[i + 1:]
    return face


def _nerve_degeneracy(C: FiniteCategory):
    def degeneracy(n, i, x):
        if n == 0:
            return (C.id(x),)
        return x[:i] + (C.id(chain_vertex(C, n, x, i)),) + x[i:]
    return degeneracy


def composable_chains(C: FiniteCategory, n: int, nondegenerate_only: bool = False) -> list:
    if n == 0:
        return list(C.objects)
    pool = [m for m in C.morphisms if not (nondegenerate_only and C.is_identity(m))]
    chains = [(m,) for m in pool]
    for _ in range(n - 1):
        chains = [
            c + (g,) for c in chains for g in C.out_of(C.dst(c[-1]))
            if not (nondegenerate_only and C.is_identity(g))
        ]
    return chains


def nerve(C: FiniteCategory, cap: int) -> TruncatedSimplicialSet:
    """Nerve of C through dimension ``cap``: n-simplices are composable
    chains (f1, ..., fn) with f1 applied first; 0-simplices are objects."""
    if cap < 0:
        raise CapTooSmall("cap must be >= 0")
    levels = [composable_chains(C, n) for n in range(cap + 1)]
    top = composable_chains(C, cap, nondegenerate_only=True)
    truncated = any(
        not C.is_identity(g)
        for c in top
        for g in (C.out_of(C.dst(c[-1])) if cap > 0 else C.out_of(c))
    )
    if truncated:
        warnings.warn(
            f"nerve has nondegenerate {cap + 1}-simplices beyond the cap",
            TruncationWarning,
            stacklevel=2,
        )
    return build_sset(levels, _nerve_face(C), _nerve_degeneracy(C), truncated)


# -- simplicial maps ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    maps: tuple  # maps[n]: level n of source -> level n of target

    def __call__(self, n: int, x):
        return self.maps[n][x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source is other.source or _same_sset(self.source, other.source)
        ) and (
            self.target is other.target or _same_sset(self.target, other.target)
        ) and all(dict(a) == dict(b) for a, b in zip(self.maps, other.maps))

    __hash__ = None  # type: ignore[assignment]


def _same_sset(a: TruncatedSimplicialSet, b: TruncatedSimplicialSet) -> bool:
    return (
        a.levels == b.levels
        and all(dict(x) == dict(y) for fa, fb in zip(a.faces, b.faces) for x, y in zip(fa, fb))
        and all(dict(x) == dict(y) for da, db in zip(a.degeneracies, b.degeneracies) for x, y in zip(da, db))
    )


def smap_failures(f: SimplicialMap, limit: int = 10) -> list[str]:
    K, L = f.source, f.target
    out = []
    if len(f.maps) != K.cap + 1 or L.cap < K.cap:
        return ["level count mismatch"]
    for n in range(K.cap + 1):
        lv = set(L.levels[n])
        for x in K.levels[n]:
            y = f.maps[n].get(x)
            if y not in lv:
                out.append(f"level {n}: {ident_str(x)} not sent to a simplex of the target")
                continue
            if n >= 1:
                for i in range(n + 1):
                    if f.maps[n - 1][K.face(n, i, x)] != L.face(n, i, y):
                        out.append(f"d{i} does not commute at {ident_str(x)}")
            if n < K.cap:
                for i in range(n + 1):
                    if f.maps[n + 1][K.degeneracy(n, i, x)] != L.degeneracy(n, i, y):
                        out.append(f"s{i} does not commute at {ident_str(x)}")
            if len(out) >= limit:
                return out
    return out


def validate_smap(
    source: TruncatedSimplicialSet, target: TruncatedSimplicialSet, maps: Sequence[Mapping]
) -> SimplicialMap:
    f = SimplicialMap(source, target, tuple(MappingProxyType(dict(m)) for m in maps))
    bad = smap_failures(f, limit=1)
    if bad:
        raise NotSimplicial(bad[0])
    return f


def identity_smap(K: TruncatedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(K, K, tuple(MappingProxyType({x: x for x in lv}) for lv in K.levels))


def compose_smaps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(
        f.source, g.target,
        tuple(MappingProxyType({x: gm[y] for x, y in fm.items()}) for fm, gm in zip(f.maps, g.maps)),
    )


def nerve_map(
    F: Functor,
    cap: int,
    source: TruncatedSimplicialSet | None = None,
    target: TruncatedSimplicialSet | None = None,
) -> SimplicialMap:
    """The simplicial map N(F) between (possibly precomputed) nerves."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = source if source is not None else nerve(F.source, cap)
        L = target if target is not None else nerve(F.target, cap)
    maps = [MappingProxyType({x: F.obj_map[x] for x in K.levels[0]})]
    for n in range(1, cap + 1):
        maps.append(MappingProxyType({x: tuple(F.mor_map[m] for m in x) for x in K.levels[n]}))
    return SimplicialMap(K, L, tuple(maps))


def constant_smap(K: TruncatedSimplicialSet, L: TruncatedSimplicialSet, vertex) -> SimplicialMap:
    """Map every simplex to the fully degenerate simplex on ``vertex``."""
    maps = []
    y = vertex
    for n in range(K.cap + 1):
        maps.append(MappingProxyType({x: y for x in K.levels[n]}))
        if n < K.cap:
            y = L.degeneracy(n, 0, y)
    return SimplicialMap(K, L, tuple(maps))


# -- ordered simplicial complexes -------------------------------------------


def ordered_complex(facets: Iterable[Sequence], cap: int) -> TruncatedSimplicialSet:
    """Simplicial set of an ordered simplicial complex: n-simplices are
    nondecreasing (n+1)-tuples of vertices spanning a face of a facet."""
    facets = [tuple(sort_idents(set(f))) for f in facets]
    levels = []
    for n in range(cap + 1):
        level = set()
        for f in facets:
            level.update(itertools.combinations_with_replacement(f, n + 1))
        levels.append(level)

    def face(n, i, x):
        return x[:i] + x[i + 1:]

    def degeneracy(n, i, x):
        return x[: i + 1] + x[i:]

    longest = max((len(f) for f in facets), default=0)
    return build_sset(levels, face, degeneracy, truncated=longest - 1 > cap)


def standard_simplex(n: int, cap: int) -> TruncatedSimplicialSet:
    return ordered_complex([tuple(range(n + 1))], cap)


def boundary_simplex(n: int, cap: int) -> TruncatedSimplicialSet:
    verts = tuple(range(n + 1))
    return ordered_complex([verts[:i] + verts[i + 1:] for i in range(n + 1)], cap)


# -- bisimplicial sets --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BisimplicialSet:
    pcap: int
    qcap: int
    levels: Mapping  # (p, q) -> sorted elements
    hfaces: Mapping  # (p, q) -> tuple over i of maps to (p-1, q)
    vfaces: Mapping  # (p, q) -> tuple over i of maps to (p, q-1)
    hdegs: Mapping  # (p, q) -> tuple over i of maps to (p+1, q)
    vdegs: Mapping  # (p, q) -> tuple over i of maps to (p, q+1)

    def counts(self) -> dict:
        return {k: len(v) for k, v in self.levels.items()}


def build_bisset(
    pcap: int,
    qcap: int,
    levels: Mapping,
    hface: Callable,
    vface: Callable,
    hdeg: Callable,
    vdeg: Callable,
) -> BisimplicialSet:
    lv = {k: sort_idents(v) for k, v in levels.items()}
    hf, vf, hd, vd = {}, {}, {}, {}
    for (p, q), xs in lv.items():
        hf[(p, q)] = tuple(MappingProxyType({x: hface(x, i) for x in xs}) for i in range(p + 1)) if p else ()
        vf[(p, q)] = tuple(MappingProxyType({x: vface(x, i) for x in xs}) for i in range(q + 1)) if q else ()
        hd[(p, q)] = tuple(MappingProxyType({x: hdeg(x, i) for x in xs}) for i in range(p + 1)) if p < pcap else ()
        vd[(p, q)] = tuple(MappingProxyType({x: vdeg(x, i) for x in xs}) for i in range(q + 1)) if q < qcap else ()
    return BisimplicialSet(
        pcap, qcap, MappingProxyType(lv), MappingProxyType(hf), MappingProxyType(vf),
        MappingProxyType(hd), MappingProxyType(vd),
    )


def column(B: BisimplicialSet, q: int) -> TruncatedSimplicialSet:
    """The simplicial set p -> B(p, q) with horizontal operators."""
    return TruncatedSimplicialSet(
        tuple(B.levels[(p, q)] for p in range(B.pcap + 1)),
        tuple(B.hfaces[(p, q)] for p in range(B.pcap + 1)),
        tuple(B.hdegs[(p, q)] for p in range(B.pcap + 1)),
        _degenerate_from(
            [B.levels[(p, q)] for p in range(B.pcap + 1)],
            [B.hdegs[(p, q)] for p in range(B.pcap + 1)],
        ),
    )


def row(B: BisimplicialSet, p: int) -> TruncatedSimplicialSet:
    """The simplicial set q -> B(p, q) with vertical operators."""
    return TruncatedSimplicialSet(
        tuple(B.levels[(p, q)] for q in range(B.qcap + 1)),
        tuple(B.vfaces[(p, q)] for q in range(B.qcap + 1)),
        tuple(B.vdegs[(p, q)] for q in range(B.qcap + 1)),
        _degenerate_from(
            [B.levels[(p, q)] for q in range(B.qcap + 1)],
            [B.vdegs[(p, q)] for q in range(B.qcap + 1)],
        ),
    )


def _degenerate_from(levels, degs) -> tuple:
    out = [frozenset()]
    for n in range(1, len(levels)):
        out.append(frozenset(y for t in degs[n - 1] for y in t.values()))
    return tuple(out)


def bisimplicial_failures(B: BisimplicialSet, limit: int = 10) -> list[str]:
    """Simplicial identities in both directions plus commutation of
    horizontal with vertical operators."""
    out = []
    for q in range(B.qcap + 1):
        out += [f"column {q}: {m}" for m in simplicial_identity_failures(column(B, q), limit)]
    for p in range(B.pcap + 1):
        out += [f"row {p}: {m}" for m in simplicial_identity_failures(row(B, p), limit)]
    for (p, q), xs in B.levels.items():
        for x in xs:
            hops = [("d", i, B.hfaces[(p, q)][i], -1) for i in range(p + 1) if p] + \
                   [("s", i, B.hdegs[(p, q)][i], 1) for i in range(p + 1) if p < B.pcap]
            vops = [("d", j, B.vfaces[(p, q)][j], -1) for j in range(q + 1) if q] + \
                   [("s", j, B.vdegs[(p, q)][j], 1) for j in range(q + 1) if q < B.qcap]
            for hk, i, hmap, dp in hops:
                for vk, j, vmap, dq in vops:
                    hv = B.vfaces[(p + dp, q)][j] if vk == "d" else B.vdegs[(p + dp, q)][j]
                    vh = B.hfaces[(p, q + dq)][i] if hk == "d" else B.hdegs[(p, q + dq)][i]
                    if hv[hmap[x]] != vh[vmap[x]]:
                        out.append(f"h{hk}{i} and v{vk}{j} do not commute at {ident_str(x)}")
                        if len(out) >= limit:
                            return out
    return out


def diag(B: BisimplicialSet) -> TruncatedSimplicialSet:
    """Diagonal: level n is B(n, n); operators act in both directions."""
    if B.pcap != B.qcap:
        raise CapMismatch(f"diagonal needs equal caps, got {B.pcap} and {B.qcap}")
    cap = B.pcap
    levels = tuple(B.levels[(n, n)] for n in range(cap + 1))
    faces = [()]
    for n in range(1, cap + 1):
        faces.append(tuple(
            MappingProxyType({
                x: B.vfaces[(n - 1, n)][i][B.hfaces[(n, n)][i][x]] for x in levels[n]
            })
            for i in range(n + 1)
        ))
    degs = []
    for n in range(cap):
        degs.append(tuple(
            MappingProxyType({
                x: B.vdegs[(n + 1, n)][i][B.hdegs[(n, n)][i][x]] for x in levels[n]
            })
            for i in range(n + 1)
        ))
    degs.append(())
    return TruncatedSimplicialSet(levels, tuple(faces), tuple(degs), _degenerate_from(levels, degs))


def edge_map(D, direction: str, cap: int, diagonal: TruncatedSimplicialSet | None = None) -> SimplicialMap:
    """N D_h -> diag(N D) (``direction='h'``) or N D_v -> diag(N D).

    The h-map repeats an h-chain down every row with identity verticals;
    the v-map is its transpose.
    """
    from .doublecat import binerve_diagonal, grid_from_hchain, grid_from_vchain

    if direction not in ("h", "v"):
        raise ValueError(f"direction must be 'h' or 'v', not {direction!r}")
    cat = D.hcat if direction == "h" else D.vcat
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = nerve(cat, cap)
    L = diagonal if diagonal is not None else binerve_diagonal(D, cap)
    build = grid_from_hchain if direction == "h" else grid_from_vchain
    maps = tuple(
        MappingProxyType({x: build(D, n, x) for x in K.levels[n]}) for n in range(cap + 1)
    )
    return validate_smap(K, L, maps)


def chi(C: FiniteCategory, cap: int, diagonal: TruncatedSimplicialSet | None = None) -> SimplicialMap:
    """diag(N C_bi) -> N C, sending an n×n commutative array to its
    diagonal chain X00 -> X11 -> ... -> Xnn."""
    from .doublecat import binerve_diagonal, trivial_double

    L = diagonal if diagonal is not None else binerve_diagonal(trivial_double(C), cap)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = nerve(C, cap)

    def diagonal_chain(n, g):
        objs, hs, vs = g
        if n == 0:
            return objs[0][0]
        out = []
        for i in range(n):
            top_right = C.table[(vs[i][i + 1], hs[i][i])]
            left_bottom = C.table[(hs[i + 1][i], vs[i][i])]
            assert top_right == left_bottom, "array is not commutative"
            out.append(top_right)
        return tuple(out)

    maps = tuple(
        MappingProxyType({g: diagonal_chain(n, g) for g in L.levels[n]}) for n in range(cap + 1)
    )
    return validate_smap(L, K, maps)


# -- categories of simplices and of elements -------------------------------


def apply_operator(K: TruncatedSimplicialSet, n: int, x, theta: tuple):
    """theta^*(x) for a monotone theta: [m] -> [n] given as its value tuple."""
    image = sorted(set(theta))
    y, k = x, n
    for j in reversed(range(n + 1)):
        if j not in image:
            y = K.face(k, j, y)
            k -= 1
    for pos in range(len(theta) - 1):
        if theta[pos] == theta[pos + 1]:
            y = K.degeneracy(k, pos, y)
            k += 1
    return y


def _compose_maps(theta: tuple, psi: tuple) -> tuple:
    """theta∘psi as value tuples."""
    return tuple(theta[v] for v in psi)


def category_of_simplices(K: TruncatedSimplicialSet, mode: str = "nondegenerate") -> FiniteCategory:
    """ΔK: objects (n, x); a morphism (m, y) -> (n, x) is an operator
    theta: [m] -> [n] with theta^*(x) = y, stored as ((m, y), (n, x), theta).

    Nondegenerate mode keeps nondegenerate simplices and injective
    operators; full mode keeps every simplex up to the cap and every
    monotone operator.
    """
    if mode not in ("nondegenerate", "full"):
        raise ValueError(f"mode must be 'nondegenerate' or 'full', not {mode!r}")
    full = mode == "full"
    objects = [
        (n, x) for n in range(K.cap + 1)
        for x in (K.levels[n] if full else K.nondegenerate(n))
    ]
    obset = set(objects)
    irregular = False
    morphisms = {}
    for n, x in objects:
        for m in range(K.cap + 1 if full else n + 1):
            ops = (
                itertools.combinations_with_replacement(range(n + 1), m + 1)
                if full else itertools.combinations(range(n + 1), m + 1)
            )
            for theta in ops:
                y = apply_operator(K, n, x, theta)
                if (m, y) in obset:
                    morphisms[((m, y), (n, x), theta)] = ((m, y), (n, x))
                else:
                    irregular = True
    if irregular and not full:
        warnings.warn("a nondegenerate simplex has a degenerate face", NotRegular, stacklevel=2)
    identity = {(n, x): ((n, x), (n, x), tuple(range(n + 1))) for n, x in objects}
    by_src: dict = {}
    for mor in morphisms:
        by_src.setdefault(mor[0], []).append(mor)
    table = {}
    for f in morphisms:
        for g in by_src.get(f[1], ()):
            table[(g, f)] = (f[0], g[1], _compose_maps(g[2], f[2]))
    return _freeze(objects, morphisms, identity, table)


def category_of_elements(
    C: FiniteCategory,
    sets: Mapping[Any, Iterable],
    functions: Mapping[Any, Mapping],
) -> tuple[FiniteCategory, Functor]:
    """Grothendieck construction of a covariant set-valued functor.

    Objects are (c, x) with x in sets[c]; a morphism (c, x) -> (c', x') is
    (m, x) for m: c -> c' with functions[m][x] = x'. Returns the category
    and its projection to C.
    """
    sets = {c: tuple(sort_idents(sets[c])) for c in C.objects}
    for m, (a, b) in C.morphisms.items():
        fm = functions.get(m)
        if fm is None or any(fm.get(x) not in sets[b] for x in sets[a]):
            raise NotFunctorial(f"image of {ident_str(m)} is not a function {ident_str(a)} -> {ident_str(b)}")
    for c in C.objects:
        if any(functions[C.id(c)][x] != x for x in sets[c]):
            raise NotFunctorial(f"identity of {ident_str(c)} is not sent to the identity function")
    for (g, f), gf in C.table.items():
        for x in sets[C.src(f)]:
            if functions[g][functions[f][x]] != functions[gf][x]:
                raise NotFunctorial(f"F({ident_str(g)}∘{ident_str(f)}) != F({ident_str(g)})∘F({ident_str(f)})")
    objects = [(c, x) for c in C.objects for x in sets[c]]
    morphisms = {
        (m, x): ((a, x), (b, functions[m][x]))
        for m, (a, b) in C.morphisms.items() for x in sets[a]
    }
    identity = {(c, x): (C.id(c), x) for c, x in objects}
    table = {}
    for (g, f), gf in C.table.items():
        for x in sets[C.src(f)]:
            table[((g, functions[f][x]), (f, x))] = (gf, x)
    cat = _freeze(objects, morphisms, identity, table)
    proj = Functor(
        cat, C,
        MappingProxyType({o: o[0] for o in objects}),
        MappingProxyType({m: m[0] for m in morphisms}),
    )
    return cat, proj


def reverse_sset(K: TruncatedSimplicialSet) -> TruncatedSimplicialSet:
    """Same simplices with d_i and s_i renamed to d_{n-i} and s_{n-i}."""
    faces = tuple(tuple(fs[n - i] for i in range(len(fs))) for n, fs in enumerate(K.faces))
    degs = tuple(tuple(ds[n - i] for i in range(len(ds))) for n, ds in enumerate(K.degeneracies))
    return TruncatedSimplicialSet(K.levels, faces, degs, K.degenerate, K.truncated)


def opposite_nerve_iso(C: FiniteCategory, cap: int) -> SimplicialMap:
    """N(C^op) -> reverse(N C), reading each chain backwards."""
    from .catcore import opposite

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        K = nerve(opposite(C), cap)
        L = reverse_sset(nerve(C, cap))
    maps = [MappingProxyType({x: x for x in K.levels[0]})]
    for n in range(1, cap + 1):
        maps.append(MappingProxyType({x: tuple(reversed(x)) for x in K.levels[n]}))
    return validate_smap(K, L, maps)


# -- serialization ----------------------------------------------------------


def sset_to_json(K: TruncatedSimplicialSet) -> dict:
    s = ident_str
    return {
        "format": "sset",
        "cap": K.cap,
        "truncated": K.truncated,
        "levels": [[s(x) for x in lv] for lv in K.levels],
        "degenerate": [sorted(s(x) for x in dg) for dg in K.degenerate],
        "faces": [
            [{s(x): s(y) for x, y in t.items()} for t in K.faces[n]] for n in range(K.cap + 1)
        ],
        "degeneracies": [
            [{s(x): s(y) for x, y in t.items()} for t in K.degeneracies[n]] for n in range(K.cap + 1)
        ],
    }


def sset_from_json(raw: Mapping) -> TruncatedSimplicialSet:
    levels = tuple(tuple(lv) for lv in raw["levels"])
    faces = tuple(tuple(MappingProxyType(dict(t)) for t in fs) for fs in raw["faces"])
    degs = tuple(tuple(MappingProxyType(dict(t)) for t in ds) for ds in raw["degeneracies"])
    K = TruncatedSimplicialSet(
        tuple(sort_idents(lv) for lv in levels), faces, degs,
        _degenerate_from(levels, degs), bool(raw.get("truncated", False)),
    )
    bad = simplicial_identity_failures(K, limit=1)
    if bad:
        raise NotSimplicial(bad[0])
    return K


def smap_from_json(K: TruncatedSimplicialSet, L: TruncatedSimplicialSet, raw: Mapping) -> SimplicialMap:
    return validate_smap(K, L, [dict(m) for m in raw["levels"]])
