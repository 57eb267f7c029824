"""Integer homology of truncated simplicial sets.

Matrices hold Python ints, so arithmetic never overflows. Boundary
matrices are kept sparse (row -> {col: value}); homology reduces them
with unit pivots first and finishes with a dense Smith normal form on
whatever remains.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .catcore import ident_str
from .errors import NotChainMap
from .simpl import SimplicialMap, TruncatedSimplicialSet

Matrix = list  # list of rows of ints


# -- Smith normal form --------------------------------------------------------


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, L, R) with L·M·R = D diagonal, d1 | d2 | ..., d_i >= 0,
    and L, R unimodular."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    L, R = _identity(m), _identity(n)
    _snf_in_place(A, m, n, L, R)
    return A, L, R


def _snf_in_place(A, m, n, L=None, R=None) -> None:
    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if L is not None:
            L[i], L[k] = L[k], L[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if R is not None:
            for row in R:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        if L is not None:
            L[dst] = [x + c * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        if R is not None:
            for row in R:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if L is not None:
                L[t] = [-x for x in L[t]]


def snf_diagonal(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, no transforms."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    _snf_in_place(A, m, n)
    return [A[i][i] for i in range(min(m, n)) if A[i][i]]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def elementary_divisors(rows: Mapping[int, Mapping[int, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix.

    Unit pivots are eliminated first (each contributes a factor 1); the
    remainder goes through the dense Smith form.
    """
    work = {r: dict(cols) for r, cols in rows.items() if cols}
    by_col: dict[int, set] = {}
    for r, cols in work.items():
        for c in cols:
            by_col.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(work, key=lambda k: len(work[k])):
            cols = work.get(r)
            if not cols:
                continue
            c = next((c for c, v in cols.items() if v in (1, -1)), None)
            if c is None:
                continue
            pv = cols[c]
            for r2 in list(by_col.get(c, ())):
                if r2 == r:
                    continue
                row2 = work[r2]
                factor = row2[c] * pv  # row2[c] / pv with pv = ±1
                for cc, v in cols.items():
                    nv = row2.get(cc, 0) - factor * v
                    if nv:
                        if cc not in row2:
                            by_col.setdefault(cc, set()).add(r2)
                        row2[cc] = nv
                    elif cc in row2:
                        del row2[cc]
                        by_col[cc].discard(r2)
                if not row2:
                    del work[r2]
            for cc in cols:
                by_col[cc].discard(r)
            del work[r]
            units += 1
            progress = True
    if not work:
        return [1] * units
    colset = sorted({c for cols in work.values() for c in cols})
    cidx = {c: k for k, c in enumerate(colset)}
    dense = []
    for cols in work.values():
        row = [0] * len(colset)
        for c, v in cols.items():
            row[cidx[c]] = v
        dense.append(row)
    return [1] * units + snf_diagonal(dense)


# -- chain complexes ---------------------------------------------------------


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex; ``boundaries[n]`` maps degree n to degree n-1
    as sparse rows (row index in degree n-1 -> {column: coefficient});
    ``boundaries[0]`` is empty."""

    ranks: tuple
    boundaries: tuple
    truncated: bool = False

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def dense(self, n: int) -> Matrix:
        out = [[0] * self.ranks[n] for _ in range(self.ranks[n - 1])]
        for r, cols in self.boundaries[n].items():
            for c, v in cols.items():
                out[r][c] = v
        return out


def _sparse_compose(A: Mapping, B: Mapping) -> dict:
    """A·B for sparse row matrices."""
    out: dict = {}
    for r, cols in A.items():
        acc: dict = {}
        for k, v in cols.items():
            for c, w in B.get(k, {}).items():
                acc[c] = acc.get(c, 0) + v * w
        acc = {c: v for c, v in acc.items() if v}
        if acc:
            out[r] = acc
    return out


def boundary_squares_zero(cx: ChainComplex) -> bool:
    return all(
        not _sparse_compose(cx.boundaries[n - 1], cx.boundaries[n]) for n in range(2, cx.top + 1)
    )


def chain_basis(K: TruncatedSimplicialSet) -> list[dict]:
    return [{x: k for k, x in enumerate(K.nondegenerate(n))} for n in range(K.cap + 1)]


def normalized_chains(K: TruncatedSimplicialSet, basis: list[dict] | None = None) -> ChainComplex:
    """Normalized chains: nondegenerate simplices, degenerate faces dropped."""
    basis = chain_basis(K) if basis is None else basis
    bds = [{}]
    for n in range(1, K.cap + 1):
        rows: dict = {}
        lower = basis[n - 1]
        for x, c in basis[n].items():
            for i in range(n + 1):
                y = K.face(n, i, x)
                r = lower.get(y)
                if r is None:
                    continue
                row = rows.setdefault(r, {})
                v = row.get(c, 0) + (-1 if i % 2 else 1)
                if v:
                    row[c] = v
                else:
                    del row[c]
        bds.append({r: cols for r, cols in rows.items() if cols})
    cx = ChainComplex(tuple(len(b) for b in basis), tuple(bds), K.truncated)
    if not boundary_squares_zero(cx):
        raise NotChainMap("boundary of boundary is nonzero")
    return cx


# -- homology -----------------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    betti: tuple
    torsion: tuple  # torsion[n] = tuple of invariant factors > 1
    pi0: int | None = None
    truncated: bool = False
    unreliable_from: int | None = None

    @property
    def degrees(self) -> int:
        return len(self.betti)

    def group(self, n: int) -> str:
        parts = []
        b = self.betti[n]
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts += [f"Z/{d}" for d in self.torsion[n]]
        return " + ".join(parts) if parts else "0"

    def render(self) -> str:
        return "; ".join(f"H_{n} = {self.group(n)}" for n in range(self.degrees))

    def lines(self) -> list[str]:
        out = [f"H_{n} = {self.group(n)}" for n in range(self.degrees)]
        if self.unreliable_from is not None:
            out.append(
                f"note: degrees >= {self.unreliable_from} may be affected by truncation"
            )
        return out

    def to_dict(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "pi0": self.pi0,
            "truncated": self.truncated,
            "unreliable_from": self.unreliable_from,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "HomologyReport":
        return cls(
            tuple(d["betti"]), tuple(tuple(t) for t in d["torsion"]),
            d.get("pi0"), bool(d.get("truncated", False)), d.get("unreliable_from"),
        )

    def same_groups(self, other: "HomologyReport") -> bool:
        return self.betti == other.betti and self.torsion == other.torsion


def _complex_homology(cx: ChainComplex, degrees: int) -> tuple[tuple, tuple]:
    divisors = [[] for _ in range(cx.top + 2)]
    for n in range(1, cx.top + 1):
        divisors[n] = elementary_divisors(cx.boundaries[n])
    betti, torsion = [], []
    for n in range(degrees):
        rank_out = len(divisors[n]) if n >= 1 else 0
        rank_in = len(divisors[n + 1])
        betti.append(cx.ranks[n] - rank_out - rank_in)
        torsion.append(tuple(d for d in divisors[n + 1] if d > 1))
    return tuple(betti), tuple(torsion)


def homology(X, cap: int | None = None) -> HomologyReport:
    """H_n for n <= cap-1 (cap defaults to the top dimension available)."""
    if isinstance(X, TruncatedSimplicialSet):
        cap = X.cap if cap is None else min(cap, X.cap)
        cx = normalized_chains(X)
        p0 = len(pi0(X))
    else:
        cx = X
        cap = cx.top if cap is None else min(cap, cx.top)
        p0 = None
    degrees = max(cap, 0)
    betti, torsion = _complex_homology(cx, degrees)
    unreliable = max(cap - 1, 0) if cx.truncated else None
    return HomologyReport(betti, torsion, p0, cx.truncated, unreliable)


def pi0(K: TruncatedSimplicialSet) -> tuple:
    """Connected components of the vertices, joined along 1-simplices."""
    parent = {x: x for x in K.levels[0]}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if K.cap >= 1:
        for e in K.levels[1]:
            a, b = find(K.face(1, 0, e)), find(K.face(1, 1, e))
            if a != b:
                parent[max(a, b, key=ident_str)] = min(a, b, key=ident_str)
    groups: dict = {}
    for x in K.levels[0]:
        groups.setdefault(find(x), set()).add(x)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=lambda g: min(map(ident_str, g))))


# -- quasi-isomorphism --------------------------------------------------------


@dataclass(frozen=True)
class QuasiIsoReport:
    cap: int
    cone_betti: tuple
    cone_torsion: tuple
    pi0_bijective: bool
    quasi_iso: bool
    failing_degree: int | None = None
    notes: tuple = field(default=())

    @property
    def checked_range(self) -> tuple:
        return (0, self.cap - 1)

    def verdict(self) -> str:
        lo, hi = self.checked_range
        if self.quasi_iso:
            return f"quasi-iso in range [{lo},{hi}]"
        if not self.pi0_bijective:
            return "not a quasi-iso: pi_0 is not a bijection"
        d = self.failing_degree
        rep = HomologyReport(self.cone_betti, self.cone_torsion)
        return f"not a quasi-iso: cone H_{d} = {rep.group(d)}"

    def to_dict(self) -> dict:
        return {
            "cap": self.cap,
            "cone_betti": list(self.cone_betti),
            "cone_torsion": [list(t) for t in self.cone_torsion],
            "pi0_bijective": self.pi0_bijective,
            "quasi_iso": self.quasi_iso,
            "failing_degree": self.failing_degree,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "QuasiIsoReport":
        return cls(
            d["cap"], tuple(d["cone_betti"]), tuple(tuple(t) for t in d["cone_torsion"]),
            d["pi0_bijective"], d["quasi_iso"], d.get("failing_degree"), tuple(d.get("notes", ())),
        )


def chain_map_matrices(f: SimplicialMap, kb: list[dict], lb: list[dict], cap: int) -> list[dict]:
    """Sparse matrices of the induced map on normalized chains."""
    out = []
    for n in range(cap + 1):
        rows: dict = {}
        for x, c in kb[n].items():
            r = lb[n].get(f.maps[n][x])
            if r is not None:
                rows.setdefault(r, {})[c] = 1
        out.append(rows)
    return out


def mapping_cone(f: SimplicialMap, cap: int) -> ChainComplex:
    """cone_n = C_{n-1}(K) ⊕ C_n(L), d(a, b) = (-da, f(a) + db)."""
    K, L = f.source, f.target
    kb, lb = chain_basis(K), chain_basis(L)
    ck, cl = normalized_chains(K, kb), normalized_chains(L, lb)
    fm = chain_map_matrices(f, kb, lb, cap)
    for n in range(1, cap + 1):
        if _sparse_compose(cl.boundaries[n], fm[n]) != _sparse_compose(fm[n - 1], ck.boundaries[n]):
            raise NotChainMap(f"induced map does not commute with the boundary in degree {n}")
    ranks = [cl.ranks[0]] + [ck.ranks[n - 1] + cl.ranks[n] for n in range(1, cap + 1)]
    bds = [{}]
    for n in range(1, cap + 1):
        # rows: K_{n-2} (offset 0) then L_{n-1} (offset kprev); cols: K_{n-1} then L_n
        kprev = ck.ranks[n - 2] if n >= 2 else 0
        kcols = ck.ranks[n - 1]
        rows: dict = {}
        if n >= 2:
            for r, cols in ck.boundaries[n - 1].items():
                rows.setdefault(r, {}).update({c: -v for c, v in cols.items()})
        for r, cols in fm[n - 1].items():
            rows.setdefault(kprev + r, {}).update(cols)
        for r, cols in cl.boundaries[n].items():
            row = rows.setdefault(kprev + r, {})
            for c, v in cols.items():
                row[kcols + c] = row.get(kcols + c, 0) + v
        bds.append({r: {c: v for c, v in cols.items() if v} for r, cols in rows.items()})
    return ChainComplex(tuple(ranks), tuple(bds), K.truncated or L.truncated)


def quasi_iso_check(f: SimplicialMap, cap: int | None = None) -> QuasiIsoReport:
    """Cone acyclicity in degrees 0..cap-1 plus a pi_0 bijection.

    Acyclicity through degree cap-1 means f is an isomorphism on H_n for
    n <= cap-2 and onto H_{cap-1}; nothing is claimed above the cap.
    """
    cap = min(f.source.cap, f.target.cap) if cap is None else cap
    cone = mapping_cone(f, cap)
    betti, torsion = _complex_homology(cone, cap)
    comp_k, comp_l = pi0(f.source), pi0(f.target)
    where = {x: k for k, g in enumerate(comp_l) for x in g}
    images = [{where[f.maps[0][x]] for x in g} for g in comp_k]
    hit = set().union(*images) if images else set()
    bij = all(len(s) == 1 for s in images) and len({min(s) for s in images}) == len(images) \
        and len(hit) == len(comp_l)
    failing = next((n for n in range(cap) if betti[n] or torsion[n]), None)
    ok = bij and failing is None
    notes = (f"iso on H_n for n <= {cap - 2}, onto H_{cap - 1}",) if ok and cap >= 1 else ()
    if cone.truncated:
        notes += ("an input carried a truncation warning",)
    return QuasiIsoReport(cap, betti, torsion, bij, ok, failing, notes)
