"""Named example categories and model data, plus seeded random generators."""
from __future__ import annotations

import random
from itertools import product as iproduct

from .catcore import FiniteCategory, make_category, poset_category
from .errors import ModelDataError
from .moduli import ModelData, audit_strict, build_moduli, is_fibrant, lifting_failure, make_model


def terminal() -> FiniteCategory:
    return poset_category(["*"], lambda a, b: True)


def chain(n: int) -> FiniteCategory:
    """The poset [n] = {0 < 1 < ... < n}."""
    return poset_category(list(range(n + 1)), lambda a, b: a <= b)


def discrete(n: int) -> FiniteCategory:
    return poset_category(list(range(n)), lambda a, b: a == b)


def parallel_pair() -> FiniteCategory:
    return make_category(
        ["a", "b"],
        {"id_a": ("a", "a"), "id_b": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")},
        {"a": "id_a", "b": "id_b"},
        {},
    )


DIAMOND_ORDER = {("b", "x"), ("b", "y"), ("x", "t"), ("y", "t"), ("b", "t")}


def diamond() -> FiniteCategory:
    """The poset b < x, y < t."""
    return poset_category(["b", "x", "y", "t"], lambda a, c: a == c or (a, c) in DIAMOND_ORDER)


def z2_monoid() -> FiniteCategory:
    return make_category(
        ["*"], {"e": ("*", "*"), "s": ("*", "*")}, {"*": "e"}, {("s", "s"): "e"}
    )


def idempotent_monoid() -> FiniteCategory:
    return make_category(
        ["*"], {"e": ("*", "*"), "p": ("*", "*")}, {"*": "e"}, {("p", "p"): "p"}
    )


def diamond_model(fib="all") -> ModelData:
    """Diamond with every map a weak equivalence and a cofibration."""
    return make_model(diamond(), "all", fib, "all")


def named_strict_models() -> dict:
    """Small genuine model structures, each with its (X, Y) of interest."""
    d = diamond()
    return {
        "diamond-trivial-w": (make_model(d, "identities", "all", "all", strict=True), "b", "y"),
        "diamond-cof-id": (make_model(d, "all", "all", "identities", strict=True), "x", "y"),
        "diamond-fib-id": (make_model(d, "all", "identities", "all", strict=True), "x", "t"),
        "chain2-all-fib": (make_model(chain(2), "all", "all", "identities", strict=True), 2, 0),
        "terminal": (make_model(terminal(), "all", "all", "all", strict=True), "*", "*"),
    }


def interesting_pair(M: ModelData) -> tuple:
    """(X, Y) with Y fibrant maximizing the size of the hom moduli category;
    ties go to the least pair."""
    best = None
    for X in M.base.objects:
        for Y in M.base.objects:
            if not is_fibrant(M, Y):
                continue
            size = len(build_moduli(M, X, Y, "hom").objects)
            if best is None or size > best[0]:
                best = (size, X, Y)
    return best[1], best[2]


def random_strict_corpus(seed: int, count: int) -> list:
    """``count`` seeded strict instances as (model, X, Y)."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        M = random_strict_model(rng)
        out.append((M,) + interesting_pair(M))
    return out


CATEGORIES = {
    "terminal": terminal,
    "chain1": lambda: chain(1),
    "chain2": lambda: chain(2),
    "parallel": parallel_pair,
    "diamond": diamond,
    "discrete2": lambda: discrete(2),
    "z2": z2_monoid,
}

# Too large for cap-3 binerve sweeps (386,920 diagonal 3-simplices), so
# kept apart from the main corpus.
EXTRA_CATEGORIES = {"idempotent": idempotent_monoid}


def corpus_categories(extra: bool = False) -> dict:
    makers = dict(CATEGORIES, **EXTRA_CATEGORIES) if extra else CATEGORIES
    return {name: make() for name, make in makers.items()}


# -- random generators ----------------------------------------------------------


def _closure(n: int, rel: set) -> set:
    rel = set(rel) | {(i, i) for i in range(n)}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in iproduct(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def random_poset(rng: random.Random, max_size: int = 6, density: float = 0.4) -> FiniteCategory:
    n = rng.randint(1, max_size)
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    rel = _closure(n, rel)
    return poset_category(list(range(n)), lambda a, b: (a, b) in rel)


def is_lattice(cat: FiniteCategory) -> bool:
    objs = cat.objects

    def leq(a, b):
        return bool(cat.hom(a, b))

    for a in objs:
        for b in objs:
            ups = [c for c in objs if leq(a, c) and leq(b, c)]
            downs = [c for c in objs if leq(c, a) and leq(c, b)]
            if not any(all(leq(j, c) for c in ups) for j in ups):
                return False
            if not any(all(leq(c, m) for c in downs) for m in downs):
                return False
    return True


def random_lattice(rng: random.Random, max_size: int = 5) -> FiniteCategory:
    """A random finite lattice: bottom 0, top n-1, random order in between."""
    while True:
        n = rng.randint(1, max_size)
        rel = {(0, j) for j in range(n)} | {(i, n - 1) for i in range(n)}
        rel |= {(i, j) for i in range(1, n - 1) for j in range(i + 1, n - 1) if rng.random() < 0.5}
        rel = _closure(n, rel)
        cat = poset_category(list(range(n)), lambda a, b: (a, b) in rel)
        if is_lattice(cat):
            return cat


def random_category(rng: random.Random, max_objects: int = 4, max_morphisms: int = 12) -> FiniteCategory:
    """A random concrete category: objects are small finite sets, morphisms
    a composition-closed family of functions containing the identities."""
    while True:
        k = rng.randint(1, max_objects)
        sizes = [rng.randint(1, 2) for _ in range(k)]
        ids = {(i, i, tuple(range(sizes[i]))) for i in range(k)}
        gens = set()
        for _ in range(rng.randint(0, 4)):
            a, b = rng.randrange(k), rng.randrange(k)
            gens.add((a, b, tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))))
        mors = ids | gens
        changed = True
        while changed and len(mors) <= max_morphisms:
            changed = False
            for (a, b, f), (c, d, g) in iproduct(list(mors), list(mors)):
                if b == c:
                    h = (a, d, tuple(g[x] for x in f))
                    if h not in mors:
                        mors.add(h)
                        changed = True
        if len(mors) > max_morphisms:
            continue
        morphisms = {m: (m[0], m[1]) for m in mors}
        identity = {i: (i, i, tuple(range(sizes[i]))) for i in range(k)}
        table = {
            ((c, d, g), (a, b, f)): (a, d, tuple(g[x] for x in f))
            for (a, b, f) in mors for (c, d, g) in mors if b == c
        }
        return make_category(list(range(k)), morphisms, identity, table)


def two_of_three_closure(cat: FiniteCategory, seed) -> frozenset:
    W = set(seed) | set(cat.identity.values())
    changed = True
    while changed:
        changed = False
        for g, f in cat.composable_pairs():
            trio = (f, g, cat.compose(g, f))
            if sum(m in W for m in trio) == 2:
                W.update(trio)
                changed = True
    return frozenset(W)


def _rlp(cat, left) -> frozenset:
    return frozenset(p for p in cat.morphisms if lifting_failure(cat, left, frozenset([p])) is None)


def _llp(cat, right) -> frozenset:
    return frozenset(i for i in cat.morphisms if lifting_failure(cat, frozenset([i]), right) is None)


def random_strict_model(rng: random.Random, max_size: int = 5, tries: int = 200) -> ModelData:
    """A strict model structure on a random lattice, found by rejection.

    W is a random two-out-of-three class, Cof is generated by a random set
    of maps, and Fib is forced as the maps lifting against W ∩ Cof.
    """
    base = random_lattice(rng, max_size)
    nonid = [m for m in base.morphism_ids if not base.is_identity(m)]
    for _ in range(tries):
        W = two_of_three_closure(base, [m for m in nonid if rng.random() < 0.15])
        gens = frozenset(m for m in nonid if rng.random() < 0.5)
        Cof = _llp(base, _rlp(base, gens))
        Fib = _rlp(base, W & Cof)
        try:
            M = make_model(base, W, Fib, Cof)
            audit_strict(M)
        except ModelDataError:
            continue
        return ModelData(base, W, Fib, Cof, True)
    return make_model(base, "all", "all", "identities", strict=True)
