"""Independent reference computations used to cross-check the library.

Nothing here calls into the code under test except for reading category
tables.
"""
from fractions import Fraction
from itertools import combinations, product
from math import gcd


def det(M):
    """Determinant over the rationals by Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            out = -out
        out *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    assert out.denominator == 1
    return int(out)


def rank(M):
    A = [[Fraction(x) for x in row] for row in M]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r


def determinant_divisors(M):
    """d_k = gcd of all k×k minors, for k up to the rank."""
    m = len(M)
    n = len(M[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors(M):
    dd = determinant_divisors(M)
    return [dd[0]] + [dd[k] // dd[k - 1] for k in range(1, len(dd))] if dd else []


def rational_betti(K, degrees):
    """Betti numbers from rational ranks of normalized boundary matrices."""
    basis = [list(K.nondegenerate(n)) for n in range(K.cap + 1)]
    idx = [{x: k for k, x in enumerate(b)} for b in basis]

    def bd(n):
        M = [[0] * len(basis[n]) for _ in basis[n - 1]]
        for c, x in enumerate(basis[n]):
            for i in range(n + 1):
                y = K.face(n, i, x)
                if y in idx[n - 1]:
                    M[idx[n - 1][y]][c] += (-1) ** i
        return M

    ranks = [0] + [rank(bd(n)) if basis[n] and basis[n - 1] else 0 for n in range(1, K.cap + 1)]
    return [len(basis[n]) - ranks[n] - ranks[n + 1] for n in range(degrees)]


def commutative_grids(C, n):
    """Count functors [n]×[n] -> C by brute force over edge assignments."""
    pts = [(i, j) for i in range(n + 1) for j in range(n + 1)]
    edges = [((i, j), (i + 1, j)) for i in range(n) for j in range(n + 1)]
    edges += [((i, j), (i, j + 1)) for i in range(n + 1) for j in range(n)]
    count = 0
    for objs in product(C.objects, repeat=len(pts)):
        at = dict(zip(pts, objs))
        homs = [C.hom(at[a], at[b]) for a, b in edges]
        for choice in product(*homs):
            e = dict(zip(edges, choice))
            if all(
                C.compose(e[((i + 1, j), (i + 1, j + 1))], e[((i, j), (i + 1, j))])
                == C.compose(e[((i, j + 1), (i + 1, j + 1))], e[((i, j), (i, j + 1))])
                for i in range(n) for j in range(n)
            ):
                count += 1
    return count
