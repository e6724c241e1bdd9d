"""Exact integer and rational linear algebra.

Everything here runs on Python's arbitrary-precision integers and
``fractions.Fraction``; there is deliberately no floating-point code path
anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vector = tuple[int, ...]
Matrix = list[list[int]]


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def mat_vec(A: Matrix, v) -> tuple:
    return tuple(sum(A[i][k] * v[k] for k in range(len(v))) for i in range(len(A)))


def primitive_vector(v) -> Vector:
    """Divide an integer vector by the gcd of its entries.

    The sign is left untouched; callers fix orientation themselves.
    """
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("degenerate vector: all entries are zero")
    return tuple(a // g for a in v)


def smith_normal_form(M) -> tuple[Matrix, Matrix, Matrix]:
    """Return (S, U, V) with S = U*M*V in Smith normal form.

    U and V are unimodular, S is diagonal with nonnegative entries and each
    diagonal entry divides the next.  Pivots are chosen by smallest absolute
    value, which keeps intermediate entries tame.
    """
    if not M or not M[0]:
        raise ValueError("empty matrix")
    S = [list(row) for row in M]
    nr, nc = len(S), len(S[0])
    if any(len(row) != nc for row in S):
        raise ValueError("ragged matrix")
    U = identity_matrix(nr)
    V = identity_matrix(nc)

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in S:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        S[i] = [a + q * b for a, b in zip(S[i], S[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, q):
        # col_i += q * col_j
        for row in S:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    def neg_row(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(nr, nc):
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = abs(S[i][j])
                if a and (best is None or a < best):
                    best = a
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if S[t][t] < 0:
            neg_row(t)
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, -q)
                    if S[i][t]:
                        swap_rows(t, i)
                        if S[t][t] < 0:
                            neg_row(t)
                        dirty = True
            for j in range(t + 1, nc):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, -q)
                    if S[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # the pivot must divide the whole trailing block before moving on
        p = S[t][t]
        offender = None
        for i in range(t + 1, nr):
            if any(S[i][j] % p for j in range(t + 1, nc)):
                offender = i
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1
    return S, U, V


def hermite_normal_form(M) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: returns (H, U) with H = U*M.

    Pivots are positive, entries below a pivot vanish and entries above lie
    in [0, pivot).
    """
    H = [list(row) for row in M]
    nr = len(H)
    nc = len(H[0]) if H else 0
    U = identity_matrix(nr)

    def add_row(i, j, q):
        H[i] = [a + q * b for a, b in zip(H[i], H[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    r = 0
    for c in range(nc):
        while True:
            piv = None
            best = None
            for i in range(r, nr):
                a = abs(H[i][c])
                if a and (best is None or a < best):
                    best = a
                    piv = i
            if piv is None:
                break
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, nr):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    add_row(i, r, -q)
                    if H[i][c]:
                        done = False
            if done:
                break
        if piv is None:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            if H[i][c]:
                q = H[i][c] // H[r][c]
                add_row(i, r, -q)
        r += 1
    return H, U


def kernel_basis(rows, ncols: int) -> list[Vector]:
    """Basis of the integer kernel {x : rows * x = 0}, HNF-reduced.

    ``rows`` may be empty, in which case the kernel is all of Z^ncols.
    """
    if not rows:
        basis = [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
        return basis
    S, _, V = smith_normal_form([list(r) for r in rows])
    nr = len(rows)
    rank = sum(1 for i in range(min(nr, ncols)) if S[i][i])
    basis = [tuple(V[i][j] for i in range(ncols)) for j in range(rank, ncols)]
    if not basis:
        return []
    H, _ = hermite_normal_form([list(b) for b in basis])
    return [tuple(row) for row in H if any(row)]


def solve_diophantine(rows, b) -> tuple[Vector, list[Vector]] | None:
    """Solve rows * x = b over the integers.

    Returns (particular solution, kernel basis) or None when insoluble.
    """
    M = [list(r) for r in rows]
    nr, nc = len(M), len(M[0])
    S, U, V = smith_normal_form(M)
    y = mat_vec(U, b)
    rank = sum(1 for i in range(min(nr, nc)) if S[i][i])
    xprime = [0] * nc
    for i in range(min(nr, nc)):
        s = S[i][i]
        if s:
            if y[i] % s:
                return None
            xprime[i] = y[i] // s
    for i in range(rank, nr):
        if y[i]:
            return None
    x = tuple(sum(V[i][j] * xprime[j] for j in range(nc)) for i in range(nc))
    kern = [tuple(V[i][j] for i in range(nc)) for j in range(rank, nc)]
    return x, kern


def determinant(M) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
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


def rational_rank(rows) -> int:
    """Rank of a matrix of integers/fractions, by exact Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return 0
    nr, nc = len(A), len(A[0])
    rank = 0
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][c]
        A[rank] = [a * inv for a in A[rank]]
        for i in range(nr):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def rational_solve(rows, b):
    """Solve rows * x = b over the rationals.

    Returns (particular, nullspace basis) with Fraction entries, or None.
    """
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(rows, b, strict=True)]
    nr = len(A)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(nr):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * g for a, g in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nr):
        if A[i][nc]:
            return None
    part = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        part[c] = A[i][nc]
    free = [c for c in range(nc) if c not in pivots]
    null = []
    for fc in free:
        vec = [Fraction(0)] * nc
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -A[i][fc]
        null.append(tuple(vec))
    return tuple(part), null


def fm_feasible_point(constraints, nvars: int):
    """Find a rational point satisfying all ``coeffs . x >= rhs`` constraints.

    Fourier-Motzkin elimination; returns a tuple of Fractions or None when
    the system is infeasible.  Exact, so suitable as a certificate.
    """
    cons = [(tuple(Fraction(c) for c in cs), Fraction(r)) for cs, r in constraints]
    if nvars == 0:
        return () if all(r <= 0 for _, r in cons) else None
    k = nvars - 1
    lowers, uppers, rest = [], [], []
    for cs, r in cons:
        a = cs[k]
        if a > 0:
            lowers.append((cs, r))
        elif a < 0:
            uppers.append((cs, r))
        else:
            rest.append((cs[:k], r))
    newcons = list(rest)
    for csl, rl in lowers:
        for csu, ru in uppers:
            al, au = csl[k], csu[k]
            combined = tuple(-au * csl[j] + al * csu[j] for j in range(k))
            newcons.append((combined, -au * rl + al * ru))
    sub = fm_feasible_point(newcons, k)
    if sub is None:
        return None
    lo = None
    hi = None
    for cs, r in lowers:
        val = (r - sum(cs[j] * sub[j] for j in range(k))) / cs[k]
        lo = val if lo is None else max(lo, val)
    for cs, r in uppers:
        val = (r - sum(cs[j] * sub[j] for j in range(k))) / cs[k]
        hi = val if hi is None else min(hi, val)
    if lo is None and hi is None:
        x = Fraction(0)
    elif lo is None:
        x = min(hi, Fraction(0))
    elif hi is None:
        x = max(lo, Fraction(0))
    else:
        x = (lo + hi) / 2
    return sub + (x,)
