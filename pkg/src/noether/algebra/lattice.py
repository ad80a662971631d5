"""Integer matrices: exact determinant, inverse, Hermite and Smith forms.

Matrices are plain lists of lists of Python ints (row-major).
"""

from __future__ import annotations

from fractions import Fraction

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def copy(M) -> IntMatrix:
    return [list(map(int, row)) for row in M]


def transpose(M) -> IntMatrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B) -> IntMatrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def det(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inverse_rational(M) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def inverse_unimodular(M) -> IntMatrix:
    inv = inverse_rational(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def hermite_normal_form(M) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns (H, U) with U unimodular and U*M = H.

    H is in echelon form, every pivot is positive and the entries above a
    pivot lie in [0, pivot). The nonzero rows of H are the canonical basis
    of the row lattice of M.
    """
    A = copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        # euclid down the column until a single nonzero entry remains at `row`
        while True:
            nz = [i for i in range(row, m) if A[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            if p != row:
                A[row], A[p] = A[p], A[row]
                U[row], U[p] = U[p], U[row]
            done = True
            for i in range(row + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[row][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if not A[row][col]:
            continue
        if A[row][col] < 0:
            A[row] = [-a for a in A[row]]
            U[row] = [-a for a in U[row]]
        piv = A[row][col]
        for i in range(row):
            q = A[i][col] // piv
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[row])]
        row += 1
    return A, U


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Returns (U, D, V) with U*M*V = D diagonal, d1 | d2 | ..., d_i >= 0."""
    A = copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for R in (A, V):
            for row in R:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            A[t] = [a + b for a, b in zip(A[t], A[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def integer_kernel(M) -> IntMatrix:
    """Columns (returned as a list of vectors) spanning {v in Z^n : M v = 0}."""
    n = len(M[0])
    U, D, V = smith_normal_form(M)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [[V[r][c] for r in range(n)] for c in range(rank, n)]


def congruence_lattice(rows, m: int, d: int) -> IntMatrix:
    """Canonical basis (as HNF rows) of {v in Z^d : row . v = 0 mod m for every row}.

    The system is solved as the integer kernel of [rows | m*I] projected to
    the first d coordinates.
    """
    rows = [list(r) for r in rows if any(x % m for x in r)]
    if not rows:
        return identity(d)
    r = len(rows)
    aug = [rows[i] + [m * int(i == j) for j in range(r)] for i in range(r)]
    gens = [vec[:d] for vec in integer_kernel(aug)]
    H, _ = hermite_normal_form(gens)
    basis = [row for row in H if any(row)]
    if len(basis) != d:
        raise ArithmeticError("congruence lattice is not of full rank")
    return basis
