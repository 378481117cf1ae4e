"""Integer matrix normal forms and the stalk-level linear solvers built on them.

Linear systems over Z/p^k and Z_(p) are both solved by lifting to Z,
diagonalizing with unimodular row/column operations (Smith normal form), and
then solving the decoupled diagonal equations in the target ring.
"""

from __future__ import annotations

from fractions import Fraction


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(A, B):
    rows, inner = len(A), len(B)
    cols = len(B[0]) if B else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if a == 0:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(cols):
                row[j] += a * Bk[j]
    return out


def smith_normal_form(mat):
    """Return (U, D, V) with U*mat*V = D diagonal and U, V unimodular over Z.

    Diagonal entries are non-negative and satisfy the divisibility chain
    d_0 | d_1 | ... .
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    D = [list(map(int, row)) for row in mat]
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        for j in range(cols):
            D[dst][j] += c * D[src][j]
        for j in range(rows):
            U[dst][j] += c * U[src][j]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(rows, cols):
        # locate the entry of least nonzero magnitude in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i][j]
                if v != 0 and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the rest of the block by the pivot
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % D[t][t] != 0:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if D[t][t] < 0:
                for j in range(cols):
                    D[t][j] = -D[t][j]
                for j in range(rows):
                    U[t][j] = -U[t][j]
            t += 1
    return U, D, V


def solve_mod(mat, rhs, q):
    """One solution X of mat*X = rhs over Z/q, or None.

    ``mat`` is rows x cols, ``rhs`` is rows x k, all ints; the result is
    cols x k with entries in [0, q).  Free coordinates are set to 0 and pivot
    coordinates take their least non-negative value, so the output is
    canonical.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    k = len(rhs[0]) if rhs else 0
    U, D, V = smith_normal_form(mat)
    C = _mat_mul(U, rhs)
    Y = [[0] * k for _ in range(cols)]
    for col in range(k):
        for i in range(rows):
            d = D[i][i] if i < cols else 0
            c = C[i][col] % q
            if d == 0:
                if c % q != 0:
                    return None
                continue
            g = _gcd(d, q)
            if c % g != 0:
                return None
            qq = q // g
            y = ((c // g) * pow(d // g, -1, qq)) % qq if qq > 1 else 0
            Y[i][col] = y
    X = _mat_mul(V, Y)
    return [[x % q for x in row] for row in X]


def solve_zloc(mat, rhs, p):
    """One solution of mat*X = rhs over Z_(p) (entries Fraction), or None."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    k = len(rhs[0]) if rhs else 0
    int_mat = []
    int_rhs = []
    for i in range(rows):
        dens = [Fraction(x).denominator for x in mat[i]] + [
            Fraction(x).denominator for x in rhs[i]
        ]
        scale = 1
        for d in dens:
            scale = scale * d // _gcd(scale, d)
        # scale is coprime to p, hence a unit of Z_(p): row scaling is harmless
        int_mat.append([int(Fraction(x) * scale) for x in mat[i]])
        int_rhs.append([int(Fraction(x) * scale) for x in rhs[i]])
    U, D, V = smith_normal_form(int_mat)
    C = _mat_mul(U, int_rhs)
    Y = [[Fraction(0)] * k for _ in range(cols)]
    for col in range(k):
        for i in range(rows):
            d = D[i][i] if i < cols else 0
            c = C[i][col]
            if d == 0:
                if c != 0:
                    return None
                continue
            y = Fraction(c, d)
            if y.denominator % p == 0:
                return None
            Y[i][col] = y
    X = [[Fraction(0)] * k for _ in range(cols)]
    for i in range(cols):
        for col in range(k):
            acc = Fraction(0)
            for j in range(cols):
                acc += V[i][j] * Y[j][col]
            X[i][col] = acc
    return X


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a
