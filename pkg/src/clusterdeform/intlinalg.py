"""Exact integer-lattice linear algebra: Smith and Hermite normal forms.

Matrices are lists of row lists of Python ints.  Everything here is pure and
allocation-happy; the lattices involved are small (dimension <= a few dozen).
"""

from fractions import Fraction


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []

def mat_mul(A, B):
    if not A or not B:
        return []
    bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in A]


def mat_vec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def vec_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


class SnfResult:
    """L * A * R = D with L, R unimodular and D diagonal (divisibility chain).

    diag holds the nonnegative diagonal entries (including trailing zeros up
    to min(rows, cols)); rank is the number of nonzero entries.
    """

    __slots__ = ("diag", "left", "right", "rows", "cols")

    def __init__(self, diag, left, right, rows, cols):
        self.diag = diag
        self.left = left
        self.right = right
        self.rows = rows
        self.cols = cols

    @property
    def rank(self):
        return sum(1 for d in self.diag if d != 0)


def smith_normal_form(A):
    """Smith normal form over Z with unimodular transforms on both sides."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(r) for r in A]
    L = identity_matrix(rows)
    R = identity_matrix(cols)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in R:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row i += c * row j
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        L[i] = [a + c * b for a, b in zip(L[i], L[j])]

    def add_col(i, j, c):  # col i += c * col j
        for r in M:
            r[i] += c * r[j]
        for r in R:
            r[i] += c * r[j]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find pivot: smallest nonzero |entry| in the remaining block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < best):
                    best = abs(M[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, rows):
            if M[i][t] != 0:
                q = M[i][t] // M[t][t]
                add_row(i, t, -q)
                if M[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if M[t][j] != 0:
                q = M[t][j] // M[t][t]
                add_col(j, t, -q)
                if M[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # smaller entries appeared; redo this pivot
        # divisibility: pivot must divide every remaining entry
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % M[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            L[t] = [-a for a in L[t]]
        t += 1

    diag = [M[i][i] if i < cols else 0 for i in range(limit)]
    return SnfResult(diag, L, R, rows, cols)


def hermite_normal_form(A):
    """Row-style Hermite normal form: returns (H, U) with U*A = H, U unimodular.

    Pivot entries are positive, entries above a pivot are reduced into
    [0, pivot), zero rows are at the bottom.  H is a canonical basis of the
    row lattice of A (padded with zero rows).
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    H = [list(r) for r in A]
    U = identity_matrix(rows)
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        # euclidean elimination in this column below pivot_row
        while True:
            nz = [i for i in range(pivot_row, rows) if H[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(H[i][col]))
            if i_min != pivot_row:
                H[pivot_row], H[i_min] = H[i_min], H[pivot_row]
                U[pivot_row], U[i_min] = U[i_min], U[pivot_row]
            done = True
            for i in range(pivot_row + 1, rows):
                if H[i][col] != 0:
                    q = H[i][col] // H[pivot_row][col]
                    H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
                    if H[i][col] != 0:
                        done = False
            if done:
                break
        if H[pivot_row][col] == 0:
            continue
        if H[pivot_row][col] < 0:
            H[pivot_row] = [-a for a in H[pivot_row]]
            U[pivot_row] = [-a for a in U[pivot_row]]
        for i in range(pivot_row):
            q = H[i][col] // H[pivot_row][col]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
        pivot_row += 1
    return H, U


def row_lattice_basis(A):
    """Canonical (HNF) basis of the lattice spanned by the rows of A."""
    if not A:
        return []
    H, _ = hermite_normal_form(A)
    return [r for r in H if any(r)]


def rank(A):
    if not A or not A[0]:
        return 0
    return smith_normal_form(A).rank


def lattice_coordinates(w, A):
    """Solve A * lam = w over Z; returns lam or None.

    Free coordinates (kernel directions of A) are set to zero.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if len(w) != rows:
        raise ValueError("dimension mismatch")
    snf = smith_normal_form(A)
    c = mat_vec(snf.left, list(w))
    mu = [0] * cols
    for i in range(rows):
        d = snf.diag[i] if i < len(snf.diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            if i < cols:
                mu[i] = c[i] // d
    return mat_vec(snf.right, mu)


def kernel_basis(A):
    """Basis of the integer kernel {x : A*x = 0} (a saturated lattice)."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if cols == 0:
        return []
    snf = smith_normal_form(A)
    r = snf.rank
    rt = transpose(snf.right)
    return [list(rt[j]) for j in range(r, cols)]


def invert_unimodular(U):
    """Inverse of a unimodular integer matrix, returned as an integer matrix."""
    n = len(U)
    aug = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def primitive(v):
    """Divide an integer vector by the gcd of its entries (0 stays 0)."""
    from math import gcd
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g in (0, 1):
        return list(v)
    return [x // g for x in v]
