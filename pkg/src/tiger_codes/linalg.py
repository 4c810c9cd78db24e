"""Exact integer matrix algebra.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so every
operation is exact regardless of coefficient growth. Empty matrices (zero rows)
are legal and stand for "no constraint" (H) or "trivial image" (G).
"""

from dataclasses import dataclass

import numpy as np


def int_matrix(M, cols=None):
    """Coerce ``M`` into a 2-D object array of Python ints.

    ``cols`` fixes the column count, which is needed to build an empty matrix
    with a definite width.
    """
    if isinstance(M, np.ndarray) and M.ndim == 2 and M.size == 0:
        width = M.shape[1] if cols is None else cols
        return np.empty((M.shape[0], width), dtype=object)
    rows = [list(r) for r in M] if M is not None else []
    if not rows:
        return np.empty((0, 0 if cols is None else cols), dtype=object)
    width = len(rows[0])
    if cols is not None and width != cols:
        raise ValueError(f"expected {cols} columns, got {width}")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ValueError("ragged matrix rows")
        for j, x in enumerate(r):
            if isinstance(x, (float, np.floating)):
                if float(x) != int(x):
                    raise ValueError(f"non-integer entry {x!r}")
            out[i, j] = int(x)
    return out


def int_vector(v):
    return np.array([int(x) for x in v], dtype=object)


def identity(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros(r, c):
    out = np.empty((r, c), dtype=object)
    out[...] = 0
    return out


def matmul(A, B):
    """Exact product that also handles empty factors."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    A2 = A.reshape(1, -1) if A.ndim == 1 else A
    B2 = B.reshape(-1, 1) if B.ndim == 1 else B
    if A2.shape[1] == 0:
        out = zeros(A2.shape[0], B2.shape[1])
    else:
        out = A2.dot(B2)
    if A.ndim == 1:
        out = out[0]
    if B.ndim == 1:
        out = out[..., 0]
    return out


def _to_lists(M):
    return [[int(x) for x in row] for row in np.asarray(M, dtype=object)]


def _from_lists(rows, cols):
    return int_matrix(rows, cols=cols)


def _egcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class SmithForm:
    """``V @ M @ W == D`` with ``V``, ``W`` unimodular and ``D`` diagonal."""

    V: np.ndarray
    D: np.ndarray
    W: np.ndarray
    shape: tuple

    @property
    def diagonal(self):
        k = min(self.shape)
        return [int(self.D[i, i]) for i in range(k)]


def smith_normal_form(M):
    M = np.asarray(M, dtype=object)
    m, n = M.shape
    A = _to_lists(M)
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        V[i], V[j] = V[j], V[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        V[dst] = [a + c * b for a, b in zip(V[dst], V[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in W:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            rest = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # divisibility: fold an offending row into the pivot row and redo
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            V[t] = [-a for a in V[t]]
        t += 1
    return SmithForm(_from_lists(V, m), _from_lists(A, n), _from_lists(W, n), (m, n))


def hermite_normal_form(M):
    """Row-style Hermite form: returns ``(Hn, U)`` with ``U @ M == Hn``.

    ``Hn`` is in row echelon form with positive pivots and the entries above
    each pivot reduced into ``[0, pivot)``. Zero rows sit at the bottom.
    """
    M = np.asarray(M, dtype=object)
    m, n = M.shape
    A = _to_lists(M)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    row = 0
    for c in range(n):
        if row >= m:
            break
        nz = [i for i in range(row, m) if A[i][c] != 0]
        if not nz:
            continue
        if nz[0] != row:
            A[row], A[nz[0]] = A[nz[0]], A[row]
            U[row], U[nz[0]] = U[nz[0]], U[row]
        for k in range(row + 1, m):
            b = A[k][c]
            if b == 0:
                continue
            a = A[row][c]
            g, x, y = _egcd(a, b)
            ag, bg = a // g, b // g
            new_r = [x * p + y * q for p, q in zip(A[row], A[k])]
            new_k = [-bg * p + ag * q for p, q in zip(A[row], A[k])]
            A[row], A[k] = new_r, new_k
            new_r = [x * p + y * q for p, q in zip(U[row], U[k])]
            new_k = [-bg * p + ag * q for p, q in zip(U[row], U[k])]
            U[row], U[k] = new_r, new_k
        if A[row][c] < 0:
            A[row] = [-a for a in A[row]]
            U[row] = [-a for a in U[row]]
        p = A[row][c]
        for k in range(row):
            q = A[k][c] // p
            if q:
                A[k] = [a - q * b for a, b in zip(A[k], A[row])]
                U[k] = [a - q * b for a, b in zip(U[k], U[row])]
        row += 1
    return _from_lists(A, n), _from_lists(U, m)


def pivots(Hn):
    """Pivot columns of a matrix already in row echelon form."""
    out = []
    for row in np.asarray(Hn, dtype=object):
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            break
        out.append(nz[0])
    return out


def rank(M):
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return 0
    return len(pivots(hermite_normal_form(M)[0]))


def canonical_row_basis(B):
    """Deterministic basis of the row lattice of ``B``.

    Hermite form taken from the right: each row's last nonzero entry is a
    positive pivot, with the entries of other rows in that column reduced.
    Reading the Hermite form of the column-reversed matrix gives exactly this.
    """
    B = np.asarray(B, dtype=object)
    if B.shape[0] == 0:
        return B.copy()
    Hn, _ = hermite_normal_form(B[:, ::-1])
    r = len(pivots(Hn))
    return np.ascontiguousarray(Hn[:r, ::-1])


def integer_kernel_basis(M, cols=None):
    """Rows form a Z-basis of ``{v : M v^T = 0}``."""
    M = np.asarray(M, dtype=object)
    n = M.shape[1] if cols is None else cols
    if M.shape[0] == 0:
        return identity(n)
    Hn, U = hermite_normal_form(M.T)
    r = len(pivots(Hn))
    K = U[r:]
    if K.shape[0] == 0:
        return zeros(0, n)
    return canonical_row_basis(K)


def in_row_image(M, v):
    """Decide whether ``v = s @ M`` has an integer solution.

    Returns ``(True, s)`` with a canonical witness or ``(False, None)``.
    """
    M = np.asarray(M, dtype=object)
    v = [int(x) for x in v]
    if M.shape[0] == 0:
        if any(v):
            return False, None
        return True, np.zeros(0, dtype=object)
    if len(v) != M.shape[1]:
        raise ValueError("vector length does not match matrix columns")
    Hn, U = hermite_normal_form(M)
    piv = pivots(Hn)
    res = list(v)
    coeffs = []
    for i, c in enumerate(piv):
        p = int(Hn[i, c])
        if res[c] % p:
            return False, None
        t = res[c] // p
        coeffs.append(t)
        if t:
            res = [a - t * int(b) for a, b in zip(res, Hn[i])]
    if any(res):
        return False, None
    s = [0] * M.shape[0]
    for i, t in enumerate(coeffs):
        if t:
            s = [a + t * int(b) for a, b in zip(s, U[i])]
    return True, int_vector(s)


def solve_left(A, B):
    """Integer ``X`` with ``X @ A == B`` (row by row), or None if none exists."""
    rows = []
    for b in np.asarray(B, dtype=object):
        ok, s = in_row_image(A, b)
        if not ok:
            return None
        rows.append(list(s))
    return int_matrix(rows, cols=np.asarray(A).shape[0])


def integer_det(M):
    """Bareiss fraction-free determinant."""
    A = _to_lists(M)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def unimodular_inverse(U):
    """Exact inverse of a unimodular matrix."""
    U = np.asarray(U, dtype=object)
    n = U.shape[0]
    X = solve_left(U, identity(n))
    if X is None:
        raise ValueError("matrix is not unimodular")
    return X


def check_css(G, H):
    """True iff ``G @ H.T == 0`` exactly."""
    G = np.asarray(G, dtype=object)
    H = np.asarray(H, dtype=object)
    if G.shape[1] != H.shape[1]:
        raise ValueError(f"column mismatch: G has {G.shape[1]}, H has {H.shape[1]}")
    return css_violations(G, H) == []


def css_violations(G, H):
    """List of ``(g_row, h_row, inner_product)`` for every nonzero pairing."""
    G = np.asarray(G, dtype=object)
    H = np.asarray(H, dtype=object)
    out = []
    for i in range(G.shape[0]):
        for j in range(H.shape[0]):
            ip = sum(int(a) * int(b) for a, b in zip(G[i], H[j]))
            if ip:
                out.append((i, j, ip))
    return out
