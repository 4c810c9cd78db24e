"""Logical structure of a tiger code: the homology ker H / im G.

Torsion generators come from the Smith form of G, free generators from a
complement of the saturated image of G inside ker H. Logical Z rows are found
by solving the pairing conditions as an integer linear system.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np
from scipy.optimize import linprog, milp, LinearConstraint, Bounds

from . import linalg as la
from .errors import CSSViolation, PreconditionError, SearchBoundExceeded


class GeneratorPair:
    """Integer generator matrices G (X type) and H (Z type) with G H^T = 0.

    ``delta`` is the syndrome vector selecting the Fock sector (defaults to 0).
    """

    def __init__(self, G, H, n_modes=None, delta=None, name=None):
        G = np.asarray(G, dtype=object) if isinstance(G, np.ndarray) else G
        H = np.asarray(H, dtype=object) if isinstance(H, np.ndarray) else H
        width = n_modes
        for M in (G, H):
            if width is None and M is not None and len(M) and len(M[0]):
                width = len(M[0])
        if width is None:
            raise ValueError("cannot infer mode count from two empty matrices")
        self.G = la.int_matrix(G, cols=width)
        self.H = la.int_matrix(H, cols=width)
        self.N = width
        bad = la.css_violations(self.G, self.H)
        if bad:
            raise CSSViolation(bad)
        if delta is None:
            delta = [0] * self.H.shape[0]
        if len(delta) != self.H.shape[0]:
            raise ValueError(f"delta has length {len(delta)}, H has {self.H.shape[0]} rows")
        self.delta = tuple(int(d) for d in delta)
        self.name = name
        self._finite = None

    @property
    def r_x(self):
        return self.G.shape[0]

    @property
    def r_z(self):
        return self.H.shape[0]

    def with_delta(self, delta):
        return GeneratorPair(self.G, self.H, n_modes=self.N, delta=delta, name=self.name)

    def G_float(self):
        return np.array(self.G, dtype=float).reshape(self.r_x, self.N)

    def H_float(self):
        return np.array(self.H, dtype=float).reshape(self.r_z, self.N)

    @property
    def finite_support(self):
        if self._finite is None:
            self._finite = positive_row_combination(self.H) is not None
        return self._finite

    @property
    def support_class(self):
        return "finite" if self.finite_support else "infinite"

    def __repr__(self):
        return (f"GeneratorPair(N={self.N}, G={self.G.tolist()}, H={self.H.tolist()}, "
                f"delta={list(self.delta)})")

    def __eq__(self, other):
        return (isinstance(other, GeneratorPair) and self.N == other.N
                and self.G.tolist() == other.G.tolist()
                and self.H.tolist() == other.H.tolist()
                and self.delta == other.delta)


def positive_row_combination(H):
    """Rational ``c`` with ``c @ H`` strictly positive, or None.

    The LP only proposes a candidate; it is rounded to a rational vector and
    verified exactly before being returned.
    """
    H = np.asarray(H, dtype=object)
    r, n = H.shape
    if r == 0 or n == 0:
        return None
    Hf = np.array(H, dtype=float)
    # maximize t subject to c H >= t, t <= 1
    cost = np.zeros(r + 1)
    cost[-1] = -1.0
    A_ub = np.hstack([-Hf.T, np.ones((n, 1))])
    res = linprog(cost, A_ub=A_ub, b_ub=np.zeros(n),
                  bounds=[(None, None)] * r + [(None, 1.0)], method="highs")
    if res.status != 0 or -res.fun <= 1e-9:
        return None
    for den in (1, 10, 100, 10**4, 10**6, 10**9):
        c = [Fraction(x).limit_denominator(den) for x in res.x[:r]]
        b = [sum(ci * int(H[i, j]) for i, ci in enumerate(c)) for j in range(n)]
        if all(v > 0 for v in b):
            return c
    return None


@dataclass
class LogicalStructure:
    """Free and torsion logical factors with paired generator rows.

    Row i of ``L_X`` pairs with row i of ``L_Z``; ``orders[i]`` is K for a
    torsion factor and 0 for a free one.
    """

    orders: list
    L_X: np.ndarray
    L_Z: np.ndarray
    factor_kinds: list = field(default_factory=list)

    @property
    def free_rank(self):
        return sum(1 for k in self.orders if k == 0)

    @property
    def torsion_orders(self):
        return [k for k in self.orders if k != 0]

    @property
    def n_factors(self):
        return len(self.orders)

    def describe(self):
        parts = [f"Z_{k}" if k else "Z" for k in self.orders]
        return " x ".join(parts) if parts else "trivial"

    def as_dict(self):
        return {
            "free_rank": self.free_rank,
            "torsion_orders": self.torsion_orders,
            "factor_kinds": self.factor_kinds,
            "L_X": [[int(v) for v in row] for row in self.L_X],
            "L_Z": [[int(v) for v in row] for row in self.L_Z],
        }


def _l1(v):
    return sum(abs(int(x)) for x in v)


def _size_reduce(v, basis, key=None):
    """Greedy reduction of ``v`` by integer multiples of basis rows."""
    if key is None:
        key = lambda w: (_l1(w), max((abs(int(x)) for x in w), default=0))
    v = np.array(v, dtype=object)
    basis = [np.array(b, dtype=object) for b in basis if any(b)]
    improved = True
    while improved:
        improved = False
        for b in basis:
            for sgn in (1, -1):
                while True:
                    w = v + sgn * b
                    if key(w) < key(v):
                        v, improved = w, True
                    else:
                        break
    return v


def _sign_normalize(v):
    for x in v:
        if x != 0:
            return v if x > 0 else -v
    return v


def _solve_pairing(code, X, i, order):
    """Integer z with X z = e_i and G z = 0 mod ``order`` (0 means exact)."""
    N, rx, f = code.N, code.r_x, X.shape[0]
    slack = rx if order else 0
    A = la.zeros(N + slack, f + rx)
    for j in range(f):
        for k in range(N):
            A[k, j] = X[j, k]
    for j in range(rx):
        for k in range(N):
            A[k, f + j] = code.G[j, k]
        if order:
            A[N + j, f + j] = -order
    b = [int(j == i) for j in range(f)] + [0] * rx
    ok, y = la.in_row_image(A, b)
    if not ok:
        return None
    # homogeneous solutions give the freedom used for reduction
    hom = la.integer_kernel_basis(A.T)
    hom_z = [row[:N] for row in hom if any(row[:N])]
    if hom_z:
        hom_z = list(la.canonical_row_basis(la.int_matrix(hom_z, cols=N)))
    z = np.array(y[:N], dtype=object)
    # prefer small one-norm, then small max entry, then leading positive entries
    key = lambda w: (_l1(w), max((abs(int(x)) for x in w), default=0),
                     tuple(-int(x) for x in w))
    return _size_reduce(z, hom_z, key=key)


def logical_structure(code):
    """Compute free rank, torsion orders and paired logical generators."""
    N = code.N
    snf = la.smith_normal_form(code.G)
    diag = snf.diagonal + [0] * (N - min(snf.shape))
    W_inv = la.unimodular_inverse(snf.W)
    torsion = [(diag[i], W_inv[i]) for i in range(N) if diag[i] > 1]
    torsion.sort(key=lambda t: t[0])
    sat = [W_inv[i] for i in range(N) if diag[i] != 0]

    # free part: complement of sat(im G) inside ker H
    K = la.integer_kernel_basis(code.H, cols=N)
    free = []
    k, r = K.shape[0], len(sat)
    if k > r:
        if r:
            C = la.solve_left(K, la.int_matrix([list(s) for s in sat], cols=N))
            snf_c = la.smith_normal_form(C)
            comp = la.unimodular_inverse(snf_c.W)[r:]
        else:
            comp = la.identity(k)
        free = [la.matmul(row, K) for row in comp]

    G_basis = list(la.canonical_row_basis(code.G)) if code.r_x else []
    rows, orders = [], []
    for K_i, x in torsion:
        rows.append(_sign_normalize(_size_reduce(x, G_basis)))
        orders.append(K_i)
    for x in free:
        rows.append(_sign_normalize(_size_reduce(x, G_basis)))
        orders.append(0)
    raw = [K_i_x[1] for K_i_x in torsion] + free

    if not rows:
        empty = la.zeros(0, N)
        return LogicalStructure([], empty, empty.copy(), [])

    X = la.int_matrix([list(r) for r in rows], cols=N)
    Z_rows = [_solve_pairing(code, X, i, orders[i]) for i in range(len(rows))]
    if any(z is None for z in Z_rows):
        # reduced representatives lost primitivity; fall back to raw generators
        X = la.int_matrix([list(r) for r in raw], cols=N)
        Z_rows = [_solve_pairing(code, X, i, orders[i]) for i in range(len(rows))]
    Z = la.int_matrix([list(z) for z in Z_rows], cols=N)
    kinds = [f"torsion({K_i})" if K_i else "free" for K_i in orders]
    return LogicalStructure(orders, X, Z, kinds)


def structure_violations(code, S, exact_pairing=True):
    """List of human-readable invariant failures (empty when all hold).

    With ``exact_pairing=False`` the pairing of row i with torsion row j is
    only required modulo that row's order, which is the relation preserved by
    adding G rows to L_X rows.
    """
    out = []
    for i, x in enumerate(S.L_X):
        if any(la.matmul(code.H, x)):
            out.append(f"L_X row {i} not in ker H")
        K_i = S.orders[i]
        if K_i:
            if not la.in_row_image(code.G, K_i * x)[0]:
                out.append(f"{K_i} * L_X row {i} not in im G")
            if la.in_row_image(code.G, x)[0]:
                out.append(f"L_X row {i} lies in im G")
    for j, z in enumerate(S.L_Z):
        Gz = la.matmul(code.G, z) if code.r_x else []
        K_j = S.orders[j]
        if K_j and any(int(v) % K_j for v in Gz):
            out.append(f"G z_{j} not 0 mod {K_j}")
        if not K_j and any(Gz):
            out.append(f"G z_{j} nonzero for free factor")
    P = la.matmul(S.L_X, S.L_Z.T)
    for i in range(P.shape[0]):
        for j in range(P.shape[1]):
            want = int(i == j)
            got = int(P[i, j])
            K_j = S.orders[j]
            if exact_pairing or not K_j:
                if got != want:
                    out.append(f"pairing ({i},{j}) = {got}")
            elif (got - want) % K_j:
                out.append(f"pairing ({i},{j}) = {got} not {want} mod {K_j}")
    return out


def canonicalize_nonnegative_lx(code, L_X, shift_bound=4):
    """Shift each L_X row by integer combinations of G rows to make it >= 0.

    Picks the representative of least one-norm (lexicographic tie-break)
    with shift coefficients in ``[-shift_bound, shift_bound]``.
    """
    if code.finite_support:
        raise PreconditionError("non-negative logical X rows need an infinite-support code")
    out = []
    G = [np.array(g, dtype=object) for g in code.G]
    rx = len(G)
    for row in L_X:
        x = np.array(row, dtype=object)
        if all(v >= 0 for v in x):
            out.append(list(x))
            continue
        best = None
        if rx and (2 * shift_bound + 1) ** rx <= 200_000:
            for m in product(range(-shift_bound, shift_bound + 1), repeat=rx):
                w = x + sum((mi * g for mi, g in zip(m, G)), np.zeros(code.N, dtype=object))
                if all(v >= 0 for v in w):
                    key = (_l1(w), tuple(int(v) for v in w))
                    if best is None or key < best[0]:
                        best = (key, w)
        elif rx:
            best = _milp_nonnegative(code, x, shift_bound)
        if best is None:
            raise SearchBoundExceeded(
                f"no non-negative representative of {list(map(int, x))} "
                f"with shifts bounded by {shift_bound}")
        out.append(list(best[1]))
    return la.int_matrix(out, cols=code.N)


def _milp_nonnegative(code, x, shift_bound):
    Gf = code.G_float()
    xf = np.array(x, dtype=float)
    rx = Gf.shape[0]
    # minimize sum(x + m G) subject to x + m G >= 0
    cost = Gf.sum(axis=1)
    cons = LinearConstraint(Gf.T, lb=-xf, ub=np.inf)
    res = milp(cost, constraints=[cons], integrality=np.ones(rx),
               bounds=Bounds(-shift_bound, shift_bound))
    if res.status != 0:
        return None
    m = [int(round(v)) for v in res.x]
    w = x + la.matmul(la.int_vector(m), code.G)
    if any(v < 0 for v in w):
        return None
    return ((_l1(w), tuple(w)), w)
