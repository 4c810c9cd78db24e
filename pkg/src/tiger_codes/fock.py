"""Truncated Fock-space engine: constrained sectors, codewords, ladder operators.

Everything here works by direct summation over explicit occupation vectors,
which makes it the reference against which the GKZ formulas are checked.
"""

import math
from fractions import Fraction
from itertools import product

import numpy as np
import sympy
from scipy.special import gammaln
from scipy.stats import poisson

from . import jsonfmt, linalg as la
from .errors import InadmissibleDelta, PreconditionError, SearchBoundExceeded
from .homology import logical_structure, positive_row_combination


# -- truncation ---------------------------------------------------------------

def default_cutoff(n_modes, alpha, tol=1e-12):
    """Smallest total occupation beyond which the Poisson tail is below ``tol``.

    The dropped weight sum_{|n|>n_max} alpha^{2|n|}/n! equals
    e^{N alpha^2} times a Poisson(N alpha^2) upper tail.
    """
    lam = n_modes * alpha ** 2
    if lam == 0:
        return 0
    grid = np.arange(0, int(lam + 40 * np.sqrt(lam) + 60))
    sf = poisson.sf(grid, lam)
    return int(grid[np.argmax(sf < tol)])


def log_tail_weight(n_modes, alpha, n_max):
    """log of sum_{|n|>n_max} alpha^{2|n|}/n! over all of N^N (an upper bound)."""
    lam = n_modes * alpha ** 2
    if lam == 0:
        return -np.inf
    return lam + poisson.logsf(n_max, lam)


def natural_cutoff(H, delta):
    """Largest total occupation in a finite-support sector, or None."""
    c = positive_row_combination(H)
    if c is None:
        return None
    b = [sum(ci * int(H[i, j]) for i, ci in enumerate(c)) for j in range(H.shape[1])]
    rhs = sum(ci * int(d) for ci, d in zip(c, delta))
    if rhs < 0:
        return -1
    return int(rhs / min(b))


# -- sector enumeration ---------------------------------------------------------

_BLOCK_CACHE = {}


def _bounded_table(k, total):
    """All v in N^k with sum(v) <= total, in lexicographic order."""
    key = (k, total)
    if key in _BLOCK_CACHE:
        return _BLOCK_CACHE[key]
    if k == 0:
        out = np.zeros((1, 0), dtype=np.int64)
    else:
        parts = []
        for f in range(total + 1):
            rest = _bounded_table(k - 1, total - f)
            parts.append(np.hstack([np.full((rest.shape[0], 1), f, dtype=np.int64), rest]))
        out = np.vstack(parts)
    if out.shape[0] < 2_000_000:
        _BLOCK_CACHE[key] = out
    return out


def _bounded_blocks(k, total, leaf_dims=None, leaf_rows=500_000):
    """Yield arrays covering {v in N^k : sum(v) <= total} in lexicographic order.

    The trailing ``leaf_dims`` coordinates are produced as one table per prefix;
    by default the widest leaf with at most ``leaf_rows`` rows is used.
    """
    if leaf_dims is None:
        leaf_dims = 1
        while leaf_dims < k and math.comb(total + leaf_dims + 1, leaf_dims + 1) <= leaf_rows:
            leaf_dims += 1
    if k <= leaf_dims:
        yield _bounded_table(k, total)
        return

    def rec(prefix, budget, depth):
        if depth == k - leaf_dims:
            leaf = _bounded_table(leaf_dims, budget)
            head = np.broadcast_to(np.array(prefix, dtype=np.int64), (leaf.shape[0], len(prefix)))
            yield np.hstack([head, leaf])
            return
        for f in range(budget + 1):
            yield from rec(prefix + [f], budget - f, depth + 1)

    yield from rec([], total, 0)


class FockSector:
    """Occupation vectors n >= 0 with H n = delta and |n| <= n_max.

    ``basis`` is an integer array of shape (dim, N) in lexicographic order.
    """

    def __init__(self, H, delta, n_max, basis):
        self.H = la.int_matrix(H, cols=basis.shape[1]) if not isinstance(H, np.ndarray) else H
        self.delta = tuple(int(d) for d in delta)
        self.n_max = n_max
        self.basis = np.ascontiguousarray(basis, dtype=np.int64)
        self.basis.setflags(write=False)
        self._index = None

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def N(self):
        return self.basis.shape[1]

    @property
    def index(self):
        if self._index is None:
            self._index = {tuple(row): i for i, row in enumerate(self.basis.tolist())}
        return self._index

    def positions(self, vectors):
        """Basis positions of ``vectors`` (-1 where absent)."""
        idx = self.index
        return np.array([idx.get(tuple(v), -1) for v in np.asarray(vectors).tolist()],
                        dtype=np.int64)

    def totals(self):
        return self.basis.sum(axis=1)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"FockSector(dim={self.dim}, delta={list(self.delta)}, n_max={self.n_max})"


def enumerate_sector(H, delta, n_max):
    """Exhaustive lexicographic basis of {n in N^N : H n = delta, |n| <= n_max}.

    The Hermite form of H splits coordinates into pivot and free ones; free
    coordinates are enumerated within the occupation budget and the pivot
    coordinates follow by back substitution.
    """
    H = np.asarray(H, dtype=object)
    N = H.shape[1]
    delta = [int(d) for d in delta]
    if n_max is None:
        n_max = natural_cutoff(H, delta)
        if n_max is None:
            raise PreconditionError("infinite-support sector needs an explicit cutoff")
    if n_max < 0:
        return FockSector(H, delta, n_max, np.zeros((0, N), dtype=np.int64))
    if H.shape[0] == 0:
        basis = np.vstack(list(_bounded_blocks(N, n_max)))
        return FockSector(H, delta, n_max, basis)
    Hn, U = la.hermite_normal_form(H)
    b = [int(v) for v in la.matmul(U, la.int_vector(delta))]
    piv = la.pivots(Hn)
    r = len(piv)
    if any(b[i] for i in range(r, len(b))):
        return FockSector(H, delta, n_max, np.zeros((0, N), dtype=np.int64))
    free = [j for j in range(N) if j not in piv]
    Hi = np.array(Hn[:r], dtype=np.int64)
    found = []
    for block in _bounded_blocks(len(free), n_max):
        x = np.zeros((block.shape[0], N), dtype=np.int64)
        x[:, free] = block
        ok = np.ones(block.shape[0], dtype=bool)
        for i in range(r - 1, -1, -1):
            c = piv[i]
            rhs = b[i] - x[:, c + 1:] @ Hi[i, c + 1:]
            p = Hi[i, c]
            ok &= rhs % p == 0
            x[:, c] = rhs // p
            ok &= x[:, c] >= 0
        ok &= x.sum(axis=1) <= n_max
        if ok.any():
            found.append(x[ok])
    basis = np.vstack(found) if found else np.zeros((0, N), dtype=np.int64)
    if basis.shape[0]:
        basis = basis[np.lexsort(basis.T[::-1])]
    return FockSector(H, delta, n_max, basis)


def brute_force_sector(H, delta, n_max):
    """Independent full-grid filter, used only to validate enumerate_sector."""
    H = np.array(H, dtype=np.int64).reshape(-1, np.asarray(H).shape[1])
    N = H.shape[1]
    rows = [n for n in product(range(n_max + 1), repeat=N)
            if sum(n) <= n_max and all(H @ np.array(n) == np.array(delta))]
    return sorted(rows)


# -- states -----------------------------------------------------------------------

class StateVector:
    """Complex amplitudes on a FockSector.

    ``tail`` bounds the relative squared norm dropped by the truncation
    (zero for finite-support sectors).
    """

    def __init__(self, sector, amplitudes, tail=0.0, label=None):
        self.sector = sector
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        self.tail = float(tail)
        self.label = label

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def normalized(self):
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.sector, self.amplitudes / nrm, self.tail, self.label)

    def scaled(self, c):
        return StateVector(self.sector, c * self.amplitudes, self.tail, self.label)

    def inner(self, other):
        """<self|other>, matching basis vectors by occupation."""
        if self.sector is other.sector or (
                self.sector.dim == other.sector.dim
                and np.array_equal(self.sector.basis, other.sector.basis)):
            return complex(np.vdot(self.amplitudes, other.amplitudes))
        pos = self.sector.positions(other.sector.basis)
        hit = pos >= 0
        return complex(np.vdot(self.amplitudes[pos[hit]], other.amplitudes[hit]))

    def amplitude(self, n):
        i = self.sector.index.get(tuple(int(v) for v in n), -1)
        return complex(self.amplitudes[i]) if i >= 0 else 0j

    def support(self, atol=0.0):
        keep = np.abs(self.amplitudes) > atol
        return self.sector.basis[keep]

    def to_jsonl(self):
        head = {"H": [[int(v) for v in row] for row in self.sector.H],
                "delta": list(self.sector.delta), "n_max": self.sector.n_max,
                "dim": self.sector.dim, "tail": self.tail}
        if self.label is not None:
            head["label"] = self.label
        lines = [jsonfmt.dumps(head)]
        for n, a in zip(self.sector.basis.tolist(), self.amplitudes):
            lines.append(jsonfmt.dumps({"n": n, "re": float(a.real), "im": float(a.imag)}))
        return "\n".join(lines) + "\n"


def combine(states, coeffs):
    """Linear combination of states living on possibly different sectors."""
    acc = {}
    for s, c in zip(states, coeffs):
        for n, a in zip(map(tuple, s.sector.basis.tolist()), s.amplitudes):
            acc[n] = acc.get(n, 0j) + c * a
    first = states[0].sector
    if not acc:
        basis = np.zeros((0, first.N), dtype=np.int64)
        return StateVector(FockSector(first.H, first.delta, first.n_max, basis), [])
    keys = sorted(acc)
    basis = np.array(keys, dtype=np.int64)
    n_max = max((s.sector.n_max for s in states if s.sector.n_max is not None), default=None)
    sector = FockSector(first.H, first.delta, n_max, basis)
    return StateVector(sector, [acc[k] for k in keys], max(s.tail for s in states))


def _log_weights(basis, alpha):
    """log(alpha^{|n|} / sqrt(n!)) for each row."""
    tot = basis.sum(axis=1)
    lw = -0.5 * gammaln(basis + 1.0).sum(axis=1)
    if alpha != 1.0:
        lw = lw + tot * np.log(alpha)
    return lw


def _sector_for(code, alpha, n_max, delta=None):
    delta = code.delta if delta is None else delta
    if n_max is None:
        if code.finite_support:
            n_max = natural_cutoff(code.H, delta)
        else:
            n_max = default_cutoff(code.N, alpha)
    sector = enumerate_sector(code.H, delta, n_max)
    if sector.dim == 0:
        raise InadmissibleDelta(f"no Fock states satisfy H n = {list(delta)}")
    return sector


def _relative_tail(code, alpha, sector, log_weights):
    if code.finite_support:
        return 0.0
    m = log_weights.max()
    log_a = 2 * m + np.log(np.sum(np.exp(2 * (log_weights - m))))
    return float(np.exp(log_tail_weight(code.N, alpha, sector.n_max) - log_a))


def _logical_rows(code, structure, factor, z):
    if z is not None:
        return np.atleast_2d(np.array(z, dtype=np.int64))
    if structure is None:
        structure = logical_structure(code)
    if structure.n_factors == 0:
        raise PreconditionError("code has no logical factors")
    rows = np.array(structure.L_Z, dtype=np.int64).reshape(structure.n_factors, code.N)
    if factor is None:
        return rows
    return rows[[factor]]


def build_x_codeword(code, mu, alpha, n_max=None, structure=None, factor=0, z=None):
    """X-basis codeword with amplitudes (alpha e^{-i mu z})^n / sqrt(n!).

    ``mu`` is an angle (2 pi k / K for a qudit factor). A sequence of angles
    applies one angle per logical factor.
    """
    if alpha <= 0:
        raise PreconditionError("alpha must be positive")
    sector = _sector_for(code, alpha, n_max)
    mus = np.atleast_1d(np.asarray(mu, dtype=float))
    zs = _logical_rows(code, structure, None if mus.size > 1 else factor, z)
    phase = -(sector.basis @ zs.T) @ mus
    lw = _log_weights(sector.basis, alpha)
    amps = np.exp(lw - lw.max()) * np.exp(1j * phase)
    state = StateVector(sector, amps, _relative_tail(code, alpha, sector, lw),
                        label={"basis": "x", "mu": mus.tolist(), "alpha": alpha})
    return state.normalized()


def build_z_codeword(code, ell, alpha=1.0, n_max=None, structure=None, factor=0, z=None, K=None):
    """Z-basis codeword supported on z.n = ell (mod K for a qudit factor)."""
    sector = _sector_for(code, alpha, n_max)
    if z is None:
        if structure is None:
            structure = logical_structure(code)
        zrow = np.array(structure.L_Z[factor], dtype=np.int64)
        if K is None:
            K = structure.orders[factor]
    else:
        zrow = np.array(z, dtype=np.int64)
    zn = sector.basis @ zrow
    mask = (zn - ell) % K == 0 if K else zn == ell
    if not mask.any():
        kind = "qudit" if K else free_factor_kind(code, zrow)
        raise InadmissibleDelta(f"empty logical sector ell={ell} ({kind} factor)")
    lw = _log_weights(sector.basis, alpha)
    amps = np.where(mask, np.exp(lw - lw[mask].max()), 0.0)
    sub = FockSector(sector.H, sector.delta, sector.n_max, sector.basis[mask])
    state = StateVector(sub, amps[mask], _relative_tail(code, alpha, sector, lw),
                        label={"basis": "z", "ell": ell, "alpha": alpha})
    return state.normalized()


def free_factor_kind(code, z):
    """'mode' if z.n is bounded on one side over the sector, else 'rotor'."""
    from scipy.optimize import linprog
    Hf = code.H_float()
    zf = np.asarray(z, dtype=float)
    kw = dict(A_eq=Hf, b_eq=np.array(code.delta, dtype=float)) if code.r_z else {}
    bounded = []
    for sgn in (1, -1):
        res = linprog(sgn * zf, bounds=[(0, None)] * code.N, method="highs", **kw)
        bounded.append(res.status == 0)
    if all(bounded):
        return "finite"
    return "mode" if any(bounded) else "rotor"


# -- operators ----------------------------------------------------------------------

def falling_factorial(basis, q):
    """(n)_q = prod_j n_j (n_j - 1) ... (n_j - q_j + 1), per row of ``basis``."""
    out = np.ones(basis.shape[0])
    for j, qj in enumerate(q):
        for t in range(int(qj)):
            out = out * np.maximum(basis[:, j] - t, 0)
    return out


def apply_loss_gain(state, p, q):
    """a^{dagger q} a^p |state>, unnormalized; lives in sector delta - H(p - q)."""
    p = np.asarray(p, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    B = state.sector.basis
    keep = np.all(B >= p, axis=1)
    src = B[keep]
    mid = src - p
    out = mid + q
    # sqrt(n!/(n-p)!) * sqrt((m+q)!/m!)
    logf = 0.5 * (gammaln(src + 1.0) - gammaln(mid + 1.0)).sum(axis=1)
    logf += 0.5 * (gammaln(out + 1.0) - gammaln(mid + 1.0)).sum(axis=1)
    amps = state.amplitudes[keep] * np.exp(logf)
    sec = state.sector
    shift = la.matmul(sec.H, la.int_vector(p - q)) if sec.H.shape[0] else []
    new_delta = [d - int(s) for d, s in zip(sec.delta, shift)]
    n_max = None if sec.n_max is None else sec.n_max - int(p.sum()) + int(q.sum())
    new = FockSector(sec.H, new_delta, n_max, out)
    return StateVector(new, amps, state.tail, state.label)


def matrix_element(bra, p, q, ket):
    """<bra| a^{dagger q} a^p |ket> by direct summation."""
    return bra.inner(apply_loss_gain(ket, p, q))


def verify_dissipator(code, state, g, alpha):
    """Norm of (a^{dagger q} a^p - alpha^{|p|-|q|} (n)_q)|state> with g = p - q."""
    g = np.asarray(g, dtype=np.int64)
    p, q = np.maximum(g, 0), np.maximum(-g, 0)
    moved = apply_loss_gain(state, p, q)
    ff = falling_factorial(state.sector.basis, q)
    scale = alpha ** (int(p.sum()) - int(q.sum()))
    ref = StateVector(state.sector, scale * ff * state.amplitudes)
    diff = combine([moved, ref], [1.0, -1.0])
    return diff.norm()


def apply_diagonal_gate(state, theta):
    """Multiply amplitude(n) by exp(i theta(n)); ``theta`` maps a basis array to angles."""
    angles = np.asarray(theta(state.sector.basis), dtype=float)
    return StateVector(state.sector, state.amplitudes * np.exp(1j * angles), state.tail, state.label)


def phase_gate(z, K):
    """theta(n) = (2 pi / K) (z.n)^2."""
    z = np.asarray(z, dtype=np.int64)
    return lambda B: 2 * np.pi / K * (B @ z).astype(float) ** 2


def sum_gate(z1, z2, K, n_first):
    """theta = (2 pi / K) (z1.n_A)(z2.n_B) on a tensor product with n_first modes in A."""
    z1 = np.asarray(z1, dtype=np.int64)
    z2 = np.asarray(z2, dtype=np.int64)
    return lambda B: 2 * np.pi / K * ((B[:, :n_first] @ z1) * (B[:, n_first:] @ z2)).astype(float)


def tensor_product(a, b):
    """Product state on the concatenated modes; H becomes block diagonal."""
    Ba, Bb = a.sector.basis, b.sector.basis
    basis = np.hstack([np.repeat(Ba, len(Bb), axis=0), np.tile(Bb, (len(Ba), 1))])
    Ha, Hb = a.sector.H, b.sector.H
    H = la.zeros(Ha.shape[0] + Hb.shape[0], Ba.shape[1] + Bb.shape[1])
    H[:Ha.shape[0], :Ba.shape[1]] = Ha
    H[Ha.shape[0]:, Ba.shape[1]:] = Hb
    sector = FockSector(H, list(a.sector.delta) + list(b.sector.delta), None, basis)
    return StateVector(sector, np.kron(a.amplitudes, b.amplitudes), a.tail + b.tail)


# -- occupation polynomials ----------------------------------------------------------

class DiagonalPolynomial:
    """Polynomial in the occupation numbers, as (coefficient, exponents, falling) terms.

    With ``falling`` set, n^e means the falling factorial (n)_e instead of a power.
    """

    def __init__(self, terms=()):
        self.terms = [(c, tuple(int(e) for e in exps), bool(f)) for c, exps, f in terms]

    def evaluate(self, basis):
        basis = np.atleast_2d(np.asarray(basis, dtype=np.int64))
        out = np.zeros(basis.shape[0])
        for c, exps, falling in self.terms:
            if falling:
                val = falling_factorial(basis, exps)
            else:
                val = np.prod(basis.astype(float) ** np.array(exps, dtype=float), axis=1)
            out = out + float(c) * val
        return out

    def evaluate_exact(self, n):
        total = Fraction(0)
        for c, exps, falling in self.terms:
            v = Fraction(c)
            for nj, e in zip(n, exps):
                if falling:
                    for t in range(e):
                        v *= (int(nj) - t)
                else:
                    v *= int(nj) ** e
            total += v
        return total

    def is_zero(self):
        return all(c == 0 for c, _, _ in self.terms)

    def __str__(self):
        parts = []
        for c, exps, falling in self.terms:
            if c == 0:
                continue
            mono = "*".join(
                (f"(n{j + 1})_{e}" if falling else (f"n{j + 1}" if e == 1 else f"n{j + 1}^{e}"))
                for j, e in enumerate(exps) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


def _monomials(n_vars, degree):
    out = []
    for d in range(degree + 1):
        for exps in product(range(d + 1), repeat=n_vars):
            if sum(exps) == d:
                out.append(exps)
    return sorted(set(out), key=lambda e: (sum(e), tuple(-x for x in e)))


class FiniteLogicalX:
    """Operator sum_x beta_x(n) a^{dagger w} a^v over representatives x = v - w.

    Each polynomial acts after the ladder monomial (on the output occupation)
    and is stored with alpha scaled out: the true coefficient is
    ``poly(n) * alpha**(-(|v| - |w|))``.
    """

    def __init__(self, terms, degree):
        self.terms = terms
        self.degree = degree

    def apply(self, state, alpha):
        parts, coeffs = [], []
        for t in self.terms:
            moved = apply_loss_gain(state, t["v"], t["w"])
            beta = t["poly"].evaluate(moved.sector.basis)
            scale = alpha ** (-(int(sum(t["v"])) - int(sum(t["w"]))))
            parts.append(StateVector(moved.sector, beta * scale * moved.amplitudes))
            coeffs.append(1.0)
        return combine(parts, coeffs)

    def matrix(self, sector, alpha):
        """Dense matrix on ``sector`` (columns: input basis states)."""
        M = np.zeros((sector.dim, sector.dim))
        for j in range(sector.dim):
            e = np.zeros(sector.dim, dtype=complex)
            e[j] = 1.0
            out = self.apply(StateVector(sector, e), alpha)
            pos = sector.positions(out.sector.basis)
            for i, a in zip(pos, out.amplitudes):
                if i >= 0:
                    M[i, j] += a.real
        return M

    def describe(self):
        out = []
        for t in self.terms:
            v, w = t["v"], t["w"]
            lad = " ".join([f"a{j + 1}^+{'' if e == 1 else '^' + str(e)}" for j, e in enumerate(w) if e]
                           + [f"a{j + 1}{'' if e == 1 else '^' + str(e)}" for j, e in enumerate(v) if e])
            out.append(f"[{t['poly']}] alpha^{-(int(sum(v)) - int(sum(w)))} {lad}")
        return "\n".join(out)


class LogicalXNotFound(SearchBoundExceeded):
    pass


def solve_finite_logical_x(code, degree=2, factor=0, structure=None, shift_box=1):
    """Logical X as occupation polynomials times ladder monomials.

    Looks for rational polynomials beta_x of degree <= ``degree`` with
    sum_x beta_x(n) alpha^{|v|-|w|} (n)_w = 1 on every sector state, over the
    representatives x + mG with |m_i| <= shift_box. The alpha dependence is a
    fixed power per representative, so the solve is exact and alpha free.
    """
    if not code.finite_support:
        raise PreconditionError("polynomial logical X solve needs a finite-support code")
    if structure is None:
        structure = logical_structure(code)
    sector = _sector_for(code, 1.0, None)
    x0 = np.array(structure.L_X[factor], dtype=object)
    G = [np.array(g, dtype=object) for g in code.G]
    reps = []
    for m in product(range(-shift_box, shift_box + 1), repeat=len(G)):
        x = x0 + sum((mi * g for mi, g in zip(m, G)), np.zeros(code.N, dtype=object))
        v = np.array([max(int(t), 0) for t in x], dtype=np.int64)
        w = np.array([max(-int(t), 0) for t in x], dtype=np.int64)
        # skip representatives that annihilate the whole sector
        if not np.any(np.all(sector.basis >= w, axis=1) & np.all(sector.basis - w + v >= 0, axis=1)):
            continue
        reps.append((int(sum(abs(int(t)) for t in x)), tuple(int(t) for t in x), v, w))
    reps.sort(key=lambda r: (r[0], r[1]))
    monos = _monomials(code.N, degree)
    rows = []
    for n in sector.basis.tolist():
        row = []
        for _, _, v, w in reps:
            ff = 1
            for nj, wj in zip(n, w):
                for t in range(int(wj)):
                    ff *= (nj - t)
            for e in monos:
                val = ff
                for nj, ej in zip(n, e):
                    val *= nj ** ej
                row.append(val)
        rows.append(row)
    A = sympy.Matrix(rows)
    rhs = sympy.Matrix([1] * sector.dim)
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError:
        raise LogicalXNotFound(f"no logical X with polynomial degree <= {degree}")
    sol = sol.subs({p: 0 for p in params})
    terms = []
    k = 0
    for _, x, v, w in reps:
        poly_terms = []
        for e in monos:
            c = Fraction(int(sol[k].p), int(sol[k].q))
            if c != 0:
                poly_terms.append((c, e, False))
            k += 1
        if poly_terms:
            terms.append({"x": x, "v": v, "w": w, "poly": DiagonalPolynomial(poly_terms)})
    return FiniteLogicalX(terms, degree)
