"""X and Z distances, and classification of loss/gain errors."""

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from . import linalg as la
from .errors import InvalidInput, PreconditionError
from .fock import enumerate_sector
from .homology import logical_structure


class ErrorClass(enum.Enum):
    DETECTABLE = "detectable"
    TRIVIAL = "trivial"
    LOGICAL = "logical"


def _vec(v, n, name):
    v = [int(x) for x in v]
    if len(v) != n:
        raise InvalidInput(f"{name} must have length {n}")
    return v


def classify_error(code, p, q):
    """Class of the error a^{dagger q} a^p: detectable, trivial, or logical."""
    p = _vec(p, code.N, "p")
    q = _vec(q, code.N, "q")
    if min(p + q, default=0) < 0:
        raise InvalidInput("p and q must be non-negative")
    d = [a - b for a, b in zip(p, q)]
    if code.r_z and any(la.matmul(code.H, la.int_vector(d))):
        return ErrorClass.DETECTABLE
    ok, _ = la.in_row_image(code.G, d) if code.r_x else (not any(d), None)
    return ErrorClass.TRIVIAL if ok else ErrorClass.LOGICAL


def split_signed(v):
    """Positive and negative parts (p, q) with v = p - q."""
    v = np.asarray(v, dtype=np.int64)
    return np.maximum(v, 0), np.maximum(-v, 0)


# -- X distance -------------------------------------------------------------------------

def _compositions(w, s):
    """All ways to write w as an ordered sum of s positive integers."""
    out = []
    for cuts in combinations(range(1, w), s - 1):
        edges = (0,) + cuts + (w,)
        out.append([edges[i + 1] - edges[i] for i in range(s)])
    return np.array(out, dtype=np.int64).reshape(-1, s)


def one_norm_shell(n, w):
    """Integer vectors of one-norm ``w`` in Z^n whose first nonzero entry is positive.

    Yielded in blocks, one per support set.
    """
    for s in range(1, min(w, n) + 1):
        comps = _compositions(w, s)
        signs = np.array([(1,) + t for t in product((1, -1), repeat=s - 1)], dtype=np.int64)
        vals = (comps[:, None, :] * signs[None, :, :]).reshape(-1, s)
        for supp in combinations(range(n), s):
            block = np.zeros((vals.shape[0], n), dtype=np.int64)
            block[:, supp] = vals
            yield block


def _logical_mask(code, structure, vecs):
    """Rows of ``vecs`` (all in ker H) that are nontrivial in ker H / im G."""
    if structure.n_factors == 0:
        return np.zeros(len(vecs), dtype=bool)
    Z = np.array(structure.L_Z, dtype=np.int64).reshape(structure.n_factors, code.N)
    pair = vecs @ Z.T
    mask = np.zeros(len(vecs), dtype=bool)
    for k, K in enumerate(structure.orders):
        mask |= (pair[:, k] % K != 0) if K else (pair[:, k] != 0)
    return mask


@dataclass
class XDistance:
    d_X: object  # int, or None when undefined or beyond the bound
    witness: object
    bound: int
    status: str  # "found" | "exceeds_bound" | "undefined"

    def as_dict(self):
        return {"d_X": self.d_X if self.status == "found" else f"exceeds search bound {self.bound}"
                if self.status == "exceeds_bound" else "undefined",
                "witness": None if self.witness is None else [int(v) for v in self.witness],
                "bound": self.bound, "status": self.status}


def default_x_bound(code):
    K = la.integer_kernel_basis(code.H, cols=code.N)
    return max(1, 2 * sum(abs(int(v)) for v in np.asarray(K).ravel()))


def x_distance(code, bound=None, structure=None):
    """Minimal one-norm of a vector in ker H outside im G, searched shell by shell.

    Sign convention: of v and -v only the one whose first nonzero entry is
    positive is reported; ties within the minimal shell go to the
    lexicographically smallest vector.
    """
    if structure is None:
        structure = logical_structure(code)
    B = default_x_bound(code) if bound is None else int(bound)
    if B < 1:
        raise InvalidInput("search bound must be at least 1")
    if structure.n_factors == 0:
        return XDistance(None, None, B, "undefined")
    H = np.array(code.H, dtype=np.int64).reshape(code.r_z, code.N)
    for w in range(1, B + 1):
        hits = []
        for block in one_norm_shell(code.N, w):
            if code.r_z:
                block = block[~(block @ H.T).any(axis=1)]
            if len(block):
                block = block[_logical_mask(code, structure, block)]
            if len(block):
                hits.append(block)
        if hits:
            allv = np.concatenate(hits)
            best = allv[np.lexsort(allv.T[::-1])[0]]
            # exact double check of the witness
            if code.r_x and la.in_row_image(code.G, best)[0]:
                raise RuntimeError(f"pairing test and exact image test disagree on {best.tolist()}")
            return XDistance(w, best, B, "found")
    return XDistance(None, None, B, "exceeds_bound")


@dataclass
class LossLimit:
    t_max: int
    capped: bool
    witness: object = None


def pure_loss_detection_limit(code, bound=None):
    """Largest t <= B with H p != 0 for every non-negative p, 0 < |p|_1 <= t."""
    B = default_x_bound(code) if bound is None else int(bound)
    if B < 1:
        raise InvalidInput("search bound must be at least 1")
    # a strictly positive row combination of H rules out any non-negative kernel vector
    if code.finite_support:
        return LossLimit(B, True)
    for w in range(1, B + 1):
        sector = enumerate_sector(code.H, [0] * code.r_z, w)
        cands = sector.basis[sector.basis.sum(axis=1) == w]
        if len(cands):
            best = cands[np.lexsort(cands.T[::-1])[0]]
            return LossLimit(w - 1, False, best)
    return LossLimit(B, True)


# -- Z distance -------------------------------------------------------------------------

def default_grid_points(r_z, override=False):
    if r_z <= 3:
        return 8
    if r_z <= 6:
        return 4
    if r_z <= 8:
        return 3
    if override:
        return 2
    raise PreconditionError(f"multistart grid refused for r_z = {r_z} > 8 without override")


def torus_objective(H, shift, phi):
    """4 sum_j sin^2(theta_j / 2) with theta = phi H + shift, batched over rows of phi."""
    theta = np.atleast_2d(phi) @ H + shift
    return 4.0 * np.sum(np.sin(theta / 2) ** 2, axis=-1)


@dataclass
class TorusMinimum:
    value: float
    phi: np.ndarray
    starts: int
    converged: int


def minimize_on_torus(H, shift, grid_points=None, override=False, tol=1e-10, max_iter=200):
    """Multistart damped Newton on the periodic objective.

    Steps use the Hessian with eigenvalues replaced by their absolute values
    (floored), so every step is a descent direction; a backtracking line search
    keeps the objective decreasing. A start counts as converged when the
    gradient infinity-norm drops below ``tol``.
    """
    H = np.asarray(H, dtype=float)
    shift = np.asarray(shift, dtype=float)
    r = H.shape[0]
    if r == 0:
        return TorusMinimum(float(torus_objective(np.zeros((0, len(shift))), shift,
                                                  np.zeros((1, 0)))[0]), np.zeros(0), 1, 1)
    M = default_grid_points(r, override) if grid_points is None else int(grid_points)
    axis = 2 * np.pi * np.arange(M) / M
    phi = np.array(list(product(axis, repeat=r)), dtype=float)
    S = len(phi)

    def fgh(ph):
        theta = ph @ H + shift
        f = 4.0 * np.sum(np.sin(theta / 2) ** 2, axis=1)
        g = 2.0 * np.sin(theta) @ H.T
        hess = 2.0 * np.einsum("sj,ij,kj->sik", np.cos(theta), H, H)
        return f, g, hess

    f, g, hess = fgh(phi)
    active = np.ones(S, dtype=bool)
    for _ in range(max_iter):
        active = np.abs(g).max(axis=1) >= tol
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        w, V = np.linalg.eigh(hess[idx])
        w = np.maximum(np.abs(w), 1e-3)
        step = -np.einsum("sij,sj->si", V, np.einsum("sji,sj->si", V, g[idx]) / w)
        t = np.ones(len(idx))
        base = f[idx]
        new = phi[idx] + step
        fn = torus_objective(H, shift, new)
        for _ in range(40):
            bad = fn > base + 1e-4 * t * np.einsum("si,si->s", g[idx], step)
            if not bad.any():
                break
            t[bad] *= 0.5
            new[bad] = phi[idx][bad] + t[bad, None] * step[bad]
            fn[bad] = torus_objective(H, shift, new[bad])
        phi[idx] = new
        f[idx], g[idx], hess[idx] = fgh(phi[idx])
    conv = np.abs(g).max(axis=1) < tol
    pool = np.nonzero(conv)[0] if conv.any() else np.arange(S)
    best = pool[np.argmin(f[pool])]
    return TorusMinimum(float(f[best]), np.mod(phi[best], 2 * np.pi), S, int(conv.sum()))


@dataclass
class ZDistance:
    d_Z: float
    mu: object
    phi: np.ndarray
    starts: int
    converged: int

    def as_dict(self):
        mu = list(self.mu) if isinstance(self.mu, (list, tuple, np.ndarray)) else self.mu
        return {"d_Z": self.d_Z, "mu": mu, "phi": [float(x) for x in self.phi],
                "starts": self.starts, "converged": self.converged}


def _h_float(code):
    return np.array(code.H, dtype=float).reshape(code.r_z, code.N)


def z_distance_continuous(code, z, phi_logical, grid_points=None, override=False):
    """min over the stabilizer torus of |1 - e^{i(phi H + phi_logical z)}|^2."""
    shift = float(phi_logical) * np.asarray(z, dtype=float)
    res = minimize_on_torus(_h_float(code), shift, grid_points, override)
    return ZDistance(res.value, float(phi_logical), res.phi, res.starts, res.converged)


def z_distance_qudit(code, z, K, grid_points=None, override=False):
    """Minimum over mu = 2 pi k/K, k = 1..K-1, of the torus minimum."""
    if int(K) < 2:
        raise InvalidInput("K must be at least 2")
    best = None
    for k in range(1, int(K)):
        res = z_distance_continuous(code, z, 2 * math.pi * k / K, grid_points, override)
        if best is None or res.d_Z < best.d_Z - 1e-12:
            best = res
    return best


def z_distance(code, structure=None, grid_points=None, override=False, max_combos=256):
    """Z distance over all nonzero torsion labels; None if there is no torsion factor."""
    if structure is None:
        structure = logical_structure(code)
    tors = [k for k, K in enumerate(structure.orders) if K]
    if not tors:
        return None
    if len(tors) == 1:
        k = tors[0]
        return z_distance_qudit(code, structure.L_Z[k], structure.orders[k], grid_points, override)
    ranges = [range(structure.orders[k]) for k in tors]
    n_combo = math.prod(len(r) for r in ranges)
    if n_combo > max_combos:
        raise PreconditionError(f"{n_combo} logical labels exceed the limit {max_combos}")
    Z = np.array(structure.L_Z, dtype=float).reshape(structure.n_factors, code.N)
    best = None
    for labels in product(*ranges):
        if not any(labels):
            continue
        mu = [2 * math.pi * l / structure.orders[k] for l, k in zip(labels, tors)]
        shift = sum(m * Z[k] for m, k in zip(mu, tors))
        res = minimize_on_torus(_h_float(code), shift, grid_points, override)
        if best is None or res.value < best.d_Z - 1e-12:
            best = ZDistance(res.value, mu, res.phi, res.starts, res.converged)
    return best


@dataclass
class DistanceReport:
    x: XDistance
    loss: LossLimit
    z: object
    meta: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            **self.x.as_dict(),
            "pure_loss_detect": self.loss.t_max,
            "pure_loss_capped": self.loss.capped,
            "z": None if self.z is None else self.z.as_dict(),
            **self.meta,
        }


def distance_report(code, bound=None, structure=None, grid_points=None, override=False):
    if structure is None:
        structure = logical_structure(code)
    xd = x_distance(code, bound, structure)
    loss = pure_loss_detection_limit(code, xd.bound)
    zd = z_distance(code, structure, grid_points, override)
    return DistanceReport(xd, loss, zd)
