"""Constructors for the named code families, with expected metadata.

Expected values are computed from closed-form expressions for each family so
they can serve as regression fixtures. Hypergraph-product layouts put the
"vertical" block (m*r modes, index i*r + k for row i of the tube and position
k around it) first, then the "horizontal" block ((m-1)*r modes, same
indexing).
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .homology import GeneratorPair


# -- building blocks -------------------------------------------------------------------

def cyclic_pairs(n):
    """R_n: row i has ones at columns i and i+1 (mod n)."""
    R = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        R[i, i] += 1
        R[i, (i + 1) % n] += 1
    return R


def open_pairs(n):
    """T_n: R_n without its last (wrap-around) row."""
    return cyclic_pairs(n)[:-1]


def root_lattice(n):
    """A_n generator: rows e_j - e_{j+1}."""
    A = np.zeros((max(n - 1, 0), n), dtype=np.int64)
    for j in range(n - 1):
        A[j, j], A[j, j + 1] = 1, -1
    return A


def alternating(n):
    return np.array([(-1) ** j for j in range(n)], dtype=np.int64)


def _rows(M):
    return [[int(v) for v in row] for row in np.asarray(M)]


@dataclass
class CatalogEntry:
    name: str
    params: dict
    code: GeneratorPair
    expected: dict = field(default_factory=dict)

    def definition(self):
        """A code-definition document that re-ingests to the same pair."""
        return {"name": self.name, "G": _rows(self.code.G), "H": _rows(self.code.H),
                "delta": list(self.code.delta), "n_modes": self.code.N}

    def as_dict(self):
        return {"name": self.name, "params": self.params, **self.definition(),
                "expected": self.expected}


def _pair(G, H, N, delta=None, name=None):
    G = np.asarray(G, dtype=np.int64).reshape(-1, N)
    H = np.asarray(H, dtype=np.int64).reshape(-1, N)
    return GeneratorPair(_rows(G), _rows(H), n_modes=N, delta=delta, name=name)


def _qubit(d_x, d_z, **extra):
    return {"logical": ["Z_2"], "d_X": d_x, "d_Z": d_z, **extra}


def _positive_int(v, name, minimum=1):
    if int(v) != v or int(v) < minimum:
        raise InvalidInput(f"{name} must be an integer >= {minimum}")
    return int(v)


# -- constructors ----------------------------------------------------------------------

def two_component_cat():
    code = _pair([[2]], [], 1, name="two-component-cat")
    return CatalogEntry("two-component-cat", {}, code, _qubit(1, 4.0, gkz="exponential"))


def pair_cat(m1=1, m2=1, delta=0):
    m1, m2 = _positive_int(m1, "m1"), _positive_int(m2, "m2")
    if math.gcd(m1, m2) != 1:
        raise InvalidInput("m1 and m2 must be coprime (and distinct unless both are 1)")
    code = _pair([[2 * m2, 2 * m1]], [[m1, -m2]], 2, [delta], name="pair-cat")
    exp = _qubit(m1 + m2, 4.0 if (m1, m2) == (1, 1) else None)
    if (m1, m2) == (1, 1):
        exp["gkz"] = "pair_cat"
        exp["dephasing_slope"] = -4.0
    return CatalogEntry("pair-cat", {"m1": m1, "m2": m2, "delta": delta}, code, exp)


def extended_pair_cat(n=3):
    n = _positive_int(n, "n", 2)
    code = _pair([[2] * n], root_lattice(n), n, name="extended-pair-cat")
    dz = 4 * n * math.sin(math.pi / (2 * n)) ** 2
    return CatalogEntry("extended-pair-cat", {"n": n}, code,
                        _qubit(n, dz, gkz="extended_pair_cat", dephasing_slope=-float(n)))


def pair_coherent_rotor():
    code = _pair([[1, 1]], [], 2, name="pair-coherent-rotor")
    return CatalogEntry("pair-coherent-rotor", {}, code,
                        {"logical": ["Z"], "kind": "rotor", "d_X": 1,
                         "d_Z": "4 sin^2(phi/2)"})


def pair_coherent_mode(delta=0):
    code = _pair([], [[1, -1]], 2, [delta], name="pair-coherent-mode")
    return CatalogEntry("pair-coherent-mode", {"delta": delta}, code,
                        {"logical": ["Z"], "kind": "mode", "d_X": 2,
                         "d_Z": "8 sin^2(phi/4)", "gkz": "pair_cat"})


def fock_repetition(n=3):
    n = _positive_int(n, "n")
    code = _pair([], root_lattice(n), n, name="fock-repetition")
    exp = {"logical": ["Z"], "kind": "mode", "d_X": n, "d_Z": f"{4 * n} sin^2(phi/{2 * n})"}
    if n == 1:
        exp["degenerate"] = True
    return CatalogEntry("fock-repetition", {"n": n}, code, exp)


def coherent_repetition(n=3, boundary="closed"):
    n = _positive_int(n, "n", 2)
    if boundary not in ("closed", "open"):
        raise InvalidInput("boundary must be 'closed' or 'open'")
    G = cyclic_pairs(n) if boundary == "closed" else open_pairs(n)
    code = _pair(G, [], n, name="coherent-repetition")
    if boundary == "closed" and n % 2:
        exp = _qubit(1, 4.0 * n, dephasing_slope=-4.0 * n, gkz="exponential")
    else:
        exp = {"logical": ["Z"], "kind": "rotor", "d_X": 1}
    return CatalogEntry("coherent-repetition", {"n": n, "boundary": boundary}, code, exp)


def four_mode_tiger(delta=0):
    G = [[1, 1, 0, 0], [0, 0, 1, 1], [0, 2, 0, 2]]
    code = _pair(G, [[1, -1, -1, 1]], 4, [delta], name="four-mode-tiger")
    exp = _qubit(2, 8.0, gkz="four_mode", dephasing_slope=-8.0,
                 flags=["exact dephasing zero for detectable p"])
    return CatalogEntry("four-mode-tiger", {"delta": delta}, code, exp)


def tiger_shor(L=2, M=2):
    L, M = _positive_int(L, "L", 2), _positive_int(M, "M", 2)
    x1 = np.zeros(L, dtype=np.int64)
    x1[0] = 1
    G = np.vstack([np.kron(open_pairs(L), np.eye(M, dtype=np.int64)),
                   np.kron(x1, np.full(M, 2, dtype=np.int64))[None, :]])
    H = np.kron(alternating(L)[None, :], root_lattice(M))
    code = _pair(G, H, L * M, name="tiger-shor")
    exp = _qubit(M, 4 * M * L * math.sin(math.pi / (2 * M)) ** 2,
                 x=_rows(np.kron(x1, np.ones(M, dtype=np.int64))[None, :])[0],
                 z=_rows(np.kron(alternating(L), np.eye(M, dtype=np.int64)[0])[None, :])[0])
    return CatalogEntry("tiger-shor", {"L": L, "M": M}, code, exp)


def _surface_matrices(R, m):
    r = R.shape[0]
    Tm = open_pairs(m)
    G = np.hstack([np.kron(np.eye(m, dtype=np.int64), R), np.kron(Tm.T, np.eye(r, dtype=np.int64))])
    H = np.hstack([np.kron(Tm, np.eye(r, dtype=np.int64)),
                   -np.kron(np.eye(m - 1, dtype=np.int64), R.T)])
    return G, H


def surface_dz_bounds(r, m):
    low = 4 * r * m * math.sin(math.pi / (2 * m)) ** 2
    extra = 4 * sum(math.sin((m - j) * math.pi / m) ** 2 for j in range(1, m))
    return low, low + extra


def tiger_surface(r=3, m=2):
    r, m = _positive_int(r, "r", 3), _positive_int(m, "m", 2)
    if r % 2 == 0:
        raise InvalidInput("r must be odd: even r gives an infinite-dimensional logical space")
    G, H = _surface_matrices(cyclic_pairs(r), m)
    code = _pair(G, H, (2 * m - 1) * r, name="tiger-surface")
    low, high = surface_dz_bounds(r, m)
    exp = _qubit(m, None, d_Z_bounds=[low, high])
    if m == 2:
        exp.update(d_Z=4.0 * r, gkz="liger", dephasing_slope=-6.0 * r,
                   flags=["exact zero dephasing for H p with positive entry"])
    return CatalogEntry("tiger-surface", {"r": r, "m": m}, code, exp)


def liger(r=3):
    entry = tiger_surface(r, 2)
    entry.name = "liger"
    entry.params = {"r": r}
    entry.code.name = "liger"
    return entry


def tiger_surface_open(r=3, m=2, K=2):
    r, m, K = _positive_int(r, "r", 2), _positive_int(m, "m", 2), _positive_int(K, "K", 2)
    R = cyclic_pairs(r)
    R[-1] = 0
    R[-1, 0] = K
    G, H = _surface_matrices(R, m)
    code = _pair(G, H, (2 * m - 1) * r, name="tiger-surface-open")
    return CatalogEntry("tiger-surface-open", {"r": r, "m": m, "K": K}, code,
                        {"logical": [f"Z_{K}"], "d_X": m, "d_Z": None})


def two_mode_binomial(delta=1):
    delta = _positive_int(delta, "delta", 0)
    code = _pair([[2, -2]], [[1, 1]], 2, [delta], name="two-mode-binomial")
    return CatalogEntry("two-mode-binomial", {"delta": delta}, code,
                        _qubit(2, None, gkz="binomial",
                               flags=["exact dephasing zero for |p| < delta"]))


def multinomial(n=3, delta=None):
    n = _positive_int(n, "n", 2)
    delta = n if delta is None else _positive_int(delta, "delta", 0)
    G = np.zeros((n - 1, n), dtype=np.int64)
    for j in range(n - 1):
        for off, c in ((0, 1), (1, -2), (2, 1)):
            G[j, (j + off) % n] += c
    code = _pair(G, [[1] * n], n, [delta], name="multinomial")
    return CatalogEntry("multinomial", {"n": n, "delta": delta}, code,
                        {"logical": [f"Z_{n}"], "d_X": 2, "d_Z": None})


def center_of_mass():
    code = _pair([[1, -1]], [], 2, name="center-of-mass")
    return CatalogEntry("center-of-mass", {}, code,
                        {"logical": ["Z"], "kind": "rotor", "d_X": 1})


def four_mode_binomial(delta=2):
    delta = _positive_int(delta, "delta", 0)
    G = [[1, -1, 0, 0], [0, 0, 1, -1], [1, 1, -1, -1]]
    code = _pair(G, [[1, 1, 1, 1]], 4, [delta], name="four-mode-binomial")
    return CatalogEntry("four-mode-binomial", {"delta": delta}, code, _qubit(2, None))


def chi2_like(delta1=2, delta2=3):
    d1, d2 = _positive_int(delta1, "delta1", 0), _positive_int(delta2, "delta2", 0)
    code = _pair([[2, 2, -2]], [[0, 1, 1], [1, 0, 1]], 3, [d1, d2], name="chi2-like")
    return CatalogEntry("chi2-like", {"delta1": d1, "delta2": d2}, code,
                        _qubit(3, None, gkz="chi2"))


def calabi_yau_hypersurface(n=4, delta=3):
    n = _positive_int(n, "n", 3)
    delta = _positive_int(delta, "delta", 0)
    H = np.zeros((n - 1, n), dtype=np.int64)
    H[0] = 1
    for j in range(1, n - 1):
        H[j, j], H[j, n - 1] = 1, -1
    t = np.ones(n, dtype=np.int64)
    t[0] = -(n - 1)
    code = _pair([2 * t], H, n, [delta] + [0] * (n - 2), name="calabi-yau")
    return CatalogEntry("calabi-yau", {"n": n, "delta": delta}, code,
                        _qubit(2 * (n - 1), None, kernel=_rows(t[None, :])[0],
                               overlap_ratio=math.sqrt(13) / 4 if n == 4 else None))


def calabi_yau_cubic(delta=3):
    entry = calabi_yau_hypersurface(4, delta)
    entry.params = {"delta": entry.params["delta"]}
    return entry


# -- registry --------------------------------------------------------------------------

REGISTRY = {
    "two-component-cat": (two_component_cat, {}),
    "pair-cat": (pair_cat, {"m1": "int", "m2": "int", "delta": "int"}),
    "extended-pair-cat": (extended_pair_cat, {"n": "int"}),
    "pair-coherent-rotor": (pair_coherent_rotor, {}),
    "pair-coherent-mode": (pair_coherent_mode, {"delta": "int"}),
    "fock-repetition": (fock_repetition, {"n": "int"}),
    "coherent-repetition": (coherent_repetition, {"n": "int", "boundary": "str"}),
    "four-mode-tiger": (four_mode_tiger, {"delta": "int"}),
    "tiger-shor": (tiger_shor, {"L": "int", "M": "int"}),
    "tiger-surface": (tiger_surface, {"r": "int", "m": "int"}),
    "liger": (liger, {"r": "int"}),
    "tiger-surface-open": (tiger_surface_open, {"r": "int", "m": "int", "K": "int"}),
    "two-mode-binomial": (two_mode_binomial, {"delta": "int"}),
    "multinomial": (multinomial, {"n": "int", "delta": "int"}),
    "center-of-mass": (center_of_mass, {}),
    "four-mode-binomial": (four_mode_binomial, {"delta": "int"}),
    "chi2-like": (chi2_like, {"delta1": "int", "delta2": "int"}),
    "calabi-yau": (calabi_yau_cubic, {"delta": "int"}),
    "calabi-yau-hypersurface": (calabi_yau_hypersurface, {"n": "int", "delta": "int"}),
}


def make(name, **params):
    key = name.replace("_", "-")
    if key not in REGISTRY:
        raise InvalidInput(f"unknown catalog code {name!r}")
    ctor, schema = REGISTRY[key]
    unknown = set(params) - set(schema)
    if unknown:
        raise InvalidInput(f"{key} does not take parameters {sorted(unknown)}")
    return ctor(**params)


def listing():
    """Every family with its parameter schema and a default instance."""
    out = []
    for key, (ctor, schema) in REGISTRY.items():
        entry = ctor()
        out.append({"family": key, "params_schema": schema, **entry.as_dict()})
    return out


def listing_json(indent=2):
    return json.dumps(listing(), indent=indent, default=_json_default)


def _json_default(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    raise TypeError(f"cannot serialize {type(v)}")
