"""Full analysis pipeline producing a JSON-ready report for one code."""

import math
import time
from itertools import combinations_with_replacement

import numpy as np

from . import fock, gkz
from .distance import (classify_error, pure_loss_detection_limit, split_signed, x_distance,
                       z_distance)
from .errors import PreconditionError
from .homology import logical_structure

DEPHASING_RTOL = 1e-8
DEPHASING_FLOOR = 1e-12
ZERO_TOL = 1e-12


def small_loss_vectors(n, max_weight):
    """All non-negative p with |p|_1 <= max_weight, by weight then lexicographically."""
    out = [np.zeros(n, dtype=np.int64)]
    for w in range(1, max_weight + 1):
        block = []
        for idx in combinations_with_replacement(range(n), w):
            v = np.zeros(n, dtype=np.int64)
            for j in idx:
                v[j] += 1
            block.append(v)
        block.sort(key=lambda v: tuple(-v))
        out.extend(block)
    return out


def _probe_angle(structure):
    K = structure.orders[0]
    return 2 * math.pi / K if K else math.pi / 2


def dephasing_table(code, structure, alpha, n_max, p_list):
    """Fock-engine and GKZ values of <nu| a^{dagger p} a^p |mu> side by side."""
    theta = _probe_angle(structure)
    pairs = [(0.0, 0.0), (theta, 0.0), (0.0, theta)]
    kets = {m: fock.build_x_codeword(code, m, alpha, n_max=n_max, structure=structure)
            for m in (0.0, theta)}
    cache = {}
    rows = []
    for p in p_list:
        cls = classify_error(code, p, np.zeros_like(p)).value
        for mu, nu in pairs:
            f = fock.matrix_element(kets[nu], p, p, kets[mu])
            g = gkz.dephasing_via_gkz(code, mu, nu, p, alpha, structure=structure,
                                      n_max=n_max, cache=cache)
            rows.append({"p": p.tolist(), "class": cls, "mu": mu, "nu": nu,
                         "fock": f, "gkz": g, "abs_difference": abs(f - g)})
    tail = kets[0.0].tail
    return rows, tail


def check_zero_claims(code, structure, alpha, n_max, flags, max_weight=2):
    """Evaluate the catalog's exact-zero claims on all p with |p|_1 <= max_weight."""
    out = []
    H = np.array(code.H, dtype=np.int64).reshape(code.r_z, code.N)
    theta = _probe_angle(structure)
    cache = {}
    for flag in flags:
        if "detectable" in flag:
            weight = max(max_weight, 4)
            select = lambda p: bool((H @ p).any())
        elif "positive entry" in flag:
            weight = max_weight
            select = lambda p: bool((H @ p > 0).any())
        elif "|p| < delta" in flag:
            weight = max(0, code.delta[0] - 1)
            select = lambda p: int(p.sum()) < code.delta[0]
        else:
            continue
        worst, witness, n_checked = 0.0, None, 0
        for p in small_loss_vectors(code.N, weight):
            if not select(p):
                continue
            n_checked += 1
            v = abs(gkz.dephasing_via_gkz(code, theta, 0.0, p, alpha, structure=structure,
                                          n_max=n_max, cache=cache))
            if v > worst:
                worst, witness = v, p.tolist()
        out.append({"claim": flag, "holds": worst < ZERO_TOL, "max_abs": worst,
                    "worst_p": witness, "checked": n_checked, "max_weight": weight,
                    "tolerance": ZERO_TOL})
    return out


def build_report(code, alpha=1.0, cutoff=None, bound=None, expected=None, grid_override=False,
                 max_p=12):
    t0 = time.perf_counter()
    structure = logical_structure(code)
    if cutoff is None:
        cutoff = (fock.natural_cutoff(code.H, code.delta) if code.finite_support
                  else fock.default_cutoff(code.N, alpha, 1e-10))
    xd = x_distance(code, bound, structure)
    loss = pure_loss_detection_limit(code, xd.bound)
    notes = []
    try:
        zd = z_distance(code, structure, override=grid_override)
    except PreconditionError as exc:
        zd = None
        notes.append(f"z distance skipped: {exc}")

    rows, fock_tail = [], 0.0
    if structure.n_factors:
        plist = [np.zeros(code.N, dtype=np.int64)]
        plist += [np.eye(code.N, dtype=np.int64)[j] for j in range(code.N)]
        if xd.witness is not None:
            plist.append(split_signed(xd.witness)[0])
        seen, uniq = set(), []
        for p in plist:
            if tuple(p) not in seen:
                seen.add(tuple(p))
                uniq.append(p)
        rows, fock_tail = dephasing_table(code, structure, alpha, cutoff, uniq[:max_p])
    else:
        notes.append("no logical factors: dephasing table omitted")

    norm = gkz.gkz_sum(gkz.GkzSpec(code.H, code.delta, np.full(code.N, alpha ** 2)), cutoff)
    try:
        if any(code.delta):
            raise PreconditionError("saddle form applies to delta = 0")
        saddle = gkz.saddle_normalization(code.H, code.N, alpha)
        ratio = norm.value.real / saddle
    except PreconditionError as exc:
        saddle, ratio = None, None
        notes.append(f"saddle comparison skipped: {exc}")

    flags = []
    if expected and expected.get("flags") and structure.n_factors:
        flags = check_zero_claims(code, structure, alpha, cutoff, expected["flags"])

    report = {
        "code": {"G": code.G.tolist(), "H": code.H.tolist(), "delta": list(code.delta),
                 "n_modes": code.N, "name": code.name},
        "css_ok": True,
        "support": code.support_class,
        "logical": {"description": structure.describe(), "orders": list(structure.orders),
                    "L_X": np.asarray(structure.L_X).tolist(),
                    "L_Z": np.asarray(structure.L_Z).tolist(),
                    "kinds": list(structure.factor_kinds)},
        "x_distance": xd.as_dict(),
        "pure_loss": {"t_max": loss.t_max, "capped": loss.capped, "bound": xd.bound,
                      "witness": None if loss.witness is None else loss.witness.tolist()},
        "z_distance": None if zd is None else {**zd.as_dict(), "tolerance": 1e-10},
        "dephasing": {"alpha": alpha, "rows": rows,
                      "tolerance": {"rtol": DEPHASING_RTOL, "floor": DEPHASING_FLOOR}},
        "normalization": {"gkz": norm.value.real, "tail": norm.tail, "saddle": saddle,
                          "ratio": ratio},
        "flags": flags,
        "meta": {"runtime_s": time.perf_counter() - t0, "cutoff": cutoff,
                 "fock_tail": fock_tail, "notes": notes},
    }
    if expected is not None:
        report["expected"] = expected
    return report
