"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
from fractions import Fraction

import numpy as np

from tiger_codes import catalog, fock, gkz, linalg as la
from tiger_codes.distance import (ErrorClass, classify_error, pure_loss_detection_limit,
                                  x_distance, z_distance, z_distance_qudit)
from tiger_codes.fock import DiagonalPolynomial, FiniteLogicalX
from tiger_codes.homology import logical_structure

ALPHAS = (0.5, 1.0, 1.5)


def _fmt(x):
    return f"{x:.3g}"


# -- 1. distances ------------------------------------------------------------------------

def table_one_entries():
    rows = [(catalog.two_component_cat(), 1, 4.0),
            (catalog.pair_cat(), 2, 4.0),
            (catalog.four_mode_tiger(), 2, 8.0)]
    rows += [(catalog.coherent_repetition(n), 1, 4.0 * n) for n in (3, 5)]
    rows += [(catalog.extended_pair_cat(n), n, 4 * n * math.sin(math.pi / (2 * n)) ** 2)
             for n in range(2, 7)]
    rows += [(catalog.tiger_shor(L, M), M, 4 * M * L * math.sin(math.pi / (2 * M)) ** 2)
             for M, L in ((2, 2), (2, 3), (3, 2))]
    rows += [(catalog.liger(r), 2, 4.0 * r) for r in (3, 5)]
    return rows


def criterion_1():
    bad = []
    for entry, dx, dz in table_one_entries():
        label = f"{entry.name}{entry.params}"
        xd = x_distance(entry.code)
        zd = z_distance(entry.code)
        if xd.d_X != dx:
            bad.append(f"{label}: d_X={xd.d_X} expected {dx}")
        if abs(zd.d_Z - dz) > 1e-8:
            bad.append(f"{label}: d_Z={zd.d_Z!r} expected {dz!r}")
    # the single-mode cat through the explicit qudit route
    cat = catalog.two_component_cat().code
    dz = z_distance_qudit(cat, [1], 2).d_Z
    if abs(dz - 4.0) > 1e-8:
        bad.append(f"two-component cat qudit route: {dz!r}")
    n = len(table_one_entries())
    return not bad, (f"{n} entries, d_X exact, d_Z within 1e-8" if not bad else "; ".join(bad))


# -- 2. logical structure ------------------------------------------------------------------

def criterion_2():
    cases = [(catalog.pair_cat(), [2]),
             (catalog.coherent_repetition(4, "closed"), [0]),
             (catalog.coherent_repetition(5, "open"), [0]),
             (catalog.four_mode_binomial(), [2])]
    cases += [(catalog.multinomial(n), [n]) for n in (2, 3, 4)]
    bad = []
    for entry, orders in cases:
        S = logical_structure(entry.code)
        pairing = la.matmul(S.L_X, np.asarray(S.L_Z, dtype=object).T)
        if list(S.orders) != orders:
            bad.append(f"{entry.name}{entry.params}: {S.describe()}")
        if not np.array_equal(np.asarray(pairing, dtype=object), la.identity(len(orders))):
            bad.append(f"{entry.name}{entry.params}: L_X L_Z^T = {pairing.tolist()}")
        if orders == [0] and fock.free_factor_kind(entry.code, S.L_Z[0]) != "rotor":
            bad.append(f"{entry.name}{entry.params}: free factor is not a rotor")
    return not bad, (f"{len(cases)} codes, orders and exact pairing" if not bad
                     else "; ".join(bad))


# -- 3. GKZ cross-validation --------------------------------------------------------------

def gkz_cases():
    out = []
    for d in (0, 1, 2):
        out.append((catalog.pair_cat(delta=d).code, "pair_cat", {"delta": d}))
    out.append((catalog.extended_pair_cat(3).code, "extended_pair_cat", {}))
    out.append((catalog.four_mode_tiger().code, "four_mode", {"delta": 0}))
    for d in (1, 3, 5):
        out.append((catalog.two_mode_binomial(d).code, "binomial", {"delta": d}))
    out.append((catalog.chi2_like(2, 3).code, "chi2", {"delta1": 2, "delta2": 3}))
    out.append((catalog.liger(3).code, "liger", {"r": 3, "delta": [0, 0, 0]}))
    return out


def criterion_3():
    worst_cf, worst_int, n_int = 0.0, 0.0, 0
    bad = []
    for code, family, params in gkz_cases():
        z = np.array(logical_structure(code).L_Z[0], dtype=float)
        for alpha in ALPHAS:
            for theta in (0.0, math.pi / 2):
                y = alpha ** 2 * np.exp(-1j * theta * z)
                spec = gkz.GkzSpec(code.H, code.delta, y)
                s = gkz.gkz_sum(spec).value
                c = gkz.closed_form(family, y=y, **params)
                err = abs(s - c) / abs(c)
                worst_cf = max(worst_cf, err)
                if err >= 1e-9:
                    bad.append(f"{family} alpha={alpha} theta={theta:.3f}: closed form {_fmt(err)}")
                if code.r_z <= 3:
                    n_int += 1
                    v = gkz.gkz_integral(spec)
                    err = abs(s - v) / abs(s)
                    worst_int = max(worst_int, err)
                    if err >= 1e-8:
                        bad.append(f"{family} alpha={alpha}: integral {_fmt(err)}")
    detail = (f"max rel err closed form {_fmt(worst_cf)}, integral {_fmt(worst_int)}"
              f" ({n_int} integral checks)")
    return not bad, detail if not bad else "; ".join(bad)


# -- 4. dephasing oracle equivalence ------------------------------------------------------

def dephasing_triples():
    """(code, p, q) covering detectable, trivial and logical p - q."""
    pc = catalog.pair_cat().code
    fm = catalog.four_mode_tiger().code
    ep = catalog.extended_pair_cat(3).code
    bi = catalog.two_mode_binomial(3).code
    chi = catalog.chi2_like(2, 3).code
    return [
        (pc, [1, 0], [0, 0]), (pc, [1, 1], [0, 0]), (pc, [2, 2], [0, 0]), (pc, [1, 1], [1, 1]),
        (pc, [2, 1], [1, 0]), (fm, [1, 0, 0, 0], [0, 0, 0, 0]), (fm, [1, 1, 0, 0], [0, 0, 0, 0]),
        (fm, [1, 0, 0, 1], [0, 0, 0, 0]), (fm, [1, 1, 1, 1], [0, 0, 0, 0]),
        (ep, [1, 0, 0], [0, 0, 0]), (ep, [1, 1, 1], [0, 0, 0]), (ep, [2, 2, 2], [0, 0, 0]),
        (bi, [1, 0], [0, 1]), (bi, [2, 0], [0, 2]), (bi, [1, 0], [0, 0]),
        (chi, [1, 1, 0], [0, 0, 1]), (chi, [0, 0, 1], [1, 1, 0]), (chi, [1, 0, 0], [0, 0, 0]),
    ]


def criterion_4():
    alpha = 1.1
    theta = math.pi
    classes = set()
    n, worst, bad = 0, 0.0, []
    for code, p, q in dephasing_triples():
        p, q = np.array(p), np.array(q)
        S = logical_structure(code)
        cut = None if code.finite_support else fock.default_cutoff(code.N, alpha, 1e-16)
        kets = {m: fock.build_x_codeword(code, m, alpha, n_max=cut, structure=S)
                for m in (0.0, theta)}
        classes.add(classify_error(code, p, q))
        for mu, nu in ((0.0, 0.0), (theta, 0.0), (0.0, theta)):
            f = fock.matrix_element(kets[nu], p, q, kets[mu])
            g = gkz.dephasing_via_gkz(code, mu, nu, p, alpha, q=q, structure=S, n_max=cut)
            n += 1
            scale = max(abs(f), abs(g))
            if scale < 1e-12:
                continue
            err = abs(f - g) / scale
            worst = max(worst, err)
            if err >= 1e-8:
                bad.append(f"{code.name} p={p.tolist()} q={q.tolist()} mu={mu} nu={nu}: {_fmt(err)}")
    ok = not bad and n >= 20 and classes == set(ErrorClass)
    detail = f"{n} triples, classes {sorted(c.value for c in classes)}, max rel diff {_fmt(worst)}"
    return ok, detail if not bad else "; ".join(bad)


# -- 5. exact zeros -------------------------------------------------------------------------

def _weight_vectors(n, max_weight):
    from tiger_codes.report import small_loss_vectors
    return small_loss_vectors(n, max_weight)


def four_mode_zero_check(alpha=1.0):
    code = catalog.four_mode_tiger().code
    H = np.array(code.H, dtype=np.int64)
    worst, cache = 0.0, {}
    for p in _weight_vectors(4, 4):
        if (H @ p).any():
            v = gkz.dephasing_via_gkz(code, math.pi, 0.0, p, alpha, method="exact", cache=cache)
            worst = max(worst, abs(v))
    return worst


def binomial_zero_check(deltas=(1, 3, 5), alpha=1.0):
    """Largest |element| over |p| < delta, by the exact GKZ route and the Fock engine."""
    worst_gkz, worst_fock = 0.0, 0.0
    for d in deltas:
        code = catalog.two_mode_binomial(d).code
        plus = fock.build_x_codeword(code, 0.0, alpha)
        minus = fock.build_x_codeword(code, math.pi, alpha)
        for p in _weight_vectors(2, d - 1):
            g = gkz.dephasing_via_gkz(code, math.pi, 0.0, p, alpha, method="exact")
            f = fock.matrix_element(minus, p, p, plus)
            worst_gkz, worst_fock = max(worst_gkz, abs(g)), max(worst_fock, abs(f))
    return worst_gkz, worst_fock


def liger_zero_check(select, alpha=1.0, max_weight=2):
    """Largest |<-|a^+p a^p|+>| over |p| <= max_weight with select(H p).

    The sweep uses the liger closed form; the worst element is re-evaluated
    by the sector sum so the reported value does not rest on one route.
    """
    code = catalog.liger(3).code
    H = np.array(code.H, dtype=np.int64)
    ev = lambda dl, y: gkz.liger_closed_form(y, dl, 3)
    worst, witness, cache = 0.0, None, {}
    for p in _weight_vectors(code.N, max_weight):
        if not select(H @ p):
            continue
        v = abs(gkz.dephasing_via_gkz(code, math.pi, 0.0, p, alpha, evaluator=ev, cache=cache))
        if v >= worst:
            worst, witness = v, p
    by_sum = abs(gkz.dephasing_via_gkz(code, math.pi, 0.0, witness, alpha))
    return max(worst, by_sum), witness


def criterion_5():
    fm = four_mode_zero_check()
    bg, bf = binomial_zero_check()
    lp, lp_w = liger_zero_check(lambda s: bool((s > 0).any()))
    ln, _ = liger_zero_check(lambda s: bool((s < 0).any()))
    parts = {"four-mode": fm < 1e-12, "binomial": bg == 0 and bf < 1e-15,
             "liger positive entry": lp < 1e-12}
    detail = (f"four-mode max {_fmt(fm)}; binomial max gkz {_fmt(bg)} fock {_fmt(bf)}; "
              f"liger r=3 with positive entry in Hp max {_fmt(lp)} at p={lp_w.tolist()} "
              f"(negative-entry companion max {_fmt(ln)})")
    return all(parts.values()), detail


# -- 6. slopes --------------------------------------------------------------------------------

SLOPE_GRID = np.arange(4.0, 13.0)


def slope_cases():
    liger = catalog.liger(3).code
    ev = lambda dl, y: gkz.liger_closed_form(y, dl, 3)
    return [("pair-cat", catalog.pair_cat().code, -4.0, 0.05, {}),
            ("coherent rep N=3", catalog.coherent_repetition(3).code, -12.0, 0.05, {}),
            ("extended pair-cat N=3", catalog.extended_pair_cat(3).code, -3.0, 0.05, {}),
            ("four-mode tiger", catalog.four_mode_tiger().code, -8.0, 0.05, {}),
            ("liger r=3", liger, -18.0, 0.10, {"evaluator": ev})]


def criterion_6():
    out, ok = [], True
    for label, code, target, tol, kw in slope_cases():
        slope, _, _ = gkz.dephasing_slope_fit(code, 0.0, math.pi, np.zeros(code.N, dtype=int),
                                              SLOPE_GRID, **kw)
        good = abs(slope / target - 1) <= tol
        ok &= good
        out.append(f"{label} {slope:.3f}")
    return ok, ", ".join(out)


# -- 7. saddle normalization ----------------------------------------------------------------

SADDLE_GRID = (4.0, 8.0, 16.0)


def stated_liger_normalization(alpha_sq, r):
    const = math.sqrt(4 ** (r + 1) * 5 / (3 ** r * (3 + math.sqrt(5)) ** (2 * r + 2)))
    return math.exp(3 * r * alpha_sq) / (2 * math.pi * alpha_sq) ** (r / 2) * const


def saddle_ratios():
    out = {}
    for label, code in (("pair-cat", catalog.pair_cat().code),
                        ("extended pair-cat N=3", catalog.extended_pair_cat(3).code)):
        out[label] = [gkz.gkz_sum(gkz.GkzSpec(code.H, code.delta, np.full(code.N, a2))).value.real
                      / gkz.saddle_normalization(code.H, code.N, math.sqrt(a2))
                      for a2 in SADDLE_GRID]
    liger = catalog.liger(3).code
    vals = [gkz.liger_closed_form(np.full(9, a2), [0, 0, 0], 3).real for a2 in SADDLE_GRID]
    out["liger r=3 vs stated constant"] = [v / stated_liger_normalization(a2, 3)
                                           for v, a2 in zip(vals, SADDLE_GRID)]
    out["liger r=3 vs generic saddle"] = [v / gkz.saddle_normalization(liger.H, 9, math.sqrt(a2))
                                          for v, a2 in zip(vals, SADDLE_GRID)]
    return out


def criterion_7():
    ratios = saddle_ratios()
    judged = ("pair-cat", "extended pair-cat N=3", "liger r=3 vs stated constant")
    ok = all(abs(ratios[k][-1] - 1) <= 0.10 for k in judged)
    detail = "; ".join(f"{k} ratio at alpha^2={SADDLE_GRID[-1]:g}: {v[-1]:.4f}"
                       for k, v in ratios.items())
    return ok, detail


# -- 8. logical X solve --------------------------------------------------------------------

def _poly(*terms):
    return DiagonalPolynomial([(Fraction(c), e, False) for c, e in terms])


def stated_binomial_x(delta):
    inv = Fraction(1, delta)
    return FiniteLogicalX([
        {"x": (-1, 1), "v": np.array([0, 1]), "w": np.array([1, 0]), "poly": _poly((inv, (0, 0)))},
        {"x": (1, -1), "v": np.array([1, 0]), "w": np.array([0, 1]), "poly": _poly((inv, (0, 0)))},
    ], 0)


def stated_chi2_x(d1, d2):
    """alpha^2 a1+ a2+ a3 + (n2 - d1 - d2) a3+ a1 a2, over alpha d1 d2."""
    inv = Fraction(1, d1 * d2)
    return FiniteLogicalX([
        {"x": (-1, -1, 1), "v": np.array([0, 0, 1]), "w": np.array([1, 1, 0]),
         "poly": _poly((inv, (0, 0, 0)))},
        {"x": (1, 1, -1), "v": np.array([1, 1, 0]), "w": np.array([0, 0, 1]),
         "poly": _poly((inv, (0, 1, 0)), (-(d1 + d2) * inv, (0, 0, 0)))},
    ], 1)


def stated_calabi_yau_x():
    return FiniteLogicalX([
        {"x": (3, -1, -1, -1), "v": np.array([3, 0, 0, 0]), "w": np.array([0, 1, 1, 1]),
         "poly": _poly((Fraction(765, 8), (0, 0, 0, 2)), (Fraction(-1332, 8), (0, 0, 0, 1)),
                       (Fraction(575, 8), (0, 0, 0, 0)))},
        {"x": (-3, 1, 1, 1), "v": np.array([0, 1, 1, 1]), "w": np.array([3, 0, 0, 0]),
         "poly": _poly((Fraction(85, 24), (0, 0, 0, 2)), (Fraction(22, 24), (0, 0, 0, 1)),
                       (Fraction(4, 24), (0, 0, 0, 0)))},
    ], 2)


def action_errors(code, op, alphas=(0.7, 1.3)):
    """max over alpha of |O|+> - |+>| and |O|-> + |->|, and |Z O Z + O| on the sector."""
    S = logical_structure(code)
    worst = 0.0
    for alpha in alphas:
        for mu, sign in ((0.0, 1.0), (math.pi, -1.0)):
            ket = fock.build_x_codeword(code, mu, alpha, structure=S)
            diff = fock.combine([op.apply(ket, alpha), ket], [1.0, -sign]).norm()
            worst = max(worst, diff)
    sector = fock.build_x_codeword(code, 0.0, 1.0, structure=S).sector
    M = op.matrix(sector, 1.0)
    zbar = np.cos(math.pi * (sector.basis @ np.array(S.L_Z[0], dtype=np.int64)))
    anti = np.abs(zbar[:, None] * M * zbar[None, :] + M).max()
    return worst, anti


def logical_x_cases():
    out = [(f"binomial delta={d}", catalog.two_mode_binomial(d).code, stated_binomial_x(d))
           for d in (1, 2, 3, 5)]
    out += [(f"chi2 delta=({a},{b})", catalog.chi2_like(a, b).code, stated_chi2_x(a, b))
            for a, b in ((1, 1), (2, 3))]
    out.append(("calabi-yau delta=3", catalog.calabi_yau_cubic(3).code, stated_calabi_yau_x()))
    return out


def criterion_8():
    bad, notes = [], []
    for label, code, stated in logical_x_cases():
        solved = fock.solve_finite_logical_x(code, degree=2)
        act, anti = action_errors(code, solved)
        if act > 1e-10 or anti > 1e-10:
            bad.append(f"{label}: solved action {_fmt(act)} anticommutator {_fmt(anti)}")
        # the solve reproduces a stated operator only if both have the same action
        s_act, _ = action_errors(code, stated)
        if s_act > 1e-10:
            bad.append(f"{label}: stated operator action error {_fmt(s_act)}")
        notes.append(f"{label} ok")
    if not bad:
        return True, "solved and stated operators act as logical X; " + "; ".join(notes)
    return False, "; ".join(bad)


# -- 9. Calabi-Yau ------------------------------------------------------------------------------

CY_DELTAS = range(3, 13)


def calabi_yau_overlaps():
    gk, fk = [], []
    for d in CY_DELTAS:
        code = catalog.calabi_yau_cubic(d).code
        gk.append(gkz.dephasing_via_gkz(code, math.pi, 0.0, np.zeros(4, dtype=int), 1.0,
                                        method="exact"))
        fk.append(fock.build_x_codeword(code, math.pi, 1.0).inner(
            fock.build_x_codeword(code, 0.0, 1.0)))
    return np.array(gk), np.array(fk)


def criterion_9():
    code = catalog.calabi_yau_cubic(3).code
    xd = x_distance(code)
    t = np.array([-3, 1, 1, 1], dtype=object)
    w = np.asarray(xd.witness, dtype=object)
    in_class = la.in_row_image(code.G, w - t)[0] or la.in_row_image(code.G, w + t)[0]
    loss = pure_loss_detection_limit(code, bound=8)
    gk, fk = calabi_yau_overlaps()
    routes = float(np.abs(gk - fk).max())
    last = abs(gk[-1] / gk[-2])
    # the overlaps oscillate in delta; the envelope of local maxima is reported alongside
    ratio, peaks = gkz.envelope_decay_ratio(list(CY_DELTAS), gk)
    target = math.sqrt(13) / 4
    parts = [xd.d_X == 6 and in_class, loss.capped and loss.t_max == 8 and loss.witness is None,
             routes < 1e-12, abs(last / target - 1) <= 0.15]
    detail = (f"d_X={xd.d_X} witness={w.tolist()}; loss limit {loss.t_max} capped={loss.capped}; "
              f"overlap routes agree to {_fmt(routes)}; last ratio {last:.4f} vs {target:.4f}; "
              f"envelope ratio {ratio:.4f} (peaks {peaks})")
    return all(parts), detail


# -- 10. property suites --------------------------------------------------------------------

def qudit_codes():
    """Catalog codes with a single Z_K factor, K <= 4, and desk-sized Fock cutoffs."""
    out = [(catalog.two_component_cat().code, 10), (catalog.pair_cat().code, 10),
           (catalog.four_mode_tiger().code, 8), (catalog.coherent_repetition(3).code, 8),
           (catalog.extended_pair_cat(3).code, 8), (catalog.tiger_shor(2, 2).code, 6),
           (catalog.liger(3).code, 5), (catalog.tiger_surface_open(3, 2, 3).code, 5),
           (catalog.two_mode_binomial(3).code, None), (catalog.four_mode_binomial().code, None),
           (catalog.chi2_like().code, None), (catalog.calabi_yau_cubic(6).code, None)]
    out += [(catalog.multinomial(n).code, None) for n in (2, 3, 4)]
    return out


def trichotomy_violations(code, rng, n_pairs=1000):
    H = np.array(code.H, dtype=np.int64).reshape(code.r_z, code.N)
    bad = 0
    for _ in range(n_pairs):
        p = rng.integers(0, 4, code.N)
        q = rng.integers(0, 4, code.N)
        d = p - q
        detectable = bool((H @ d).any())
        trivial = not detectable and la.in_row_image(code.G, d)[0]
        logical = not detectable and not trivial
        flags = [detectable, trivial, logical]
        cls = classify_error(code, p, q)
        expected = [ErrorClass.DETECTABLE, ErrorClass.TRIVIAL, ErrorClass.LOGICAL][flags.index(True)]
        if sum(flags) != 1 or cls is not expected:
            bad += 1
    return bad


def syndrome_shift_violations(code, n_max, rng, n_ops=20):
    H = np.array(code.H, dtype=np.int64).reshape(code.r_z, code.N)
    alpha = 0.6
    state = fock.build_x_codeword(code, 0.0, alpha, n_max=n_max)
    bad = 0
    for _ in range(n_ops):
        p = rng.integers(0, 3, code.N)
        q = rng.integers(0, 3, code.N)
        out = fock.apply_loss_gain(state, p, q)
        target = np.array(code.delta, dtype=np.int64) - H @ (p - q)
        if out.sector.dim and not np.all(out.sector.basis @ H.T == target):
            bad += 1
        if list(out.sector.delta) != target.tolist():
            bad += 1
    return bad


def gate_phase_errors(code, n_max, alpha=0.6):
    """Orthonormality and phase/SUM gate phase errors on the Z basis."""
    S = logical_structure(code)
    K = S.orders[0]
    z = np.array(S.L_Z[0], dtype=np.int64)
    kets = [fock.build_z_codeword(code, ell, alpha, n_max=n_max, structure=S) for ell in range(K)]
    gram = np.array([[a.inner(b) for b in kets] for a in kets])
    off = gram - np.diag(np.diag(gram))
    ortho_exact = bool(np.all(off == 0))
    norm_err = float(np.abs(np.diag(gram) - 1).max())
    phase_err = 0.0
    for ell, ket in enumerate(kets):
        out = fock.apply_diagonal_gate(ket, fock.phase_gate(z, K))
        want = np.exp(2j * math.pi * ell ** 2 / K) * ket.amplitudes
        phase_err = max(phase_err, float(np.abs(out.amplitudes - want).max()))
    small = [fock.build_z_codeword(code, ell, alpha, n_max=min(n_max or 99, 4) if n_max else None,
                                   structure=S) for ell in range(K)]
    for l1, a in enumerate(small):
        for l2, b in enumerate(small):
            pair = fock.tensor_product(a, b)
            out = fock.apply_diagonal_gate(pair, fock.sum_gate(z, z, K, code.N))
            want = np.exp(2j * math.pi * l1 * l2 / K) * pair.amplitudes
            phase_err = max(phase_err, float(np.abs(out.amplitudes - want).max()))
    return ortho_exact, norm_err, phase_err


def criterion_10(seed=2024):
    rng = np.random.default_rng(seed)
    bad = []
    names = [e.name for e in (catalog.make(k) for k in catalog.REGISTRY)]
    for key in catalog.REGISTRY:
        code = catalog.make(key).code
        v = trichotomy_violations(code, rng)
        if v:
            bad.append(f"{key}: {v} classification violations")
    ops = 0
    for code, n_max in qudit_codes():
        v = syndrome_shift_violations(code, n_max, rng)
        ops += 20
        if v:
            bad.append(f"{code.name}: {v} syndrome-shift violations")
        exact, norm_err, phase_err = gate_phase_errors(code, n_max)
        if not exact or norm_err > 1e-14 or phase_err > 1e-12:
            bad.append(f"{code.name}: orthogonality {exact} norm {_fmt(norm_err)} "
                       f"phase {_fmt(phase_err)}")
    detail = (f"{len(names)} catalog families x 1000 pairs; {ops} applied operators; "
              f"{len(qudit_codes())} qudit codes with exact Z-basis orthogonality and gate phases")
    return not bad, detail if not bad else "; ".join(bad)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


def _run(acceptance, k):
    ok, detail = CRITERIA[k]()
    assert acceptance(k, ok, detail), detail


def test_criterion_01_distances(acceptance):
    _run(acceptance, 1)


def test_criterion_02_logical_structure(acceptance):
    _run(acceptance, 2)


def test_criterion_03_gkz_cross_validation(acceptance):
    _run(acceptance, 3)


def test_criterion_04_dephasing_oracles(acceptance):
    _run(acceptance, 4)


def test_criterion_05_exact_zeros(acceptance):
    _run(acceptance, 5)


def test_criterion_06_slopes(acceptance):
    _run(acceptance, 6)


def test_criterion_07_saddle_normalization(acceptance):
    _run(acceptance, 7)


def test_criterion_08_logical_x(acceptance):
    _run(acceptance, 8)


def test_criterion_09_calabi_yau(acceptance):
    _run(acceptance, 9)


def test_criterion_10_properties(acceptance):
    _run(acceptance, 10)


if __name__ == "__main__":
    for k, check in CRITERIA.items():
        ok, detail = check()
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
