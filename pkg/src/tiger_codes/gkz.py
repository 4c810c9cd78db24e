"""GKZ hypergeometric functions A_delta(y) = sum_{H n = delta} y^n / n!.

Three independent evaluations are provided: the constrained sum over an
enumerated sector, trapezoidal quadrature of the torus integral, and
family-specific closed forms built on convergent series. Dephasing matrix
elements of codewords are ratios of these functions.
"""

import math
from dataclasses import dataclass, field
from itertools import product

import mpmath
import numpy as np
from scipy.special import gammaln

from . import linalg as la
from .errors import InadmissibleDelta, InvalidInput, PreconditionError
from .fock import default_cutoff, enumerate_sector, log_tail_weight, natural_cutoff
from .homology import logical_structure

# automatic cutoffs on infinite sectors: tail bound below this fraction of the value
REFINE_RTOL = 1e-10
REFINE_CAP = 400


@dataclass
class GkzSpec:
    H: np.ndarray
    delta: tuple
    y: np.ndarray

    def __post_init__(self):
        self.H = np.asarray(self.H, dtype=object)
        if self.H.ndim != 2:
            raise InvalidInput("H must be a matrix")
        self.delta = tuple(int(d) for d in self.delta)
        self.y = np.asarray(self.y, dtype=complex)
        if len(self.delta) != self.H.shape[0]:
            raise InvalidInput("delta length must equal the number of H rows")
        if self.y.shape != (self.H.shape[1],):
            raise InvalidInput("y length must equal the number of H columns")

    @property
    def N(self):
        return self.H.shape[1]

    @property
    def r_z(self):
        return self.H.shape[0]


@dataclass
class GkzValue:
    """A GKZ evaluation with its error bookkeeping.

    ``tail`` bounds the omitted terms (absolute); ``cancellation`` is set when
    the result is below 1e-10 of the largest term.
    """

    value: complex
    tail: float = 0.0
    n_terms: int = 0
    max_term: float = 0.0
    cancellation: bool = False
    abs_sum: float = 0.0
    precision: str = "double"
    meta: dict = field(default_factory=dict)

    def __complex__(self):
        return complex(self.value)


def _finite(H, delta):
    return natural_cutoff(H, delta) is not None


def gkz_cutoff(spec, tol=1e-18):
    """Default total-occupation cutoff for the sum form."""
    if _finite(spec.H, spec.delta):
        return natural_cutoff(spec.H, spec.delta)
    lam = float(np.sum(np.abs(spec.y)))
    return default_cutoff(1, math.sqrt(lam), tol) if lam > 0 else 0


def _log_terms(basis, y):
    """log|y^n/n!| and arg(y^n) for each row; -inf where a zero base meets n>0."""
    absy = np.abs(y)
    with np.errstate(divide="ignore"):
        logy = np.log(absy)
    logt = -gammaln(basis + 1.0).sum(axis=1)
    zero = absy == 0
    if zero.any():
        dead = (basis[:, zero] > 0).any(axis=1)
        logt = np.where(dead, -np.inf, logt)
        logy = np.where(zero, 0.0, logy)
    logt = logt + basis @ logy
    phase = basis @ np.angle(y)
    return logt, phase


def gkz_sum(spec, n_max=None):
    """Sum of y^n/n! over the sector in double precision (exactly rounded sum)."""
    if n_max is None:
        n_max = gkz_cutoff(spec)
    sector = enumerate_sector(spec.H, spec.delta, n_max)
    finite = _finite(spec.H, spec.delta)
    tail = 0.0
    if not finite:
        lam = float(np.sum(np.abs(spec.y)))
        tail = float(np.exp(log_tail_weight(1, math.sqrt(lam), n_max))) if lam > 0 else 0.0
    if sector.dim == 0:
        return GkzValue(0j, tail, 0, 0.0, False, meta={"n_max": n_max})
    logt, phase = _log_terms(sector.basis, spec.y)
    mag = np.exp(logt)
    re = math.fsum(mag * np.cos(phase))
    im = math.fsum(mag * np.sin(phase))
    val = complex(re, im)
    big = float(mag.max())
    flag = abs(val) < 1e-10 * big
    return GkzValue(val, tail, sector.dim, big, flag, abs_sum=math.fsum(mag),
                    meta={"n_max": n_max})


def gkz_sum_mp(spec, n_max=None, dps=50):
    """Same sum evaluated term by term in mpmath at ``dps`` digits."""
    if n_max is None:
        n_max = gkz_cutoff(spec)
    sector = enumerate_sector(spec.H, spec.delta, n_max)
    with mpmath.workdps(dps):
        tables = []
        for j in range(spec.N):
            yj = mpmath.mpc(spec.y[j].real, spec.y[j].imag)
            top = int(sector.basis[:, j].max()) if sector.dim else 0
            col = [mpmath.mpf(1)]
            for k in range(1, top + 1):
                col.append(col[-1] * yj / k)
            tables.append(col)
        total = mpmath.mpc(0)
        for row in sector.basis.tolist():
            t = mpmath.mpf(1)
            for j, nj in enumerate(row):
                t = t * tables[j][nj]
            total += t
        return complex(total)


def gkz_integral(spec, M=64, max_rz=3, override=False):
    """Trapezoidal rule on the torus for the integral form."""
    if M < 4:
        raise InvalidInput("need at least 4 grid points per dimension")
    r = spec.r_z
    if r > max_rz and not override:
        raise PreconditionError(f"torus quadrature refused for r_z = {r} > {max_rz}")
    if r == 0:
        return complex(np.exp(np.sum(spec.y)))
    Hf = np.array(spec.H, dtype=float)
    grid = 2 * np.pi * np.arange(M) / M
    total = 0j
    # loop over the leading dimensions, vectorize the last one
    for head in product(grid, repeat=r - 1):
        phi = np.zeros((M, r))
        phi[:, :r - 1] = head
        phi[:, r - 1] = grid
        theta = phi @ Hf
        expo = np.exp(1j * theta) @ spec.y - 1j * phi @ np.array(spec.delta, dtype=float)
        total += np.sum(np.exp(expo))
    return complex(total / M ** r)


def gkz_kernel_form(spec, shift, coeff_bound=40):
    """Kernel-shifted form: sum over n in ker H of y^{n+s}/(n+s)!, with H s = delta."""
    s = np.array([int(v) for v in shift], dtype=np.int64)
    if any(v < 0 for v in s):
        raise InvalidInput("shift vector must be non-negative")
    if spec.r_z and any(la.matmul(spec.H, la.int_vector(s)) - np.array(spec.delta, dtype=object)):
        raise InvalidInput("shift vector does not satisfy H s = delta")
    K = np.array(la.integer_kernel_basis(spec.H, cols=spec.N), dtype=np.int64)
    rng = range(-coeff_bound, coeff_bound + 1)
    coeffs = np.array(list(product(rng, repeat=K.shape[0])), dtype=np.int64)
    pts = coeffs @ K + s
    pts = pts[(pts >= 0).all(axis=1)]
    logt, phase = _log_terms(pts, spec.y)
    mag = np.exp(logt)
    return complex(math.fsum(mag * np.cos(phase)), math.fsum(mag * np.sin(phase)))


# -- exact graded counts ----------------------------------------------------------

class GradedCounts:
    """Exact integers M[k][v] = sum over sector states with |n| = k and z.n = v of k!/n!.

    For arguments on the circle y = a^2 e^{-i theta z} the GKZ function is
    sum_k a^{2k}/k! sum_v M[k][v] e^{-i theta v}, so the only source of error
    left is the final high-precision evaluation.
    """

    def __init__(self, H, delta, z, n_max):
        sector = enumerate_sector(H, delta, n_max)
        self.n_max = n_max
        self.dim = sector.dim
        z = np.zeros(sector.N, dtype=np.int64) if z is None else np.asarray(z, dtype=np.int64)
        top = int(sector.basis.sum(axis=1).max()) if sector.dim else 0
        fact = [1]
        for k in range(1, max(top, 1) + 1):
            fact.append(fact[-1] * k)
        counts = {}
        tot = sector.basis.sum(axis=1).tolist()
        zn = (sector.basis @ z).tolist()
        for row, k, v in zip(sector.basis.tolist(), tot, zn):
            den = 1
            for nj in row:
                den *= fact[nj]
            key = (k, v)
            counts[key] = counts.get(key, 0) + fact[k] // den
        self.counts = counts
        self.fact = fact

    def evaluate(self, alpha_sq, theta=0.0, dps=None):
        """Value at y = alpha_sq * e^{-i theta z}; precision adapts to cancellation."""
        if not self.counts:
            return 0j
        if dps is None:
            # digits needed: magnitude of the positive sum plus a safety margin
            a2 = mpmath.mpf(alpha_sq)
            positive = sum(mpmath.mpf(c) * a2 ** k / self.fact[k]
                           for (k, _), c in self.counts.items())
            dps = int(30 + max(0.0, float(mpmath.log10(positive))))
        with mpmath.workdps(dps):
            a2 = mpmath.mpf(alpha_sq)
            th = mpmath.mpf(theta)
            total = mpmath.mpc(0)
            for (k, v), c in self.counts.items():
                total += c * a2 ** k / self.fact[k] * mpmath.expj(-th * v)
            return complex(total)


# -- closed forms ----------------------------------------------------------------------

def hyp0f(bs, u, rtol=1e-17, max_terms=100000):
    """sum_k u^k / (k! prod_i (b_i)_k) by direct series with term-ratio stopping."""
    u = complex(u)
    term = 1 + 0j
    re, im = [1.0], [0.0]
    k = 0
    peak = 1.0
    while k < max_terms:
        den = (k + 1)
        for b in bs:
            den *= (b + k)
        term = term * u / den
        k += 1
        re.append(term.real)
        im.append(term.imag)
        a = abs(term)
        peak = max(peak, a)
        if a <= rtol * peak and abs(u) < k + 1:
            break
    return complex(math.fsum(re), math.fsum(im))


def bessel_i(nu, x):
    """Modified Bessel function I_nu(x) for integer nu >= 0 via its power series."""
    nu = abs(int(nu))
    x = complex(x)
    return (x / 2) ** nu / math.factorial(nu) * hyp0f([nu + 1], x * x / 4)


def _pair_form(y1, y2, delta):
    """sum_{n1 - n2 = delta} y1^n1 y2^n2 / (n1! n2!), i.e. (y1/y2)^{delta/2} I_delta(2 sqrt(y1 y2))."""
    if delta < 0:
        y1, y2, delta = y2, y1, -delta
    return complex(y1) ** delta / math.factorial(delta) * hyp0f([delta + 1], complex(y1) * complex(y2))


def laguerre(n, a, x):
    """Generalized Laguerre polynomial L_n^{(a)}(x) by its finite series."""
    x = complex(x)
    return complex(sum((-1) ** m * math.comb(n + a, n - m) * x ** m / math.factorial(m)
                       for m in range(n + 1)))


def liger_closed_form(y, delta, r, u_max=None):
    """Liger GKZ function reduced to a sum over the r right-block occupations.

    Mode layout: y[0:r] and y[r:2r] are the two left columns, y[2r:3r] the
    right block. Each constraint row i reads
    n_i + n_{r+i} - (u_i + u_{i-1}) = delta_i (indices mod r), so the left pair
    collapses to (y_i + y_{r+i})^{s_i}/s_i! with s_i = u_i + u_{i-1} + delta_i.
    """
    y = np.asarray(y, dtype=complex)
    delta = np.asarray(delta, dtype=np.int64)
    left = y[:r] + y[r:2 * r]
    right = y[2 * r:]
    if u_max is None:
        u_max = 100000
    from .fock import _bounded_table
    total_re, total_im = [], []
    peak, prev = -np.inf, -np.inf
    # accumulate shell by shell in |u| until the shells are negligible and shrinking
    for k in range(u_max + 1):
        head = _bounded_table(r - 1, k)
        U = np.hstack([head, (k - head.sum(axis=1))[:, None]])
        s = U + np.roll(U, 1, axis=1) + delta
        ok = (s >= 0).all(axis=1)
        U, s = U[ok], s[ok]
        if len(U) == 0:
            if peak > -np.inf:
                break
            continue
        logt, phase = _log_terms(U, right)
        l2, p2 = _log_terms(s, left)
        logs = logt + l2
        top = float(logs.max())
        if top == -np.inf and peak > -np.inf:
            break
        peak = max(peak, top)
        mag = np.exp(logs)
        total_re.append(mag * np.cos(phase + p2))
        total_im.append(mag * np.sin(phase + p2))
        if top < peak - 42.0 and top < prev:
            break
        prev = top
    if not total_re:
        return 0j
    return complex(math.fsum(np.concatenate(total_re)), math.fsum(np.concatenate(total_im)))


def closed_form(family, **params):
    """Reference values for the catalog families.

    families: ``bessel_i`` (nu, x), ``pair_cat`` (y, delta),
    ``extended_pair_cat`` (y), ``four_mode`` (y, delta), ``binomial`` (y, delta),
    ``chi2`` (y, delta1, delta2), ``laguerre`` (n, a, x), ``liger`` (y, delta, r),
    ``exponential`` (y).
    """
    if family == "bessel_i":
        return bessel_i(params["nu"], params["x"])
    if family == "laguerre":
        return laguerre(params["n"], params["a"], params["x"])
    y = np.asarray(params.get("y", []), dtype=complex)
    if family == "pair_cat":
        return _pair_form(y[0], y[1], int(params.get("delta", 0)))
    if family == "four_mode":
        return _pair_form(y[0] + y[3], y[1] + y[2], int(params.get("delta", 0)))
    if family == "extended_pair_cat":
        if any(int(d) for d in params.get("delta", [])):
            raise InvalidInput("extended pair-cat closed form is for delta = 0")
        return hyp0f([1] * (len(y) - 1), complex(np.prod(y)))
    if family == "binomial":
        d = int(params["delta"])
        if d < 0:
            return 0j
        return complex(y[0] + y[1]) ** d / math.factorial(d)
    if family == "chi2":
        d1, d2 = int(params["delta1"]), int(params["delta2"])
        if not 0 <= d1 <= d2:
            raise InvalidInput("chi2 closed form needs 0 <= delta1 <= delta2")
        y1, y2, y3 = y
        return (y1 ** d2 * (y3 / y1) ** d1 / math.factorial(d2)
                * laguerre(d1, d2 - d1, -y1 * y2 / y3))
    if family == "liger":
        return liger_closed_form(y, params.get("delta", [0] * int(params["r"])), int(params["r"]))
    if family == "exponential":
        return complex(np.exp(np.sum(y)))
    raise InvalidInput(f"unsupported closed-form family {family!r}")


# -- dephasing ---------------------------------------------------------------------------

def _z_row(code, structure, factor, z):
    if z is not None:
        return np.asarray(z, dtype=np.int64)
    if structure is None:
        structure = logical_structure(code)
    return np.array(structure.L_Z[factor], dtype=np.int64)


def dephasing_via_gkz(code, mu, nu, p, alpha, q=None, structure=None, factor=0, z=None,
                      n_max=None, method="auto", evaluator=None, cache=None):
    """<nu| a^{dagger q} a^p |mu> for X-basis codewords, as a ratio of GKZ functions.

    With codewords (alpha e^{-i mu z})^n / sqrt(n!) the element equals
    alpha^{|p|+|q|} e^{i(nu z.q - mu z.p)} A_{delta-Hp}(alpha^2 e^{-i(mu-nu) z}) / A_delta(alpha^2 1)
    when H(p - q) = 0, and zero otherwise. ``q`` defaults to ``p``.

    ``method``: "sum" (double precision), "exact" (graded integer counts in
    mpmath), "auto" (double, switching to exact when rounding could leave an
    absolute error above 1e-14 on the element), or "relative" (switching when
    the estimated relative error exceeds 1e-12, so tiny elements stay accurate).
    ``evaluator(delta, y)`` replaces the sum by a closed form. ``cache`` is an
    optional dict reused across calls; GKZ values depend on p only through Hp.
    """
    p = np.asarray(p, dtype=np.int64)
    q = p if q is None else np.asarray(q, dtype=np.int64)
    zr = _z_row(code, structure, factor, z)
    delta = np.array(code.delta, dtype=np.int64)
    H = np.array(code.H, dtype=np.int64).reshape(code.r_z, code.N)
    if code.r_z and np.any(H @ (p - q)):
        return 0j
    shifted = tuple(int(v) for v in (delta - H @ p)) if code.r_z else ()
    theta = mu - nu
    pref = alpha ** (int(p.sum()) + int(q.sum())) * np.exp(1j * (nu * (zr @ q) - mu * (zr @ p)))
    if cache is None:
        cache = {}
    # an automatic cutoff on an infinite sector grows until the tail bound is
    # small next to the value itself, not just next to the normalization
    refine = n_max is None and evaluator is None and not code.finite_support
    if n_max is None and evaluator is None:
        n_max = (natural_cutoff(code.H, code.delta) if code.finite_support
                 else default_cutoff(code.N, alpha, 1e-18))

    def counts(dl, n):
        key = ("counts", dl, tuple(zr.tolist()), n)
        if key not in cache:
            cache[key] = GradedCounts(code.H, dl, zr, n)
        return cache[key]

    def evaluate(dl, th, n):
        y = alpha ** 2 * np.exp(-1j * th * zr)
        res = gkz_sum(GkzSpec(code.H, dl, y), n)
        v = res.value
        if th != 0 and method != "sum":
            # rounding in the double sum is about 1e-15 of the absolute sum
            rough = 1e-15 * res.abs_sum
            if (method == "exact"
                    or (method == "relative" and rough > 1e-12 * abs(v))
                    or (method == "auto" and rough > 1e-14 * abs(den))):
                v = counts(dl, n).evaluate(alpha ** 2, th)
        return v, res.tail

    def value(dl, th):
        key = (dl, float(th), float(alpha), tuple(zr.tolist()), n_max, method, evaluator)
        if key in cache:
            return cache[key]
        if evaluator is not None:
            v = complex(evaluator(dl, alpha ** 2 * np.exp(-1j * th * zr)))
        else:
            n = n_max
            v, tail = evaluate(dl, th, n)
            while refine and tail > REFINE_RTOL * abs(v) and n < REFINE_CAP:
                n = min(REFINE_CAP, int(1.25 * n) + 10)
                v, tail = evaluate(dl, th, n)
        cache[key] = v
        return v

    den = 0.0
    den = value(tuple(code.delta), 0.0)
    if den == 0:
        raise InadmissibleDelta("codeword normalization vanishes (empty sector)")
    num = value(shifted, theta)
    return complex(pref * num / den)


def saddle_normalization(H, N, alpha, log=False):
    """Leading large-alpha form of A_0(alpha^2 1).

    exp(N alpha^2) / (2 pi alpha^2)^{r_z/2} * det(H H^T)^{-1/2}; requires the
    all-ones vector in ker H and H of full row rank.
    """
    H = np.asarray(H, dtype=object)
    r = H.shape[0]
    if r and any(la.matmul(H, la.int_vector([1] * N))):
        raise PreconditionError("all-ones vector is not in ker H")
    if r and la.rank(H) < r:
        raise PreconditionError("H has redundant rows; det(H H^T) vanishes")
    det = la.integer_det(la.matmul(H, H.T)) if r else 1
    val = N * alpha ** 2 - 0.5 * r * math.log(2 * math.pi * alpha ** 2) - 0.5 * math.log(det)
    return val if log else math.exp(val)


def log_abs_sq(values):
    return np.log(np.abs(np.asarray(values, dtype=complex)) ** 2)


def dephasing_slope_fit(code, mu, nu, p, alpha_sq, **kw):
    """Least-squares slope of log|element|^2 against alpha^2.

    Returns (slope, intercept, table) where table rows are (alpha^2, log|element|^2).
    """
    grid = np.asarray(alpha_sq, dtype=float)
    if grid.size < 4:
        raise PreconditionError("slope fit needs at least 4 grid points")
    if np.any(np.diff(grid) <= 0):
        raise PreconditionError("alpha^2 grid must be strictly increasing")
    kw.setdefault("method", "relative")
    vals = np.array([dephasing_via_gkz(code, mu, nu, p, math.sqrt(a2), **kw) for a2 in grid])
    mag2 = np.abs(vals) ** 2
    if np.any(mag2 < 1e-300):
        raise PreconditionError("dephasing elements underflow on this grid")
    logs = np.log(mag2)
    slope, icept = np.polyfit(grid, logs, 1)
    return float(slope), float(icept), np.column_stack([grid, logs])


def envelope_decay_ratio(deltas, values):
    """Per-step decay ratio between the last two interior local maxima of |values|.

    Oscillating overlaps decay along their envelope; the ratio
    (|v_b| / |v_a|)^{1/(b - a)} over the last two peaks estimates the base of
    the geometric decay. Returns (ratio, (a, b)).
    """
    d = [int(x) for x in deltas]
    v = np.abs(np.asarray(values, dtype=complex))
    if any(b - a != 1 for a, b in zip(d, d[1:])):
        raise InvalidInput("deltas must be consecutive integers")
    peaks = [i for i in range(1, len(v) - 1) if v[i] >= v[i - 1] and v[i] >= v[i + 1]]
    if len(peaks) < 2:
        raise PreconditionError("need two interior local maxima to estimate a decay ratio")
    i, j = peaks[-2], peaks[-1]
    return float((v[j] / v[i]) ** (1.0 / (j - i))), (d[i], d[j])
