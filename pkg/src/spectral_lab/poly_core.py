"""Monic polynomials, certified real-rootedness, and the sorted root map.

Coefficient arrays are ascending: ``coeffs[k]`` multiplies ``x**k``.  All
values are immutable after construction and every operation is a pure
function, so everything here is safe to call concurrently.

Real roots are certified by Sturm counts on the square-free chain of the
input: the count is exact for the given float coefficients, with isolation
by bisection and a safeguarded Newton polish.  When a floating-point Sturm
sign falls inside its rounding band the evaluation falls back to exact
rational arithmetic over the (exactly representable) float coefficients.
Complex roots use simultaneous Aberth iteration from a deterministic
perturbed-circle start.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    ArgumentError,
    CertificationAmbiguous,
    DegreeError,
    RootFindingFailed,
)

DEFAULT_RECON_TOL = 1e-8     # root-product reconstruction, relative
DEFAULT_ROOT_TOL = 1e-12     # residual target for polished roots
DEFAULT_GCD_TOL = 1e-9       # degree decisions in the square-free chain
DEFAULT_EQ_TOL = 1e-9        # multiset equality of root tuples
DEFAULT_MATCH_TOL = 1e-6     # cross-level matching of repeated roots
DEFAULT_CLUSTER_TOL = 1e-6   # complex root clustering (user overridable)

_EPS = np.finfo(float).eps


# ---------------------------------------------------------------------------
# coefficient helpers (ascending order)
# ---------------------------------------------------------------------------

def poly_eval(coeffs, x):
    """Horner evaluation; works for scalars and arrays, real or complex."""
    c = np.asarray(coeffs)
    r = np.zeros_like(np.asarray(x, dtype=np.result_type(c.dtype, np.asarray(x).dtype)))
    for k in c[::-1]:
        r = r * x + k
    return r


def poly_der(coeffs):
    c = np.asarray(coeffs)
    if c.size <= 1:
        return np.zeros(1, dtype=c.dtype)
    return c[1:] * np.arange(1, c.size, dtype=float)


def poly_sub(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=np.result_type(a.dtype, b.dtype))
    out[: a.size] += a
    out[: b.size] -= b
    return out


def poly_add(a, b):
    return poly_sub(a, -np.asarray(b))


@lru_cache(maxsize=None)
def _binom_matrix(n: int) -> np.ndarray:
    m = np.zeros((n + 1, n + 1))
    for j in range(n + 1):
        for k in range(j + 1):
            m[k, j] = math.comb(j, k)
    return m


def taylor_shift_coeffs(coeffs, t):
    """Coefficients of x -> P(x + t); the leading entry is untouched."""
    c = np.asarray(coeffs)
    n = c.size - 1
    if t == 0 or n < 1:
        return c.copy()
    dtype = np.result_type(c.dtype, np.asarray(t).dtype)
    b = _binom_matrix(n)
    expo = np.arange(n + 1)[None, :] - np.arange(n + 1)[:, None]
    tmat = np.where(expo >= 0, np.asarray(t, dtype=dtype) ** np.maximum(expo, 0), 0)
    return (b * tmat) @ c.astype(dtype)


def apply_unit_factor(coeffs, alpha):
    """Apply the operator (1 - alpha*D) e^{alpha*D}: P -> Q - alpha*Q' with
    Q(x) = P(x + alpha).  Preserves degree and the leading coefficient."""
    s = taylor_shift_coeffs(coeffs, alpha)
    return poly_sub(s, alpha * poly_der(s))


def cauchy_root_bound(coeffs) -> float:
    """Strict upper bound on the modulus of every root (monic input)."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size <= 1:
        return 1.0
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

class Certificate(Enum):
    STURM_EXACT = "SturmExact"
    RECONSTRUCTED = "Reconstructed"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class MonicPoly:
    """Real monic polynomial; ``coeffs[-1]`` is forced to exactly 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ArgumentError("coeffs must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise ArgumentError("coeffs must be finite")
        lc = c[-1]
        if lc == 0.0:
            raise ArgumentError("leading coefficient must be nonzero")
        if lc != 1.0:
            c = c / lc
        c[-1] = 1.0
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    def __eq__(self, other):
        return isinstance(other, MonicPoly) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"MonicPoly(degree={self.degree}, coeffs={self.coeffs.tolist()})"


@dataclass(frozen=True, eq=False)
class ComplexPoly:
    """Complex monic polynomial; same normalization as :class:`MonicPoly`."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ArgumentError("coeffs must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise ArgumentError("coeffs must be finite")
        lc = c[-1]
        if lc == 0:
            raise ArgumentError("leading coefficient must be nonzero")
        if lc != 1.0:
            c = c / lc
        c[-1] = 1.0
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    def __eq__(self, other):
        return isinstance(other, ComplexPoly) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"ComplexPoly(degree={self.degree})"


@dataclass(frozen=True, eq=False)
class RootTuple:
    """Unordered multiset of reals, stored sorted nondecreasing."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.array(self.values, dtype=float))
        object.__setattr__(self, "values", _freeze(v))

    @property
    def size(self) -> int:
        return self.values.size

    def equals(self, other: "RootTuple", tol: float = DEFAULT_EQ_TOL) -> bool:
        if self.size != other.size:
            return False
        if self.size == 0:
            return True
        mag = max(np.max(np.abs(self.values)), np.max(np.abs(other.values)))
        return bool(np.max(np.abs(self.values - other.values)) <= tol * (1.0 + mag))


@dataclass(frozen=True, eq=False)
class ComplexRootTuple:
    """Multiset of complex points, stored in lexicographic (re, im) order."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        order = np.lexsort((v.imag, v.real))
        object.__setattr__(self, "values", _freeze(v[order]))

    @property
    def size(self) -> int:
        return self.values.size

    def as_points(self) -> np.ndarray:
        """Return an (n, 2) array of (re, im) rows."""
        return np.column_stack([self.values.real, self.values.imag])

    def equals(self, other: "ComplexRootTuple", tol: float = DEFAULT_EQ_TOL) -> bool:
        if self.size != other.size:
            return False
        if self.size == 0:
            return True
        mag = max(np.max(np.abs(self.values)), np.max(np.abs(other.values)))
        return bool(np.max(np.abs(self.values - other.values)) <= tol * (1.0 + mag))


@dataclass(frozen=True, eq=False)
class HyperbolicPoly:
    """A monic polynomial together with its certified sorted real roots."""

    poly: MonicPoly
    roots: np.ndarray
    certificate: Certificate = Certificate.RECONSTRUCTED

    def __post_init__(self):
        r = np.sort(np.array(self.roots, dtype=float))
        if r.size != self.poly.degree:
            raise ArgumentError("root count must match the degree")
        object.__setattr__(self, "roots", _freeze(r))
        # reconstruction invariant: the root product must reproduce coeffs
        recon = np.polynomial.polynomial.polyfromroots(r)
        scale = 1.0 + float(np.max(np.abs(self.poly.coeffs)))
        err = float(np.max(np.abs(poly_sub(recon, self.poly.coeffs))))
        if err > DEFAULT_RECON_TOL * scale:
            raise CertificationAmbiguous(
                f"roots do not reproduce the coefficients (error {err:.3e})"
            )

    @property
    def degree(self) -> int:
        return self.poly.degree

    def root_tuple(self) -> RootTuple:
        return RootTuple(self.roots)

    def __call__(self, x):
        return self.poly(x)


@dataclass(frozen=True)
class NotHyperbolic:
    """Verdict for a polynomial that is not real rooted."""

    real_root_count: int


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def from_roots(roots) -> HyperbolicPoly:
    """Monic polynomial with exactly the given real roots (empty -> 1)."""
    r = np.sort(np.array(roots, dtype=float))
    if r.size and not np.all(np.isfinite(r)):
        raise ArgumentError("roots must be finite")
    coeffs = np.polynomial.polynomial.polyfromroots(r)
    return HyperbolicPoly(MonicPoly(coeffs.real), r, Certificate.STURM_EXACT)


def differentiate(p: MonicPoly) -> np.ndarray:
    """Coefficient-wise derivative; leading coefficient equals the degree."""
    if p.degree < 1:
        raise DegreeError("cannot differentiate a degree-0 polynomial")
    return poly_der(p.coeffs)


def taylor_shift(p, t):
    """Return the polynomial x -> P(x + t), preserving kind and degree."""
    if isinstance(p, HyperbolicPoly):
        p = p.poly
    shifted = taylor_shift_coeffs(p.coeffs, t)
    if isinstance(p, ComplexPoly) or np.iscomplexobj(shifted):
        return ComplexPoly(shifted)
    return MonicPoly(shifted)


def zero_sum(p):
    """Sum of the zeros: the negated subleading coefficient, no root finding."""
    if isinstance(p, HyperbolicPoly):
        p = p.poly
    n = p.degree
    if n < 1:
        raise DegreeError("zero_sum needs degree >= 1")
    s = p.coeffs[n - 1]
    return -complex(s) if isinstance(p, ComplexPoly) else -float(s)


def span(h: HyperbolicPoly) -> float:
    """Length of the smallest interval containing all roots."""
    if h.degree < 1:
        raise DegreeError("span needs degree >= 1")
    return float(h.roots[-1] - h.roots[0])


# ---------------------------------------------------------------------------
# Sturm kernel (pure-Python floats: faster than numpy at these degrees)
# ---------------------------------------------------------------------------

def _as_list(coeffs) -> list[float]:
    return [float(v) for v in np.asarray(coeffs, dtype=float)]

def _trim(c: list[float], tol: float) -> list[float]:
    m = max((abs(v) for v in c), default=0.0)
    cut = tol * m
    k = len(c)
    while k > 1 and abs(c[k - 1]) <= cut:
        k -= 1
    return c[:k]


def _maxabs(c) -> float:
    return max((abs(v) for v in c), default=0.0)


def _rem(a, b):
    """Polynomial remainder a mod b (b normalized by its leading entry)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        f = a[i] / lb
        if f != 0.0:
            for j in range(db):
                a[i - db + j] -= f * b[j]
        a[i] = 0.0
    return a[:db] if db > 0 else [0.0]


def _normalized(c):
    m = _maxabs(c)
    return [v / m for v in c] if m > 0 else list(c)


def _horner(c, x: float) -> float:
    r = 0.0
    for v in reversed(c):
        r = r * x + v
    return r


class _SturmData:
    """Sturm chain of one (square-free) float polynomial plus an exact twin."""

    def __init__(self, coeffs):
        self.coeffs = _as_list(coeffs)
        self.chain = self._build_float()
        self._abs_sums = [sum(abs(v) for v in f) for f in self.chain]
        self._exact = None

    def _build_float(self):
        f0 = _normalized(self.coeffs)
        chain = [f0]
        if len(f0) > 1:
            chain.append(_normalized([v * (k + 1) for k, v in enumerate(f0[1:])]))
        while len(chain[-1]) > 1:
            r = _rem(chain[-2], chain[-1])
            r = _trim([-v for v in r], 1e-12)
            if _maxabs(r) <= 1e-300:
                break
            chain.append(_normalized(r))
        return chain

    def exact_chain(self):
        if self._exact is None:
            f0 = [Fraction(v) for v in self.coeffs]
            chain = [f0]
            if len(f0) > 1:
                chain.append([v * (k + 1) for k, v in enumerate(f0[1:])])
            while len(chain[-1]) > 1:
                a, b = chain[-2], chain[-1]
                r = list(a)
                db = len(b) - 1
                lb = b[-1]
                for i in range(len(r) - 1, db - 1, -1):
                    f = r[i] / lb
                    if f != 0:
                        for j in range(db):
                            r[i - db + j] -= f * b[j]
                    r[i] = Fraction(0)
                r = r[:db] if db > 0 else [Fraction(0)]
                while len(r) > 1 and r[-1] == 0:
                    r.pop()
                if all(v == 0 for v in r):
                    break
                m = max(abs(v) for v in r)
                chain.append([-v / m for v in r])
            self._exact = chain
        return self._exact

    def variations(self, x: float, amb: float, exact_fallback: bool) -> int:
        count = 0
        prev = 0
        ax = max(1.0, abs(x))
        for f, s in zip(self.chain, self._abs_sums):
            v = _horner(f, x)
            if abs(v) <= amb * s * ax ** (len(f) - 1):
                if not exact_fallback:
                    raise CertificationAmbiguous(
                        f"Sturm sign ambiguous at x={x!r}"
                    )
                return self._variations_exact(x)
            sign = 1 if v > 0 else -1
            if prev != 0 and sign != prev:
                count += 1
            prev = sign
        return count

    def _variations_exact(self, x: float) -> int:
        fx = Fraction(x)
        count = 0
        prev = 0
        for f in self.exact_chain():
            v = Fraction(0)
            for coef in reversed(f):
                v = v * fx + coef
            if v == 0:
                continue
            sign = 1 if v > 0 else -1
            if prev != 0 and sign != prev:
                count += 1
            prev = sign
        return count

    def count(self, a: float, b: float, amb: float, exact_fallback: bool) -> int:
        """Number of distinct real roots in (a, b]."""
        return (self.variations(a, amb, exact_fallback)
                - self.variations(b, amb, exact_fallback))


def _isolate_and_polish(sf, total: int, amb: float, exact_fallback: bool):
    """Isolate the ``total`` distinct real roots of square-free ``sf``."""
    data = _SturmData(sf)
    bound = cauchy_root_bound(np.asarray(sf) / sf[-1])
    roots = []
    queue = [(-bound, bound, total)]
    der = [v * (k + 1) for k, v in enumerate(sf[1:])]
    while queue:
        lo, hi, cnt = queue.pop()
        if cnt <= 0:
            continue
        if cnt == 1:
            roots.append(_newton_polish(sf, der, lo, hi))
            continue
        if hi - lo <= 1e-13 * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            roots.extend([mid] * cnt)
            continue
        mid = 0.5 * (lo + hi)
        left = data.count(lo, mid, amb, exact_fallback)
        queue.append((lo, mid, left))
        queue.append((mid, hi, cnt - left))
    return sorted(roots)


def _newton_polish(sf, der, lo: float, hi: float) -> float:
    """Polish the single root in the half-open bracket (lo, hi]."""
    fhi = _horner(sf, hi)
    if fhi == 0.0:
        return hi
    flo = _horner(sf, lo)
    if flo == 0.0 or (flo > 0) == (fhi > 0):
        # lo is (numerically) the neighbouring root; step inside the bracket
        width = hi - lo
        d = width * 1e-15
        ok = False
        while d < width:
            v = _horner(sf, lo + d)
            if v != 0.0 and (v > 0) != (fhi > 0):
                lo, flo, ok = lo + d, v, True
                break
            d *= 4.0
        if not ok:
            return 0.5 * (lo + hi)
    slo = flo > 0
    x = 0.5 * (lo + hi)
    for _ in range(120):
        fx = _horner(sf, x)
        if fx == 0.0:
            return x
        # keep the bracket in sync so bisection stays available
        if (fx > 0) == slo:
            lo = x
        else:
            hi = x
        dfx = _horner(der, x)
        if dfx != 0.0:
            step = fx / dfx
            xn = x - step
            if lo < xn < hi:
                if abs(step) <= 1e-16 * max(1.0, abs(x)):
                    return xn
                x = xn
                continue
        xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-16 * max(1.0, abs(x)):
            return xn
        x = xn
    return x


def _certify_squarefree(p: MonicPoly, amb: float, exact_fallback: bool):
    """Direct Sturm certification; succeeds exactly when all roots are
    real and numerically simple.  Returns None when inapplicable."""
    n = p.degree
    data = _SturmData(p.coeffs)
    bound = cauchy_root_bound(p.coeffs)
    if data.count(-bound, bound, amb, exact_fallback) != n:
        return None
    roots = _isolate_and_polish(_as_list(p.coeffs), n, amb, exact_fallback)
    if len(roots) != n:
        return None
    try:
        return HyperbolicPoly(p, roots, Certificate.STURM_EXACT)
    except CertificationAmbiguous:
        return None


def _link_at_radius(z: np.ndarray, radii: np.ndarray):
    """Single-linkage grouping: points closer than the pairwise radius join."""
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= min(radii[i], radii[j]):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(z[i])
    return list(groups.values())


def _refine_on_derivative(coeffs, z0, m: int):
    """Newton-polish a multiplicity-m root on the (m-1)-th derivative,
    where it is simple.  Works in the arithmetic of ``z0``."""
    f = np.asarray(coeffs)
    for _ in range(m - 1):
        f = poly_der(f)
    df = poly_der(f)
    x = z0
    for _ in range(60):
        dfx = poly_eval(df, x)
        if dfx == 0:
            break
        step = poly_eval(f, x) / dfx
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    # reject a runaway toward some other root of the derivative
    if abs(x - z0) > 0.1 * (1.0 + abs(z0)):
        return z0
    return x


def _select_structure(coeffs: np.ndarray, z: np.ndarray, tol: float,
                      cluster_scale: float):
    """Pick the multiplicity structure of the approximate roots ``z``.

    A root of multiplicity m is only determined to ~tol**(1/m), so
    candidate clusterings are tried at the radius ladder m = 1, 2, ...;
    the first refined structure that reproduces the coefficients wins.
    Returns a list of (value, multiplicity, on_real_axis) triples.
    """
    n = len(z)
    scale = 1.0 + float(np.max(np.abs(coeffs)))
    singleton_axis = 0.5 * cluster_scale * math.sqrt(tol)
    best = None
    seen_partitions = set()
    for mm in range(1, min(n, 8) + 1):
        radii = cluster_scale * tol ** (1.0 / mm) * (1.0 + np.abs(z))
        groups = _link_at_radius(z, radii) if mm > 1 else [[w] for w in z]
        signature = tuple(sorted(len(g) for g in groups))
        if signature in seen_partitions:
            continue
        seen_partitions.add(signature)
        entries = []
        for g in groups:
            m = len(g)
            cen = complex(np.mean(g))
            if m == 1:
                real = abs(cen.imag) <= singleton_axis * (1.0 + abs(cen))
                entries.append((cen.real if real else cen, 1, real))
            else:
                radius = cluster_scale * tol ** (1.0 / m) * (1.0 + abs(cen))
                if abs(cen.imag) <= radius:
                    r = _refine_on_derivative(coeffs.astype(float), cen.real, m)
                    entries.append((float(r), m, True))
                else:
                    r = _refine_on_derivative(coeffs.astype(complex), cen, m)
                    entries.append((complex(r), m, False))
        multiset = [v for v, m, _ in entries for _ in range(m)]
        recon = np.polynomial.polynomial.polyfromroots(np.array(multiset, dtype=complex))
        err = float(np.max(np.abs(poly_sub(recon, coeffs.astype(complex)))))
        if err <= 1e-9 * scale:
            return entries
        if best is None or err < best[0]:
            best = (err, entries)
    return best[1]


def _deflate_linear(c: np.ndarray, root: complex) -> tuple[np.ndarray, float]:
    """Synthetic division by (x - root); returns quotient and |remainder|."""
    n = c.size - 1
    q = np.zeros(n, dtype=complex)
    acc = c[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = c[k] + acc * root
    return q, abs(acc)


def _certify_clustered(p: MonicPoly, tol: float, amb: float,
                       exact_fallback: bool, cluster_scale: float):
    """Robust path: Aberth roots, multiplicity-structure selection, deflation
    by the refined repeated/complex factors, then Sturm on the simple part."""
    n = p.degree
    scale = 1.0 + float(np.max(np.abs(p.coeffs)))
    z = complex_roots(p, tol, cluster_tol=0.0).values
    entries = _select_structure(p.coeffs, z, tol, cluster_scale)

    simple_guess = [v for v, m, real in entries if m == 1 and real]
    repeated = [(v, m) for v, m, real in entries if m > 1 and real]
    offaxis = [v for v, m, real in entries if not real for _ in range(m)]

    # deflate repeated and off-axis factors, smallest modulus first
    factors = [complex(r) for r, m in repeated for _ in range(m)] + [
        complex(v) for v in offaxis
    ]
    factors.sort(key=abs)
    q = np.asarray(p.coeffs, dtype=complex)
    worst = 0.0
    for r in factors:
        q, rem = _deflate_linear(q, r)
        worst = max(worst, rem)
    if worst > 1e-6 * scale:
        raise CertificationAmbiguous(
            f"deflation remainder {worst:.3e} exceeds its bound"
        )
    if q.size > 1 and float(np.max(np.abs(q.imag))) > 1e-7 * scale:
        raise CertificationAmbiguous("deflated simple part is not real")
    qr = q.real / q.real[-1] if q.size else np.array([1.0])

    k = qr.size - 1
    if k != len(simple_guess):
        raise CertificationAmbiguous("cluster bookkeeping mismatch")
    if k > 0:
        data = _SturmData(qr)
        bound = cauchy_root_bound(qr)
        cnt = data.count(-bound, bound, amb, exact_fallback)
    else:
        cnt = 0
    real_count = cnt + sum(m for _, m in repeated)
    if real_count < n:
        return NotHyperbolic(real_root_count=real_count)
    if real_count > n:
        raise CertificationAmbiguous(
            f"inconsistent real-root count {real_count} for degree {n}"
        )

    simple = _isolate_and_polish(_as_list(qr), cnt, amb, exact_fallback) if k else []
    if len(simple) != cnt:
        raise CertificationAmbiguous("isolation on the simple part failed")
    # final polish against the original polynomial removes deflation drift
    dc = poly_der(p.coeffs)
    polished = []
    for x in simple:
        for _ in range(3):
            dfx = poly_eval(dc, x)
            if dfx == 0.0:
                break
            x -= poly_eval(p.coeffs, x) / dfx
        polished.append(float(x))
    roots = sorted(polished + [r for r, m in repeated for _ in range(m)])
    return HyperbolicPoly(p, np.array(roots), Certificate.STURM_EXACT)


def real_roots_certified(
    p: MonicPoly,
    tol: float = DEFAULT_ROOT_TOL,
    *,
    exact_fallback: bool = True,
    amb_tol: float | None = None,
    cluster_scale: float = 8.0,
):
    """Certify real-rootedness and return all roots with multiplicity.

    Strictly hyperbolic inputs certify directly: the Sturm count over a
    Cauchy bound must equal the degree, roots are isolated by bisection on
    the sign-variation counts and polished by Newton.  Inputs with repeated
    (or nearly repeated) roots take a clustered path whose multiplicity
    claims are gated by the root-product reconstruction invariant.  Returns
    :class:`NotHyperbolic` with the certified real count otherwise.

    ``amb_tol`` widens the sign band that triggers the exact rational
    fallback; with ``exact_fallback=False`` an ambiguous sign raises
    :class:`CertificationAmbiguous` instead.  ``cluster_scale`` scales the
    multiplicity-aware clustering radii (exposed, not canonical).
    """
    n = p.degree
    if n < 1:
        raise DegreeError("real_roots_certified needs degree >= 1")
    amb = max(1e-12, tol) if amb_tol is None else amb_tol

    try:
        fast = _certify_squarefree(p, amb, exact_fallback)
    except CertificationAmbiguous:
        fast = None
    if fast is not None:
        return fast
    return _certify_clustered(p, tol, amb, exact_fallback, cluster_scale)


# ---------------------------------------------------------------------------
# complex roots: simultaneous Aberth iteration
# ---------------------------------------------------------------------------

def _aberth_start(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    center = -c[n - 1] / n
    shifted = taylor_shift_coeffs(c, center)
    mags = np.abs(shifted[:-1])
    with np.errstate(divide="ignore"):
        radius = 2.0 * float(np.max(mags ** (1.0 / (n - np.arange(n)))))
    radius = max(radius, 1e-3)
    k = np.arange(n)
    angles = 2.0 * np.pi * (k + 0.25) / n + 0.42 / n
    stagger = 1.0 + 1e-3 * k / max(1, n)
    return center + 0.8 * radius * stagger * np.exp(1j * angles)


def complex_roots(
    p,
    tol: float = DEFAULT_ROOT_TOL,
    *,
    max_iter: int = 500,
    cluster_tol: float | None = None,
    start=None,
) -> ComplexRootTuple:
    """All roots by Aberth iteration, polished to ``|P(z)| <= tol * scale``
    with ``scale = 1 + max|coeff|``.  Near-coincident roots are clustered to
    their centroid; the threshold is exposed on purpose and defaults to the
    convergence floor of a double root at the requested residual."""
    if isinstance(p, HyperbolicPoly):
        p = p.poly
    c = np.asarray(p.coeffs, dtype=complex)
    n = c.size - 1
    if n < 1:
        raise DegreeError("complex_roots needs degree >= 1")
    d = poly_der(c)
    scale = 1.0 + float(np.max(np.abs(c)))
    if cluster_tol is None:
        cluster_tol = max(1e-7, 4.0 * math.sqrt(tol * scale))
    z = _aberth_start(c) if start is None else np.array(start, dtype=complex)
    if z.size != n:
        raise ArgumentError("start must supply one point per root")
    big = 4.0 * cauchy_root_bound(c) + 4.0

    converged = False
    for _ in range(max_iter):
        pv = poly_eval(c, z)
        if float(np.max(np.abs(pv))) <= tol * scale:
            converged = True
            break
        dv = poly_eval(d, z)
        dv = np.where(dv == 0, 1e-300, dv)
        newt = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - newt * s
        denom = np.where(np.abs(denom) < 1e-12, 1.0, denom)
        w = newt / denom
        w = np.where(np.isfinite(w), w, newt)
        # step cap keeps early iterations inside the root bound
        mags = np.abs(w)
        factor = np.where(mags > big, big / np.maximum(mags, 1e-300), 1.0)
        z = z - w * factor
    if not converged:
        pv = poly_eval(c, z)
        if float(np.max(np.abs(pv))) > tol * scale:
            raise RootFindingFailed(
                f"Aberth residual {float(np.max(np.abs(pv))):.3e} after {max_iter} iterations"
            )

    z = _cluster_points(z, cluster_tol)
    pv = poly_eval(c, z)
    if float(np.max(np.abs(pv))) > max(tol, 1e-10) * scale:
        raise RootFindingFailed("clustered roots violate the residual bound")
    return ComplexRootTuple(z)


def _cluster_points(z: np.ndarray, cluster_tol: float) -> np.ndarray:
    order = np.lexsort((z.imag, z.real))
    z = z[order]
    out = []
    group = [z[0]]
    for w in z[1:]:
        ref = group[-1]
        if abs(w - ref) <= cluster_tol * (1.0 + abs(ref)):
            group.append(w)
        else:
            centroid = complex(np.mean(group))
            out.extend([centroid] * len(group))
            group = [w]
    centroid = complex(np.mean(group))
    out.extend([centroid] * len(group))
    return np.array(out, dtype=complex)
