"""Weighted homogenisation in t and inversion of the product as a power series.

With g~_k(t; x) = t^(d_k) g_k(t^-w1 x1, ..., t^-wn xn) the product
prod g~_k = sum_j A_j(x) t^j has A_0 = x^(r+1), and its inverse
sum_m B_m(x) t^m satisfies A_0 B_0 = 1 and sum_{j<=m} A_j B_(m-j) = 0.

Internally B_m is kept as C_m = x^(r+1) B_m, whose exponents are minus
sums of the cone generators rho = (r+1) - b. Exponent vectors are packed
into single integers (biased base-2^32 digits) so that monomial
multiplication is one integer addition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cones import build_cones
from .linalg import rational
from .poly import Polynomial
from .weights import BasisProfile

_BITS = 32
_BASE = 1 << _BITS
_OFF = 1 << (_BITS - 1)


def _pack(e: Sequence[int]) -> int:
    key = 0
    for k, v in enumerate(e):
        key += (v + _OFF) << (_BITS * k)
    return key


def _pack_delta(e: Sequence[int]) -> int:
    # signed digits; adding to a packed key shifts it by e
    key = 0
    for k, v in enumerate(e):
        key += v << (_BITS * k)
    return key


def _unpack(key: int, n: int) -> tuple:
    out = []
    for _ in range(n):
        out.append((key & (_BASE - 1)) - _OFF)
        key >>= _BITS
    return tuple(out)


@dataclass(frozen=True)
class HomogenizedSystem:
    """g~_k as maps t-power -> polynomial in x."""

    profile: BasisProfile
    gt: tuple  # tuple of dict[int, Polynomial]

    def as_text(self, k: int) -> str:
        parts = []
        for tp in sorted(self.gt[k]):
            for e, c in self.gt[k][tp].terms():
                parts.append((tp, e, c))
        return " + ".join(f"{c}*t^{tp}*{e}" for tp, e, c in parts)


def homogenize(profile: BasisProfile) -> HomogenizedSystem:
    w = profile.w
    out = []
    for k, g in enumerate(profile.generators):
        parts: dict[int, dict] = {}
        for e, c in g.items():
            tp = profile.d[k] - sum(x * y for x, y in zip(w, e))
            if tp < 0:
                raise ValueError("generator is not dominated by its pure power")
            parts.setdefault(tp, {})[e] = c
        out.append({tp: Polynomial(profile.variables, terms) for tp, terms in parts.items()})
    return HomogenizedSystem(profile, tuple(out))


def expand_product(hs: HomogenizedSystem) -> list[Polynomial]:
    """A_0 .. A_{d_w} with prod g~_k = sum_j A_j t^j."""
    profile = hs.profile
    acc = {0: Polynomial.constant(profile.variables, 1)}
    for gk in hs.gt:
        nxt: dict[int, Polynomial] = {}
        for t1, p1 in acc.items():
            for t2, p2 in gk.items():
                term = p1 * p2
                nxt[t1 + t2] = nxt[t1 + t2] + term if t1 + t2 in nxt else term
        acc = nxt
    zero = Polynomial.zero(profile.variables)
    return [acc.get(j, zero) for j in range(profile.d_w + 1)]


class DeformationSeries:
    """B_0..B_d for a verified profile, grown on demand.

    ``coefficient(m, alpha)`` also answers for m beyond the materialised
    truncation by a recursion restricted to the cone W*, without building
    B_m.
    """

    def __init__(self, profile: BasisProfile, d: int = 0):
        self.profile = profile
        n = profile.n
        self._hs = homogenize(profile)
        self.A = expand_product(self._hs)
        r1 = tuple(k + 1 for k in profile.r)
        self._r1 = r1
        # Q = sum_j>=1 A_j / x^(r+1): entries (t-degree, packed -rho, coeff, rho)
        q = []
        for j in range(1, len(self.A)):
            for b, c in self.A[j].items():
                rho = tuple(x - y for x, y in zip(r1, b))
                q.append((j, _pack_delta(tuple(-v for v in rho)), c, rho))
        q.sort(key=lambda t: (t[0], t[3]))
        self._q = q
        self._C: list[dict] = [{_pack((0,) * n): 1}]
        self._targeted: dict[tuple, object] = {}
        self.extend(d)

    @property
    def truncation(self) -> int:
        return len(self._C) - 1

    def extend(self, d: int) -> "DeformationSeries":
        """Materialise B_m for all m <= d."""
        q = self._q
        C = self._C
        for m in range(len(C), d + 1):
            out: dict = {}
            get = out.get
            for tdeg, delta, c, _ in q:
                if tdeg > m:
                    break
                src = C[m - tdeg]
                for key, v in src.items():
                    k2 = key + delta
                    out[k2] = get(k2, 0) - c * v
            C.append({k: rational(v) for k, v in out.items() if v})
        return self

    def term_count(self, m: int) -> int:
        self.extend(m)
        return len(self._C[m])

    def B(self, m: int) -> Polynomial:
        """B_m as a Laurent polynomial."""
        self.extend(m)
        n = self.profile.n
        r1 = self._r1
        terms = {}
        for key, v in self._C[m].items():
            e = _unpack(key, n)
            terms[tuple(x - y for x, y in zip(e, r1))] = v
        return Polynomial._raw(self.profile.variables, terms)

    def coefficient(self, m: int, alpha: Sequence[int]):
        """Coefficient of x^alpha in B_m."""
        alpha = tuple(alpha)
        gamma = tuple(-(a + r) for a, r in zip(alpha, self._r1))  # C-exponent is -gamma
        w = self.profile.w
        if sum(x * y for x, y in zip(w, gamma)) != m:
            return 0
        if m <= self.truncation:
            return self._C[m].get(_pack(tuple(-g for g in gamma)), 0)
        return self._cone_coefficient(gamma)

    def _layers(self) -> list:
        # per generator: (rho, c) for the terms of Q_k = q_k / x_k^(r_k+1)
        out = []
        for k, q in enumerate(self.profile.tails):
            layer = []
            for b, c in sorted(q.items()):
                rho = tuple((self._r1[k] if i == k else 0) - x for i, x in enumerate(b))
                layer.append((rho, c))
            out.append(layer)
        return out

    def _cone_coefficient(self, gamma: tuple):
        # 1/prod(1 + Q_k) one factor at a time: H_k = H_(k-1) - Q_k H_k.
        # Each Q_k has only the few terms of one generator, and every H_k is
        # supported in W*, so only the lattice points of W* & (gamma - W*)
        # are ever needed.
        if gamma in self._targeted:
            return self._targeted[gamma]
        cones = build_cones(self.profile)
        if not cones.in_Wstar(gamma):
            return 0
        value = _slab_coefficient(self.profile.w, cones, self._layers(), gamma)
        if value is None:
            value = _closure_coefficient(self.profile.w, cones, self._layers(), gamma)
        self._targeted[gamma] = value
        return value


_SLAB_LIMIT = 60_000_000


def _slab_coefficient(w, cones, layers, gamma):
    """Dense evaluation over W* & (gamma - W*), slice by weighted degree.

    Points are addressed through n facet normals of W* (coordinates u.s),
    which turns the polytope into a subset of a box. Returns None when W*
    is not full-dimensional or the box would be too large.
    """
    try:
        import numpy as np
    except ImportError:  # pragma: no cover
        return None
    from itertools import combinations

    from .linalg import RationalMatrix, determinant as mat_det, solve_linear

    n = len(gamma)
    normals = list(cones.Wstar_inequalities)
    if cones.Wstar_equations or len(normals) < n:
        return None
    best = None
    for combo in combinations(range(len(normals)), n):
        U = RationalMatrix([normals[i] for i in combo])
        det = mat_det(U)
        if det == 0:
            continue
        size = abs(det)
        for i in combo:
            size *= _dot(normals[i], gamma) + 1
        if best is None or size < best[0]:
            best = (size, combo, U, det)
    if best is None or best[0] > _SLAB_LIMIT:
        return None
    _, combo, U, det = best
    det = int(det)
    inv_cols = [solve_linear(U, [int(i == j) for i in range(n)]) for j in range(n)]
    adj = np.array([[int(inv_cols[j][i] * det) for j in range(n)] for i in range(n)], dtype=np.int64)
    chosen = [normals[i] for i in combo]
    others = [u for i, u in enumerate(normals) if i not in combo]
    rhos = [rho for layer in layers for rho, _ in layer]
    top = [_dot(u, gamma) for u in chosen]
    pad = [max(0, max(_dot(u, rho) for rho in rhos)) for u in chosen]
    dims = [t + 1 + p for t, p in zip(top, pad)]
    strides = [1] * n
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    if strides[0] * dims[0] > 4 * _SLAB_LIMIT:
        return None

    grid = np.indices([t + 1 for t in top], dtype=np.int64).reshape(n, -1)
    num = adj @ grid
    keep = np.all(num % det == 0, axis=0)
    grid, pts = grid[:, keep], num[:, keep] // det
    for u in others:
        d = np.array(u, dtype=np.int64) @ pts
        ok = (d >= 0) & (d <= _dot(u, gamma))
        grid, pts = grid[:, ok], pts[:, ok]
    deg = np.array(w, dtype=np.int64) @ pts
    flat = ((grid + np.array(pad, dtype=np.int64)[:, None])
            * np.array(strides, dtype=np.int64)[:, None]).sum(axis=0)
    origin = sum(p * st for p, st in zip(pad, strides))
    target = sum((t + p) * st for t, p, st in zip(top, pad, strides))

    offsets = [[(sum(_dot(u, rho) * st for u, st in zip(chosen, strides)), c)
                for rho, c in layer] for layer in layers]
    H = [np.zeros(strides[0] * dims[0], dtype=object) for _ in layers]
    order = np.argsort(deg, kind="stable")
    flat, deg = flat[order], deg[order]
    bounds = np.flatnonzero(np.diff(deg)) + 1
    for idx in np.split(flat, bounds):
        prev = (idx == origin).astype(np.int64).astype(object)
        for k, layer in enumerate(offsets):
            acc = prev
            vals = H[k]
            for off, c in layer:
                acc = acc - c * vals[idx - off]
            vals[idx] = acc
            prev = acc
    return rational(H[-1][target])


def _closure_coefficient(w, cones, layers, gamma):
    # sparse fallback: depth-first closure of gamma under subtracting rho
    normals = cones.Wstar_inequalities
    steps = {}
    packed = []
    for layer in layers:
        row = []
        for rho, c in layer:
            dk = _pack_delta(rho)
            row.append((dk, c))
            steps[dk] = (tuple(_dot(u, rho) for u in normals), _dot(w, rho))
        packed.append(row)
    steps = list(steps.items())
    top = _pack_delta(gamma)
    found = {top: (tuple(_dot(u, gamma) for u in normals), _dot(w, gamma))}
    pending = [top]
    while pending:
        key = pending.pop()
        dots, deg = found[key]
        for dk, (ddots, ddeg) in steps:
            k2 = key - dk
            if k2 in found:
                continue
            nd = tuple(x - y for x, y in zip(dots, ddots))
            if min(nd, default=0) < 0:
                continue
            found[k2] = (nd, deg - ddeg)
            pending.append(k2)
    memo: dict = {}
    get = memo.get
    for key in sorted(found, key=lambda k: found[k][1]):
        prev = 1 if key == 0 else 0
        vals = []
        for k, layer in enumerate(packed):
            acc = prev
            for dk, c in layer:
                below = get(key - dk)
                if below is not None and below[k]:
                    acc -= c * below[k]
            prev = rational(acc)
            vals.append(prev)
        memo[key] = vals
    return memo[top][-1]


def _dot(u, v) -> int:
    return sum(x * y for x, y in zip(u, v))


_SERIES_CACHE: dict[str, DeformationSeries] = {}
_CACHE_STATS = {"hits": 0, "misses": 0}


def invert_series(profile: BasisProfile, d: int) -> DeformationSeries:
    """Deformation series of ``profile`` materialised to truncation ``d``.

    Series are cached per system and reused for smaller truncations.
    """
    if d < 0:
        raise ValueError("truncation must be nonnegative")
    s = _SERIES_CACHE.get(profile.digest)
    if s is None:
        _CACHE_STATS["misses"] += 1
        s = DeformationSeries(profile, d)
        _SERIES_CACHE[profile.digest] = s
    else:
        _CACHE_STATS["hits"] += 1
        s.extend(d)
    return s


def cache_stats() -> dict:
    return dict(_CACHE_STATS, entries=len(_SERIES_CACHE))


def clear_cache() -> None:
    _SERIES_CACHE.clear()
    _CACHE_STATS.update(hits=0, misses=0)
