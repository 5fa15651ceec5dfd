"""The Groebner cone W of compatible weights and its polar dual W*.

W is cut out by <w, rho_ij> >= 0, where rho_ij = (r_i+1)e_i - a_ij runs
over the non-leading exponents a_ij of each generator. W* is spanned by
(r+1) - b for the monomials x^b of the expanded product g_1...g_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ConeError
from .polyhedra import cone_generators, dot, in_cone
from .poly import Polynomial
from .weights import BasisProfile, weighted_degree


@dataclass(frozen=True)
class ConePair:
    W_inequalities: tuple   # rho_ij, one per non-leading term
    W_rays: tuple
    W_lines: tuple
    Wstar_generators: tuple  # (r+1) - b, raw
    Wstar_rays: tuple
    Wstar_lines: tuple
    Wstar_inequalities: tuple  # facet normals of W*
    Wstar_equations: tuple
    interior_point: tuple      # sum of the primitive rays of W

    def in_W(self, w: Sequence[int]) -> bool:
        return all(dot(u, w) >= 0 for u in self.W_inequalities)

    def in_W_interior(self, w: Sequence[int]) -> bool:
        return all(dot(u, w) > 0 for u in self.W_inequalities)

    def in_Wstar(self, v: Sequence[int]) -> bool:
        return in_cone(v, self.Wstar_inequalities, self.Wstar_equations)


def product_expansion(profile: BasisProfile) -> Polynomial:
    out = Polynomial.constant(profile.variables, 1)
    for g in profile.generators:
        out = out * g
    return out


@lru_cache(maxsize=32)
def build_cones(profile: BasisProfile) -> ConePair:
    n = profile.n
    r1 = tuple(k + 1 for k in profile.r)
    rho = []
    for k, q in enumerate(profile.tails):
        lead = [0] * n
        lead[k] = r1[k]
        for e, _ in q.items():
            rho.append(tuple(x - y for x, y in zip(lead, e)))
    rho = tuple(sorted(set(rho)))
    w_rays, w_lines = cone_generators(rho, n)
    gens = sorted({tuple(x - y for x, y in zip(r1, e))
                   for e, _ in product_expansion(profile).items()} - {(0,) * n})
    normals, equations = cone_generators(gens, n)
    both = list(normals) + list(equations) + [tuple(-x for x in e) for e in equations]
    s_rays, s_lines = cone_generators(both, n)
    interior = tuple(sum(col) for col in zip(*w_rays)) if w_rays else (0,) * n
    pair = ConePair(
        W_inequalities=rho,
        W_rays=tuple(w_rays),
        W_lines=tuple(w_lines),
        Wstar_generators=tuple(gens),
        Wstar_rays=tuple(s_rays),
        Wstar_lines=tuple(s_lines),
        Wstar_inequalities=tuple(normals),
        Wstar_equations=tuple(equations),
        interior_point=interior,
    )
    if not pair.in_W_interior(interior) and rho:
        raise ConeError("cone W has empty interior; the profile is not a verified basis")
    return pair


def vanishing_by_cone(cones: ConePair, a: Sequence[int], r: Sequence[int]) -> bool:
    """True when a - r lies outside W*, which certifies Res(x^a) = 0."""
    diff = tuple(x - y for x, y in zip(a, r))
    return not cones.in_Wstar(diff)


def degree_bound_single(cones: ConePair, profile: BasisProfile, a, i: int, j) -> Fraction | None:
    """Upper bound on the degree of Res(x^a) in the coefficient c_ij.

    ``i`` is a generator index in standard position and ``j`` the exponent
    a_ij of the term whose coefficient is perturbed. The ratio
    <w, a-r>/<w, rho_ij> is minimised over the extreme rays of W; rays
    with a zero denominator are skipped and ``None`` means unbounded.
    """
    n = profile.n
    lead = [0] * n
    lead[i] = profile.r[i] + 1
    rho = tuple(x - y for x, y in zip(lead, j))
    if rho not in cones.W_inequalities:
        raise ValueError(f"{tuple(j)} is not a non-leading exponent of generator {i + 1}")
    diff = tuple(x - y for x, y in zip(a, profile.r))
    best = None
    for u in cones.W_rays:
        den = dot(u, rho)
        if den == 0:
            continue
        ratio = Fraction(dot(u, diff), den)
        if best is None or ratio < best:
            best = ratio
    if best is None:
        return None
    return best.numerator if best.denominator == 1 else best


def interior_weights(cones: ConePair, extra: Sequence[Sequence[int]] = ()) -> list[tuple]:
    """Sampled integer interior points of W: the ray sum plus user points.

    User points that are not strictly interior raise ``ValueError``.
    """
    points = [cones.interior_point]
    for w in extra:
        w = tuple(int(x) for x in w)
        if not cones.in_W_interior(w):
            raise ValueError(f"weight {w} is not in the interior of W")
        points.append(w)
    return points


def degree_bound_total(cones: ConePair, profile: BasisProfile, a, extra=()) -> int:
    """Valid (possibly non-minimal) bound on the total degree of Res(x^a)
    in all perturbation coefficients."""
    diff = tuple(x - y for x, y in zip(a, profile.r))
    return min(dot(w, diff) for w in interior_weights(cones, extra))


def trace_degree_bound(cones: ConePair, profile: BasisProfile, h: Polynomial, extra=()) -> int:
    if h.is_zero():
        raise ValueError("trace degree bound of the zero polynomial")
    return min(weighted_degree(h, w) for w in interior_weights(cones, extra))
