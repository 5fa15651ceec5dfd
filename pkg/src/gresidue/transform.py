"""Reduction of an arbitrary square system to one with pure-power leading
terms, keeping track of how every new polynomial is built from the inputs.

If f_i = sum_j A_ij g_j and both systems have finitely many roots, then
Res_f(h det A) = Res_g(h). So residues over g can be computed with the
normal-form machinery over f.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BasisError, InvariantError, ZeroDimensionalityError
from .normal_form import residue_via_nf
from .poly import Polynomial, PolySystem, determinant
from .weights import BasisProfile, _pure_power, discover_weight, verify_basis

log = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 10_000


@dataclass(frozen=True)
class CofactorBasis:
    original: PolySystem
    f: PolySystem
    A: tuple  # A[i][j] with f_i = sum_j A[i][j] * g_j
    detA: Polynomial
    weight: tuple  # weight of the term order used for the completion
    profile: BasisProfile
    steps: int

    def check_identity(self) -> bool:
        return all(_combine(row, self.original.generators) == fi
                   for row, fi in zip(self.A, self.f.generators))


def _combine(row: Sequence[Polynomial], gens: Sequence[Polynomial]) -> Polynomial:
    acc = Polynomial.zero(gens[0].variables)
    for a, g in zip(row, gens):
        if not a.is_zero():
            acc = acc + a * g
    return acc


class _Order:
    """Weight order with graded-lex tie-break."""

    def __init__(self, w: Sequence[int]):
        self.w = tuple(w)

    def key(self, e):
        return (sum(x * y for x, y in zip(self.w, e)), sum(e), e)

    def lead(self, p: Polynomial):
        return max(p.items(), key=lambda t: self.key(t[0]))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Element:
    # a monic basis element together with its cofactor row
    __slots__ = ("poly", "cof", "lead")

    def __init__(self, poly: Polynomial, cof: list, order: _Order):
        lead, lc = order.lead(poly)
        inv = Fraction(1) / lc
        self.poly = poly.scale(inv)
        self.cof = [c.scale(inv) for c in cof]
        self.lead = lead


def _reduce(poly: Polynomial, cof: list, basis: list, order: _Order):
    """Full reduction of poly by the basis; cofactors follow along."""
    variables = poly.variables
    terms = dict(poly.items())
    cof = list(cof)
    result: dict = {}
    while terms:
        e = max(terms, key=order.key)
        c = terms[e]
        div = next((b for b in basis if _divides(b.lead, e)), None)
        if div is None:
            result[e] = terms.pop(e)
            continue
        shift = tuple(x - y for x, y in zip(e, div.lead))
        for f, cf in div.poly.items():
            g = tuple(x + y for x, y in zip(f, shift))
            v = terms.get(g, 0) - c * cf
            if v:
                terms[g] = v
            else:
                terms.pop(g, None)
        m = Polynomial.monomial(variables, shift, c)
        cof = [a - m * b for a, b in zip(cof, div.cof)]
    return Polynomial(variables, result), cof


def _pure_leads(basis: list, n: int) -> list | None:
    """Lowest-degree element with lead x_k^m for each k, or None."""
    best: list = [None] * n
    for b in basis:
        pp = _pure_power(b.lead)
        if pp is None:
            continue
        k, m = pp
        if best[k] is None or m < _pure_power(best[k].lead)[1]:
            best[k] = b
    if any(b is None for b in best):
        return None
    return best


def extended_buchberger(sys: PolySystem, w: Sequence[int] | None = None,
                        max_elements: int = DEFAULT_MAX_ELEMENTS,
                        check: bool = True) -> CofactorBasis:
    """Buchberger completion with cofactors until every variable has a
    pure-power leading term.

    ``w`` defaults to a weight from :func:`discover_weight` when one exists
    and to all ones otherwise. With ``check`` the identity f = A g is
    re-expanded after every new element.
    """
    n = sys.n
    variables = sys.variables
    if w is None:
        try:
            w = discover_weight(sys)
        except BasisError:
            w = (1,) * n
    order = _Order(w)
    gens = sys.generators
    if any(g.is_zero() for g in gens):
        raise ZeroDimensionalityError("a generator is zero")

    def unit_row(i):
        return [Polynomial.constant(variables, int(i == j)) for j in range(n)]

    def verify(elem: _Element):
        if check and _combine(elem.cof, gens) != elem.poly:
            raise InvariantError("cofactor identity violated during completion")

    basis: list = []
    pairs: list = []
    counter = 0

    def add(elem: _Element):
        nonlocal counter
        verify(elem)
        k = len(basis)
        for i, b in enumerate(basis):
            if all(x == 0 or y == 0 for x, y in zip(b.lead, elem.lead)):
                continue  # coprime leads: the S-polynomial reduces to zero
            lcm = tuple(max(x, y) for x, y in zip(b.lead, elem.lead))
            counter += 1
            heapq.heappush(pairs, (order.key(lcm), counter, i, k))
        basis.append(elem)

    for i, g in enumerate(gens):
        add(_Element(g, unit_row(i), order))
    steps = 0
    while _pure_leads(basis, n) is None:
        if not pairs:
            raise ZeroDimensionalityError("zero-dimensionality not certified: completion "
                                          "ended without pure-power leading terms")
        if len(basis) >= max_elements:
            raise ZeroDimensionalityError(
                f"zero-dimensionality not certified within {max_elements} basis elements")
        _, _, i, j = heapq.heappop(pairs)
        a, b = basis[i], basis[j]
        lcm = tuple(max(x, y) for x, y in zip(a.lead, b.lead))
        ma = Polynomial.monomial(variables, tuple(x - y for x, y in zip(lcm, a.lead)))
        mb = Polynomial.monomial(variables, tuple(x - y for x, y in zip(lcm, b.lead)))
        s = ma * a.poly - mb * b.poly
        cof = [ma * x - mb * y for x, y in zip(a.cof, b.cof)]
        s, cof = _reduce(s, cof, basis, order)
        steps += 1
        if s.is_zero():
            continue
        add(_Element(s, cof, order))
        log.debug("completion step %d: %d elements", steps, len(basis))
    chosen = _pure_leads(basis, n)
    f = PolySystem(variables, tuple(b.poly for b in chosen))
    A = tuple(tuple(b.cof) for b in chosen)
    detA = determinant([list(row) for row in A], variables)
    try:
        profile = verify_basis(f, tuple(w))
        weight = tuple(w)
    except (BasisError, ValueError):
        weight = discover_weight(f, assignment=list(range(n)))
        profile = verify_basis(f, weight)
    result = CofactorBasis(sys, f, A, detA, weight, profile, steps)
    if check and not result.check_identity():
        raise InvariantError("cofactor identity violated for the final basis")
    return result


def residue_general(sys: PolySystem, h: Polynomial, w: Sequence[int] | None = None,
                    basis: CofactorBasis | None = None):
    """Res_g(h) for any square system with finitely many roots."""
    if basis is None:
        basis = extended_buchberger(sys, w)
    return residue_via_nf(basis.profile, h * basis.detA)
