"""Normal forms modulo a pure-power basis, residues as highest coefficients,
traces, the residue pairing matrix and the Bezoutian projection.

Two reduction engines live here. :func:`normal_form` is the plain division
algorithm (always rewrite a reducible term of top weighted degree).
:class:`QuotientAlgebra` works on coordinate vectors over the monomial box
and memoises normal forms of monomials; it is what the matrix builders use.
Both produce the same, unique, normal form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

from .errors import ContextError, InvariantError, LaurentError, SingularMatrixError
from .linalg import RationalMatrix, rational, solve_linear
from .poly import Polynomial, PolySystem, determinant, jacobian_determinant
from .weights import BasisProfile


def monomial_basis(profile: BasisProfile, order: str = "lex") -> list[tuple]:
    """The box {i : 0 <= i <= r}.

    ``order`` is "lex" (ascending lexicographic) or "weighted" (ascending
    weighted degree, ties broken lexicographically). Both orders list the
    complement r - i of the k-th element in position |I| - 1 - k.
    """
    box = list(iproduct(*(range(k + 1) for k in profile.r)))
    if order == "lex":
        return box
    if order == "weighted":
        w = profile.w
        return sorted(box, key=lambda e: (sum(x * y for x, y in zip(w, e)), e))
    raise ValueError(f"unknown basis order {order!r}")


@dataclass(frozen=True)
class NormalForm:
    """Coordinates of h modulo the ideal in the monomial box."""

    variables: tuple
    r: tuple
    coefficients: dict  # exponent in the box -> nonzero rational
    reductions: int = 0

    def coefficient(self, i: Sequence[int]):
        return self.coefficients.get(tuple(i), 0)

    @property
    def highest(self):
        """The coefficient of x^r."""
        return self.coefficient(self.r)

    def polynomial(self) -> Polynomial:
        return Polynomial(self.variables, self.coefficients)

    def __eq__(self, other):
        if isinstance(other, NormalForm):
            return self.variables == other.variables and self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.coefficients.items())))

    def __str__(self):
        return str(self.polynomial())


def _check_context(profile: BasisProfile, h: Polynomial):
    if h.variables != profile.variables:
        raise ContextError(f"polynomial over {h.variables}, system over {profile.variables}")
    if h.is_laurent():
        raise LaurentError("normal forms are defined for polynomials only")


def normal_form(profile: BasisProfile, h: Polynomial) -> NormalForm:
    """Division algorithm modulo the monic pure-power generators.

    The reducible term of largest weighted degree (graded-lex tie-break) is
    rewritten first, using the generator of the first variable whose
    exponent exceeds r.
    """
    _check_context(profile, h)
    w, r = profile.w, profile.r
    n = profile.n
    tails = [list(q.items()) for q in profile.tails]

    def reducible(e):
        return any(e[k] > r[k] for k in range(n))

    def key(e):
        return (-sum(x * y for x, y in zip(w, e)), -sum(e), tuple(-x for x in e))

    terms = dict(h.items())
    heap = [key(e) + (e,) for e in terms if reducible(e)]
    heapq.heapify(heap)
    count = 0
    while heap:
        e = heapq.heappop(heap)[-1]
        c = terms.pop(e, 0)
        if not c:
            continue
        k = next(j for j in range(n) if e[j] > r[j])
        base = list(e)
        base[k] -= r[k] + 1
        count += 1
        # x^e = x^base * x_k^(r_k+1) == -x^base * q_k
        for b, cb in tails[k]:
            f = tuple(x + y for x, y in zip(base, b))
            v = terms.get(f, 0) - c * cb
            if v:
                new = f not in terms
                terms[f] = v
                if new and reducible(f):
                    heapq.heappush(heap, key(f) + (f,))
            else:
                terms.pop(f, None)
    coeffs = {e: rational(c) for e, c in terms.items() if c}
    return NormalForm(profile.variables, r, coeffs, count)


class QuotientAlgebra:
    """Arithmetic in K[x]/I on coordinate vectors over the monomial box.

    Normal forms of monomials are memoised. Multiplication by x_k is exact
    on the box except across the border x_k^(r_k+1), where the generator
    g_k rewrites the product into lower weighted degree.
    """

    def __init__(self, profile: BasisProfile):
        self.profile = profile
        self.n = profile.n
        self.r = profile.r
        self.basis = monomial_basis(profile)
        self.dim = len(self.basis)
        self.index = {e: i for i, e in enumerate(self.basis)}
        self.top = self.index[self.r]
        self._tails = [list(q.items()) for q in profile.tails]
        self._mono: dict = {}
        self._border: dict = {}
        self._nf_jacobian = None
        self._trace_basis = None

    # -- vectors ----------------------------------------------------------

    def zero(self) -> list:
        return [0] * self.dim

    def unit(self, e) -> list:
        v = self.zero()
        v[self.index[e]] = 1
        return v

    def _shift(self, e, k):
        f = list(e)
        f[k] += 1
        return tuple(f)

    def _border_vector(self, k: int, i: int) -> list:
        # x_k * x^b with b_k = r_k, rewritten by g_k
        key = (k, i)
        v = self._border.get(key)
        if v is not None:
            return v
        b = list(self.basis[i])
        b[k] = 0
        out = self.zero()
        for e, c in self._tails[k]:
            m = self.monomial(tuple(x + y for x, y in zip(b, e)))
            for j, x in enumerate(m):
                if x:
                    out[j] -= c * x
        out = [rational(x) for x in out]
        self._border[key] = out
        return out

    def times_variable(self, vec: Sequence, k: int) -> list:
        out = self.zero()
        r = self.r
        for i, c in enumerate(vec):
            if not c:
                continue
            b = self.basis[i]
            if b[k] < r[k]:
                out[self.index[self._shift(b, k)]] += c
            else:
                for j, x in enumerate(self._border_vector(k, i)):
                    if x:
                        out[j] += c * x
        return [rational(x) for x in out]

    def monomial(self, e) -> list:
        """Normal form of x^e as a coordinate vector."""
        e = tuple(e)
        v = self._mono.get(e)
        if v is not None:
            return v
        if e in self.index:
            v = self.unit(e)
            self._mono[e] = v
            return v
        # walk down to a known monomial, then multiply back up
        chain = []
        cur = list(e)
        while tuple(cur) not in self._mono and tuple(cur) not in self.index:
            k = max(j for j in range(self.n) if cur[j] > 0)
            chain.append(k)
            cur[k] -= 1
        v = self._mono.get(tuple(cur)) or self.unit(tuple(cur))
        for k in reversed(chain):
            cur[k] += 1
            v = self.times_variable(v, k)
            self._mono[tuple(cur)] = v
        return v

    def reduce(self, h: Polynomial) -> list:
        _check_context(self.profile, h)
        out = self.zero()
        for e, c in h.items():
            for j, x in enumerate(self.monomial(e)):
                if x:
                    out[j] += c * x
        return [rational(x) for x in out]

    def multiply(self, u: Sequence, v: Sequence) -> list:
        out = self.zero()
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                e = tuple(x + y for x, y in zip(self.basis[i], self.basis[j]))
                for k, x in enumerate(self.monomial(e)):
                    if x:
                        out[k] += a * b * x
        return [rational(x) for x in out]

    def as_normal_form(self, vec: Sequence) -> NormalForm:
        coeffs = {self.basis[i]: c for i, c in enumerate(vec) if c}
        return NormalForm(self.profile.variables, self.r, coeffs)

    # -- functionals ------------------------------------------------------

    def residue(self, vec: Sequence):
        """Res of the class for the profile's original system."""
        return rational(vec[self.top] * self.profile.scale)

    @property
    def nf_jacobian(self) -> list:
        if self._nf_jacobian is None:
            self._nf_jacobian = self.reduce(jacobian_determinant(self.profile.system))
        return self._nf_jacobian

    @property
    def trace_basis(self) -> list:
        """tr(x^b) for every box monomial b."""
        if self._trace_basis is None:
            nj = self.nf_jacobian
            out = []
            for b in self.basis:
                acc = 0
                for j, c in enumerate(nj):
                    if c:
                        e = tuple(x + y for x, y in zip(b, self.basis[j]))
                        acc += c * self.monomial(e)[self.top]
                out.append(rational(acc))
            self._trace_basis = out
        return self._trace_basis

    def trace(self, vec: Sequence):
        tb = self.trace_basis
        return rational(sum(c * t for c, t in zip(vec, tb) if c))

    def trace_monomial(self, e):
        return self.trace(self.monomial(e))


_ALGEBRAS: dict[str, QuotientAlgebra] = {}


def quotient_algebra(profile: BasisProfile) -> QuotientAlgebra:
    """Shared, memoised algebra for a profile (one per system and weight)."""
    alg = _ALGEBRAS.get(profile.digest)
    if alg is None:
        alg = _ALGEBRAS[profile.digest] = QuotientAlgebra(profile)
    return alg


def residue_via_nf(profile: BasisProfile, h: Polynomial):
    """Res(h) as the highest coefficient of NF(h)."""
    alg = quotient_algebra(profile)
    return alg.residue(alg.reduce(h))


def trace(profile: BasisProfile, h: Polynomial):
    """Trace of multiplication by h on the quotient algebra."""
    alg = quotient_algebra(profile)
    return alg.trace(alg.reduce(h))


def dual_matrix(profile: BasisProfile, method: str = "nf", order: str = "lex") -> RationalMatrix:
    """M_ij = Res(x^(i+j)) over the box listed in ``order``.

    ``method`` is "nf" (highest coefficients) or "series" (deformation
    series extraction). In the "weighted" order M vanishes above its
    anti-diagonal and has ones on it.
    """
    basis = monomial_basis(profile, order)
    values: dict = {}
    if method == "nf":
        alg = quotient_algebra(profile)

        def res(e):
            return alg.residue(alg.monomial(e))
    elif method == "series":
        from .residues import residue_monomial
        from .series import invert_series
        wr = sum(x * y for x, y in zip(profile.w, profile.r))
        series = invert_series(profile, wr)

        def res(e):
            return residue_monomial(profile, e, series)
    else:
        raise ValueError(f"unknown method {method!r}")
    rows = []
    for i in basis:
        row = []
        for j in basis:
            e = tuple(x + y for x, y in zip(i, j))
            if e not in values:
                values[e] = res(e)
            row.append(values[e])
        rows.append(row)
    return RationalMatrix(rows)


def anti_triangular_report(m: RationalMatrix) -> dict:
    """Whether m vanishes above its anti-diagonal and has units on it."""
    n = m.rows
    zeros_above = all(m[i, j] == 0 for i in range(n) for j in range(n) if i + j < n - 1)
    units = all(m[i, n - 1 - i] == 1 for i in range(n))
    return {"zero_above_antidiagonal": zeros_above, "unit_antidiagonal": units}


def nf_via_residues(profile: BasisProfile, h: Polynomial, m: RationalMatrix | None = None,
                    method: str = "series") -> NormalForm:
    """Normal form recovered from residues by solving M c = (Res(h x^j))_j.

    With ``method="series"`` the right-hand side comes from the deformation
    series, so the result is independent of the division algorithm.
    """
    _check_context(profile, h)
    alg = quotient_algebra(profile)
    if m is None:
        m = dual_matrix(profile)
    rhs = []
    for j in alg.basis:
        hj = h.shift(j)
        if method == "series":
            from .residues import residue_polynomial
            rhs.append(residue_polynomial(profile, hj))
        elif method == "nf":
            rhs.append(alg.residue(alg.reduce(hj)))
        else:
            raise ValueError(f"unknown method {method!r}")
    try:
        c = solve_linear(m, rhs)
    except SingularMatrixError as exc:
        raise InvariantError("residue pairing matrix is singular") from exc
    return alg.as_normal_form(c)


# -- Bezoutian --------------------------------------------------------------


def _y_names(variables: Sequence[str]) -> tuple:
    taken = set(variables)
    out = []
    for v in variables:
        name = "y_" + v
        while name in taken:
            name = "y" + name
        taken.add(name)
        out.append(name)
    return tuple(out)


def bezoutian_matrix(sys: PolySystem) -> tuple[tuple, list[list[Polynomial]]]:
    """Difference quotients g_ij(y, x) over variables (y..., x...).

    g_i(y) - g_i(x) = sum_j g_ij (y_j - x_j), with g_ij built by switching
    one variable at a time from x to y.
    """
    n = sys.n
    ys = _y_names(sys.variables)
    allvars = ys + tuple(sys.variables)
    rows = []
    for g in sys.generators:
        row = []
        for j in range(n):
            terms: dict = {}
            for e, c in g.items():
                k = e[j]
                if k == 0:
                    continue
                for a in range(k):
                    f = [0] * (2 * n)
                    for t in range(j):
                        f[t] = e[t]
                    for t in range(j + 1, n):
                        f[n + t] = e[t]
                    f[j] = a
                    f[n + j] = k - 1 - a
                    f = tuple(f)
                    terms[f] = terms.get(f, 0) + c
            row.append(Polynomial(allvars, terms))
        rows.append(row)
    return allvars, rows


def bezoutian(sys: PolySystem) -> Polynomial:
    """det(g_ij) as a polynomial in (y, x)."""
    allvars, rows = bezoutian_matrix(sys)
    return determinant(rows, allvars)


def bezoutian_project(profile: BasisProfile, h: Polynomial) -> Polynomial:
    """x -> Res_y(h(y) Delta(y, x)), a representative of h modulo the ideal."""
    _check_context(profile, h)
    n = profile.n
    sys = profile.original
    allvars, _ = bezoutian_matrix(sys)
    delta = bezoutian(sys)
    hy = h.with_variables(allvars, list(range(n)))
    prod = hy * delta
    by_x: dict = {}
    for e, c in prod.items():
        by_x.setdefault(e[n:], {})[e[:n]] = c
    alg = quotient_algebra(profile)
    out = {}
    for xe, yterms in by_x.items():
        v = alg.residue(alg.reduce(Polynomial(profile.variables, yterms)))
        if v:
            out[xe] = v
    return Polynomial(profile.variables, out)
