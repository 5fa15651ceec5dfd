"""Root counting from traces: the trace form, its signature and rank, the
mapping degree, and the Chow form via power sums and formal log/exp."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import RationalMatrix, eigen_sign_counts, rational
from .normal_form import dual_matrix, monomial_basis, quotient_algebra
from .poly import Polynomial
from .weights import BasisProfile


@dataclass(frozen=True)
class TraceForm:
    T: RationalMatrix
    weight: Polynomial
    basis: tuple


def trace_form(profile: BasisProfile, h: Polynomial | None = None, order: str = "lex") -> TraceForm:
    """T_ij = tr(x^i x^j h) over the monomial box (h defaults to 1)."""
    alg = quotient_algebra(profile)
    if h is None:
        h = Polynomial.constant(profile.variables, 1)
    if h.variables != profile.variables:
        raise ValueError("weight polynomial is over different variables")
    basis = monomial_basis(profile, order)
    terms = list(h.items())
    cache: dict = {}

    def entry(e):
        v = cache.get(e)
        if v is None:
            acc = 0
            for c, coef in terms:
                acc += coef * alg.trace_monomial(tuple(x + y for x, y in zip(e, c)))
            v = cache[e] = rational(acc)
        return v

    rows = [[entry(tuple(x + y for x, y in zip(i, j))) for j in basis] for i in basis]
    return TraceForm(RationalMatrix(rows), h, tuple(basis))


@dataclass(frozen=True)
class RootCountReport:
    dim_V: int
    distinct_complex: int
    distinct_real: int
    signature: int
    rank: int
    positive_eigenvalues: int
    negative_eigenvalues: int


def count_roots(profile: BasisProfile) -> RootCountReport:
    """Distinct complex roots = rank T, distinct real roots = signature T."""
    tf = trace_form(profile)
    pos, neg, _ = eigen_sign_counts(tf.T)
    return RootCountReport(
        dim_V=profile.dim,
        distinct_complex=pos + neg,
        distinct_real=pos - neg,
        signature=pos - neg,
        rank=pos + neg,
        positive_eigenvalues=pos,
        negative_eigenvalues=neg,
    )


def count_roots_weighted(profile: BasisProfile, h: Polynomial) -> int:
    """#{real roots with h > 0} - #{real roots with h < 0}."""
    pos, neg, _ = eigen_sign_counts(trace_form(profile, h).T)
    return pos - neg


def mapping_degree(profile: BasisProfile) -> int:
    """Topological degree of the real map g, the signature of M."""
    pos, neg, _ = eigen_sign_counts(dual_matrix(profile))
    return pos - neg


# -- truncated multivariate series -------------------------------------------


def _exponents_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _exponents_of_degree(n - 1, d - k):
            yield (k,) + rest


class TruncatedMultiSeries:
    """A power series in u_1..u_n known up to total degree ``degree``."""

    def __init__(self, variables: Sequence[str], degree: int, coefficients=None):
        if degree < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.variables = tuple(variables)
        self.degree = degree
        clean = {}
        for e, c in dict(coefficients or {}).items():
            e = tuple(e)
            if len(e) != len(self.variables) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e}")
            c = rational(c)
            if c and sum(e) <= degree:
                clean[e] = c
        self.coefficients = clean

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def constant(self):
        return self.coefficients.get((0,) * self.n, 0)

    def coefficient(self, e):
        return self.coefficients.get(tuple(e), 0)

    def homogeneous_parts(self) -> list[dict]:
        parts = [dict() for _ in range(self.degree + 1)]
        for e, c in self.coefficients.items():
            parts[sum(e)][e] = c
        return parts

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.variables, self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, TruncatedMultiSeries):
            return NotImplemented
        return (self.variables, self.degree, self.coefficients) == (
            other.variables, other.degree, other.coefficients)

    def __repr__(self):
        return f"TruncatedMultiSeries({self.as_polynomial()!s}, degree={self.degree})"


def _mul_parts(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


def series_exp(s: TruncatedMultiSeries) -> TruncatedMultiSeries:
    """exp(s) for s with zero constant term.

    With F = exp(L) split into homogeneous parts, k F_k = sum_j j L_j F_(k-j).
    """
    if s.constant:
        raise ValueError("exp needs a series with zero constant term")
    L = s.homogeneous_parts()
    F = [{(0,) * s.n: 1}]
    for k in range(1, s.degree + 1):
        acc: dict = {}
        for j in range(1, k + 1):
            if not L[j] or not F[k - j]:
                continue
            for e, c in _mul_parts(L[j], F[k - j]).items():
                acc[e] = acc.get(e, 0) + j * c
        F.append({e: rational(Fraction(c, k)) for e, c in acc.items() if c})
    out = {}
    for part in F:
        out.update(part)
    return TruncatedMultiSeries(s.variables, s.degree, out)


def series_log(s: TruncatedMultiSeries) -> TruncatedMultiSeries:
    """log(s) for s with constant term 1 (inverse of :func:`series_exp`)."""
    if s.constant != 1:
        raise ValueError("log needs a series with constant term 1")
    F = s.homogeneous_parts()
    L: list[dict] = [{}]
    for k in range(1, s.degree + 1):
        acc = {e: k * c for e, c in F[k].items()}
        for j in range(1, k):
            if not L[j] or not F[k - j]:
                continue
            for e, c in _mul_parts(L[j], F[k - j]).items():
                acc[e] = acc.get(e, 0) - j * c
        L.append({e: rational(Fraction(c, k)) for e, c in acc.items() if c})
    out = {}
    for part in L:
        out.update(part)
    return TruncatedMultiSeries(s.variables, s.degree, out)


def _multinomial(e) -> int:
    out = factorial(sum(e))
    for k in e:
        out //= factorial(k)
    return out


def power_sums(profile: BasisProfile, degree: int) -> dict:
    """tr(x^j) = sum over roots (with multiplicity) of p^j, for 1 <= |j| <= degree."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    alg = quotient_algebra(profile)
    out = {}
    for d in range(1, degree + 1):
        for e in _exponents_of_degree(profile.n, d):
            out[e] = alg.trace_monomial(e)
    return out


def _u_names(profile: BasisProfile) -> tuple:
    return tuple(f"u{k + 1}" for k in range(profile.n))


def log_chow(profile: BasisProfile, degree: int | None = None) -> TruncatedMultiSeries:
    """log R(u) = sum_d (-1)^(d-1)/d sum_{|j|=d} multinomial(d, j) tr(x^j) u^j."""
    if degree is None:
        degree = profile.dim
    ps = power_sums(profile, degree)
    coeffs = {}
    for e, v in ps.items():
        d = sum(e)
        coeffs[e] = Fraction((-1) ** (d - 1) * _multinomial(e) * v, d)
    return TruncatedMultiSeries(_u_names(profile), degree, coeffs)


def chow_form(profile: BasisProfile, degree: int | None = None) -> TruncatedMultiSeries:
    """R(u) = prod over roots p of (1 + <p, u>)^mult, up to total degree
    ``degree`` (default dim V, which gives R exactly)."""
    return series_exp(log_chow(profile, degree))
