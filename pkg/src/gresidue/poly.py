"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`Polynomial` maps signed exponent tuples to nonzero ``int`` or
``Fraction`` coefficients over a fixed, ordered list of variable names.
Values are immutable; all arithmetic returns new objects.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ContextError, LaurentError, ParseError
from .linalg import format_rational, rational

Exponent = tuple  # tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def grlex_key(e: Exponent):
    """Sort key for graded-lexicographic order (x1 > x2 > ... within a degree)."""
    return (sum(e), e)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | Iterable = ()):
        self.variables = tuple(variables)
        n = len(self.variables)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ContextError(f"exponent {e} does not have {n} entries")
            c = rational(c)
            if c:
                v = clean.get(e, 0) + c
                if v:
                    clean[e] = v
                else:
                    del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        # terms must already be canonical (no zeros, normalised coefficients)
        p = object.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "Polynomial":
        variables = tuple(variables)
        c = rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Exponent, c=1) -> "Polynomial":
        variables = tuple(variables)
        if len(exponent) != len(variables):
            raise ContextError("exponent length does not match variable count")
        c = rational(c)
        return cls._raw(variables, {tuple(exponent): c} if c else {})

    @classmethod
    def variable(cls, variables: Sequence[str], i: int) -> "Polynomial":
        e = [0] * len(variables)
        e[i] = 1
        return cls.monomial(variables, tuple(e))

    # -- inspection -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        return self._terms.items()

    def terms(self) -> list[tuple[Exponent, int | Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def support(self) -> list[Exponent]:
        return [e for e, _ in self.terms()]

    def coefficient_of(self, e: Exponent):
        return self._terms.get(tuple(e), 0)

    def is_laurent(self) -> bool:
        return any(x < 0 for e in self._terms for x in e)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(e[i] for e in self._terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise ContextError(
                f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = rational(v)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = rational(c)
        if not c:
            return Polynomial.zero(self.variables)
        return Polynomial._raw(self.variables,
                               {e: rational(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                e = _add_exp(a, b)
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.variables, {e: rational(v) for e, v in out.items()})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: Exponent) -> "Polynomial":
        """Multiply by the (Laurent) monomial x^e."""
        return Polynomial._raw(self.variables,
                               {_add_exp(a, e): c for a, c in self._terms.items()})

    def derivative(self, i: int) -> "Polynomial":
        if self.is_laurent():
            raise LaurentError("partial derivative of a Laurent polynomial")
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return Polynomial._raw(self.variables, out)

    def evaluate(self, point: Sequence):
        """Exact value at a rational point."""
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                v *= Fraction(x) ** k if k < 0 else x ** k
            total += v
        return rational(total)

    def with_variables(self, variables: Sequence[str], positions: Sequence[int]) -> "Polynomial":
        """Embed into a larger context; variable i goes to slot positions[i]."""
        m = len(variables)
        out = {}
        for e, c in self._terms.items():
            f = [0] * m
            for k, p in zip(e, positions):
                f[p] += k
            out[tuple(f)] = c
        return Polynomial._raw(tuple(variables), out)

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """New polynomial whose variable k is old variable perm[k]."""
        vs = tuple(self.variables[p] for p in perm)
        return Polynomial._raw(
            vs, {tuple(e[p] for p in perm): c for e, c in self._terms.items()})

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {list(self.variables)!r})"


def format_monomial(e: Exponent, variables: Sequence[str]) -> str:
    parts = []
    for name, k in zip(variables, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: descending graded-lex, integer or a/b coefficients."""
    if not p._terms:
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.terms()):
        neg = c < 0
        mag = -c if neg else c
        mono = format_monomial(e, p.variables)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- parser ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", self.text, tok[2])
        self.k += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def polynomial(self) -> dict:
        terms: dict = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            e, c = self.term()
            terms[e] = terms.get(e, 0) + sign * c
            kind = self.peek()[0]
            if kind == "end":
                break
            if kind not in ("+", "-"):
                self.error(f"expected '+' or '-', found {self.peek()[1]!r}")
            sign = -1 if self.take()[0] == "-" else 1
        return terms

    def term(self):
        kind = self.peek()[0]
        n = len(self.variables)
        if kind == "int":
            c = Fraction(self.take()[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("int")
                if den_tok[1] == 0:
                    raise ParseError("zero denominator", self.text, den_tok[2])
                c /= den_tok[1]
            if self.peek()[0] != "*":
                return (0,) * n, c
            self.take()
            return self.monomial(), c
        if kind == "name":
            return self.monomial(), Fraction(1)
        self.error("expected a coefficient or a variable")

    def monomial(self):
        e = [0] * len(self.variables)
        while True:
            tok = self.take("name")
            if tok[1] not in self.index:
                raise ParseError(f"unknown variable {tok[1]!r}", self.text, tok[2])
            k = 1
            if self.peek()[0] == "^":
                self.take()
                neg = False
                if self.peek()[0] == "-":  # Laurent exponents, display round-trip
                    self.take()
                    neg = True
                k = self.take("int")[1]
                k = -k if neg else k
            e[self.index[tok[1]]] += k
            if self.peek()[0] == "*" and self.tokens[self.k + 1][0] == "name":
                self.take()
                continue
            return tuple(e)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the given variables, e.g. ``"3/2*x1*x2 - x1"``."""
    variables = tuple(variables)
    for v in variables:
        if not _NAME_RE.match(v):
            raise ParseError(f"invalid variable name {v!r}")
    if len(set(variables)) != len(variables):
        raise ParseError("duplicate variable names")
    parser = _Parser(text, variables)
    if parser.peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    return Polynomial(variables, parser.polynomial())


# -- systems -----------------------------------------------------------------


@dataclass(frozen=True)
class PolySystem:
    """A square system g_1..g_n in n variables."""

    variables: tuple
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.generators) != len(self.variables):
            raise ContextError(
                f"{len(self.generators)} generators for {len(self.variables)} variables")
        for g in self.generators:
            if g.variables != self.variables:
                raise ContextError("generator over a different variable list")

    @classmethod
    def parse(cls, variables: Sequence[str], texts: Sequence[str]) -> "PolySystem":
        return cls(tuple(variables), tuple(parse_polynomial(t, variables) for t in texts))

    @property
    def n(self) -> int:
        return len(self.variables)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __str__(self):
        return "; ".join(str(g) for g in self.generators)


def determinant(matrix: Sequence[Sequence[Polynomial]], variables: Sequence[str]) -> Polynomial:
    """Determinant of a square matrix of polynomials (Laplace, memoised on minors)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ContextError("determinant of a non-square matrix")
    if n == 0:
        return Polynomial.constant(variables, 1)
    memo: dict = {}

    def minor(row: int, cols: tuple) -> Polynomial:
        # determinant of rows row..n-1 restricted to cols
        if row == n:
            return Polynomial.constant(variables, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = Polynomial.zero(variables)
        for k, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = entry * sub
            acc = acc - term if k % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def jacobian_matrix(sys: PolySystem) -> list[list[Polynomial]]:
    return [[g.derivative(j) for j in range(sys.n)] for g in sys.generators]


def jacobian_determinant(sys: PolySystem) -> Polynomial:
    """det(dg_i/dx_j) expanded exactly."""
    return determinant(jacobian_matrix(sys), sys.variables)


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.derivative(i)


def coefficient_of(p: Polynomial, e: Exponent):
    return p.coefficient_of(e)
