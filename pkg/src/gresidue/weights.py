"""Weight vectors, initial forms and the pure-power basis profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from math import lcm, prod
from typing import Sequence

from .errors import BasisError, InfeasibleError
from .linalg import rational
from .poly import Polynomial, PolySystem
from .polyhedra import MAX_DIMENSION, fm_feasible_point


def _check_weight(w: Sequence[int], n: int) -> tuple:
    w = tuple(int(x) for x in w)
    if len(w) != n:
        raise ValueError(f"weight has {len(w)} entries, expected {n}")
    if any(x < 1 for x in w):
        raise ValueError(f"weights must be positive integers, got {w}")
    return w


def weighted_degree(p: Polynomial, w: Sequence[int]) -> int:
    """max <w, a> over the terms of p. ``w`` may be any integer vector here."""
    if p.is_zero():
        raise ValueError("weighted degree of the zero polynomial is undefined")
    return max(sum(x * y for x, y in zip(w, e)) for e, _ in p.items())


def initial_form(p: Polynomial, w: Sequence[int]) -> Polynomial:
    """Sum of the terms of p of top weighted degree."""
    top = weighted_degree(p, w)
    return Polynomial(p.variables,
                      {e: c for e, c in p.items() if sum(x * y for x, y in zip(w, e)) == top})


def _pure_power(e) -> tuple[int, int] | None:
    """(variable, exponent) if x^e is a pure power x_k^m with m >= 1."""
    nz = [(k, v) for k, v in enumerate(e) if v]
    if len(nz) == 1 and nz[0][1] > 0:
        return nz[0]
    return None


def _permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class BasisProfile:
    """A system certified to have in_w(g_k) = x_k^(r_k+1), in standard position.

    ``system`` is the monic, reordered system: its k-th generator leads in
    x_k. ``permutation[k]`` is the index in ``original`` of that generator
    and ``leading_scalars[k]`` the coefficient it was divided by. Residues
    of the original system are ``scale`` times residues of ``system``.
    """

    system: PolySystem
    original: PolySystem
    w: tuple
    r: tuple
    d: tuple
    d_w: int
    leading_scalars: tuple
    permutation: tuple
    sign: int
    scale: Fraction | int

    @property
    def variables(self) -> tuple:
        return self.system.variables

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def generators(self) -> tuple:
        return self.system.generators

    @property
    def dim(self) -> int:
        return prod(k + 1 for k in self.r)

    @cached_property
    def tails(self) -> tuple:
        """q_k = g_k - x_k^(r_k+1) for the monic standard-position system."""
        out = []
        for k, g in enumerate(self.system.generators):
            lead = [0] * self.n
            lead[k] = self.r[k] + 1
            out.append(g - Polynomial.monomial(self.variables, tuple(lead)))
        return tuple(out)

    @cached_property
    def digest(self) -> str:
        import hashlib
        text = "|".join([",".join(self.original.variables), ",".join(map(str, self.w))]
                        + [str(g) for g in self.original.generators])
        return hashlib.sha256(text.encode()).hexdigest()

    def __hash__(self):
        return hash(self.digest)

    def __eq__(self, other):
        return isinstance(other, BasisProfile) and self.digest == other.digest


def verify_basis(sys: PolySystem, w: Sequence[int]) -> BasisProfile:
    """Check that every in_w(g_i) is a single pure power and build the profile."""
    n = sys.n
    w = _check_weight(w, n)
    lead_var = []
    alphas = []
    exps = []
    for i, g in enumerate(sys.generators):
        if g.is_zero():
            raise BasisError(f"generator {i + 1} is zero")
        init = initial_form(g, w)
        if len(init) > 1:
            raise BasisError(
                f"initial form of generator {i + 1} is not a single term: {init}")
        (e, c), = init.items()
        pp = _pure_power(e)
        if pp is None:
            raise BasisError(
                f"initial form of generator {i + 1} is not a pure power: {init}")
        lead_var.append(pp[0])
        exps.append(pp[1])
        alphas.append(c)
    if len(set(lead_var)) != n:
        k = next(v for v in lead_var if lead_var.count(v) > 1)
        raise BasisError(
            f"two generators lead in variable {sys.variables[k]}")
    permutation = [0] * n
    for i, k in enumerate(lead_var):
        permutation[k] = i
    r = [0] * n
    scalars = [0] * n
    gens = [None] * n
    for k in range(n):
        i = permutation[k]
        r[k] = exps[i] - 1
        scalars[k] = alphas[i]
        gens[k] = sys.generators[i].scale(Fraction(1) / alphas[i])
    sign = _permutation_sign(lead_var)
    scale = rational(Fraction(sign) / prod(Fraction(a) for a in scalars))
    d = tuple(w[k] * (r[k] + 1) for k in range(n))
    return BasisProfile(
        system=PolySystem(sys.variables, tuple(gens)),
        original=sys,
        w=w,
        r=tuple(r),
        d=d,
        d_w=sum(d),
        leading_scalars=tuple(scalars),
        permutation=tuple(permutation),
        sign=sign,
        scale=scale,
    )


def _weight_constraints(sys: PolySystem, assignment) -> list:
    n = sys.n
    rows = []
    for k in range(n):
        e = [int(j == k) for j in range(n)]
        rows.append((e, 1))
    for g, (lead, _) in zip(sys.generators, assignment):
        for b, _ in g.items():
            if b == lead:
                continue
            rows.append(([x - y for x, y in zip(lead, b)], 1))
    return rows


def discover_weight(sys: PolySystem, assignment: Sequence[int] | None = None) -> tuple:
    """Find a positive integer weight making one pure power per generator
    strictly initial, with distinct variables across generators.

    ``assignment`` optionally fixes the leading variable of each generator.
    """
    n = sys.n
    if n > MAX_DIMENSION:
        raise ValueError(f"weight search supports at most {MAX_DIMENSION} variables")
    candidates = []
    for i, g in enumerate(sys.generators):
        opts = []
        for e, _ in g.items():
            pp = _pure_power(e)
            if pp is not None and (assignment is None or pp[0] == assignment[i]):
                opts.append((e, pp[0]))
        if not opts:
            raise BasisError(
                f"generator {i + 1} has no usable pure-power term: {g}")
        opts.sort(key=lambda t: (t[1], -sum(t[0])))
        candidates.append(opts)
    for combo in iproduct(*candidates):
        if len({k for _, k in combo}) != n:
            continue
        try:
            point = fm_feasible_point(_weight_constraints(sys, combo), n)
        except InfeasibleError:
            continue
        den = lcm(*(x.denominator for x in point))
        return tuple(int(x * den) for x in point)
    raise BasisError("not a pure-power Groebner system for any weight")


def s_of_a(a: Sequence[int], profile: BasisProfile) -> int:
    """<w, a - r>: the series index that carries the residue of x^a."""
    return sum(wk * (ak - rk) for wk, ak, rk in zip(profile.w, a, profile.r))


def euler_jacobi_vanishes(h: Polynomial, profile: BasisProfile) -> bool:
    """True when deg_w(h) < d_w - sum(w), which forces Res(h) = 0."""
    return weighted_degree(h, profile.w) < profile.d_w - sum(profile.w)
