"""Exact polyhedral primitives: Fourier-Motzkin feasibility and the double
description method for cones. Everything works over ``Fraction``; results
are returned as primitive integer vectors where that makes sense.

Both routines are exponential in the worst case and meant for tiny
dimensions (n <= 8).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import InfeasibleError

MAX_DIMENSION = 8


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence, canonical_sign: bool = False) -> tuple:
    """Scale a rational vector to a primitive integer vector.

    With ``canonical_sign`` the first nonzero entry is made positive (used
    for lineality directions whose sign is meaningless).
    """
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    if canonical_sign:
        first = next(x for x in ints if x)
        if first < 0:
            ints = [-x for x in ints]
    return tuple(ints)


def _normalise_row(a: Sequence, b) -> tuple:
    """Scale a constraint a·x >= b by a positive factor to integers, gcd 1."""
    fr = [Fraction(x) for x in a] + [Fraction(b)]
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def fm_feasible_point(rows: Sequence[tuple[Sequence, object]], n: int) -> list[Fraction]:
    """A rational x with a·x >= b for every (a, b) in ``rows``.

    Fourier-Motzkin elimination of x_0, x_1, ... followed by back
    substitution; each coordinate takes the smallest integer inside its
    bounds when one exists, otherwise the lower bound itself.
    Raises :class:`InfeasibleError` when the system is empty.
    """
    current = {_normalise_row(a, b) for a, b in rows}
    stages = []
    for k in range(n):
        stages.append(current)
        pos, neg, rest = [], [], set()
        for a, b in current:
            if a[k] > 0:
                pos.append((a, b))
            elif a[k] < 0:
                neg.append((a, b))
            else:
                rest.add((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = -an[k], ap[k]
                a = [cp * x + cn * y for x, y in zip(ap, an)]
                rest.add(_normalise_row(a, cp * bp + cn * bn))
        current = rest
    for a, b in current:
        if b > 0:
            raise InfeasibleError("linear system has no solution")
    x: list[Fraction] = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        lo, hi = None, None
        for a, b in stages[k]:
            if a[k] == 0:
                continue
            rhs = Fraction(b) - sum(a[j] * x[j] for j in range(k + 1, n))
            bound = rhs / a[k]
            if a[k] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = Fraction(min(0, int(hi // 1)))
        else:
            ceil_lo = -((-lo.numerator) // lo.denominator)
            val = Fraction(ceil_lo) if hi is None or ceil_lo <= hi else lo
        if hi is not None and lo is not None and lo > hi:
            raise InfeasibleError("back substitution found an empty interval")
        x[k] = val
    return x


def cone_generators(inequalities: Sequence[Sequence[int]], n: int):
    """Generators of {x in R^n : a·x >= 0 for every row a}.

    Returns ``(rays, lines)``: primitive integer extreme rays of the pointed
    part and a basis of the lineality space, so the cone equals
    pos(rays) + span(lines). Double description with the combinatorial
    adjacency test.
    """
    lines: list[list[Fraction]] = [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rays: list[tuple[list[Fraction], frozenset]] = []
    processed: list[int] = []
    for idx, a in enumerate(inequalities):
        a = [Fraction(v) for v in a]
        if not any(a):
            continue
        p = next((k for k, l in enumerate(lines) if dot(a, l) != 0), None)
        if p is not None:
            pivot = lines[p]
            s = dot(a, pivot)
            if s < 0:
                pivot = [-v for v in pivot]
                s = -s
            new_lines = []
            for k, l in enumerate(lines):
                if k == p:
                    continue
                f = dot(a, l) / s
                new_lines.append([x - f * y for x, y in zip(l, pivot)])
            new_rays = []
            for r, z in rays:
                f = dot(a, r) / s
                new_rays.append(([x - f * y for x, y in zip(r, pivot)], z | {idx}))
            new_rays.append((pivot, frozenset(processed)))
            lines = new_lines
            rays = new_rays
        else:
            pos, zero, neg = [], [], []
            for r, z in rays:
                v = dot(a, r)
                if v > 0:
                    pos.append((r, z, v))
                elif v < 0:
                    neg.append((r, z, v))
                else:
                    zero.append((r, z | {idx}))
            combined = []
            for rp, zp, vp in pos:
                for rn, zn, vn in neg:
                    common = zp & zn
                    adjacent = True
                    for r2, z2 in rays:
                        if r2 is rp or r2 is rn:
                            continue
                        if common <= z2:
                            adjacent = False
                            break
                    if adjacent:
                        new = [vp * y - vn * x for x, y in zip(rp, rn)]
                        combined.append((new, common | {idx}))
            rays = [(r, z) for r, z, _ in pos] + zero + combined
        processed.append(idx)
    out_rays = sorted({primitive(r) for r, _ in rays if any(r)})
    out_lines = [primitive(l, canonical_sign=True) for l in lines]
    return out_rays, out_lines


def dual_generators(generators: Sequence[Sequence[int]], n: int):
    """Facet description of pos(generators): (normals, equations).

    The cone pos(G) equals {x : u·x >= 0 for u in normals, e·x = 0 for e in
    equations}; normals are the extreme rays of the dual cone.
    """
    return cone_generators(generators, n)


def in_cone(x: Sequence, normals: Sequence[Sequence], equations: Sequence[Sequence]) -> bool:
    return all(dot(u, x) >= 0 for u in normals) and all(dot(e, x) == 0 for e in equations)
