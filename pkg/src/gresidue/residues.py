"""Global residues read off the deformation series.

Res(x^a) is the coefficient of x^-(a+1) in B_s with s = <w, a - r>.
Indices s < 0 vanish by degree, s = 0 only leaves a = r, and exponents
with a - r outside W* vanish without touching the series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cones import build_cones, vanishing_by_cone
from .errors import LaurentError
from .linalg import rational
from .poly import Polynomial
from .series import DeformationSeries, invert_series
from .weights import BasisProfile, s_of_a


def _monic_residue(profile: BasisProfile, a: tuple, series: DeformationSeries | None):
    # residue for the monic standard-position system (scale not applied)
    if a == profile.r:
        return 1
    s = s_of_a(a, profile)
    if s <= 0:
        return 0
    if vanishing_by_cone(build_cones(profile), a, profile.r):
        return 0
    if series is None:
        series = invert_series(profile, 0)
    return series.coefficient(s, tuple(-(k + 1) for k in a))


def residue_monomial(profile: BasisProfile, a: Sequence[int],
                     series: DeformationSeries | None = None):
    """Res(x^a) for the system the profile was built from."""
    a = tuple(int(x) for x in a)
    if len(a) != profile.n:
        raise ValueError(f"exponent has {len(a)} entries, expected {profile.n}")
    if any(x < 0 for x in a):
        raise ValueError("residue exponents must be nonnegative")
    v = _monic_residue(profile, a, series)
    return rational(v * profile.scale) if v else 0


@dataclass
class ResidueTable:
    """Res(x^a) for every a with <w, a> <= bound."""

    bound: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, a):
        return self.entries[tuple(a)]

    def __contains__(self, a) -> bool:
        return tuple(a) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def nonzero(self) -> dict:
        return {a: v for a, v in self.entries.items() if v}


def _exponents_up_to(w: Sequence[int], d: int):
    """All a in N^n with <w, a> <= d, in lex order."""
    n = len(w)

    def rec(k, left):
        if k == n:
            yield ()
            return
        for x in range(left // w[k] + 1):
            for rest in rec(k + 1, left - x * w[k]):
                yield (x,) + rest

    if d < 0:
        return
    yield from rec(0, d)


def residue_batch(profile: BasisProfile, d: int) -> ResidueTable:
    """All monomial residues up to weighted degree d from one shared series."""
    if d < 0:
        raise ValueError("bound must be nonnegative")
    w = profile.w
    wr = sum(x * y for x, y in zip(w, profile.r))
    table = ResidueTable(d)
    if d < wr:
        for a in _exponents_up_to(w, d):
            table.entries[a] = 0
        return table
    series = invert_series(profile, d - wr)
    for a in _exponents_up_to(w, d):
        table.entries[a] = residue_monomial(profile, a, series)
    return table


def residue_polynomial(profile: BasisProfile, h: Polynomial,
                       series: DeformationSeries | None = None):
    """Res(h) by linearity over the monomials of h."""
    if h.is_laurent():
        raise LaurentError("residues are defined for polynomials, not Laurent polynomials")
    floor = profile.d_w - sum(profile.w)
    total = 0
    for e, c in h.items():
        # Euler-Jacobi: terms of weighted degree below d_w - |w| contribute nothing
        if sum(x * y for x, y in zip(profile.w, e)) < floor:
            continue
        total += c * residue_monomial(profile, e, series)
    return rational(total)
