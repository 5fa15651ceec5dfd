import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gresidue.errors import LaurentError
from gresidue.normal_form import residue_via_nf
from gresidue.poly import Polynomial, parse_polynomial
from gresidue.residues import residue_batch, residue_monomial, residue_polynomial
from gresidue.weights import verify_basis

from conftest import product_system


def simple_root_oracle(roots_per_var, h: Polynomial):
    """sum over roots of h(p) / J(p), all roots simple."""
    total = Fraction(0)
    for p in itertools.product(*roots_per_var):
        jac = Fraction(1)
        for i, roots in enumerate(roots_per_var):
            for a in roots:
                if a != p[i]:
                    jac *= p[i] - a
        total += Fraction(h.evaluate(p)) / jac
    return total


def test_known_values(example):
    assert residue_monomial(example, (15, 15, 15)) == -258756707658424020014953731203
    assert residue_monomial(example, (6, 1, 1)) == 0
    assert residue_monomial(example, example.r) == 1


def test_jacobian_residue_is_dimension(example):
    from gresidue.poly import jacobian_determinant
    assert residue_polynomial(example, jacobian_determinant(example.original)) == 30


def test_input_validation(example):
    with pytest.raises(ValueError):
        residue_monomial(example, (1, 2))
    with pytest.raises(ValueError):
        residue_monomial(example, (1, -2, 0))
    with pytest.raises(LaurentError):
        residue_polynomial(example, parse_polynomial("x1^-1", example.variables))


def test_batch_matches_single(example):
    table = residue_batch(example, 40)
    assert len(table) > 0
    assert table[(4, 1, 2)] == 1
    for a, v in table.entries.items():
        assert v == residue_via_nf(example, Polynomial.monomial(example.variables, a))
    low = residue_batch(example, 10)
    assert not low.nonzero()


def test_scaled_permuted_system():
    v = ("x", "y")
    from gresidue.poly import PolySystem
    base = PolySystem.parse(v, ["x^3 + y - 1", "y^2 + x"])
    flipped = PolySystem.parse(v, ["2*y^2 + 2*x", "x^3 + y - 1"])
    pb = verify_basis(base, (1, 1))
    pf = verify_basis(flipped, (1, 1))
    for a in [(2, 1), (4, 1), (3, 3), (5, 0)]:
        # swapping rows flips the sign, scaling by 2 divides by 2
        assert residue_monomial(pf, a) == -Fraction(1, 2) * residue_monomial(pb, a)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=1, max_size=3, unique=True),
                min_size=2, max_size=2),
       st.integers(0, 2**31))
def test_simple_root_oracle(roots, seed):
    rng = random.Random(seed)
    sys = product_system(roots)
    p = verify_basis(sys, (1,) * len(roots))
    terms = {tuple(rng.randint(0, 5) for _ in roots): rng.randint(-3, 3) for _ in range(4)}
    h = Polynomial(sys.variables, terms)
    assert residue_polynomial(p, h) == simple_root_oracle(roots, h)


def test_duality_annihilation(example):
    rng = random.Random(5)
    v = example.variables
    for _ in range(10):
        q = Polynomial(v, {tuple(rng.randint(0, 4) for _ in v): rng.randint(-5, 5)
                           for _ in range(3)})
        for g in example.original.generators:
            assert residue_polynomial(example, q * g) == 0
