import random
from fractions import Fraction

import pytest

from gresidue.errors import ContextError
from gresidue.normal_form import (
    anti_triangular_report,
    bezoutian,
    bezoutian_project,
    dual_matrix,
    monomial_basis,
    nf_via_residues,
    normal_form,
    quotient_algebra,
    residue_via_nf,
    trace,
)
from gresidue.poly import Polynomial, PolySystem, jacobian_determinant, parse_polynomial
from gresidue.linalg import determinant, rank_and_signature
from gresidue.weights import verify_basis

NF_J = (
    "30*x1^4*x2*x3^2 - 25*x1^4*x3^2 - 152*x1^4*x2 + 146*x1^4*x3 - 251*x1^3*x2*x3"
    " + 83*x1^3*x3^2 + 16*x1^4 + 229*x1^3*x2 + 8*x1^3*x3 - 196*x1^2*x2*x3"
    " + 226*x1^2*x3^2 - 114*x1*x2*x3^2 - 73*x1^3 + 240*x1^2*x2 + 34*x1^2*x3"
    " + 254*x1*x2*x3 - 62*x1*x3^2 + 69*x2*x3^2 - 260*x1^2 - 140*x1*x2 - 78*x1*x3"
    " + 108*x2*x3 - 49*x3^2 + 140*x1 - 177*x2 - 128*x3 + 177"
)


def random_poly(rng, v, deg=8, terms=4):
    return Polynomial(v, {tuple(rng.randint(0, deg) for _ in v): rng.randint(-9, 9)
                          for _ in range(terms)})


def test_nf_of_jacobian(example):
    nf = normal_form(example, jacobian_determinant(example.original))
    assert nf.polynomial() == parse_polynomial(NF_J, example.variables)
    assert nf.highest == 30
    assert nf.reductions > 0


def test_box_orders(example):
    lex = monomial_basis(example)
    wt = monomial_basis(example, "weighted")
    assert len(lex) == len(wt) == 30 and set(lex) == set(wt)
    with pytest.raises(ValueError):
        monomial_basis(example, "grevlex")


def test_division_and_algebra_agree(example):
    rng = random.Random(2)
    alg = quotient_algebra(example)
    for _ in range(20):
        h = random_poly(rng, example.variables, deg=12)
        assert normal_form(example, h) == alg.as_normal_form(alg.reduce(h))


def test_nf_is_ring_homomorphism(example):
    rng = random.Random(4)
    alg = quotient_algebra(example)
    for _ in range(10):
        a = random_poly(rng, example.variables)
        b = random_poly(rng, example.variables)
        assert alg.reduce(a * b) == alg.multiply(alg.reduce(a), alg.reduce(b))


def test_generators_reduce_to_zero(example):
    for g in example.original.generators:
        assert not normal_form(example, g).coefficients


def test_context_mismatch(example):
    with pytest.raises(ContextError):
        normal_form(example, parse_polynomial("x + y", ("x", "y")))


def test_traces(example):
    v = example.variables
    assert trace(example, Polynomial.constant(v, 1)) == 30
    assert trace(example, parse_polynomial("x2", v)) == 5
    assert trace(example, parse_polynomial("x1^8*x2^2*x3^4", v)) == 16049138278


def test_dual_matrix(example):
    m = dual_matrix(example)
    assert m.is_symmetric()
    assert determinant(m) in (1, -1)
    assert rank_and_signature(m) == (30, 0)
    assert dual_matrix(example, method="series") == m
    rep = anti_triangular_report(dual_matrix(example, order="weighted"))
    assert rep == {"zero_above_antidiagonal": True, "unit_antidiagonal": True}
    # ascending lex does not have the property for this system
    assert not anti_triangular_report(m)["zero_above_antidiagonal"]


def test_nf_via_residues(example):
    rng = random.Random(9)
    m = dual_matrix(example)
    for _ in range(4):
        h = random_poly(rng, example.variables)
        assert nf_via_residues(example, h, m) == normal_form(example, h)
    h = random_poly(rng, example.variables)
    assert nf_via_residues(example, h, m, method="nf") == normal_form(example, h)


def test_bezoutian_projection(example):
    rng = random.Random(13)
    assert bezoutian(example.original).total_degree() == 8
    for _ in range(3):
        h = random_poly(rng, example.variables, deg=5, terms=3)
        assert normal_form(example, bezoutian_project(example, h)) == normal_form(example, h)


def test_bezoutian_of_linear_system():
    sys = PolySystem.parse(("x", "y"), ["2*x + y - 1", "x - y + 3"])
    # difference quotients of a linear map are its matrix
    assert bezoutian(sys) == Polynomial.constant(("y_x", "y_y", "x", "y"), -3)


def test_residue_via_nf_scaled_system():
    sys = PolySystem.parse(("x",), ["3*x^2 - 3"])
    p = verify_basis(sys, (1,))
    # roots +-1, g' = 6x
    assert residue_via_nf(p, parse_polynomial("x", ("x",))) == Fraction(1, 3)
