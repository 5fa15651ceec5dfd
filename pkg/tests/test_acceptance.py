"""Acceptance criteria 1-9 on the three-variable worked example.

Each test records a one-line verdict that is printed in the terminal
summary, whatever the assertion outcome.
"""

import itertools
import random
from fractions import Fraction

import pytest

from gresidue.cones import build_cones, vanishing_by_cone
from gresidue.linalg import determinant, eigen_sign_counts
from gresidue.normal_form import (
    anti_triangular_report,
    bezoutian_project,
    dual_matrix,
    monomial_basis,
    nf_via_residues,
    normal_form,
    residue_via_nf,
    trace,
)
from gresidue.poly import Polynomial, PolySystem, jacobian_determinant, parse_polynomial
from gresidue.polyhedra import primitive
from gresidue.residues import residue_monomial, residue_polynomial
from gresidue.roots import (
    TruncatedMultiSeries,
    chow_form,
    count_roots,
    log_chow,
    mapping_degree,
    series_exp,
    series_log,
    trace_form,
)
from gresidue.series import DeformationSeries, expand_product, homogenize, invert_series
from gresidue.transform import extended_buchberger, residue_general
from gresidue.weights import verify_basis

from conftest import (
    ACCEPTANCE_RESULTS,
    example_system,
    product_system,
    random_pure_power_system,
)
from test_normal_form import NF_J
from test_residues import simple_root_oracle

BIG = -258756707658424020014953731203

B2 = {(-10, -4, 0): 1, (-3, -4, -3): -1, (-5, 1, -5): 1, (-10, 3, -4): 1,
      (-15, -2, 1): 1, (-5, 8, -9): 1, (-5, -6, -1): 1}

TERM_COUNTS = {2: 7, 5: 41, 10: 216, 15: 569, 20: 1102, 25: 1803, 30: 2682, 35: 3744, 40: 4964}

LOG_R = {
    (0, 1, 0): 5, (0, 0, 1): -5,
    (1, 1, 0): 37, (1, 0, 1): -121, (0, 2, 0): Fraction(-35, 2), (0, 1, 1): 106,
    (0, 0, 2): Fraction(-485, 2),
    (3, 0, 0): 17, (2, 1, 0): -74, (2, 0, 1): 177, (1, 2, 0): -172, (1, 1, 1): 536,
    (1, 0, 2): -686, (0, 3, 0): Fraction(185, 3), (0, 2, 1): -667, (0, 1, 2): 1084,
}

R = {
    (0, 0, 0): 1, (0, 1, 0): 5, (0, 0, 1): -5,
    (1, 1, 0): 37, (1, 0, 1): -121, (0, 2, 0): -5, (0, 1, 1): 81, (0, 0, 2): -230,
    (3, 0, 0): 17, (2, 1, 0): -74, (2, 0, 1): 177, (1, 2, 0): 13, (1, 1, 1): -254,
    (1, 0, 2): -81, (0, 3, 0): -5, (0, 2, 1): -112, (0, 1, 2): -596,
}


def record(k, checks: dict, note=""):
    ok = all(checks.values())
    failed = [name for name, v in checks.items() if not v]
    text = note if ok else f"failed: {', '.join(failed)} {note}".strip()
    ACCEPTANCE_RESULTS[k] = (ok, text)
    return ok


@pytest.fixture(scope="module")
def ex():
    return verify_basis(example_system(), (3, 4, 7))


def test_criterion_1_profile(ex):
    checks = {
        "r": ex.r == (4, 1, 2),
        "d_w": ex.d_w == 44,
        "dim V": ex.dim == 30,
        "tr(1)": trace(ex, Polynomial.constant(ex.variables, 1)) == 30,
    }
    assert record(1, checks, "r=(4,1,2), d_w=44, dim V=30, tr(1)=30"), checks


def test_criterion_2_series(ex):
    s = DeformationSeries(ex, 40)
    counts = {j: s.term_count(j) for j in TERM_COUNTS}
    checks = {"B_2": dict(s.B(2).items()) == B2, "term counts": counts == TERM_COUNTS}
    assert record(2, checks, f"B_2 exact, counts {list(counts.values())}"), counts


def test_criterion_3_residues(ex):
    a = (15, 15, 15)
    fresh = DeformationSeries(ex, 0)
    by_series = residue_monomial(ex, a, fresh)
    by_nf = residue_via_nf(ex, Polynomial.monomial(ex.variables, a))
    small = (6, 1, 1)
    checks = {
        "series": by_series == BIG,
        "normal form": by_nf == BIG,
        "cone test (6,1,1)": vanishing_by_cone(build_cones(ex), small, ex.r),
        "computed (6,1,1)": residue_via_nf(ex, Polynomial.monomial(ex.variables, small)) == 0
        and residue_monomial(ex, small) == 0,
        "Res(x^r)": residue_monomial(ex, ex.r) == 1
        and residue_via_nf(ex, Polynomial.monomial(ex.variables, ex.r)) == 1,
    }
    assert record(3, checks, f"Res(x^(15,15,15)) = {BIG} by both routes"), checks


def test_criterion_4_nf_of_jacobian(ex):
    expected = parse_polynomial(NF_J, ex.variables)
    nf = normal_form(ex, jacobian_determinant(ex.original))
    checks = {
        "coefficients": nf.polynomial() == expected,
        "leading 30": nf.coefficient((4, 1, 2)) == 30,
        "constant 177": nf.coefficient((0, 0, 0)) == 177,
    }
    # the displayed normal form has 27 terms
    assert record(4, checks, f"{len(nf.coefficients)} terms equal to the displayed normal form"), checks


def test_criterion_5_trace_form(ex):
    tf = trace_form(ex)
    pos, neg, _ = eigen_sign_counts(tf.T)
    rep = count_roots(ex)
    checks = {
        "tr(x^(8,2,4))": trace(ex, Polynomial.monomial(ex.variables, (8, 2, 4))) == 16049138278,
        "rank 20": rep.rank == 20,
        "signature 6": rep.signature == 6,
        "13 positive / 7 negative": (pos, neg) == (13, 7),
    }
    assert record(5, checks, "tr=16049138278, rank 20, signature 6, eigenvalue signs 13/7"), checks


def test_criterion_6_dual_matrix(ex):
    weighted = dual_matrix(ex, order="weighted")
    lex = dual_matrix(ex)
    rep = anti_triangular_report(weighted)
    pos, neg, _ = eigen_sign_counts(lex)
    lex_rep = anti_triangular_report(lex)
    basis = monomial_basis(ex)
    offender = lex[basis.index((0, 0, 1)), basis.index((3, 1, 2))]
    checks = {
        "anti-triangular (weighted order)": rep["zero_above_antidiagonal"],
        "unit anti-diagonal (weighted order)": rep["unit_antidiagonal"],
        "det = +-1": determinant(lex) in (1, -1) and determinant(weighted) in (1, -1),
        "signature 0": pos - neg == 0,
        "mapping degree 0": mapping_degree(ex) == 0,
    }
    lex_ok = lex_rep["zero_above_antidiagonal"] and lex_rep["unit_antidiagonal"]
    note = ("weighted-degree order anti-triangular with unit anti-diagonal, "
            f"det {determinant(lex)}, signature 0, degree 0; plain lex order "
            f"{'also' if lex_ok else 'NOT'} anti-triangular "
            f"(M[(0,0,1),(3,1,2)] = {offender})")
    assert record(6, checks, note), checks


@pytest.mark.xfail(strict=True, reason="ascending lex order on the box is not anti-triangular "
                                        "for this system: M[(0,0,1),(3,1,2)] = Res(x^(3,1,3)) = 1")
def test_criterion_6_literal_lex_order(ex):
    rep = anti_triangular_report(dual_matrix(ex))
    assert rep["zero_above_antidiagonal"] and rep["unit_antidiagonal"]


def test_criterion_7_chow_form(ex):
    log_r = log_chow(ex, 3)
    r = chow_form(ex, 3)
    parts = log_r.homogeneous_parts()
    shown_log = {e: c for e, c in log_r.coefficients.items() if e in LOG_R}
    shown_r = {e: c for e, c in r.coefficients.items() if e in R}
    checks = {
        "log series": shown_log == LOG_R,
        "log series has no other terms below degree 3": all(
            e in LOG_R for d in (1, 2) for e in parts[d]),
        "exponentiated": shown_r == R,
        "exp(log R) = R": series_exp(log_r) == r,
    }
    assert record(7, checks, "log R and R match through total degree 3"), checks


def test_criterion_8_cones(ex):
    c = build_cones(ex)

    def norm(vs):
        return sorted(primitive(v) for v in vs)

    checks = {
        "W": norm(c.W_rays) == norm([(4, 5, 10), (1, 1, 2), (5, 6, 10), (2, 3, 5)]),
        "W*": norm(c.Wstar_rays) == norm([(5, 0, -2), (0, 2, -1), (-2, 0, 1), (0, -5, 3)]),
        "pointed": not c.W_lines and not c.Wstar_lines,
    }
    assert record(8, checks, "rays of W and W* as expected"), checks


# -- criterion 9: property suites ---------------------------------------------

PROPERTY_RESULTS: dict = {}


def _property(name, ok):
    PROPERTY_RESULTS[name] = ok
    record(9, PROPERTY_RESULTS, f"{sum(PROPERTY_RESULTS.values())}/{len(PROPERTY_RESULTS)} suites")
    return ok


def _random_poly(rng, v, deg, terms):
    return Polynomial(v, {tuple(rng.randint(0, deg) for _ in v): rng.randint(-9, 9)
                          for _ in range(terms)})


def test_criterion_9a_series_vs_normal_form(ex):
    rng = random.Random(2024)
    cases = 0
    ok = True
    v = ex.variables
    for _ in range(120):
        a = tuple(rng.randint(0, 12) for _ in v)
        h = Polynomial.monomial(v, a)
        ok &= residue_polynomial(ex, h) == residue_via_nf(ex, h)
        cases += 1
    for _ in range(40):
        h = _random_poly(rng, v, 10, 4)
        ok &= residue_polynomial(ex, h) == residue_via_nf(ex, h)
        cases += 1
    for _ in range(30):
        roots = [rng.sample(range(-4, 5), rng.randint(1, 3)) for _ in range(2)]
        p = verify_basis(product_system(roots), (1, 1))
        h = _random_poly(rng, p.variables, 6, 3)
        ok &= residue_polynomial(p, h) == residue_via_nf(p, h)
        cases += 1
    for _ in range(20):
        w = tuple(rng.randint(1, 3) for _ in range(3))
        r = tuple(rng.randint(0, 2) for _ in range(3))
        p = verify_basis(random_pure_power_system(rng, w, r), w)
        h = _random_poly(rng, p.variables, 7, 3)
        ok &= residue_polynomial(p, h) == residue_via_nf(p, h)
        cases += 1
    assert cases >= 200
    assert _property("9a residue_polynomial = residue_via_nf", ok)


def test_criterion_9b_simple_root_oracle():
    rng = random.Random(7)
    ok = True
    for _ in range(25):
        n = rng.choice([1, 2, 3])
        roots = [[Fraction(x, rng.choice([1, 2])) for x in rng.sample(range(-5, 6), rng.randint(1, 3))]
                 for _ in range(n)]
        roots = [sorted(set(rs)) for rs in roots]
        p = verify_basis(product_system(roots), (1,) * n)
        h = _random_poly(rng, p.variables, 5, 3)
        ok &= residue_polynomial(p, h) == simple_root_oracle(roots, h)
    assert _property("9b simple-root oracle", ok)


def test_criterion_9c_annihilation(ex):
    rng = random.Random(17)
    ok = True
    for _ in range(10):
        q = _random_poly(rng, ex.variables, 5, 3)
        for g in ex.original.generators:
            ok &= residue_polynomial(ex, q * g) == 0 and residue_via_nf(ex, q * g) == 0
    assert _property("9c duality annihilation", ok)


def test_criterion_9d_series_identities(ex):
    s = invert_series(ex, 40)
    a = expand_product(homogenize(ex))
    r1 = tuple(k + 1 for k in ex.r)
    one = Polynomial.constant(ex.variables, 1)
    ok = True
    for m in range(41):
        bm = s.B(m)
        ok &= all(-sum(w * (x + y) for w, x, y in zip(ex.w, e, r1)) == m for e, _ in bm.items())
        acc = Polynomial.zero(ex.variables)
        for j in range(min(m, len(a) - 1) + 1):
            acc = acc + a[j] * s.B(m - j)
        ok &= acc == (one if m == 0 else Polynomial.zero(ex.variables))
    assert _property("9d homogeneity and recursion residual, m <= 40", ok)


def test_criterion_9e_exp_log():
    rng = random.Random(5)
    ok = True
    for n in (1, 2, 3):
        for _ in range(6):
            coeffs = {e: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                      for e in itertools.product(range(5), repeat=n) if 0 < sum(e) <= 4}
            s = TruncatedMultiSeries([f"u{i}" for i in range(n)], 4, coeffs)
            ok &= series_log(series_exp(s)) == s
    assert _property("9e exp(log) identity", ok)


def test_criterion_9f_nf_via_residues(ex):
    rng = random.Random(23)
    m = dual_matrix(ex)
    ok = True
    for _ in range(5):
        h = _random_poly(rng, ex.variables, 9, 4)
        ok &= nf_via_residues(ex, h, m) == normal_form(ex, h)
    assert _property("9f nf_via_residues = normal_form", ok)


def test_criterion_9g_bezoutian(ex):
    rng = random.Random(29)
    ok = True
    for _ in range(3):
        h = _random_poly(rng, ex.variables, 5, 3)
        ok &= normal_form(ex, bezoutian_project(ex, h)) == normal_form(ex, h)
    assert _property("9g NF(bezoutian_project(h)) = NF(h)", ok)


def test_criterion_9h_transformation_law():
    sys = PolySystem.parse(("x1", "x2"), ["x1 + x2", "x1 - x2"])
    # check=True re-expands f = A g after every added element
    basis = extended_buchberger(sys, check=True)
    value = residue_general(sys, Polynomial.constant(sys.variables, 1), basis=basis)
    ok = basis.check_identity() and value == Fraction(-1, 2)
    assert _property("9h cofactor identity and Res = -1/2", ok)
