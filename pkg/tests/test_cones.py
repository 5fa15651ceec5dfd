import pytest

from gresidue.cones import (
    build_cones,
    degree_bound_single,
    degree_bound_total,
    interior_weights,
    trace_degree_bound,
    vanishing_by_cone,
)
from gresidue.polyhedra import dual_generators, fm_feasible_point, primitive
from gresidue.errors import InfeasibleError
from gresidue.poly import parse_polynomial


def _normal(rays):
    return sorted(primitive(v) for v in rays)


def test_worked_example_cones(example):
    c = build_cones(example)
    assert _normal(c.W_rays) == _normal([(4, 5, 10), (1, 1, 2), (5, 6, 10), (2, 3, 5)])
    assert _normal(c.Wstar_rays) == _normal([(5, 0, -2), (0, 2, -1), (-2, 0, 1), (0, -5, 3)])
    assert not c.W_lines and not c.Wstar_lines
    assert c.in_W_interior(example.w)


def test_vanishing_by_cone(example):
    c = build_cones(example)
    assert vanishing_by_cone(c, (6, 1, 1), example.r)
    assert not vanishing_by_cone(c, (15, 15, 15), example.r)
    assert not vanishing_by_cone(c, example.r, example.r)


def test_wstar_facets_are_the_W_rays(example):
    c = build_cones(example)
    assert _normal(c.Wstar_inequalities) == _normal(c.W_rays)


def test_dual_of_orthant():
    rays, lines = dual_generators([(1, 0), (0, 1)], 2)
    assert sorted(rays) == [(0, 1), (1, 0)] and not lines


def test_fm_feasible_and_infeasible():
    pt = fm_feasible_point([((1, 0), 1), ((0, 1), 1), ((-1, -1), -5)], 2)
    assert pt[0] >= 1 and pt[1] >= 1 and pt[0] + pt[1] <= 5
    with pytest.raises(InfeasibleError):
        fm_feasible_point([((1,), 2), ((-1,), -1)], 1)


def test_degree_bounds(example):
    c = build_cones(example)
    a = (15, 15, 15)
    total = degree_bound_total(c, example, a)
    assert total >= 0
    # perturbing the constant of g1 (rho = (5,0,0))
    b = degree_bound_single(c, example, a, 0, (0, 0, 0))
    assert b is not None and b >= 0
    with pytest.raises(ValueError):
        degree_bound_single(c, example, a, 0, (1, 1, 1))
    with pytest.raises(ValueError):
        interior_weights(c, [(1, 1, 2)])  # a ray, not interior
    h = parse_polynomial("x1^8*x2^2*x3^4", example.variables)
    assert trace_degree_bound(c, example, h) > 0
