import random
from fractions import Fraction

import pytest

from gresidue.poly import Polynomial, PolySystem
from gresidue.weights import verify_basis

EXAMPLE_VARS = ("x1", "x2", "x3")
EXAMPLE_GENS = (
    "x1^5 + x2^3 + x3^2 - 1",
    "x1^2 + x2^2 + x3 - 1",
    "x1^6 + x2^5 + x3^3 - 1",
)
EXAMPLE_WEIGHT = (3, 4, 7)

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_RESULTS: dict = {}


def example_system() -> PolySystem:
    return PolySystem.parse(EXAMPLE_VARS, EXAMPLE_GENS)


@pytest.fixture(scope="session")
def example():
    return verify_basis(example_system(), EXAMPLE_WEIGHT)


def product_system(roots_per_var, names=None):
    """g_i = prod_k (x_i - a_ik): every root is simple when the a_ik are distinct."""
    n = len(roots_per_var)
    names = names or tuple(f"x{i + 1}" for i in range(n))
    gens = []
    for i, roots in enumerate(roots_per_var):
        g = Polynomial.constant(names, 1)
        xi = Polynomial.variable(names, i)
        for a in roots:
            g = g * (xi - a)
        gens.append(g)
    return PolySystem(names, tuple(gens))


def random_pure_power_system(rng: random.Random, w, r, terms=3, coeff=5):
    """Square system with in_w(g_i) = x_i^(r_i+1) plus random lower terms."""
    n = len(w)
    names = tuple(f"x{i + 1}" for i in range(n))
    gens = []
    for i in range(n):
        top = w[i] * (r[i] + 1)
        lead = [0] * n
        lead[i] = r[i] + 1
        t = {tuple(lead): 1}
        for _ in range(terms):
            e = [0] * n
            for _ in range(20):
                e = [rng.randint(0, r[k] + 2) for k in range(n)]
                if sum(a * b for a, b in zip(w, e)) < top:
                    break
            else:
                e = [0] * n
            c = Fraction(rng.randint(-coeff, coeff), rng.choice([1, 1, 2, 3]))
            if sum(a * b for a, b in zip(w, e)) < top:
                t[tuple(e)] = t.get(tuple(e), 0) + c
        gens.append(Polynomial(names, t))
    return PolySystem(names, tuple(gens))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, note = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {note}")
