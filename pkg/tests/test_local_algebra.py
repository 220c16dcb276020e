from fractions import Fraction

import pytest
import sympy

import oracles
from nalink.local_algebra import (
    a_type_equation,
    a_type_modulus,
    first_graded_drop,
    local_dimension,
    monomials,
    tjurina_number,
)


def test_monomial_count():
    assert len(monomials(3, 2)) == 6
    assert len(monomials(2, 4)) == 5


def test_milnor_algebra_of_plane_cusp():
    # y^2 - x^3: Jacobian ideal (x^2, y) has colength 2
    g = {(0, 2): Fraction(1), (3, 0): Fraction(-1)}
    assert tjurina_number(g, 2) == 2
    assert local_dimension([{(2, 0): Fraction(1)}, {(0, 1): Fraction(1)}], 2) == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_a_type_tjurina_matches_oracle(n):
    t, X, Y = sympy.symbols("t X Y")
    expected = oracles.tjurina_sympy(X * Y - t**n, (t, X, Y))
    assert tjurina_number(a_type_equation(n), 3) == expected == n - 1
    assert a_type_modulus(n) == n


def test_graded_criterion_does_not_see_the_modulus():
    drops = [first_graded_drop([a_type_equation(n)], 3) for n in range(1, 7)]
    assert drops == [1, 2, 2, 2, 2, 2]
