import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from flagherm.scalars import (
    I,
    ONE,
    ZERO,
    ExactScalar,
    add,
    mul,
    parse_rational,
    sqrt_rational,
    total,
)

RADICANDS = [1, 2, 3, 5, 6, 7, 10, 15, -1, -2, -3, -6]


def sq(m):
    return ExactScalar.from_terms({m: 1})


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def scalars(draw, max_terms=3):
    keys = draw(st.lists(st.sampled_from(RADICANDS), max_size=max_terms, unique=True))
    return ExactScalar.from_terms({k: draw(fractions) for k in keys})


def to_sympy(x: ExactScalar):
    out = sympy.Integer(0)
    for d, q in x.terms.items():
        root = sympy.sqrt(abs(d)) * (sympy.I if d < 0 else 1)
        out += sympy.Rational(q.numerator, q.denominator) * root
    return out


def same(x: ExactScalar, expr) -> bool:
    return sympy.simplify(to_sympy(x) - expr) == 0


def test_add_examples():
    half = Fraction(1, 2)
    assert add(sq(3) * half, sq(3) * half) == sq(3)
    assert add(sq(2), -sq(2)) == ZERO
    assert (ONE + sq(2)).terms == {1: 1, 2: 1}


def test_mul_examples():
    assert mul(sq(2), sq(2)) == ExactScalar(2)
    assert mul(sq(2), sq(3)) == sq(6)
    assert mul(sq(6), sq(10)) == sq(15) * 2


def test_sqrt_rational_examples():
    assert sqrt_rational(4) == ExactScalar(2)
    assert sqrt_rational(Fraction(1, 2)) == sq(2) * Fraction(1, 2)
    assert sqrt_rational(Fraction(8, 3)) == sq(6) * Fraction(2, 3)
    for q in (0, -1, Fraction(-1, 3)):
        with pytest.raises(ValueError):
            sqrt_rational(q)


def test_sqrt_rational_squares_thousand_random():
    rng = random.Random(1234)
    for _ in range(1000):
        q = Fraction(rng.randint(1, 500), rng.randint(1, 500))
        r = sqrt_rational(q)
        assert r.is_single_term()
        assert mul(r, r) == ExactScalar(q)


def test_radicands_square_free_and_no_zero_coefficients():
    x = ExactScalar.from_terms({8: 1, 12: 2, 18: Fraction(1, 3), 5: 0})
    assert x.terms == {2: 3, 3: 4}
    for d in x.terms:
        assert all(d % (p * p) for p in range(2, 10))


def test_zero_is_structural():
    assert ZERO.terms == {}
    assert not (sq(5) - sq(5)).terms
    assert not ZERO and ONE


def test_imaginary_unit():
    assert I * I == -ONE
    assert sq(-2) * sq(-3) == -sq(6)
    assert sq(-2) * sq(3) == sq(-6)
    assert I.conjugate() == -I


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO


@given(scalars())
def test_inverse_general(a):
    if a:
        assert a * a.inverse() == ONE
        assert a / a == ONE


@given(scalars(2), scalars(2))
def test_agrees_with_sympy(a, b):
    assert same(a * b, to_sympy(a) * to_sympy(b))
    assert same(a + b, to_sympy(a) + to_sympy(b))


@given(fractions, st.sampled_from([2, 3, 5, 6, 7, -1, -5]))
def test_single_term_division(q, m):
    if q:
        x = sq(m) * q
        y = sq(30) * Fraction(3, 7)
        assert (y / x) * x == y


def test_render_and_parse():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -4 ") == -4
    with pytest.raises(ValueError):
        parse_rational("sqrt(2)")
    assert (sq(3) * Fraction(1, 2)).render() == "1/2*sqrt(3)"
    assert (ONE + sq(2)).render() == "1+1*sqrt(2)"
    assert ZERO.render() == "0"
    assert abs((sq(2) + I).approx() - complex(2 ** 0.5, 1)) < 1e-12


def test_total():
    assert total([sq(2), sq(2), ONE]) == sq(2) * 2 + ONE
    assert total([]) == ZERO
