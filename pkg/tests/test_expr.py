"""Expression grammar: parsing, precedence, errors, print round trips."""

import pytest

from ratpencil.errors import (
    DivisionByZeroPolynomial,
    FieldLiteralError,
    ParseError,
)
from ratpencil.expr import parse_expression
from ratpencil.fields import prime_field, rationals
from ratpencil.matrices import RationalMatrix
from ratpencil.poly import RationalFunction

from conftest import random_matrix, random_ratfun

Q = rationals()
G2 = prime_field(2)


def _z(d, n, i):
    return RationalFunction.variable(d, n, i)


def test_scalar_examples():
    out = parse_expression("z1*z2/z3", Q)
    assert out == RationalMatrix.scalar(_z(Q, 3, 0) * _z(Q, 3, 1) / _z(Q, 3, 2))


def test_matrix_literal_gf2():
    out = parse_expression("[[z1, z2],[z2, z1^3]]", G2)
    z1, z2 = _z(G2, 2, 0), _z(G2, 2, 1)
    assert out == RationalMatrix([[z1, z2], [z2, z1 * z1 * z1]])
    assert out.is_symmetric()


def test_field_literal_error_over_gf2():
    with pytest.raises(FieldLiteralError):
        parse_expression("1/2 * (z1+z2)", G2)


def test_division_by_zero_polynomial():
    with pytest.raises(DivisionByZeroPolynomial):
        parse_expression("1/(z1-z1)", Q)


def test_precedence():
    out = parse_expression("1+2*z1^2", Q)
    z1 = _z(Q, 1, 0)
    one = RationalFunction.one(Q, 1)
    assert out == RationalMatrix.scalar(one + (z1 * z1).scale(2))
    assert parse_expression("-z1^2", Q) == RationalMatrix.scalar(-(z1 * z1))
    assert parse_expression("2^3", Q) == RationalMatrix.scalar(
        RationalFunction.constant(Q, 0, 8)
    )


def test_parentheses_and_unary_minus():
    out = parse_expression("-(z1 - z2) * 3", Q)
    z1, z2 = _z(Q, 2, 0), _z(Q, 2, 1)
    assert out == RationalMatrix.scalar((z2 - z1).scale(3))


def test_nvars_inference_and_override():
    assert parse_expression("z2", Q).n_vars == 2
    assert parse_expression("z1", Q, n_vars=3).n_vars == 3
    with pytest.raises(ParseError):
        parse_expression("z3", Q, n_vars=2)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_expression("z1 + ", Q)
    assert err.value.position == 5
    with pytest.raises(ParseError) as err:
        parse_expression("z1 @ z2", Q)
    assert err.value.position == 3
    with pytest.raises(ParseError):
        parse_expression("z1 ^ z2", Q)
    with pytest.raises(ParseError):
        parse_expression("[[z1],[z1, z2]]", Q)
    with pytest.raises(ParseError):
        parse_expression("[[ [[1,0],[0,1]] ]]", Q)


def test_matrix_arithmetic_in_expressions():
    out = parse_expression("[[1,0],[0,1]] * [[z1, 0],[0, z2]]", Q)
    assert out == parse_expression("[[z1, 0],[0, z2]]", Q)
    doubled = parse_expression("2 * [[z1, 0],[0, z2]]", Q)
    z1, z2 = _z(Q, 2, 0), _z(Q, 2, 1)
    zero = RationalFunction.zero(Q, 2)
    assert doubled == RationalMatrix([[z1.scale(2), zero], [zero, z2.scale(2)]])


def test_print_parse_round_trip(rng):
    for trial in range(60):
        d = [Q, G2, prime_field(5)][trial % 3]
        n = rng.randint(1, 3)
        f = random_ratfun(rng, d, n)
        again = parse_expression(str(f), d, n)
        assert again == RationalMatrix.scalar(f)


def test_print_parse_round_trip_matrix(rng):
    for trial in range(10):
        d = [Q, prime_field(3)][trial % 2]
        m = random_matrix(rng, d, 2, 2, max_deg=2, max_terms=2)
        text = (
            "[["
            + "],[".join(
                ", ".join(str(e) for e in row) for row in m.entries
            )
            + "]]"
        )
        assert parse_expression(text, d, 2) == m
