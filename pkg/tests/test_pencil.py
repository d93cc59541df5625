"""Pencil type: matrix view, classification, Schur complement, file format."""

from fractions import Fraction
from pathlib import Path

import pytest

from ratpencil.errors import SingularBlock
from ratpencil.fields import prime_field, rationals
from ratpencil.matrices import RationalMatrix, mat_det
from ratpencil.pencil import LinearPencil, RealizationKind
from ratpencil.poly import Polynomial, RationalFunction
from ratpencil.realize import realize_br

from conftest import (
    det_cofactor_oracle,
    random_matrix,
    schur_dense_oracle,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
Q = rationals()


@pytest.fixture(scope="module")
def golden_product():
    return LinearPencil.from_json((FIXTURES / "sbr_z1z2.json").read_text())


@pytest.fixture(scope="module")
def golden_homogeneous():
    return LinearPencil.from_json(
        (FIXTURES / "hsbr_z1z2_over_z3.json").read_text()
    )


def test_fixture_matrix_entries(golden_product):
    quarter = Fraction(1, 4)
    z1 = Polynomial.variable(Q, 2, 0)
    z2 = Polynomial.variable(Q, 2, 1)
    matrix = golden_product.as_matrix()
    assert matrix.entries[0][1] == RationalFunction((z1 + z2).scale(quarter))
    assert matrix.entries[0][2] == RationalFunction((z1 - z2).scale(-quarter))
    assert matrix.entries[1][1] == RationalFunction(
        Polynomial.constant(Q, 2, -quarter)
    )
    assert matrix.entries[2][2] == RationalFunction(
        Polynomial.constant(Q, 2, quarter)
    )


def test_zero_and_scalar_pencils():
    zero = LinearPencil.from_dense(Q, 1, 1, [[[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    z = RationalFunction.zero(Q, 1)
    assert zero.as_matrix() == RationalMatrix([[z, z], [z, z]])
    ident = LinearPencil.from_dense(Q, 1, 1, [[[0, 0], [0, 0]], [[1, 0], [0, 1]]])
    z1 = RationalFunction.variable(Q, 1, 0)
    assert ident.as_matrix() == RationalMatrix([[z1, z], [z, z1]])


def test_classify(golden_product, golden_homogeneous):
    assert golden_product.classify() == {"LP", "sLP"}
    assert golden_homogeneous.classify() == {"LP", "sLP", "hLP", "hsLP"}
    plain = LinearPencil.from_dense(
        Q, 1, 1, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    )
    assert plain.classify() == {"LP"}


def test_schur_golden(golden_product, golden_homogeneous):
    z1 = RationalFunction.variable(Q, 2, 0)
    z2 = RationalFunction.variable(Q, 2, 1)
    assert golden_product.schur_complement() == RationalMatrix.scalar(z1 * z2)
    w1, w2, w3 = (RationalFunction.variable(Q, 3, i) for i in range(3))
    assert golden_homogeneous.schur_complement() == RationalMatrix.scalar(
        w1 * w2 / w3
    )


def test_schur_block_diagonal():
    p = LinearPencil.from_dense(
        Q, 1, 1, [[[0, 0], [0, 1]], [[1, 0], [0, 0]]]
    )
    z1 = RationalFunction.variable(Q, 1, 0)
    assert p.schur_complement() == RationalMatrix.scalar(z1)


def test_schur_singular_block():
    p = LinearPencil.from_dense(Q, 1, 1, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]])
    with pytest.raises(SingularBlock):
        p.schur_complement()


def test_det_identity_golden(golden_product, golden_homogeneous):
    assert golden_product.det_identity_check()
    assert golden_homogeneous.det_identity_check()
    det = golden_product.det()
    z1 = RationalFunction.variable(Q, 2, 0)
    z2 = RationalFunction.variable(Q, 2, 1)
    expected = (z1 * z2).scale(Fraction(-1, 16))
    assert det == expected
    assert det == det_cofactor_oracle(golden_product.as_matrix())


def test_schur_matches_dense_oracle(rng):
    for _ in range(25):
        d = rng.choice([Q, prime_field(2), prime_field(3)])
        n = rng.randint(1, 3)
        k = rng.choice([1, 1, 2])
        target = random_matrix(rng, d, n, k, max_deg=2, max_terms=2)
        pencil = realize_br(target).pencil
        if pencil.m <= 14:
            assert pencil.schur_complement() == schur_dense_oracle(pencil)


def test_det_identity_randomized(rng):
    for _ in range(25):
        d = rng.choice([Q, prime_field(2), prime_field(3)])
        n = rng.randint(1, 3)
        target = random_matrix(rng, d, n, rng.choice([1, 2]), max_deg=2,
                               max_terms=2)
        pencil = realize_br(target).pencil
        assert pencil.det_identity_check()


def test_symmetric_pencils_have_symmetric_schur(rng):
    from ratpencil.combinators import op_symmetrize

    for _ in range(15):
        d = rng.choice([Q, prime_field(2), prime_field(3)])
        n = rng.randint(1, 3)
        target = random_matrix(rng, d, n, rng.choice([1, 2]), max_deg=2,
                               max_terms=2)
        pencil = op_symmetrize(realize_br(target).pencil)
        assert "sLP" in pencil.classify()
        assert pencil.schur_complement().is_symmetric()


def test_homogeneous_pencils_have_degree_one_schur(rng):
    from ratpencil.combinators import op_homogenize

    for _ in range(15):
        d = rng.choice([Q, prime_field(2), prime_field(3)])
        n = rng.randint(1, 3)
        target = random_matrix(rng, d, n, rng.choice([1, 2]), max_deg=2,
                               max_terms=2)
        pencil = op_homogenize(realize_br(target).pencil)
        assert "hLP" in pencil.classify()
        schur = pencil.schur_complement()
        assert all(e.is_homogeneous(1) for row in schur.entries for e in row)


def test_json_round_trip(golden_product, golden_homogeneous, rng):
    for pencil in (golden_product, golden_homogeneous):
        text = pencil.to_json()
        again = LinearPencil.from_json(text)
        assert again == pencil
        assert again.to_json() == text
    d = prime_field(5)
    target = random_matrix(rng, d, 2, 2, max_deg=2, max_terms=2)
    pencil = realize_br(target).pencil
    assert LinearPencil.from_json(pencil.to_json()) == pencil


def test_realization_kind_requirements():
    assert RealizationKind.BR.required_classes() == {"LP"}
    assert RealizationKind.SBR.required_classes() == {"LP", "sLP"}
    assert RealizationKind.HBR.required_classes() == {"LP", "hLP"}
    assert RealizationKind.HSBR.required_classes() == {
        "LP", "sLP", "hLP", "hsLP",
    }
