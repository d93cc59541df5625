"""Realization builders and the characteristic-2 decision procedure."""

import itertools

import pytest

from ratpencil.errors import (
    NotHomogeneousDegreeOne,
    NotRealizableChar2,
    NotSymmetric,
    TooFewVariables,
    WrongCharacteristic,
)
from ratpencil.fields import prime_field, rationals
from ratpencil.matrices import RationalMatrix
from ratpencil.pencil import RealizationKind
from ratpencil.poly import Polynomial, RationalFunction
from ratpencil.realize import (
    Char2Certificate,
    decide_and_realize_hsbr,
    decide_sbr,
    decide_sbr_scalar_char2,
    realize_br,
    realize_hbr,
    realize_sbr,
)
from ratpencil.verify import check_realization

from conftest import (
    random_degree_one_ratfun,
    random_matrix,
    random_poly,
    random_ratfun,
    random_symmetric_matrix,
)

Q = rationals()
G2 = prime_field(2)
G3 = prime_field(3)


def _z(d, n, i):
    return RationalFunction.variable(d, n, i)


def _check(result):
    report = check_realization(result.pencil, result.target, result.kind)
    assert report.passed, report.to_json()
    return result


# ---------------------------------------------------------------------------
# realize_br
# ---------------------------------------------------------------------------


def test_br_atomic_monomial():
    result = realize_br(RationalMatrix.scalar(_z(Q, 1, 0)))
    pencil = result.pencil
    assert pencil.m == 2 and pencil.split == 1
    z1 = Polynomial.variable(Q, 1, 0)
    assert pencil.entry(0, 0) == z1
    assert pencil.entry(1, 1) == Polynomial.one(Q, 1)
    assert pencil.entry(0, 1).is_zero() and pencil.entry(1, 0).is_zero()
    _check(result)


def test_br_gf2_product():
    _check(realize_br(RationalMatrix.scalar(_z(G2, 2, 0) * _z(G2, 2, 1))))


def test_br_rational_matrix():
    z1, z2 = _z(Q, 2, 0), _z(Q, 2, 1)
    one = RationalFunction.one(Q, 2)
    zero = RationalFunction.zero(Q, 2)
    _check(realize_br(RationalMatrix([[z1, one], [one / z2, zero]])))


def test_br_round_trip_randomized(rng):
    for trial in range(40):
        d = [Q, G2, G3][trial % 3]
        n = rng.randint(1, 3)
        k = rng.choice([1, 1, 2])
        _check(realize_br(random_matrix(rng, d, n, k)))


# ---------------------------------------------------------------------------
# realize_hbr
# ---------------------------------------------------------------------------


def test_hbr_examples():
    z1, z2, z3 = (_z(Q, 3, i) for i in range(3))
    result = _check(realize_hbr(RationalMatrix.scalar(z1 * z2 / z3)))
    assert result.pencil.is_homogeneous()

    single = _check(realize_hbr(RationalMatrix.scalar(_z(Q, 1, 0))))
    assert single.pencil.is_homogeneous()

    with pytest.raises(NotHomogeneousDegreeOne):
        realize_hbr(RationalMatrix.scalar(_z(Q, 2, 0) * _z(Q, 2, 1)))


def test_hbr_randomized(rng):
    for trial in range(25):
        d = [Q, G2, G3][trial % 3]
        n = rng.randint(1, 3)
        k = rng.choice([1, 2])
        target = RationalMatrix(
            [
                [random_degree_one_ratfun(rng, d, n) for _ in range(k)]
                for _ in range(k)
            ]
        )
        result = _check(realize_hbr(target))
        assert result.pencil.is_homogeneous()


# ---------------------------------------------------------------------------
# decide_sbr_scalar_char2
# ---------------------------------------------------------------------------


def test_decide_counterexamples():
    z1, z2 = _z(G2, 2, 0), _z(G2, 2, 1)
    cert = decide_sbr_scalar_char2(z1 * z2)
    assert not cert.realizable
    assert cert.offending_monomial == (1, 1)

    w1, w2, w3 = (_z(G2, 3, i) for i in range(3))
    cert = decide_sbr_scalar_char2(w1 * w2 + w3)
    assert not cert.realizable
    assert cert.offending_monomial == (1, 1, 0)


def test_decide_realizable_decomposition():
    z1, z2 = _z(G2, 2, 0), _z(G2, 2, 1)
    cert = decide_sbr_scalar_char2(z1 * z1 * z1 + z2)
    assert cert.realizable
    assert cert.decomposition == {
        (1, 0): Polynomial.monomial(G2, 2, (2, 0)),
        (0, 1): Polynomial.one(G2, 2),
    }
    # reassembly reproduces h
    h = Polynomial.monomial(G2, 2, (3, 0)) + Polynomial.monomial(G2, 2, (0, 1))
    rebuilt = Polynomial.zero(G2, 2)
    for beta, g in cert.decomposition.items():
        rebuilt = rebuilt + Polynomial.monomial(G2, 2, beta) * g
    assert rebuilt == h


def test_decide_preconditions():
    with pytest.raises(WrongCharacteristic):
        decide_sbr_scalar_char2(_z(Q, 2, 0))
    with pytest.raises(TooFewVariables):
        decide_sbr_scalar_char2(_z(G2, 1, 0))


def _decomposition_oracle(h: Polynomial) -> bool:
    """Exhaustive search for h = g0 + z1 g1 + z2 g2 with even-supported g_i.

    Enumerates every candidate decomposition within the degree bound of h;
    n = 2 and small degrees only.
    """
    assert h.n_vars == 2
    deg = h.total_degree()
    if deg == float("-inf"):
        return True
    bound = int(deg)
    even = [
        (a, b)
        for a in range(0, bound + 1, 2)
        for b in range(0, bound + 1 - a, 2)
    ]

    def subsets(exps_list):
        for size in range(len(exps_list) + 1):
            yield from itertools.combinations(exps_list, size)

    shifts = [(0, 0), (1, 0), (0, 1)]
    candidates = []
    for shift in shifts:
        candidates.append(
            [
                (e[0] + shift[0], e[1] + shift[1])
                for e in even
                if sum(e) + sum(shift) <= bound
            ]
        )
    for pick0 in subsets(candidates[0]):
        p0 = Polynomial(G2, 2, {e: 1 for e in pick0})
        for pick1 in subsets(candidates[1]):
            p1 = Polynomial(G2, 2, {e: 1 for e in pick1})
            partial = p0 + p1
            for pick2 in subsets(candidates[2]):
                p2 = Polynomial(G2, 2, {e: 1 for e in pick2})
                if partial + p2 == h:
                    return True
    return False


def test_decide_matches_exhaustive_oracle():
    monomials = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    for mask in range(64):
        terms = {
            monomials[i]: 1 for i in range(6) if mask & (1 << i)
        }
        h = Polynomial(G2, 2, terms)
        verdict = decide_sbr_scalar_char2(RationalFunction(h)).realizable
        assert verdict == _decomposition_oracle(h), str(h)


def test_decide_square_multiple_invariance(rng):
    for _ in range(60):
        n = rng.randint(2, 3)
        f = random_ratfun(rng, G2, n)
        q = random_poly(rng, G2, n, max_deg=2, max_terms=2, nonzero=True)
        scaled = RationalFunction(f.num * q * q, f.den)
        a = decide_sbr_scalar_char2(f).realizable
        b = decide_sbr_scalar_char2(scaled).realizable
        assert a == b


# ---------------------------------------------------------------------------
# realize_sbr
# ---------------------------------------------------------------------------


def test_sbr_examples():
    z1, z2 = _z(Q, 2, 0), _z(Q, 2, 1)
    result = _check(realize_sbr(RationalMatrix.scalar(z1 * z2)))
    assert result.pencil.is_symmetric()

    g1, g2 = _z(G2, 2, 0), _z(G2, 2, 1)
    with pytest.raises(NotRealizableChar2) as err:
        realize_sbr(RationalMatrix.scalar(g1 * g2))
    assert err.value.certificate.offending_monomial == (1, 1)

    target = RationalMatrix([[g1, g2], [g2, g1 * g1 * g1]])
    result = _check(realize_sbr(target))
    assert result.pencil.is_symmetric()


def test_sbr_not_symmetric():
    z1, z2 = _z(Q, 2, 0), _z(Q, 2, 1)
    zero = RationalFunction.zero(Q, 2)
    with pytest.raises(NotSymmetric):
        realize_sbr(RationalMatrix([[zero, z1], [z2, zero]]))


def test_sbr_mixed_verdict_reports_first_diagonal():
    g1, g2 = _z(G2, 2, 0), _z(G2, 2, 1)
    target = RationalMatrix([[g1, g2], [g2, g1 * g2]])
    with pytest.raises(NotRealizableChar2) as err:
        realize_sbr(target)
    assert err.value.diagonal == 1


def test_sbr_single_variable_all_fields(rng):
    for trial in range(18):
        d = [Q, G2, G3][trial % 3]
        f = random_ratfun(rng, d, 1, max_deg=4, max_terms=3)
        result = _check(realize_sbr(RationalMatrix.scalar(f)))
        assert result.pencil.is_symmetric()


def test_sbr_randomized(rng):
    for trial in range(30):
        d = [Q, G3, G2][trial % 3]
        n = rng.randint(1, 3)
        k = rng.choice([1, 1, 2])
        target = random_symmetric_matrix(rng, d, n, k)
        if d.characteristic == 2 and n >= 2:
            ok = all(
                decide_sbr_scalar_char2(target.entries[i][i]).realizable
                for i in range(k)
            )
            if not ok:
                with pytest.raises(NotRealizableChar2):
                    realize_sbr(target)
                continue
        result = _check(realize_sbr(target))
        assert result.pencil.is_symmetric()


# ---------------------------------------------------------------------------
# decide_and_realize_hsbr
# ---------------------------------------------------------------------------


def test_hsbr_examples():
    z1, z2, z3 = (_z(Q, 3, i) for i in range(3))
    result = decide_and_realize_hsbr(RationalMatrix.scalar(z1 * z2 / z3))
    _check(result)
    assert result.pencil.classify() == {"LP", "sLP", "hLP", "hsLP"}

    g1, g2, g3 = (_z(G2, 3, i) for i in range(3))
    cert = decide_and_realize_hsbr(RationalMatrix.scalar(g1 * g2 / g3))
    assert isinstance(cert, Char2Certificate)
    assert not cert.realizable
    assert cert.offending_monomial == (1, 1)

    single = decide_and_realize_hsbr(RationalMatrix.scalar(_z(Q, 1, 0)))
    _check(single)
    assert single.pencil.classify() >= {"hsLP"}


def test_hsbr_two_vars_char2_always_works(rng):
    for _ in range(10):
        f = random_degree_one_ratfun(rng, G2, 2)
        result = decide_and_realize_hsbr(RationalMatrix.scalar(f))
        assert not isinstance(result, Char2Certificate)
        _check(result)


def test_hsbr_randomized(rng):
    for trial in range(25):
        d = [Q, G3, G2][trial % 3]
        n = rng.randint(1, 3)
        k = rng.choice([1, 2])
        grid = [[None] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                entry = random_degree_one_ratfun(rng, d, n)
                grid[i][j] = grid[j][i] = entry
        target = RationalMatrix(grid)
        result = decide_and_realize_hsbr(target)
        if isinstance(result, Char2Certificate):
            assert d.characteristic == 2 and n >= 3
            continue
        _check(result)
        assert result.pencil.classify() >= {"hsLP"}


def test_decision_dispatchers():
    z1, z2 = _z(Q, 2, 0), _z(Q, 2, 1)
    assert decide_sbr(RationalMatrix.scalar(z1 * z2)).realizable
    g1, g2 = _z(G2, 2, 0), _z(G2, 2, 1)
    decision = decide_sbr(RationalMatrix.scalar(g1 * g2))
    assert not decision.realizable and decision.diagonal == 0
    assert decide_sbr(RationalMatrix.scalar(_z(G2, 1, 0))).realizable
