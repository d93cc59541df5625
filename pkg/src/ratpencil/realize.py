"""Constructive realization of rational matrix functions as pencil Schur
complements: plain, homogeneous, symmetric, and homogeneous-symmetric, with
the characteristic-2 decision procedures.

Everything is assembled from the combinators; precondition checks are
deferred during assembly (the outputs are verified independently by the
:mod:`ratpencil.verify` module and the test suite).  The builders make no
attempt to minimize pencil sizes — correctness of the Schur complement is
the only contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinators import (
    op_add,
    op_homogenize,
    op_inverse,
    op_kron_identity,
    op_product,
    op_sandwich,
    op_scale,
    op_symmetrize,
)
from .errors import (
    DimensionMismatch,
    NotHomogeneousDegreeOne,
    NotRealizableChar2,
    NotSymmetric,
    TooFewVariables,
    WrongCharacteristic,
)
from .matrices import RationalMatrix
from .pencil import LinearPencil, RealizationKind
from .poly import Polynomial, RationalFunction, grlex_key


@dataclass(frozen=True)
class RealizationResult:
    pencil: LinearPencil
    kind: RealizationKind
    target: RationalMatrix


@dataclass(frozen=True)
class Char2Certificate:
    """Outcome of the characteristic-2 parity test on h = num * den.

    ``realizable`` verdicts carry the decomposition ``h = sum_beta z^beta
    g_beta`` over beta in {0, e_1, ..., e_n} with every ``g_beta`` supported
    on even exponent vectors; ``not_realizable`` verdicts name a monomial of
    h whose exponent parity vector has weight >= 2.
    """

    verdict: str  # "realizable" | "not_realizable"
    decomposition: dict[tuple[int, ...], Polynomial] | None = None
    offending_monomial: tuple[int, ...] | None = None

    @property
    def realizable(self) -> bool:
        return self.verdict == "realizable"


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------


def _atom_one(descriptor, n_vars) -> LinearPencil:
    one = descriptor.one
    coeffs = [{(0, 0): one, (1, 1): one}] + [{} for _ in range(n_vars)]
    return LinearPencil(descriptor, n_vars, 2, 1, coeffs)


def _atom_var(descriptor, n_vars, index) -> LinearPencil:
    one = descriptor.one
    coeffs = [dict() for _ in range(n_vars + 1)]
    coeffs[0][(1, 1)] = one
    coeffs[index + 1][(0, 0)] = one
    return LinearPencil(descriptor, n_vars, 2, 1, coeffs)


def _zero_pencil(descriptor, n_vars, k) -> LinearPencil:
    """Realizes the k x k zero matrix: [[0, 0], [0, 1]] with split k."""
    coeffs = [{(k, k): descriptor.one}] + [{} for _ in range(n_vars)]
    return LinearPencil(descriptor, n_vars, k + 1, k, coeffs)


def _const_matrix_pencil(descriptor, n_vars, values) -> LinearPencil:
    """Realizes a constant k x k matrix B as [[B, 0], [0, 1]] with split k."""
    k = len(values)
    c0 = {}
    for i in range(k):
        for j in range(k):
            raw = descriptor.coerce(values[i][j])
            if raw:
                c0[(i, j)] = raw
    c0[(k, k)] = descriptor.one
    return LinearPencil(
        descriptor, n_vars, k + 1, k, [c0] + [{} for _ in range(n_vars)]
    )


def _identity_rows(descriptor, k):
    return [
        [descriptor.one if i == j else descriptor.zero for j in range(k)]
        for i in range(k)
    ]


def _basis_column(descriptor, k, i):
    return [[descriptor.one] if t == i else [descriptor.zero] for t in range(k)]


def _basis_row(descriptor, k, i):
    return [
        [descriptor.one if t == i else descriptor.zero for t in range(k)]
    ]


def _sorted_terms(p: Polynomial):
    return sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)


# ---------------------------------------------------------------------------
# plain realizations
# ---------------------------------------------------------------------------


def _br_monomial(descriptor, n_vars, exps) -> LinearPencil:
    factors = [v for v in range(n_vars) for _ in range(exps[v])]
    if not factors:
        return _atom_one(descriptor, n_vars)
    pencil = _atom_var(descriptor, n_vars, factors[0])
    for v in factors[1:]:
        pencil = op_product(pencil, None, _atom_var(descriptor, n_vars, v),
                            check=False)
    return pencil


def _br_poly_scalar(p: Polynomial) -> LinearPencil:
    d, n = p.descriptor, p.n_vars
    if p.is_zero():
        return _zero_pencil(d, n, 1)
    acc = None
    for exps, value in _sorted_terms(p):
        term = _br_monomial(d, n, exps)
        if value != d.one:
            term = op_scale(term, value, check=False)
        acc = term if acc is None else op_add(acc, term, check=False)
    return acc


def _br_poly_matrix(grid: list[list[Polynomial]]) -> LinearPencil:
    """BR of a k x k polynomial matrix written as sum_alpha z^alpha C_alpha."""
    k = len(grid)
    d, n = grid[0][0].descriptor, grid[0][0].n_vars
    if k == 1:
        return _br_poly_scalar(grid[0][0])
    support: dict[tuple[int, ...], list[list]] = {}
    for i in range(k):
        for j in range(k):
            for exps, value in grid[i][j].terms.items():
                coeff = support.setdefault(
                    exps, [[d.zero] * k for _ in range(k)]
                )
                coeff[i][j] = value
    if not support:
        return _zero_pencil(d, n, k)
    acc = None
    identity = _identity_rows(d, k)
    for exps in sorted(support, key=grlex_key, reverse=True):
        const = support[exps]
        if not any(e for e in exps):
            term = _const_matrix_pencil(d, n, const)
        else:
            base = op_kron_identity(_br_monomial(d, n, exps), k, check=False)
            term = op_sandwich(identity, base, const, check=False)
        acc = term if acc is None else op_add(acc, term, check=False)
    return acc


def realize_br(f: RationalMatrix) -> RealizationResult:
    """Bessmertnyi realization of an arbitrary square rational matrix.

    Pipeline: monomials as product chains of the atomic variable pencils,
    polynomials as scaled sums, matrix polynomials through Kronecker and
    sandwich steps, and F = (1/q) P via an inverted denominator pencil.
    """
    if not f.is_square():
        raise DimensionMismatch("realization needs a square matrix")
    d, n, k = f.descriptor, f.n_vars, f.rows
    one = Polynomial.one(d, n)
    dens = []
    for row in f.entries:
        for entry in row:
            if entry.den != one and all(entry.den != q for q in dens):
                dens.append(entry.den)
    if not dens:
        grid = [[entry.num for entry in row] for row in f.entries]
        pencil = _br_poly_matrix(grid)
    else:
        q = one
        for den in dens:
            q = q * den
        grid = []
        for row in f.entries:
            cleared = []
            for entry in row:
                scaled = entry.num
                for den in dens:
                    if den != entry.den:
                        scaled = scaled * den
                cleared.append(scaled)
            grid.append(cleared)
        p_pencil = _br_poly_matrix(grid)
        inv_q = op_inverse(_br_poly_scalar(q), check=False)
        pencil = op_product(
            op_kron_identity(inv_q, k, check=False), None, p_pencil, check=False
        )
    return RealizationResult(pencil, RealizationKind.BR, f)


def _homogeneous_pairs(f: RationalMatrix):
    pairs = []
    for row in f.entries:
        out_row = []
        for entry in row:
            pair = entry.homogeneous_pair(1)
            if pair is None:
                raise NotHomogeneousDegreeOne(
                    f"entry {entry} is not homogeneous of degree 1"
                )
            out_row.append(pair)
        pairs.append(out_row)
    return pairs


def _hbr_single_var(f: RationalMatrix, pairs) -> LinearPencil:
    d, k = f.descriptor, f.rows
    c0: dict = {}
    c1: dict = {}
    for i in range(k):
        for j in range(k):
            num, den = pairs[i][j]
            if num.is_zero():
                continue
            value = d.div(num.evaluate([d.one]), den.evaluate([d.one]))
            if value:
                c1[(i, j)] = value
    c1[(k, k)] = d.one
    return LinearPencil(d, 1, k + 1, k, [c0, c1])


def realize_hbr(f: RationalMatrix) -> RealizationResult:
    """Homogeneous realization of a matrix of degree-1 homogeneous entries.

    One variable: the pencil z1*A1 directly, padded with a z1 block.  More:
    dehomogenize at the last variable, realize, homogenize back.
    """
    if not f.is_square():
        raise DimensionMismatch("realization needs a square matrix")
    if f.n_vars < 1:
        raise NotHomogeneousDegreeOne("need at least one variable")
    pairs = _homogeneous_pairs(f)
    if f.n_vars == 1:
        pencil = _hbr_single_var(f, pairs)
    else:
        dropped = RationalMatrix(
            [
                [
                    RationalFunction(
                        num.dehomogenize_last(), den.dehomogenize_last()
                    )
                    for num, den in row
                ]
                for row in pairs
            ]
        )
        pencil = op_homogenize(realize_br(dropped).pencil, check=False)
    return RealizationResult(pencil, RealizationKind.HBR, f)


# ---------------------------------------------------------------------------
# characteristic-2 decision procedure
# ---------------------------------------------------------------------------


def decide_sbr_scalar_char2(f: RationalFunction) -> Char2Certificate:
    """Parity test for a symmetric realization of f = p/q in characteristic 2.

    The product h = p*q must have every monomial's exponent parity vector of
    Hamming weight at most one; the certificate carries the grouping of h by
    parity class (realizable) or the first offending monomial (grlex order).
    """
    if f.descriptor.characteristic != 2:
        raise WrongCharacteristic("decision procedure needs characteristic 2")
    if f.n_vars < 2:
        raise TooFewVariables(
            "one variable is unconditionally realizable; nothing to decide"
        )
    h = f.num * f.den
    for exps in sorted(h.terms, key=grlex_key, reverse=True):
        parity = tuple(e % 2 for e in exps)
        if sum(parity) >= 2:
            return Char2Certificate("not_realizable", offending_monomial=exps)
    buckets: dict[tuple[int, ...], dict] = {}
    for exps, value in h.terms.items():
        parity = tuple(e % 2 for e in exps)
        reduced = tuple(e - b for e, b in zip(exps, parity))
        buckets.setdefault(parity, {})[reduced] = value
    decomposition = {
        beta: Polynomial(f.descriptor, f.n_vars, terms)
        for beta, terms in buckets.items()
    }
    return Char2Certificate("realizable", decomposition=decomposition)


def _transposed(p: LinearPencil) -> LinearPencil:
    return p.transpose()


def _sym_square(p: LinearPencil, x=None) -> LinearPencil:
    """Symmetric pencil for (schur P) * X^{-1} * (schur P)^T."""
    return op_product(p, x, _transposed(p), check=False)


def _sbr_power_one_var(descriptor, e: int) -> LinearPencil:
    """Symmetric pencil realizing z1^e over one variable."""
    if e == 0:
        return _atom_one(descriptor, 1)
    if e == 1:
        return _atom_var(descriptor, 1, 0)
    half = e // 2
    base = _br_monomial(descriptor, 1, (half,))
    if e % 2 == 0:
        return _sym_square(base)
    z1 = RationalMatrix.scalar(RationalFunction.variable(descriptor, 1, 0))
    inv = op_inverse(base, check=False)
    return op_inverse(_sym_square(inv, z1), check=False)


def _sbr_poly_one_var(p: Polynomial) -> LinearPencil:
    d = p.descriptor
    if p.is_zero():
        return _zero_pencil(d, 1, 1)
    acc = None
    for exps, value in _sorted_terms(p):
        term = _sbr_power_one_var(d, exps[0])
        if value != d.one:
            term = op_scale(term, value, check=False)
        acc = term if acc is None else op_add(acc, term, check=False)
    return acc


def _sbr_square_over(x: Polynomial, base: LinearPencil) -> LinearPencil:
    """Symmetric pencil realizing x^2 * s^{-1} from a symmetric realizer of s.

    Route: with A the symmetric pencil realizing s, the (1,1) entry of
    A^{-1} is s^{-1}, so x^2 s^{-1} = e1^T (x E11) A^{-1} (x E11)^T e1 —
    a congruence by the rank-one x E11, built by sandwiching and a pencil
    product with middle factor A.
    """
    d = base.descriptor
    size = base.m
    col = _basis_column(d, size, 0)
    row = _basis_row(d, size, 0)
    wrapped = op_sandwich(col, _br_poly_scalar(x), row, check=False)
    congruence = op_product(wrapped, base, _transposed(wrapped), check=False)
    return op_sandwich(row, congruence, col, check=False)


def _sbr_from_certificate(cert: Char2Certificate, descriptor, n_vars) -> LinearPencil:
    """Symmetric pencil realizing h = sum_beta z^beta g_beta in char 2.

    Even classes become sums of scaled norms m * m^T; the z_i classes use the
    congruence (m z_i) z_i^{-1} (m z_i)^T = z_i m^2.
    """
    parts = []
    for beta in sorted(cert.decomposition, key=grlex_key, reverse=True):
        g = cert.decomposition[beta]
        index = next((t for t, b in enumerate(beta) if b), None)
        for exps, value in _sorted_terms(g):
            half = tuple(e // 2 for e in exps)
            if index is None:
                term = _sym_square(_br_monomial(descriptor, n_vars, half))
            else:
                shifted = tuple(
                    h + (1 if t == index else 0) for t, h in enumerate(half)
                )
                x = RationalMatrix.scalar(
                    RationalFunction.variable(descriptor, n_vars, index)
                )
                term = _sym_square(
                    _br_monomial(descriptor, n_vars, shifted), x
                )
            if value != descriptor.one:
                term = op_scale(term, value, check=False)
            parts.append(term)
    if not parts:
        return _zero_pencil(descriptor, n_vars, 1)
    acc = parts[0]
    for term in parts[1:]:
        acc = op_add(acc, term, check=False)
    return acc


def _sbr_scalar_char2(f: RationalFunction) -> LinearPencil:
    cert = decide_sbr_scalar_char2(f)
    if not cert.realizable:
        raise NotRealizableChar2(cert)
    if f.num.is_zero():
        return _zero_pencil(f.descriptor, f.n_vars, 1)
    base = _sbr_from_certificate(cert, f.descriptor, f.n_vars)
    if f.den == Polynomial.one(f.descriptor, f.n_vars):
        return base  # h = p * 1 is the function itself
    return _sbr_square_over(f.num, base)  # p^2 / (p q) = p / q


def _sbr_scalar_one_var(f: RationalFunction) -> LinearPencil:
    d = f.descriptor
    if f.num.is_zero():
        return _zero_pencil(d, f.n_vars, 1)
    if f.den == Polynomial.one(d, f.n_vars):
        return _sbr_poly_one_var(f.num)
    product = f.num * f.den
    return _sbr_square_over(f.num, _sbr_poly_one_var(product))


def _sbr_constant(f: RationalFunction) -> LinearPencil:
    d, n = f.descriptor, f.n_vars
    value = d.div(f.num.constant_value(), f.den.constant_value())
    if not value:
        return _zero_pencil(d, n, 1)
    return op_scale(_atom_one(d, n), value, check=False)


def _sbr_scalar(f: RationalFunction) -> LinearPencil:
    d = f.descriptor
    if f.n_vars == 0 or (f.num.is_constant() and f.den.is_constant()):
        return _sbr_constant(f)
    if f.n_vars == 1:
        return _sbr_scalar_one_var(f)
    if d.characteristic != 2:
        half = d.inv(d.add(d.one, d.one))
        plain = realize_br(RationalMatrix.scalar(f)).pencil
        return op_scale(op_symmetrize(plain, check=False), half, check=False)
    return _sbr_scalar_char2(f)


def _strict_upper(f: RationalMatrix) -> RationalMatrix:
    zero = RationalFunction.zero(f.descriptor, f.n_vars)
    return RationalMatrix(
        [
            [f.entries[i][j] if j > i else zero for j in range(f.cols)]
            for i in range(f.rows)
        ]
    )


def _sbr_matrix_by_diagonal(f: RationalMatrix, scalar_builder,
                            off_diagonal_builder) -> LinearPencil:
    """F = F_upp + F_upp^T + diag F with symmetric pieces summed."""
    d, k = f.descriptor, f.rows
    parts = []
    upper = _strict_upper(f)
    if any(not e.is_zero() for row in upper.entries for e in row):
        parts.append(op_symmetrize(off_diagonal_builder(upper), check=False))
    for i in range(k):
        try:
            scalar = scalar_builder(f.entries[i][i])
        except NotRealizableChar2 as exc:
            raise NotRealizableChar2(exc.certificate, diagonal=i) from None
        parts.append(
            op_sandwich(
                _basis_column(d, k, i), scalar, _basis_row(d, k, i), check=False
            )
        )
    acc = parts[0]
    for term in parts[1:]:
        acc = op_add(acc, term, check=False)
    return acc


def realize_sbr(f: RationalMatrix) -> RealizationResult:
    """Symmetric realization of a symmetric rational matrix.

    One variable uses the even/odd power constructions entrywise; away from
    characteristic 2 the whole matrix is realized as (1/2)(F + F^T); in
    characteristic 2 with n >= 2 each diagonal entry must pass the parity
    test, and the matrix is assembled from the certificate constructions.
    """
    if not f.is_square():
        raise DimensionMismatch("realization needs a square matrix")
    if not f.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    d, n, k = f.descriptor, f.n_vars, f.rows
    if n <= 1:
        if k == 1:
            pencil = _sbr_scalar(f.entries[0][0])
        else:
            pencil = _sbr_matrix_by_diagonal(
                f, _sbr_scalar, lambda upper: realize_br(upper).pencil
            )
    elif d.characteristic != 2:
        half = d.inv(d.add(d.one, d.one))
        pencil = op_scale(
            op_symmetrize(realize_br(f).pencil, check=False), half, check=False
        )
    else:
        for i in range(k):
            cert = decide_sbr_scalar_char2(f.entries[i][i])
            if not cert.realizable:
                raise NotRealizableChar2(cert, diagonal=i)
        if k == 1:
            pencil = _sbr_scalar_char2(f.entries[0][0])
        else:
            pencil = _sbr_matrix_by_diagonal(
                f, _sbr_scalar_char2, lambda upper: realize_br(upper).pencil
            )
    return RealizationResult(pencil, RealizationKind.SBR, f)


def decide_and_realize_hsbr(f: RationalMatrix):
    """Homogeneous symmetric realization, or the failing parity certificate.

    For n <= 2 or characteristic != 2 the symmetric realization of the
    dehomogenization is homogenized back.  In characteristic 2 with n >= 3
    every diagonal entry is dehomogenized at the last variable and must pass
    the parity test in n-1 variables; the first failure is returned as a
    :class:`Char2Certificate` instead of a pencil.
    """
    if not f.is_square():
        raise DimensionMismatch("realization needs a square matrix")
    if not f.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    pairs = _homogeneous_pairs(f)
    d, n, k = f.descriptor, f.n_vars, f.rows
    if n < 1:
        raise NotHomogeneousDegreeOne("need at least one variable")
    if n == 1:
        pencil = _hbr_single_var(f, pairs)
    else:
        dropped = RationalMatrix(
            [
                [
                    RationalFunction(
                        num.dehomogenize_last(), den.dehomogenize_last()
                    )
                    for num, den in row
                ]
                for row in pairs
            ]
        )
        if d.characteristic == 2 and n >= 3:
            for i in range(k):
                cert = decide_sbr_scalar_char2(dropped.entries[i][i])
                if not cert.realizable:
                    return cert
            if k == 1:
                pencil = op_homogenize(
                    _sbr_scalar_char2(dropped.entries[0][0]), check=False
                )
            else:
                pencil = _sbr_matrix_by_diagonal(
                    dropped,
                    _sbr_scalar_char2,
                    lambda upper: realize_br(upper).pencil,
                )
                pencil = op_homogenize(pencil, check=False)
        else:
            pencil = op_homogenize(realize_sbr(dropped).pencil, check=False)
    return RealizationResult(pencil, RealizationKind.HSBR, f)


# ---------------------------------------------------------------------------
# decision dispatchers (used by the CLI)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    realizable: bool
    reason: str
    diagonal: int | None = None
    certificate: Char2Certificate | None = None


def decide_sbr(f: RationalMatrix) -> Decision:
    """Does the symmetric matrix f have a symmetric realization?"""
    if not f.is_square() or not f.is_symmetric():
        return Decision(False, "matrix is not symmetric")
    if f.n_vars <= 1:
        return Decision(True, "single-variable functions always realize")
    if f.descriptor.characteristic != 2:
        return Decision(True, "characteristic is not 2")
    for i in range(f.rows):
        cert = decide_sbr_scalar_char2(f.entries[i][i])
        if not cert.realizable:
            return Decision(False, "parity obstruction", i, cert)
    return Decision(True, "all diagonal parity certificates pass")


def decide_hsbr(f: RationalMatrix) -> Decision:
    """Does f have a homogeneous symmetric realization?"""
    if not f.is_square() or not f.is_symmetric():
        return Decision(False, "matrix is not symmetric")
    try:
        pairs = _homogeneous_pairs(f)
    except NotHomogeneousDegreeOne:
        return Decision(False, "entries are not homogeneous of degree 1")
    if f.n_vars <= 2:
        return Decision(True, "at most two variables always realize")
    if f.descriptor.characteristic != 2:
        return Decision(True, "characteristic is not 2")
    for i in range(f.rows):
        num, den = pairs[i][i]
        g = RationalFunction(num.dehomogenize_last(), den.dehomogenize_last())
        cert = decide_sbr_scalar_char2(g)
        if not cert.realizable:
            return Decision(False, "parity obstruction after dehomogenizing",
                            i, cert)
    return Decision(True, "all diagonal parity certificates pass")
