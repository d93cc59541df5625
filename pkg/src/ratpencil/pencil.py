"""Linear matrix pencils A(z) = A0 + z1*A1 + ... + zn*An with a 2x2 split.

Coefficient matrices are stored sparsely (one ``{(i, j): value}`` map per
coefficient index, raw field values).  Classification predicates are always
derived from the coefficients, never cached.  The JSON file format is dense:
``field``, ``n_vars``, ``m``, ``split``, and ``coeffs`` as n+1 row-major
m-by-m arrays of field-element strings; round-trips are bit-exact.
"""

from __future__ import annotations

import json
from enum import Enum

from .elimination import schur_eliminate, sparse_determinant
from .errors import DimensionMismatch
from .fields import FieldDescriptor, parse_field
from .matrices import RationalMatrix, mat_det
from .poly import Polynomial, RationalFunction


class RealizationKind(Enum):
    BR = "br"
    SBR = "sbr"
    HBR = "hbr"
    HSBR = "hsbr"

    @property
    def needs_symmetric(self) -> bool:
        return self in (RealizationKind.SBR, RealizationKind.HSBR)

    @property
    def needs_homogeneous(self) -> bool:
        return self in (RealizationKind.HBR, RealizationKind.HSBR)

    def required_classes(self) -> set[str]:
        out = {"LP"}
        if self.needs_symmetric:
            out.add("sLP")
        if self.needs_homogeneous:
            out.add("hLP")
        if self.needs_symmetric and self.needs_homogeneous:
            out.add("hsLP")
        return out


class LinearPencil:
    """An m-by-m affine pencil over n variables with (1,1) block size split."""

    __slots__ = ("descriptor", "n_vars", "m", "split", "coeffs")

    def __init__(self, descriptor: FieldDescriptor, n_vars: int, m: int,
                 split: int, coeffs):
        if m < 2:
            raise ValueError("pencil size must be at least 2")
        if not 1 <= split < m:
            raise ValueError("split must satisfy 1 <= split < m")
        if len(coeffs) != n_vars + 1:
            raise ValueError(f"expected {n_vars + 1} coefficient matrices")
        frozen = []
        for c in coeffs:
            clean = {}
            for (i, j), value in c.items():
                if not (0 <= i < m and 0 <= j < m):
                    raise ValueError(f"entry ({i}, {j}) outside {m}x{m}")
                value = descriptor.coerce(value)
                if value:
                    clean[(i, j)] = value
            frozen.append(clean)
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "split", split)
        object.__setattr__(self, "coeffs", tuple(frozen))

    def __setattr__(self, name, value):
        raise AttributeError("LinearPencil is immutable")

    @classmethod
    def from_dense(cls, descriptor, n_vars, split, matrices) -> "LinearPencil":
        """Build from n+1 dense m-by-m grids of raw values."""
        m = len(matrices[0])
        coeffs = []
        for grid in matrices:
            c = {}
            for i, row in enumerate(grid):
                for j, value in enumerate(row):
                    value = descriptor.coerce(value)
                    if value:
                        c[(i, j)] = value
            coeffs.append(c)
        return cls(descriptor, n_vars, m, split, coeffs)

    def __eq__(self, other):
        if not isinstance(other, LinearPencil):
            return NotImplemented
        return (
            self.descriptor == other.descriptor
            and self.n_vars == other.n_vars
            and self.m == other.m
            and self.split == other.split
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("LinearPencil is compared by value; not hashable")

    def __repr__(self):
        return (
            f"LinearPencil({self.descriptor.name()}, n={self.n_vars}, "
            f"m={self.m}, split={self.split})"
        )

    # -- structure ---------------------------------------------------------

    def is_symmetric(self) -> bool:
        return all(
            c.get((i, j)) == c.get((j, i))
            for c in self.coeffs
            for (i, j) in list(c)
        )

    def is_homogeneous(self) -> bool:
        return not self.coeffs[0]

    def classify(self) -> set[str]:
        """Structure classes: always LP; sLP/hLP/hsLP when earned."""
        out = {"LP"}
        if self.is_symmetric():
            out.add("sLP")
        if self.is_homogeneous():
            out.add("hLP")
        if "sLP" in out and "hLP" in out:
            out.add("hsLP")
        return out

    def transpose(self) -> "LinearPencil":
        coeffs = [
            {(j, i): value for (i, j), value in c.items()} for c in self.coeffs
        ]
        return LinearPencil(self.descriptor, self.n_vars, self.m, self.split, coeffs)

    def with_split(self, split: int) -> "LinearPencil":
        return LinearPencil(
            self.descriptor, self.n_vars, self.m, split,
            [dict(c) for c in self.coeffs],
        )

    # -- views ----------------------------------------------------------------

    def entry(self, i: int, j: int) -> Polynomial:
        """The (i, j) entry as a degree <= 1 polynomial."""
        terms = {}
        c0 = self.coeffs[0].get((i, j))
        if c0:
            terms[(0,) * self.n_vars] = c0
        for v in range(self.n_vars):
            cv = self.coeffs[v + 1].get((i, j))
            if cv:
                exps = tuple(1 if t == v else 0 for t in range(self.n_vars))
                terms[exps] = cv
        return Polynomial(self.descriptor, self.n_vars, terms)

    def sparse_rows(self) -> dict[int, dict[int, Polynomial]]:
        rows: dict[int, dict[int, Polynomial]] = {}
        cells = set()
        for c in self.coeffs:
            cells.update(c)
        for (i, j) in cells:
            rows.setdefault(i, {})[j] = self.entry(i, j)
        return rows

    def as_matrix(self) -> RationalMatrix:
        """Dense matrix of degree <= 1 polynomials A0 + sum z_j A_j."""
        return RationalMatrix(
            [
                [RationalFunction(self.entry(i, j)) for j in range(self.m)]
                for i in range(self.m)
            ]
        )

    # -- Schur complement and determinants ---------------------------------------

    def schur_complement(self) -> RationalMatrix:
        """A11 - A12 * A22^{-1} * A21, exact; raises SingularBlock."""
        result = schur_eliminate(
            self.sparse_rows(), self.m, self.split, self.descriptor, self.n_vars
        )
        return RationalMatrix(result.schur)

    def schur_with_dets(self):
        """(schur, det_block, det_full) from one elimination pass."""
        result = schur_eliminate(
            self.sparse_rows(), self.m, self.split, self.descriptor,
            self.n_vars, want_full_det=True,
        )
        return RationalMatrix(result.schur), result.det_block, result.det_full

    def block_det(self) -> RationalFunction:
        result = schur_eliminate(
            self.sparse_rows(), self.m, self.split, self.descriptor, self.n_vars
        )
        return result.det_block

    def det(self) -> RationalFunction:
        return sparse_determinant(
            self.sparse_rows(), self.m, self.descriptor, self.n_vars
        )

    def det_identity_check(self) -> bool:
        """det A = det(A22) * det(A / A22), checked exactly."""
        schur, det_block, det_full = self.schur_with_dets()
        return det_full == det_block * mat_det(schur)

    # -- file format ----------------------------------------------------------------

    def to_json(self) -> str:
        fmt = self.descriptor.format_value
        zero = self.descriptor.zero
        coeffs = [
            [
                [fmt(c.get((i, j), zero)) for j in range(self.m)]
                for i in range(self.m)
            ]
            for c in self.coeffs
        ]
        doc = {
            "field": self.descriptor.name(),
            "n_vars": self.n_vars,
            "m": self.m,
            "split": self.split,
            "coeffs": coeffs,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LinearPencil":
        doc = json.loads(text)
        descriptor = parse_field(doc["field"])
        n_vars = int(doc["n_vars"])
        m = int(doc["m"])
        split = int(doc["split"])
        raw = doc["coeffs"]
        if len(raw) != n_vars + 1:
            raise DimensionMismatch("coefficient count does not match n_vars")
        matrices = []
        for grid in raw:
            if len(grid) != m or any(len(row) != m for row in grid):
                raise DimensionMismatch("coefficient matrix is not m x m")
            matrices.append(
                [[descriptor.parse_value(cell) for cell in row] for row in grid]
            )
        return cls.from_dense(descriptor, n_vars, split, matrices)


def pencil_as_matrix(p: LinearPencil) -> RationalMatrix:
    return p.as_matrix()


def classify(p: LinearPencil) -> set[str]:
    return p.classify()


def schur_complement(p: LinearPencil) -> RationalMatrix:
    return p.schur_complement()


def det_identity_check(p: LinearPencil) -> bool:
    return p.det_identity_check()
