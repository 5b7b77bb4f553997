"""Exact matrices and subspaces over a field, plus the enumeration streams
used by the brute-force oracles.

Subspaces are canonicalized by the reduced row echelon form of their row
space, so equality, hashing and deduplication are structural and the
minimizers reported by the oracles are reproducible.  Enumeration order is
fixed: pivot-column sets lexicographically, then free entries filled
lexicographically.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .budgets import DEFAULT_BUDGETS, BudgetError, Budgets
from .fields import Field, Scalar


class LinalgError(ValueError):
    """Shape or field mismatch, or an unusable enumeration request."""


class _Echelon:
    """Incremental reduced-row-echelon accumulator over a fixed field.

    Rows are kept fully back-reduced and sorted by pivot column, so the row
    list is at all times the canonical RREF basis of the span of everything
    inserted so far.
    """

    __slots__ = ("field", "width", "rows", "pivots", "_p")

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self._p = field.characteristic

    def residual(self, row: Sequence[Scalar]) -> list:
        """Reduce ``row`` against the accumulated rows; zero iff row is in the span."""
        out = list(row)
        p = self._p
        if p:
            for r, c in zip(self.rows, self.pivots):
                f = out[c]
                if f:
                    out = [(a - f * b) % p for a, b in zip(out, r)]
        else:
            for r, c in zip(self.rows, self.pivots):
                f = out[c]
                if f:
                    out = [a - f * b for a, b in zip(out, r)]
        return out

    def insert(self, row: Sequence[Scalar]) -> bool:
        """Insert a row; return True iff it enlarged the span."""
        row = self.residual(row)
        lead = -1
        for c, v in enumerate(row):
            if v:
                lead = c
                break
        if lead < 0:
            return False
        p = self._p
        v = row[lead]
        if p:
            if v != 1:
                f = pow(v, p - 2, p)
                row = [(a * f) % p for a in row]
            for i, r in enumerate(self.rows):
                f = r[lead]
                if f:
                    self.rows[i] = [(a - f * b) % p for a, b in zip(r, row)]
        else:
            if v != 1:
                row = [a / v for a in row]
            for i, r in enumerate(self.rows):
                f = r[lead]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(r, row)]
        pos = bisect_left(self.pivots, lead)
        self.rows.insert(pos, row)
        self.pivots.insert(pos, lead)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def kernel_basis(self) -> list[list]:
        """One kernel vector per free column of the accumulated row space."""
        p = self._p
        zero, one = self.field.zero, self.field.one
        pivset = set(self.pivots)
        out = []
        for c in range(self.width):
            if c in pivset:
                continue
            v = [zero] * self.width
            v[c] = one
            for r, pc in zip(self.rows, self.pivots):
                x = r[c]
                if x:
                    v[pc] = (p - x) % p if p else -x
            out.append(v)
        return out


@dataclass(frozen=True)
class Matrix:
    """An immutable exact matrix.  ``entries`` is a row-major tuple grid."""

    field: Field
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]

    @staticmethod
    def from_rows(field: Field, rows: Iterable[Iterable]) -> "Matrix":
        grid = tuple(tuple(field.element(v) for v in row) for row in rows)
        ncols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != ncols:
                raise LinalgError("ragged rows in matrix construction")
        return Matrix(field, len(grid), ncols, grid)

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def matvec(self, vec: Sequence[Scalar]) -> tuple:
        if len(vec) != self.cols:
            raise LinalgError(f"matvec shape mismatch: {self.cols} columns vs vector of length {len(vec)}")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero
            for a, x in zip(row, vec):
                if a and x:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """The unique reduced row echelon form of ``m``, its rank and pivot columns."""
    ech = _Echelon(m.field, m.cols)
    for row in m.entries:
        ech.insert(row)
    zero_row = tuple(m.field.zero for _ in range(m.cols))
    grid = tuple(tuple(r) for r in ech.rows) + tuple(zero_row for _ in range(m.rows - ech.rank))
    return Matrix(m.field, m.rows, m.cols, grid), ech.rank, tuple(ech.pivots)


def kernel(m: Matrix) -> "Subspace":
    """The null space {x : m.x = 0}, canonicalized."""
    ech = _Echelon(m.field, m.cols)
    for row in m.entries:
        ech.insert(row)
    return Subspace.from_vectors(m.field, m.cols, ech.kernel_basis())


@dataclass(frozen=True)
class Subspace:
    """A subspace of L^n held as its canonical RREF basis (no zero rows).

    Two subspaces are equal iff their spans are equal iff the dataclasses
    compare equal.  Direct construction trusts the caller to pass RREF rows;
    use :meth:`from_vectors` for arbitrary generating sets.
    """

    field: Field
    ambient_dim: int
    basis: tuple[tuple[Scalar, ...], ...]

    @staticmethod
    def from_vectors(field: Field, ambient_dim: int, vectors: Iterable[Iterable]) -> "Subspace":
        ech = _Echelon(field, ambient_dim)
        for v in vectors:
            row = [field.element(x) for x in v]
            if len(row) != ambient_dim:
                raise LinalgError(f"vector of length {len(row)} in ambient dimension {ambient_dim}")
            ech.insert(row)
        return Subspace(field, ambient_dim, tuple(tuple(r) for r in ech.rows))

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, ())

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        z, o = field.zero, field.one
        rows = tuple(
            tuple(o if i == j else z for j in range(ambient_dim)) for i in range(ambient_dim)
        )
        return Subspace(field, ambient_dim, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.field, self.ambient_dim)
        ech.rows = [list(r) for r in self.basis]
        ech.pivots = [next(c for c, v in enumerate(r) if v) for r in self.basis]
        return ech

    def reduce(self, vector: Sequence[Scalar]) -> tuple:
        """Residual of ``vector`` after reduction against the basis."""
        if len(vector) != self.ambient_dim:
            raise LinalgError("vector length does not match ambient dimension")
        row = [self.field.element(x) for x in vector]
        return tuple(self._echelon().residual(row))

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return not any(self.reduce(vector))

    def to_json_dict(self) -> dict:
        f = self.field
        return {
            "ambient": self.ambient_dim,
            "basis": [[f.serialize_scalar(v) for v in row] for row in self.basis],
        }

    @staticmethod
    def from_json_dict(field: Field, data: dict) -> "Subspace":
        return Subspace.from_vectors(
            field, data["ambient"], [[field.parse_scalar(v) for v in row] for row in data["basis"]]
        )


def _require_compatible(a: Subspace, b: Subspace) -> None:
    if a.field != b.field or a.ambient_dim != b.ambient_dim:
        raise LinalgError(
            f"ambient mismatch: {a.field.name}^{a.ambient_dim} vs {b.field.name}^{b.ambient_dim}"
        )


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _require_compatible(a, b)
    ech = _Echelon(a.field, a.ambient_dim)
    for row in a.basis:
        ech.insert(row)
    for row in b.basis:
        ech.insert(row)
    return Subspace(a.field, a.ambient_dim, tuple(tuple(r) for r in ech.rows))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: row-reduce [A|A] over [B|0]; zero-left rows carry A cap B."""
    _require_compatible(a, b)
    n = a.ambient_dim
    zero = a.field.zero
    ech = _Echelon(a.field, 2 * n)
    for row in a.basis:
        ech.insert(list(row) + list(row))
    for row in b.basis:
        ech.insert(list(row) + [zero] * n)
    vectors = [r[n:] for r, piv in zip(ech.rows, ech.pivots) if piv >= n]
    return Subspace(a.field, n, tuple(tuple(v) for v in vectors))


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(p)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def gl_order(n: int, p: int) -> int:
    """Order of the general linear group GL(n, p)."""
    out = 1
    for i in range(n):
        out *= p**n - p**i
    return out


def _subspace_profiles(n: int, dims: Sequence[int]) -> Iterator[tuple[int, tuple[int, ...]]]:
    for k in dims:
        for pivots in itertools.combinations(range(n), k):
            yield k, pivots


def enumerate_subspaces(
    ambient_dim: int,
    dims: Iterable[int],
    field: Field,
    budgets: Budgets = DEFAULT_BUDGETS,
    part: tuple[int, int] | None = None,
) -> Iterator[Subspace]:
    """Stream every subspace of each requested dimension exactly once.

    The stream is deterministic: pivot-column sets in lexicographic order,
    then all fillings of the free entries in lexicographic order.  ``part``
    selects one of N disjoint round-robin slices of the pivot profiles, for
    order-independent parallel folds.
    """
    if not field.is_prime_field:
        raise LinalgError("non-enumerable field: subspace enumeration needs a prime field")
    cap = budgets.subspace_cap(field)
    if ambient_dim > cap:
        raise BudgetError(
            f"subspace enumeration over {field.name} is capped at ambient dimension {cap} "
            f"(requested {ambient_dim}; raise with --budget-subspaces)"
        )
    n = ambient_dim
    dims = sorted(set(dims))
    for k in dims:
        if k < 0 or k > n:
            raise LinalgError(f"requested dimension {k} outside [0, {n}]")
    p = field.characteristic
    values = tuple(range(p))
    for seq, (k, pivots) in enumerate(_subspace_profiles(n, dims)):
        if part is not None and seq % part[1] != part[0]:
            continue
        if k == 0:
            yield Subspace(field, n, ())
            continue
        pivset = set(pivots)
        free = [
            (r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset
        ]
        base = []
        for pc in pivots:
            row = [0] * n
            row[pc] = 1
            base.append(row)
        if not free:
            yield Subspace(field, n, tuple(tuple(r) for r in base))
            continue
        for fill in itertools.product(values, repeat=len(free)):
            rows = [row[:] for row in base]
            for (r, c), v in zip(free, fill):
                rows[r][c] = v
            yield Subspace(field, n, tuple(tuple(r) for r in rows))


def enumerate_unordered_bases(
    n: int,
    field: Field,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Iterator[tuple[tuple[Scalar, ...], ...]]:
    """Stream every unordered basis of L^n exactly once, as a sorted tuple of vectors.

    There are |GL(n, p)| / n! of them, which is why the budget cap is tight.
    """
    if not field.is_prime_field:
        raise LinalgError("non-enumerable field: basis enumeration needs a prime field")
    cap = budgets.basis_cap(field)
    if n > cap:
        raise BudgetError(
            f"unordered-basis enumeration over {field.name} is capped at dimension {cap} "
            f"(requested {n}; raise with --budget-bases)"
        )
    if n == 0:
        yield ()
        return
    p = field.characteristic
    vectors = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    for combo in itertools.combinations(vectors, n):
        ech = _Echelon(field, n)
        independent = True
        for v in combo:
            if not ech.insert(v):
                independent = False
                break
        if independent:
            yield combo
