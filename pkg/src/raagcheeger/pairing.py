"""(V, W, q) pairing triples: orthogonal complements, subspace Cheeger
constants, q-valence, pairing-connectedness, and the pivot augmentation.

Every mini-max invariant comes in two flavors that are never silently
substituted for one another: an exhaustive oracle that enumerates the whole
search space (subspaces, unordered basis pairs, direct-sum decompositions)
and, where a distinguished basis makes it legitimate, a coordinate fast path
restricted to that basis.  Verification code compares them explicitly.

Functions accept either a bare :class:`PairingTriple` or any object carrying
one in a ``pairing`` attribute (such as the cohomology triples built from
graphs).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .budgets import DEFAULT_BUDGETS, BudgetError, Budgets
from .fields import Field, Scalar
from .linalg import (
    LinalgError,
    Subspace,
    _Echelon,
    enumerate_subspaces,
    enumerate_unordered_bases,
    subspace_intersection,
)

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
COMPONENTWISE = "componentwise"


class PairingError(ValueError):
    """Malformed triple, foreign vector, or violated precondition."""


@dataclass(frozen=True)
class PairingTriple:
    """A W-valued bilinear pairing on V in tensor form.

    ``tensor[i][j]`` is the W-coordinate vector q(b_i, b_j) in the
    distinguished basis.  ``symmetry`` declares how the two slots interact;
    ``componentwise`` carries one sign per W coordinate in ``signs`` and is
    what the pivot augmentation produces in odd characteristic.
    """

    field: Field
    dim_v: int
    dim_w: int
    tensor: tuple[tuple[tuple[Scalar, ...], ...], ...]
    symmetry: str = ANTISYMMETRIC
    signs: tuple[int, ...] | None = None

    @staticmethod
    def of(
        field: Field,
        dim_v: int,
        dim_w: int,
        tensor: Iterable[Iterable[Iterable]],
        symmetry: str = ANTISYMMETRIC,
        signs: Sequence[int] | None = None,
    ) -> "PairingTriple":
        grid = tuple(
            tuple(tuple(field.element(x) for x in w) for w in row) for row in tensor
        )
        if len(grid) != dim_v or any(len(row) != dim_v for row in grid):
            raise PairingError(f"tensor is not {dim_v} x {dim_v}")
        for row in grid:
            for w in row:
                if len(w) != dim_w:
                    raise PairingError(f"tensor entry of length {len(w)}, expected {dim_w}")
        if symmetry == COMPONENTWISE:
            if signs is None or len(signs) != dim_w or any(s not in (1, -1) for s in signs):
                raise PairingError("componentwise symmetry needs a +-1 sign per W coordinate")
            sign_tuple: tuple[int, ...] | None = tuple(signs)
        elif symmetry in (SYMMETRIC, ANTISYMMETRIC):
            if signs is not None:
                raise PairingError(f"{symmetry} symmetry does not take a sign list")
            sign_tuple = None
        else:
            raise PairingError(f"unknown symmetry {symmetry!r}")
        triple = PairingTriple(field, dim_v, dim_w, grid, symmetry, sign_tuple)
        triple._check_symmetry()
        return triple

    def _check_symmetry(self) -> None:
        f = self.field
        for i in range(self.dim_v):
            for j in range(i, self.dim_v):
                a, b = self.tensor[i][j], self.tensor[j][i]
                for e in range(self.dim_w):
                    want = a[e] if self._sign(e) == 1 else f.neg(a[e])
                    if b[e] != want:
                        raise PairingError(
                            f"declared {self.symmetry} symmetry violated at entry ({i}, {j}), "
                            f"W coordinate {e}"
                        )

    def _sign(self, e: int) -> int:
        if self.symmetry == SYMMETRIC:
            return 1
        if self.symmetry == ANTISYMMETRIC:
            return -1
        assert self.signs is not None
        return self.signs[e]

    def to_json_dict(self) -> dict:
        f = self.field
        sym = {"componentwise": list(self.signs)} if self.symmetry == COMPONENTWISE else self.symmetry
        return {
            "field": f.name,
            "dimV": self.dim_v,
            "dimW": self.dim_w,
            "tensor": [
                [[f.serialize_scalar(x) for x in w] for w in row] for row in self.tensor
            ],
            "symmetry": sym,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "PairingTriple":
        field = Field.from_name(data["field"])
        sym = data["symmetry"]
        if isinstance(sym, dict):
            return PairingTriple.of(
                field, data["dimV"], data["dimW"], data["tensor"],
                COMPONENTWISE, sym["componentwise"],
            )
        return PairingTriple.of(field, data["dimV"], data["dimW"], data["tensor"], sym)


def _pairing(t) -> PairingTriple:
    return getattr(t, "pairing", t)


def zero_triple(dim_v: int, dim_w: int, field: Field, symmetry: str = ANTISYMMETRIC) -> PairingTriple:
    z = field.zero
    w = tuple(z for _ in range(dim_w))
    tensor = tuple(tuple(w for _ in range(dim_v)) for _ in range(dim_v))
    return PairingTriple.of(field, dim_v, dim_w, tensor, symmetry)


# -- the pairing itself ------------------------------------------------------


def apply_pairing(t, x: Sequence, y: Sequence) -> tuple:
    """q(x, y) as a W-coordinate tuple; bilinear in each slot."""
    pt = _pairing(t)
    f = pt.field
    xv = [f.element(v) for v in x]
    yv = [f.element(v) for v in y]
    if len(xv) != pt.dim_v or len(yv) != pt.dim_v:
        raise PairingError(f"vectors must have length {pt.dim_v}")
    acc = [f.zero] * pt.dim_w
    for i, xi in enumerate(xv):
        if not xi:
            continue
        row = pt.tensor[i]
        for j, yj in enumerate(yv):
            if not yj:
                continue
            w = row[j]
            c = f.mul(xi, yj)
            acc = [f.add(a, f.mul(c, we)) for a, we in zip(acc, w)]
    return tuple(acc)


def _coefficient_rows(pt: PairingTriple) -> list[list[list[Scalar]]]:
    """rows[i][e][j] = tensor[i][j][e]: the matrix of v -> q(b_i, v) per basis slot."""
    n, m = pt.dim_v, pt.dim_w
    return [[[pt.tensor[i][j][e] for j in range(n)] for e in range(m)] for i in range(n)]


def _complement_echelon(pt: PairingTriple, rows, basis: Sequence[Sequence[Scalar]]) -> _Echelon:
    """Row space of the stacked maps v -> q(f, v) over the given basis of F."""
    f = pt.field
    p = f.characteristic
    n, m = pt.dim_v, pt.dim_w
    ech = _Echelon(f, n)
    for vec in basis:
        support = [(i, c) for i, c in enumerate(vec) if c]
        for e in range(m):
            row = None
            for i, c in support:
                ri = rows[i][e]
                if row is None:
                    if p:
                        row = [(c * a) % p for a in ri]
                    else:
                        row = [c * a for a in ri]
                else:
                    if p:
                        row = [(a + c * b) % p for a, b in zip(row, ri)]
                    else:
                        row = [a + c * b for a, b in zip(row, ri)]
            if row is not None and any(row):
                ech.insert(row)
                if ech.rank == n:
                    return ech
    return ech


def orthogonal_complement(t, subspace: Subspace) -> Subspace:
    """C = {v : q(f, v) = 0 for every f in the subspace}.

    The declared (anti)symmetry makes the left and right complements agree,
    so only one side is computed.
    """
    pt = _pairing(t)
    if subspace.field != pt.field or subspace.ambient_dim != pt.dim_v:
        raise PairingError("subspace does not live in the triple's V")
    ech = _complement_echelon(pt, _coefficient_rows(pt), subspace.basis)
    return Subspace.from_vectors(pt.field, pt.dim_v, ech.kernel_basis())


def cheeger_of_subspace(t, subspace: Subspace) -> Fraction:
    """(dim V - dim F - dim C + dim(C n F)) / dim F for 0 < dim F <= (dim V)/2."""
    pt = _pairing(t)
    j = subspace.dim
    if j == 0 or 2 * j > pt.dim_v:
        raise PairingError(
            f"Cheeger quotient needs 0 < dim F <= {pt.dim_v}/2, got dim F = {j}"
        )
    comp = orthogonal_complement(t, subspace)
    inter = subspace_intersection(comp, subspace)
    return Fraction(pt.dim_v - j - comp.dim + inter.dim, j)


def _h_value(pt: PairingTriple, rows, basis: Sequence[Sequence[Scalar]]) -> Fraction:
    """h_F by the fused route: complement rank, then dim(C n F) via dim(C + F)."""
    n = pt.dim_v
    j = len(basis)
    ech = _complement_echelon(pt, rows, basis)
    dim_c = n - ech.rank
    if dim_c == 0:
        return Fraction(n - j, j)
    union = _Echelon(pt.field, n)
    for v in ech.kernel_basis():
        union.insert(v)
    for v in basis:
        union.insert(v)
    dim_int = dim_c + j - union.rank
    return Fraction(n - j - dim_c + dim_int, j)


# -- Cheeger constants -------------------------------------------------------


@dataclass(frozen=True)
class CheegerReport:
    """Outcome of a Cheeger minimization.  ``value`` None means undefined
    (no admissible subspace exists, i.e. dim V < 2)."""

    value: Fraction | None
    minimizer: Subspace | None
    method: str
    subspaces_visited: int

    def to_json_dict(self) -> dict:
        return {
            "value": "undefined" if self.value is None else str(self.value),
            "minimizer": None if self.minimizer is None else self.minimizer.to_json_dict(),
            "method": self.method,
            "subspaces_visited": self.subspaces_visited,
        }


def cheeger_constant_exhaustive(t, budgets: Budgets = DEFAULT_BUDGETS) -> CheegerReport:
    """Minimum of h_F over every subspace with 1 <= dim F <= (dim V)/2.

    Over a finite field the infimum is attained, so the report carries a
    witnessing minimizer: the first one in canonical enumeration order.
    h_F >= 0 always, so the scan stops early at a zero.
    """
    pt = _pairing(t)
    n = pt.dim_v
    if n < 2:
        return CheegerReport(None, None, "exhaustive", 0)
    rows = _coefficient_rows(pt)
    best: Fraction | None = None
    minimizer: Subspace | None = None
    visited = 0
    try:
        for sub in enumerate_subspaces(n, range(1, n // 2 + 1), pt.field, budgets):
            visited += 1
            h = _h_value(pt, rows, sub.basis)
            if best is None or h < best:
                best = h
                minimizer = sub
                if not h:
                    break
    except BudgetError as err:
        raise BudgetError(
            f"{err}; the coordinate fast path stays exact for cup-product triples"
        ) from None
    return CheegerReport(best, minimizer, "exhaustive", visited)


def cheeger_constant_coordinate(t, budgets: Budgets = DEFAULT_BUDGETS) -> CheegerReport:
    """Minimum of h_F over coordinate subspaces of the distinguished basis.

    For cup-product triples this equals the exhaustive minimum; for a general
    triple it is only an upper bound.  The ``budgets`` argument is unused and
    accepted for signature parity with the exhaustive oracle.
    """
    del budgets
    pt = _pairing(t)
    n = pt.dim_v
    if n < 2:
        return CheegerReport(None, None, "coordinate", 0)
    rows = _coefficient_rows(pt)
    f = pt.field
    zero, one = f.zero, f.one
    best: Fraction | None = None
    minimizer: Subspace | None = None
    visited = 0
    for size in range(1, n // 2 + 1):
        for combo in itertools.combinations(range(n), size):
            visited += 1
            basis = tuple(
                tuple(one if j == c else zero for j in range(n)) for c in combo
            )
            h = _h_value(pt, rows, basis)
            if best is None or h < best:
                best = h
                minimizer = Subspace(f, n, basis)
                if not h:
                    return CheegerReport(best, minimizer, "coordinate", visited)
    return CheegerReport(best, minimizer, "coordinate", visited)


# -- q-valence ---------------------------------------------------------------


@lru_cache(maxsize=8)
def _nonzero_grid(pt: PairingTriple):
    """All nonzero vectors of V (lexicographic), their index map, and the
    boolean grid nz[ix][iy] = (q(x, y) != 0)."""
    f = pt.field
    if not f.is_prime_field:
        raise LinalgError("non-enumerable field: vector enumeration needs a prime field")
    p = f.characteristic
    n, m = pt.dim_v, pt.dim_w
    vecs = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    index = {v: k for k, v in enumerate(vecs)}
    # images[i][iy] = q(b_i, y)
    images = []
    for i in range(n):
        row_i = pt.tensor[i]
        per = []
        for y in vecs:
            acc = [0] * m
            for j, yj in enumerate(y):
                if yj:
                    w = row_i[j]
                    acc = [(a + yj * b) % p for a, b in zip(acc, w)]
            per.append(acc)
        images.append(per)
    grid = []
    for x in vecs:
        support = [(i, xi) for i, xi in enumerate(x) if xi]
        out = []
        for iy in range(len(vecs)):
            acc = [0] * m
            for i, xi in support:
                acc = [(a + xi * b) % p for a, b in zip(acc, images[i][iy])]
            out.append(any(acc))
        grid.append(out)
    return vecs, index, grid


@lru_cache(maxsize=None)
def _all_unordered_bases(n: int, field: Field) -> tuple:
    unlimited = Budgets(basis_dim=n)
    return tuple(enumerate_unordered_bases(n, field, unlimited))


def q_valence_coordinate(t) -> int:
    """d_B(B) with B the distinguished basis: the largest number of basis
    vectors any single basis vector pairs nontrivially with.

    An upper bound on the q-valence in general, and exactly the q-valence for
    cup-product triples.
    """
    pt = _pairing(t)
    best = 0
    for i in range(pt.dim_v):
        count = sum(1 for j in range(pt.dim_v) if any(pt.tensor[i][j]))
        if count > best:
            best = count
    return best


def q_valence_exhaustive(t, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """min over unordered bases S and B of max_{s in S} #{b in B : q(s, b) != 0}.

    Branch-and-bound: the count for s against any basis B is at least
    dim q_s(V), because {q(s, b) : b in B} spans the image of q_s; a basis S
    whose rank lower bound already meets the best-so-far cannot improve it.
    The best-so-far starts at the coordinate value, which is itself a member
    of the search space.
    """
    pt = _pairing(t)
    n = pt.dim_v
    if n == 0:
        return 0
    if not pt.field.is_prime_field:
        raise LinalgError("non-enumerable field: q-valence oracle needs a prime field")
    cap = budgets.basis_cap(pt.field)
    if n > cap:
        raise BudgetError(
            f"unordered-basis enumeration over {pt.field.name} is capped at dimension {cap} "
            f"(requested {n}; raise with --budget-bases or use the coordinate upper bound)"
        )
    best = q_valence_coordinate(pt)
    if best == 0:
        return 0
    vecs, index, grid = _nonzero_grid(pt)
    # rank of v -> q(s, v) for each candidate s, reusing the coefficient rows
    rows = _coefficient_rows(pt)
    p = pt.field.characteristic
    rank_lb = []
    for s in vecs:
        ech = _Echelon(pt.field, n)
        support = [(i, c) for i, c in enumerate(s) if c]
        for e in range(pt.dim_w):
            row = [0] * n
            for i, c in support:
                ri = rows[i][e]
                row = [(a + c * b) % p for a, b in zip(row, ri)]
            if any(row):
                ech.insert(row)
        rank_lb.append(ech.rank)
    bases = _all_unordered_bases(n, pt.field)
    base_ix = [tuple(index[v] for v in basis) for basis in bases]
    for s_ixs in base_ix:
        if max(rank_lb[i] for i in s_ixs) >= best:
            continue
        s_rows = [grid[i] for i in s_ixs]
        for b_ixs in base_ix:
            cur = 0
            pruned = False
            for row in s_rows:
                count = 0
                for b in b_ixs:
                    if row[b]:
                        count += 1
                if count > cur:
                    cur = count
                    if cur >= best:
                        pruned = True
                        break
            if not pruned and cur < best:
                best = cur
                if best == 0:
                    return 0
    return best


# -- pairing-connectedness ---------------------------------------------------


def is_pairing_connected_exhaustive(t, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """True iff no nontrivial direct-sum decomposition V0 + V1 of V pairs to
    zero identically.

    Enumerates every decomposition: V0 runs over all subspaces of dimension
    at most (dim V)/2, V1 over all complements of V0 (graphs of linear maps
    from the non-pivot coordinate subspace into V0), and the pairing is
    checked on basis pairs, which suffices by bilinearity.
    """
    pt = _pairing(t)
    n = pt.dim_v
    if n <= 1:
        return True
    vecs, index, grid = _nonzero_grid(pt)
    p = pt.field.characteristic
    for v0 in enumerate_subspaces(n, range(1, n // 2 + 1), pt.field, budgets):
        k = v0.dim
        ixs0 = [index[row] for row in v0.basis]
        rows0 = [grid[ix] for ix in ixs0]
        # all elements of V0, for the per-coordinate complement rows
        elements = []
        for coeffs in itertools.product(range(p), repeat=k):
            acc = [0] * n
            for c, row in zip(coeffs, v0.basis):
                if c:
                    acc = [(a + c * b) % p for a, b in zip(acc, row)]
            elements.append(tuple(acc))
        pivots = set()
        for row in v0.basis:
            pivots.add(next(c for c, x in enumerate(row) if x))
        choice_ixs = []
        for c in range(n):
            if c in pivots:
                continue
            per = []
            for x in elements:
                y = list(x)
                y[c] = (y[c] + 1) % p
                per.append(index[tuple(y)])
            choice_ixs.append(per)
        for pick in itertools.product(range(len(elements)), repeat=len(choice_ixs)):
            all_zero = True
            for row in rows0:
                for sel, per in zip(pick, choice_ixs):
                    if row[per[sel]]:
                        all_zero = False
                        break
                if not all_zero:
                    break
            if all_zero:
                return False
    return True


# -- augmentation and the alternating witness --------------------------------


def augment_triple(t, pivot: int) -> PairingTriple:
    """Extend W by one coordinate that pairs the pivot basis vector with itself.

    The new coordinate is symmetric while the old ones keep their signs, so
    the result is recorded with componentwise symmetry.  The output is a bare
    pairing triple: whatever cohomology provenance the input had does not
    survive augmentation.
    """
    pt = _pairing(t)
    if not 0 <= pivot < pt.dim_v:
        raise PairingError(f"pivot {pivot} outside basis range 0..{pt.dim_v - 1}")
    if pt.symmetry == SYMMETRIC:
        old_signs = [1] * pt.dim_w
    elif pt.symmetry == ANTISYMMETRIC:
        old_signs = [-1] * pt.dim_w
    else:
        assert pt.signs is not None
        old_signs = list(pt.signs)
    one, zero = pt.field.one, pt.field.zero
    tensor = tuple(
        tuple(
            w + (one if i == pivot and j == pivot else zero,)
            for j, w in enumerate(row)
        )
        for i, row in enumerate(pt.tensor)
    )
    return PairingTriple.of(
        pt.field, pt.dim_v, pt.dim_w + 1, tensor, COMPONENTWISE, old_signs + [1]
    )


def is_alternating(t) -> bool:
    """True iff q(x, x) = 0 for every x: zero diagonal and an entrywise
    antisymmetric tensor.  Cup-product triples are alternating; augmented
    triples are not, which is the non-realizability witness."""
    pt = _pairing(t)
    f = pt.field
    for i in range(pt.dim_v):
        if any(pt.tensor[i][i]):
            return False
        for j in range(i + 1, pt.dim_v):
            a, b = pt.tensor[i][j], pt.tensor[j][i]
            if any(b[e] != f.neg(a[e]) for e in range(pt.dim_w)):
                return False
    return True


# -- random triples ----------------------------------------------------------


def random_triple(
    dim_v: int,
    dim_w: int,
    field: Field,
    seed,
    symmetry: str = ANTISYMMETRIC,
) -> PairingTriple:
    """Seeded random triple with the declared symmetry, over a prime field.

    Antisymmetry forces a zero diagonal in odd characteristic; over GF(2)
    the diagonal is free and sampled like any other entry.
    """
    if not field.is_prime_field:
        raise PairingError("random triples are generated over prime fields only")
    if symmetry not in (SYMMETRIC, ANTISYMMETRIC):
        raise PairingError(f"unsupported symmetry for random triples: {symmetry!r}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    p = field.characteristic
    grid = [[None] * dim_v for _ in range(dim_v)]
    for i in range(dim_v):
        for j in range(i, dim_v):
            w = tuple(rng.randrange(p) for _ in range(dim_w))
            if i == j:
                if symmetry == ANTISYMMETRIC and p != 2:
                    w = tuple(0 for _ in range(dim_w))
                grid[i][i] = w
            else:
                grid[i][j] = w
                if symmetry == SYMMETRIC:
                    grid[j][i] = w
                else:
                    grid[j][i] = tuple((-x) % p for x in w)
    tensor = tuple(tuple(row) for row in grid)
    return PairingTriple.of(field, dim_v, dim_w, tensor, symmetry)
