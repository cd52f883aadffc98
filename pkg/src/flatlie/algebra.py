"""Lie algebras over Q given by structure constants.

``[X_i, X_j] = sum_k c[i][j][k] X_k``.  Only the brackets with ``i < j`` are
stored; the rest follow from antisymmetry.  Basis indices are 0-based in the
Python API and 1-based in the text formats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import (
    DimensionError,
    Matrix,
    as_fraction,
    commutator,
    coordinates,
    is_zero_vector,
    linear_combination,
    nullspace,
    rank,
    rref,
    unit_vector,
    vadd,
    vscale,
    zero_vector,
)


class JacobiError(ValueError):
    """Structure constants violate the Jacobi identity."""


class GradingError(ValueError):
    """A graded decomposition is malformed or fails its bracket conditions."""


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    dim: int
    brackets: tuple = ()  # sorted ((i, j), coords) pairs, i < j, coords nonzero
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"X{i + 1}" for i in range(self.dim)))
        if len(self.labels) != self.dim:
            raise DimensionError(f"{len(self.labels)} labels for a {self.dim}-dimensional algebra")
        table = {}
        for (i, j), v in self.brackets:
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bracket index pair {(i, j)} must satisfy 0 <= i < j < {self.dim}")
            if len(v) != self.dim:
                raise DimensionError(f"bracket [{i},{j}] has {len(v)} coordinates, expected {self.dim}")
            table[(i, j)] = tuple(as_fraction(x) for x in v)
        object.__setattr__(self, "brackets", tuple(sorted((k, v) for k, v in table.items() if not is_zero_vector(v))))
        object.__setattr__(self, "_table", dict(self.brackets))

    @classmethod
    def from_constants(cls, name: str, dim: int, constants: Iterable, labels: Sequence[str] = ()) -> LieAlgebra:
        """Build from ``(i, j, k, c)`` quadruples meaning ``[X_i, X_j] += c X_k``.

        Pairs with ``i > j`` are accepted and folded in with a sign flip.
        """
        acc: dict = {}
        for i, j, k, c in constants:
            c = as_fraction(c)
            if i == j:
                if c != 0:
                    raise ValueError(f"[X_{i}, X_{i}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, -c
            row = acc.setdefault((i, j), [Fraction(0)] * dim)
            row[k] += c
        return cls(name, dim, tuple((key, tuple(v)) for key, v in acc.items()), tuple(labels))

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> LieAlgebra:
        return cls(name or f"a{dim}", dim)

    @classmethod
    def from_matrices(cls, name: str, basis: Sequence[Matrix], labels: Sequence[str] = ()) -> LieAlgebra:
        """Structure constants of a matrix Lie algebra in the given basis."""
        flat = [tuple(x for r in b.rows for x in r) for b in basis]
        if rank(flat) != len(basis):
            raise ValueError("basis matrices are linearly dependent")
        constants = []
        for i, j in combinations(range(len(basis)), 2):
            br = commutator(basis[i], basis[j])
            coords = coordinates(flat, tuple(x for r in br.rows for x in r))
            if coords is None:
                raise ValueError(f"span is not closed under commutators at ({i}, {j})")
            constants.extend((i, j, k, c) for k, c in enumerate(coords) if c)
        return cls.from_constants(name, len(basis), constants, labels)

    def basis_bracket(self, i: int, j: int) -> tuple:
        if i == j:
            return zero_vector(self.dim)
        if i < j:
            return self._table.get((i, j), zero_vector(self.dim))
        return vscale(-1, self._table.get((j, i), zero_vector(self.dim)))

    def constant(self, i: int, j: int, k: int) -> Fraction:
        return self.basis_bracket(i, j)[k]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return bracket(self, x, y)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        cols = [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        if not cols:
            return Matrix(())
        return Matrix.from_columns(cols)

    def basis(self) -> list[tuple]:
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return not self.brackets

    def renamed(self, name: str, labels: Sequence[str] | None = None) -> LieAlgebra:
        return LieAlgebra(name, self.dim, self.brackets, tuple(labels) if labels else self.labels)

    def subalgebra(self, indices: Sequence[int], name: str | None = None) -> LieAlgebra:
        """Subalgebra spanned by the listed basis vectors, in that order."""
        pos = {g: l for l, g in enumerate(indices)}
        constants = []
        for a, b in combinations(range(len(indices)), 2):
            v = self.basis_bracket(indices[a], indices[b])
            for k, c in enumerate(v):
                if c == 0:
                    continue
                if k not in pos:
                    raise ValueError(
                        f"span of {[i + 1 for i in indices]} is not closed: "
                        f"[{self.labels[indices[a]]}, {self.labels[indices[b]]}] leaves it")
                constants.append((a, b, pos[k], c))
        return LieAlgebra.from_constants(
            name or f"{self.name}|{','.join(str(i + 1) for i in indices)}",
            len(indices), constants, [self.labels[i] for i in indices])

    def structure_tensor(self) -> list:
        return [[list(self.basis_bracket(i, j)) for j in range(self.dim)] for i in range(self.dim)]


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    if len(x) != L.dim or len(y) != L.dim:
        raise DimensionError(f"vectors of length {len(x)}, {len(y)} in a {L.dim}-dimensional algebra")
    out = [Fraction(0)] * L.dim
    for (i, j), v in L.brackets:
        c = x[i] * y[j] - x[j] * y[i]
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def check_jacobi(L: LieAlgebra) -> list:
    """All basis triples ``i < j < k`` whose Jacobiator is nonzero, with the residual."""
    e = L.basis()
    bad = []
    for i, j, k in combinations(range(L.dim), 3):
        x, y, z = e[i], e[j], e[k]
        r = vadd(vadd(L.bracket(L.bracket(x, y), z), L.bracket(L.bracket(y, z), x)),
                 L.bracket(L.bracket(z, x), y))
        if not is_zero_vector(r):
            bad.append(((i, j, k), r))
    return bad


def require_jacobi(L: LieAlgebra) -> LieAlgebra:
    bad = check_jacobi(L)
    if bad:
        (i, j, k), r = bad[0]
        raise JacobiError(f"{L.name}: Jacobi identity fails at ({i + 1},{j + 1},{k + 1}), residual {r}")
    return L


# -- subspaces -------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of the ambient coordinate space, kept in reduced echelon form."""

    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise DimensionError("basis vector of wrong length")
        red, _ = rref(self.basis) if self.basis else ([], [])
        object.__setattr__(self, "basis", tuple(tuple(r) for r in red))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        return cls(ambient_dim, tuple(tuple(as_fraction(x) for x in v) for v in vectors))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> Subspace:
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in sorted(set(indices))))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        if is_zero_vector(v):
            return True
        if not self.basis:
            return False
        return rank(list(self.basis) + [list(v)]) == self.dim

    __contains__ = contains

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.ambient_dim, self.basis + other.basis)


def bracket_span(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace.span(L.dim, (L.bracket(x, y) for x in a.basis for y in b.basis))


def whole(L: LieAlgebra) -> Subspace:
    return Subspace.coordinate(L.dim, range(L.dim))


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    return Subspace.span(L.dim, (v for _, v in L.brackets))


def is_perfect(L: LieAlgebra) -> bool:
    return derived_subalgebra(L).dim == L.dim


def center(L: LieAlgebra) -> Subspace:
    if L.dim == 0:
        return Subspace(0)
    # x is central iff [x, X_j] = 0 for every j: stack the ad-columns as one linear system
    rows = []
    for j in range(L.dim):
        ej = unit_vector(L.dim, j)
        cols = [L.bracket(unit_vector(L.dim, i), ej) for i in range(L.dim)]
        rows.extend(Matrix.from_columns(cols).rows)
    return Subspace.span(L.dim, nullspace(Matrix(tuple(rows))))


def derived_series(L: LieAlgebra) -> list[Subspace]:
    series = [whole(L)]
    while True:
        nxt = bracket_span(L, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    series = [whole(L)]
    while True:
        nxt = bracket_span(L, whole(L), series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


# -- sums ------------------------------------------------------------------

def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n1, n = L1.dim, L1.dim + L2.dim
    constants = [(i, j, k, c) for (i, j), v in L1.brackets for k, c in enumerate(v) if c]
    constants += [(n1 + i, n1 + j, n1 + k, c) for (i, j), v in L2.brackets for k, c in enumerate(v) if c]
    return LieAlgebra.from_constants(name or f"{L1.name}+{L2.name}", n, constants,
                                     tuple(L1.labels) + tuple(L2.labels))


def is_derivation(L: LieAlgebra, d: Matrix) -> bool:
    e = L.basis()
    for i, j in combinations(range(L.dim), 2):
        lhs = d.apply(L.bracket(e[i], e[j]))
        rhs = vadd(L.bracket(d.apply(e[i]), e[j]), L.bracket(e[i], d.apply(e[j])))
        if lhs != rhs:
            return False
    return True


def semidirect_sum(h: LieAlgebra, k: LieAlgebra, action, name: str | None = None) -> LieAlgebra:
    """``h ⋉ k`` with ``[x, y] = action(x) y`` for x in h, y in k; h's basis first.

    ``action`` is an endomorphism-valued map with source ``h`` and target
    dimension ``k.dim`` (anything with ``.source`` and ``.mats``).
    """
    mats = list(action.mats)
    if action.source.dim != h.dim or len(mats) != h.dim:
        raise DimensionError("action must have one matrix per basis vector of h")
    if any(m.shape != (k.dim, k.dim) for m in mats):
        raise DimensionError(f"action matrices must be {k.dim}x{k.dim}")
    for i, m in enumerate(mats):
        if not is_derivation(k, m):
            raise ValueError(f"action({h.labels[i]}) is not a derivation of {k.name}")
    for i, j in combinations(range(h.dim), 2):
        lhs = linear_combination(h.basis_bracket(i, j), mats)
        if lhs != commutator(mats[i], mats[j]):
            raise ValueError(f"action is not a homomorphism at ({h.labels[i]}, {h.labels[j]})")
    nh = h.dim
    constants = [(i, j, c_k, c) for (i, j), v in h.brackets for c_k, c in enumerate(v) if c]
    constants += [(nh + i, nh + j, nh + c_k, c) for (i, j), v in k.brackets for c_k, c in enumerate(v) if c]
    for i, m in enumerate(mats):
        for j in range(k.dim):
            for r, c in enumerate(m.column(j)):
                if c:
                    constants.append((i, nh + j, nh + r, c))
    L = LieAlgebra.from_constants(name or f"{h.name}|x{k.name}", h.dim + k.dim, constants,
                                  tuple(h.labels) + tuple(k.labels))
    return require_jacobi(L)


# -- graded decompositions -------------------------------------------------

@dataclass(frozen=True)
class GradedDecomposition:
    """Index partition ``h | k_1 ... k_r | Z'`` (0-based basis indices).

    ``h_decomposition`` optionally decomposes the h-block itself (indices
    again global), for h-blocks that are not abelian.
    """

    h: tuple = ()
    layers: tuple = ()
    zprime: tuple = ()
    h_decomposition: GradedDecomposition | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in self.layers))
        object.__setattr__(self, "zprime", tuple(self.zprime))

    @property
    def k_part(self) -> tuple:
        return tuple(i for layer in self.layers for i in layer) + self.zprime

    def indices(self) -> list[int]:
        return list(self.h) + list(self.k_part)

    def layer_of(self) -> dict:
        """Basis index -> layer number (1-based); Z' indices map to None."""
        out = {i: n + 1 for n, layer in enumerate(self.layers) for i in layer}
        out.update({i: None for i in self.zprime})
        return out

    def check_partition(self, dim: int) -> None:
        idx = self.indices()
        if sorted(idx) != list(range(dim)):
            raise GradingError(f"index sets do not partition the basis of size {dim}: {[i + 1 for i in idx]}")
        if any(len(layer) == 0 for layer in self.layers):
            raise GradingError("empty k-layer")
        if self.h_decomposition is not None:
            sub = self.h_decomposition.indices()
            if sorted(sub) != sorted(self.h):
                raise GradingError("nested decomposition must partition the h-block")

    def shifted(self, offset: int) -> GradedDecomposition:
        sh = lambda t: tuple(i + offset for i in t)
        return GradedDecomposition(sh(self.h), tuple(sh(layer) for layer in self.layers), sh(self.zprime),
                                   self.h_decomposition.shifted(offset) if self.h_decomposition else None)


@dataclass(frozen=True)
class GradingViolation:
    condition: str
    pair: tuple
    residual: tuple

    def __str__(self):
        i, j = self.pair
        return f"{self.condition} at ({i + 1},{j + 1}): residual {self.residual}"


def validate_grading(L: LieAlgebra, d: GradedDecomposition) -> GradingViolation | None:
    """First bracket condition the decomposition violates, or None.

    Checks, in order: h closed under the bracket; Z' central in the k-part;
    [k_i, k_j] in k_{i+j} + Z'; [h, k_i] in k_i + Z'; [h, Z'] in Z'.
    """
    d.check_partition(L.dim)
    e = L.basis()
    n = L.dim
    zspace = Subspace.coordinate(n, d.zprime)
    layer_space = [Subspace.coordinate(n, layer) for layer in d.layers]

    def target(m: int) -> Subspace:
        return (layer_space[m - 1] if m <= len(d.layers) else Subspace(n)) + zspace

    hspace = Subspace.coordinate(n, d.h)
    for a, b in combinations(d.h, 2):
        v = L.bracket(e[a], e[b])
        if v not in hspace:
            return GradingViolation("[h,h] in h", (a, b), v)
    for x in d.k_part:
        for z in d.zprime:
            v = L.bracket(e[x], e[z])
            if any(v):
                return GradingViolation("Z' central in k", (x, z), v)
    for i, li in enumerate(d.layers, start=1):
        for j, lj in enumerate(d.layers, start=1):
            if j < i:
                continue
            t = target(i + j)
            for x in li:
                for y in lj:
                    v = L.bracket(e[x], e[y])
                    if v not in t:
                        return GradingViolation(f"[k{i},k{j}] in k{i + j}+Z'", (x, y), v)
    for x in d.h:
        for i, li in enumerate(d.layers, start=1):
            t = target(i)
            for y in li:
                v = L.bracket(e[x], e[y])
                if v not in t:
                    return GradingViolation(f"[h,k{i}] in k{i}+Z'", (x, y), v)
        for z in d.zprime:
            v = L.bracket(e[x], e[z])
            if v not in zspace:
                return GradingViolation("[h,Z'] in Z'", (x, z), v)
    if d.h_decomposition is not None:
        sub = L.subalgebra(d.h)
        pos = {g: l for l, g in enumerate(d.h)}
        nd = d.h_decomposition
        local = GradedDecomposition(tuple(pos[i] for i in nd.h),
                                    tuple(tuple(pos[i] for i in layer) for layer in nd.layers),
                                    tuple(pos[i] for i in nd.zprime))
        inner = validate_grading(sub, local)
        if inner is not None:
            a, b = inner.pair
            return GradingViolation("h-block: " + inner.condition, (d.h[a], d.h[b]),
                                    _lift(inner.residual, d.h, n))
    return None


def _lift(v: Sequence, indices: Sequence[int], n: int) -> tuple:
    out = [Fraction(0)] * n
    for c, i in zip(v, indices):
        out[i] = c
    return tuple(out)


def is_ideal(L: LieAlgebra, indices: Sequence[int]) -> bool:
    s = Subspace.coordinate(L.dim, indices)
    e = L.basis()
    return all(L.bracket(e[a], e[b]) in s for a in range(L.dim) for b in indices)
