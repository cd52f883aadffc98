"""Witnesses for flat affine and flat projective structures, and their checks.

An affine witness is an :class:`EndoValuedMap` ``g`` with
``g(x)y - g(y)x = [x, y]`` (torsion-free) that is a Lie algebra
homomorphism into ``gl`` (flat).  A projective witness is a
:class:`GradedHom`: a homomorphism ``f`` into ``sl(n+1)`` whose matrices are
stored blockwise as ``[[B, u], [xi, corner]]``; the extra basis vector ``e``
is always the last one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import LieAlgebra, direct_sum, is_ideal, Subspace
from .linalg import (
    DimensionError,
    Matrix,
    as_fraction,
    commutator,
    format_vector,
    is_zero_vector,
    linear_combination,
    solve_linear,
    unit_vector,
    vsub,
    zero_vector,
)


class PreconditionError(ValueError):
    """An operation was called on input that does not meet its contract."""


class CertificationError(AssertionError):
    """A constructed witness failed re-verification."""


@dataclass(frozen=True)
class EndoValuedMap:
    """Linear map ``x -> mats[x]`` from ``source`` into ``m x m`` matrices."""

    source: LieAlgebra
    mats: tuple
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        if len(self.mats) != self.source.dim:
            raise DimensionError(f"{len(self.mats)} matrices for a {self.source.dim}-dimensional source")
        if self.mats:
            m = self.mats[0].n_rows
            if any(a.shape != (m, m) for a in self.mats):
                raise DimensionError("matrices must be square and of equal size")

    @property
    def target_dim(self) -> int:
        return self.mats[0].n_rows if self.mats else 0

    def __call__(self, x: Sequence) -> Matrix:
        if len(x) != self.source.dim:
            raise DimensionError("argument length does not match source dimension")
        return linear_combination(x, self.mats)

    @classmethod
    def zero(cls, L: LieAlgebra, m: int | None = None) -> EndoValuedMap:
        m = L.dim if m is None else m
        return cls(L, tuple(Matrix.zeros(m) for _ in range(L.dim)))

    @classmethod
    def adjoint(cls, L: LieAlgebra, scale=1) -> EndoValuedMap:
        return cls(L, tuple(L.ad(e).scale(scale) for e in L.basis()))


@dataclass(frozen=True)
class GradedHom:
    """Linear map into ``sl(n+1)`` stored blockwise per basis vector."""

    source: LieAlgebra
    B: tuple
    u: tuple
    xi: tuple
    corner: tuple
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = self.source.dim
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "u", tuple(tuple(as_fraction(a) for a in v) for v in self.u))
        object.__setattr__(self, "xi", tuple(tuple(as_fraction(a) for a in v) for v in self.xi))
        object.__setattr__(self, "corner", tuple(as_fraction(c) for c in self.corner))
        if not (len(self.B) == len(self.u) == len(self.xi) == len(self.corner) == n):
            raise DimensionError("one block set per basis vector is required")
        for i in range(n):
            if self.B[i].shape != (n, n) or len(self.u[i]) != n or len(self.xi[i]) != n:
                raise DimensionError(f"block shapes wrong at basis vector {i + 1}")
            if self.B[i].trace() + self.corner[i] != 0:
                raise ValueError(f"assembled matrix at basis vector {i + 1} is not traceless")

    @property
    def n(self) -> int:
        return self.source.dim

    def assembled(self, i: int) -> Matrix:
        rows = [tuple(r) + (self.u[i][k],) for k, r in enumerate(self.B[i].rows)]
        rows.append(tuple(self.xi[i]) + (self.corner[i],))
        return Matrix(tuple(rows))

    def matrices(self) -> tuple:
        return tuple(self.assembled(i) for i in range(self.n))

    def __call__(self, x: Sequence) -> Matrix:
        return linear_combination(x, self.matrices())

    @classmethod
    def from_assembled(cls, source: LieAlgebra, mats: Sequence[Matrix], provenance=()) -> GradedHom:
        n = source.dim
        if len(mats) != n or any(m.shape != (n + 1, n + 1) for m in mats):
            raise DimensionError(f"need {n} matrices of size {n + 1}")
        idx = range(n)
        return cls(
            source,
            tuple(m.submatrix(idx, idx) for m in mats),
            tuple(m.column(n)[:n] for m in mats),
            tuple(m.rows[n][:n] for m in mats),
            tuple(m.rows[n][n] for m in mats),
            tuple(provenance),
        )


@dataclass(frozen=True)
class Counterexample:
    predicate: str
    indices: tuple
    residual: object

    def __str__(self):
        where = ",".join(str(i + 1) for i in self.indices)
        res = format_vector(self.residual) if isinstance(self.residual, tuple) else str(self.residual)
        return f"{self.predicate} at ({where}): residual {res}"


@dataclass(frozen=True)
class WitnessCertificate:
    kind: str
    algebra: str
    checks_passed: tuple = ()
    counterexample: Counterexample | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"PASS {self.kind} {self.algebra} [{', '.join(self.checks_passed)}]"
        return f"FAIL {self.counterexample}"


# -- affine checks ---------------------------------------------------------

def _require_square_on(L: LieAlgebra, g: EndoValuedMap) -> None:
    if g.source.dim != L.dim or g.target_dim != L.dim:
        raise DimensionError(f"map does not act on the {L.dim}-dimensional algebra {L.name}")


def check_star(L: LieAlgebra, g: EndoValuedMap) -> Counterexample | None:
    """First basis pair where ``g(x)y - g(y)x != [x, y]``."""
    _require_square_on(L, g)
    e = L.basis()
    for i, j in combinations(range(L.dim), 2):
        r = vsub(vsub(g.mats[i].apply(e[j]), g.mats[j].apply(e[i])), L.basis_bracket(i, j))
        if not is_zero_vector(r):
            return Counterexample("star", (i, j), r)
    return None


def check_endo_hom(L: LieAlgebra, g: EndoValuedMap) -> Counterexample | None:
    """First basis pair where ``g([x, y]) != [g(x), g(y)]``."""
    _require_square_on(L, g)
    return _first_hom_failure(L, g.mats, "endo-hom")


def _first_hom_failure(L: LieAlgebra, mats: Sequence[Matrix], predicate: str) -> Counterexample | None:
    for i, j in combinations(range(L.dim), 2):
        r = linear_combination(L.basis_bracket(i, j), mats) - commutator(mats[i], mats[j])
        if not r.is_zero():
            return Counterexample(predicate, (i, j), r)
    return None


def verify_ifas(L: LieAlgebra, g: EndoValuedMap) -> WitnessCertificate:
    cex = check_star(L, g)
    if cex is not None:
        return WitnessCertificate("ifas", L.name, (), cex)
    cex = check_endo_hom(L, g)
    if cex is not None:
        return WitnessCertificate("ifas", L.name, ("star",), cex)
    return WitnessCertificate("ifas", L.name, ("star", "endo-hom"))


def _gamma(g: EndoValuedMap) -> list:
    # gamma[i][j][k] = k-th coordinate of g(X_i) X_j
    n = g.source.dim
    m = g.target_dim
    return [[[g.mats[i].rows[k][j] for k in range(m)] for j in range(m)] for i in range(n)]


def torsion(L: LieAlgebra, g: EndoValuedMap) -> list:
    """Full residual tensor ``T[i][j] = g(X_i)X_j - g(X_j)X_i - [X_i, X_j]``."""
    _require_square_on(L, g)
    n = L.dim
    G = _gamma(g)
    c = L.structure_tensor()
    return [[tuple(G[i][j][k] - G[j][i][k] - c[i][j][k] for k in range(n)) for j in range(n)]
            for i in range(n)]


def curvature(L: LieAlgebra, g: EndoValuedMap) -> list:
    """Full residual tensor ``R[i][j] = [g(X_i), g(X_j)] - g([X_i, X_j])`` as matrices."""
    _require_square_on(L, g)
    n = L.dim
    G = [[list(r) for r in m.rows] for m in g.mats]
    c = L.structure_tensor()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            R = [[Fraction(0)] * n for _ in range(n)]
            for a in range(n):
                for b in range(n):
                    s = Fraction(0)
                    for m in range(n):
                        s += G[i][a][m] * G[j][m][b] - G[j][a][m] * G[i][m][b]
                    for k in range(n):
                        if c[i][j][k]:
                            s -= c[i][j][k] * G[k][a][b]
                    R[a][b] = s
            row.append(Matrix(tuple(tuple(r) for r in R)))
        out.append(row)
    return out


# -- projective checks -----------------------------------------------------

def check_p_hom(L: LieAlgebra, f: GradedHom) -> WitnessCertificate:
    """Homomorphism into traceless matrices whose ``u``-part is the identity."""
    if f.source.dim != L.dim:
        raise DimensionError("graded hom has the wrong source dimension")
    passed = []
    mats = f.matrices()
    for i, m in enumerate(mats):
        if m.trace() != 0:
            return WitnessCertificate("p-hom", L.name, tuple(passed),
                                      Counterexample("traceless", (i,), (m.trace(),)))
    passed.append("traceless")
    cex = _first_hom_failure(L, mats, "hom")
    if cex is not None:
        return WitnessCertificate("p-hom", L.name, tuple(passed), cex)
    passed.append("hom")
    for i in range(L.dim):
        r = vsub(f.u[i], unit_vector(L.dim, i))
        if not is_zero_vector(r):
            return WitnessCertificate("p-hom", L.name, tuple(passed), Counterexample("identity-part", (i,), r))
    passed.append("identity-part")
    return WitnessCertificate("p-hom", L.name, tuple(passed))


def check_n_hom(L: LieAlgebra, f: GradedHom) -> WitnessCertificate:
    """P-homomorphism that also sends e to x, i.e. every corner vanishes."""
    cert = check_p_hom(L, f)
    if not cert.ok:
        return WitnessCertificate("n-hom", L.name, cert.checks_passed, cert.counterexample)
    for i, c in enumerate(f.corner):
        if c != 0:
            return WitnessCertificate("n-hom", L.name, cert.checks_passed,
                                      Counterexample("normal", (i,), (c,)))
    return WitnessCertificate("n-hom", L.name, cert.checks_passed + ("normal",))


def _require(cert: WitnessCertificate, what: str) -> None:
    if not cert.ok:
        raise PreconditionError(f"{what}: {cert}")


def projective_equivalence_system(f: GradedHom, f2: GradedHom) -> tuple[Matrix, tuple]:
    """Linear system in the unknown covector xi with ``B2(X_i) - B(X_i) = -X_i (x) xi``.

    One equation per entry of every B-difference, plus one per corner.
    """
    n = f.n
    rows, rhs = [], []
    for i in range(n):
        diff = f2.B[i] - f.B[i]
        for r in range(n):
            for c in range(n):
                rows.append(tuple(Fraction(-1) if (r == i and k == c) else Fraction(0) for k in range(n)))
                rhs.append(diff.rows[r][c])
        rows.append(unit_vector(n, i))
        rhs.append(f2.corner[i] - f.corner[i])
    return Matrix(tuple(rows)), tuple(rhs)


def projectively_equivalent(f: GradedHom, f2: GradedHom) -> tuple | None:
    """A covector xi relating the two g0-parts, or None when there is none."""
    if f.source != f2.source:
        raise PreconditionError("projective equivalence needs a common source algebra")
    _require(check_p_hom(f.source, f), "first argument")
    _require(check_p_hom(f2.source, f2), "second argument")
    A, b = projective_equivalence_system(f, f2)
    sol = solve_linear(A, b)
    return None if sol is None else sol.particular


def shift_by_covector(f: GradedHom, xi: Sequence) -> GradedHom:
    """Conjugate every matrix by ``I + eta`` where eta has bottom row ``xi``.

    eta squares to zero, so the inverse is ``I - eta``; the result is a
    homomorphism whenever f is.
    """
    n = f.n
    xi = tuple(as_fraction(a) for a in xi)
    eta = Matrix(tuple(zero_vector(n + 1) for _ in range(n)) + (xi + (Fraction(0),),))
    P = Matrix.identity(n + 1) + eta
    Pinv = Matrix.identity(n + 1) - eta
    return GradedHom.from_assembled(f.source, [P @ m @ Pinv for m in f.matrices()], f.provenance)


def normalize_to_n(f: GradedHom) -> GradedHom:
    """The normal representative: shift by the covector ``x -> trace B(x)``."""
    _require(check_p_hom(f.source, f), "normalize_to_n")
    out = shift_by_covector(f, tuple(b.trace() for b in f.B))
    return GradedHom(out.source, out.B, out.u, out.xi, out.corner,
                     f.provenance + ("normalized: corners cleared by unipotent conjugation",))


def p_hom_from_ifas(L: LieAlgebra, g: EndoValuedMap) -> GradedHom:
    """Blocks ``B = g - tr(g)/(n+1) I``, ``u = x``, ``xi = 0``."""
    _require(verify_ifas(L, g), "p_hom_from_ifas")
    n = L.dim
    B = tuple(m - Matrix.identity(n).scale(m.trace() / (n + 1)) for m in g.mats)
    return GradedHom(L, B, tuple(L.basis()), tuple(zero_vector(n) for _ in range(n)),
                     tuple(-b.trace() for b in B), g.provenance + ("projective class of the affine witness",))


def connection_from(f: GradedHom) -> EndoValuedMap:
    """``x -> B(x) + trace B(x) I``, the g0-part read as an element of gl(n)."""
    _require(check_p_hom(f.source, f), "connection_from")
    n = f.n
    return EndoValuedMap(f.source, tuple(b + Matrix.identity(n).scale(b.trace()) for b in f.B))


def with_line(L: LieAlgebra) -> LieAlgebra:
    """``L + a1`` with the new central vector last, labelled e."""
    return direct_sum(L, LieAlgebra("a1", 1, labels=("e",)), name=f"{L.name}+a1")


def extended_hom_from_n(f: GradedHom) -> EndoValuedMap:
    """Extend an N-homomorphism to ``L + a1`` by sending e to the identity."""
    _require(check_n_hom(f.source, f), "extended_hom_from_n")
    n = f.n
    return EndoValuedMap(with_line(f.source), f.matrices() + (Matrix.identity(n + 1),),
                         f.provenance + ("extended to L+a1 with e acting as the identity",))


def p_hom_from_extended(h: EndoValuedMap, base: LieAlgebra | None = None) -> GradedHom:
    """Restrict a map on ``L + a1`` with ``h(x)e = x`` to L and remove its trace."""
    M = h.source
    n = M.dim - 1
    if n < 0 or h.target_dim != M.dim:
        raise PreconditionError("expected a map of L+a1 into its own endomorphisms")
    e = M.basis()
    for x in range(M.dim):
        if any(M.basis_bracket(x, n)):
            raise PreconditionError("last basis vector must be central")
        r = vsub(h.mats[x].apply(e[n]), e[x])
        if not is_zero_vector(r):
            raise PreconditionError(f"h(x)e != x at basis vector {x + 1}: residual {format_vector(r)}")
    cex = _first_hom_failure(M, h.mats, "hom")
    if cex is not None:
        raise PreconditionError(f"not a homomorphism: {cex}")
    if base is None:
        base = M.subalgebra(range(n), name=M.name[:-3] if M.name.endswith("+a1") else f"{M.name}|L")
    elif base.dim != n:
        raise PreconditionError("base algebra has the wrong dimension")
    mats = [m - Matrix.identity(n + 1).scale(m.trace() / (n + 1)) for m in h.mats[:n]]
    return GradedHom.from_assembled(base, mats, h.provenance + ("restricted to L, trace removed",))


# -- reducibility ----------------------------------------------------------

@dataclass(frozen=True)
class ReducibilityReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def is_reducible(h_alg: LieAlgebra, g: EndoValuedMap, a_index: int,
                 hprime: Sequence[int]) -> ReducibilityReport:
    """Check the split ``h = <X_a> ⋉ h'`` for an affine witness g.

    Conditions: h' is an ideal (so the split is semidirect), ``g(h')X_a = 0``,
    and ``g(h)h'`` lies in h'.  The line is one-dimensional by construction.
    """
    _require(verify_ifas(h_alg, g), "is_reducible")
    hprime = tuple(hprime)
    if sorted((a_index,) + hprime) != list(range(h_alg.dim)):
        raise PreconditionError("a and h' must partition the basis")
    violations = []
    if not is_ideal(h_alg, hprime):
        violations.append("h' ideal")
    e = h_alg.basis()
    if any(not is_zero_vector(g.mats[y].apply(e[a_index])) for y in hprime):
        violations.append("g(h')a = 0")
    hp = Subspace.coordinate(h_alg.dim, hprime)
    if any(not hp.contains(g.mats[x].apply(e[y])) for x in range(h_alg.dim) for y in hprime):
        violations.append("g(h)h' in h'")
    return ReducibilityReport(tuple(violations))
