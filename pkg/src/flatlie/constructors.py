"""Witness factories.  Every output is re-verified before it is returned."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import (
    GradedDecomposition,
    GradingError,
    LieAlgebra,
    direct_sum,
    is_perfect,
    validate_grading,
)
from .linalg import (
    Matrix,
    block_diag,
    embed,
    inverse,
    linear_combination,
    unit_vector,
    vscale,
    zero_vector,
)
from .flat import (
    CertificationError,
    EndoValuedMap,
    GradedHom,
    PreconditionError,
    check_n_hom,
    check_p_hom,
    extended_hom_from_n,
    is_reducible,
    p_hom_from_extended,
    verify_ifas,
    with_line,
)
from .catalog.families import BUILTIN

F = Fraction


def _certified_ifas(L: LieAlgebra, g: EndoValuedMap) -> EndoValuedMap:
    cert = verify_ifas(L, g)
    if not cert.ok:
        raise CertificationError(f"constructed witness on {L.name} failed: {cert}")
    return g


def _certified(cert, what: str):
    if not cert.ok:
        raise CertificationError(f"{what} failed: {cert}")


def _catalog_algebra(name: str) -> LieAlgebra:
    return next(e for e in BUILTIN if e.name == name).build()


# -- graded and semidirect -------------------------------------------------

def _require_grading(L: LieAlgebra, d: GradedDecomposition) -> None:
    bad = validate_grading(L, d)
    if bad is not None:
        raise GradingError(f"{L.name}: {bad}")


def _graded_column(L: LieAlgebra, layer: dict, a: int, b: int) -> tuple:
    i, j = layer[a], layer[b]
    if i is None or j is None:
        return zero_vector(L.dim)
    return vscale(F(j, i + j), L.basis_bracket(a, b))


def graded_ifas(k: LieAlgebra, d: GradedDecomposition) -> EndoValuedMap:
    """Witness ``x.y = j/(i+j) [x, y]`` for x in k_i, y in k_j; zero against Z'."""
    if d.h:
        raise GradingError("graded_ifas needs an empty h-block; use semidirect_ifas")
    return semidirect_ifas(k, d)


def h_block_witness(L: LieAlgebra, d: GradedDecomposition) -> EndoValuedMap:
    """Affine witness on the h-block: zero when h is abelian, else from the nested decomposition."""
    sub = L.subalgebra(d.h)
    if sub.is_abelian():
        return EndoValuedMap.zero(sub)
    if d.h_decomposition is None:
        raise PreconditionError(f"{L.name}: h-block is not abelian and no nested decomposition was supplied")
    pos = {g: l for l, g in enumerate(d.h)}
    nd = d.h_decomposition
    local = GradedDecomposition(tuple(pos[i] for i in nd.h),
                                tuple(tuple(pos[i] for i in layer) for layer in nd.layers),
                                tuple(pos[i] for i in nd.zprime),
                                None)
    if nd.h_decomposition is not None:
        raise PreconditionError("only one level of nesting is supported")
    return semidirect_ifas(sub, local)


def semidirect_ifas(L: LieAlgebra, d: GradedDecomposition, g_h: EndoValuedMap | None = None) -> EndoValuedMap:
    """Blockwise witness on ``h ⋉ k``.

    h x h: ``g_h``; k x k: the graded map; h x k: the bracket; k x h: zero.
    """
    _require_grading(L, d)
    n = L.dim
    h = list(d.h)
    if h:
        if g_h is None:
            g_h = h_block_witness(L, d)
        sub = L.subalgebra(h)
        if g_h.source.dim != len(h) or g_h.source.brackets != sub.brackets:
            raise PreconditionError("g_h must act on the h-subalgebra in the decomposition's basis order")
        _certified(verify_ifas(sub, g_h), "h-block witness")
    layer = d.layer_of()
    hpos = {g: l for l, g in enumerate(h)}
    mats = []
    for a in range(n):
        cols = []
        for b in range(n):
            if a in hpos and b in hpos:
                local = g_h.mats[hpos[a]].column(hpos[b])
                col = [F(0)] * n
                for c, gi in zip(local, h):
                    col[gi] = c
                cols.append(tuple(col))
            elif a in hpos:
                cols.append(L.basis_bracket(a, b))
            elif b in hpos:
                cols.append(zero_vector(n))
            else:
                cols.append(_graded_column(L, layer, a, b))
        mats.append(Matrix.from_columns(cols))
    how = ["k-block: graded product j/(i+j)[x,y], zero against Z'"]
    if h:
        how = ["h-block: " + ("zero witness (abelian)" if g_h.source.is_abelian() else "nested semidirect witness"),
               "h acting on k: bracket; k acting on h: zero"] + how
    return _certified_ifas(L, EndoValuedMap(L, tuple(mats), tuple(how)))


# -- direct sums -----------------------------------------------------------

def direct_sum_ifas(g1: EndoValuedMap, g2: EndoValuedMap) -> EndoValuedMap:
    _certified(verify_ifas(g1.source, g1), "first summand")
    _certified(verify_ifas(g2.source, g2), "second summand")
    L = direct_sum(g1.source, g2.source)
    n1, n2 = g1.source.dim, g2.source.dim
    mats = [block_diag(m, Matrix.zeros(n2)) for m in g1.mats]
    mats += [block_diag(Matrix.zeros(n1), m) for m in g2.mats]
    return _certified_ifas(L, EndoValuedMap(L, tuple(mats), ("block-diagonal sum of affine witnesses",)))


def _change_basis(h: EndoValuedMap, P: Matrix, source: LieAlgebra) -> EndoValuedMap:
    """Express h in the basis given by the columns of P (source is h's algebra in that basis)."""
    Pinv = inverse(P)
    mats = []
    for k in range(P.n_cols):
        M = linear_combination(P.column(k), h.mats)
        mats.append(Pinv @ M @ P)
    return EndoValuedMap(source, tuple(mats), h.provenance)


def direct_sum_plus_line_ifps(f1: GradedHom, f2: GradedHom) -> GradedHom:
    """Projective witness on ``l1 + l2 + a1`` from N-homomorphisms on l1 and l2.

    Both are extended to ``l_i + a_i``; the block sum acts on the whole
    space, which is rebased as (l1, l2, w = e1 - e2, E = e1 + e2).  The copy
    of a1 in the result is w, i.e. ``(x, y, k) <-> (x, k e1, y, -k e2)``.
    """
    _certified(check_n_hom(f1.source, f1), "first factor")
    _certified(check_n_hom(f2.source, f2), "second factor")
    l1, l2 = f1.source, f2.source
    n1, n2 = l1.dim, l2.dim
    F1, F2 = extended_hom_from_n(f1), extended_hom_from_n(f2)
    N = n1 + n2 + 2
    old = direct_sum(F1.source, F2.source)
    G = EndoValuedMap(old, tuple(block_diag(m, Matrix.zeros(n2 + 1)) for m in F1.mats)
                      + tuple(block_diag(Matrix.zeros(n1 + 1), m) for m in F2.mats))
    e1, e2 = n1, N - 1
    cols = [unit_vector(N, i) for i in range(n1)]
    cols += [unit_vector(N, n1 + 1 + j) for j in range(n2)]
    cols.append(tuple(F(int(i == e1)) - F(int(i == e2)) for i in range(N)))
    cols.append(tuple(F(int(i == e1)) + F(int(i == e2)) for i in range(N)))
    base = direct_sum(direct_sum(l1, l2), LieAlgebra("a1", 1, labels=("k",)), name=f"{l1.name}+{l2.name}+a1")
    ext = with_line(base)
    G2 = _change_basis(G, Matrix.from_columns(cols), ext)
    f = p_hom_from_extended(G2, base)
    f = GradedHom(f.source, f.B, f.u, f.xi, f.corner,
                  ("factors extended to l_i+a_i and summed block-diagonally",
                   "identification (x, y, k) <-> (x, k e1, y, -k e2); new line spanned by (0, e1, 0, e2)",
                   "restricted and trace removed"))
    _certified(check_p_hom(base, f), "line-sum projective witness")
    return f


def reducible_sum_ifas(f: GradedHom, h_alg: LieAlgebra, g: EndoValuedMap, a_index: int,
                       hprime: Sequence[int]) -> EndoValuedMap:
    """Affine witness on ``l + h`` from an N-homomorphism on l and a reducible witness on h.

    The line ``<X_a>`` of h plays the role of e: on l + <X_a> the extended
    N-homomorphism acts (X_a as the identity), and on h' the induced map
    ``g(.)|h'`` acts.
    """
    _certified(check_n_hom(f.source, f), "projective factor")
    rep = is_reducible(h_alg, g, a_index, hprime)
    if not rep.ok:
        raise PreconditionError(f"witness on {h_alg.name} is not reducible: {', '.join(rep.violations)}")
    l = f.source
    n, m = l.dim, h_alg.dim
    N = n + m
    L = direct_sum(l, h_alg)
    Fx = extended_hom_from_n(f)
    ext_pos = list(range(n)) + [n + a_index]
    hp = list(hprime)
    hp_pos = [n + p for p in hp]

    def restricted(x: int) -> Matrix:
        return g.mats[x].submatrix(hp, hp)

    mats = [embed(Fx.mats[i], ext_pos, N) for i in range(n)]
    for x in range(m):
        M = embed(restricted(x), hp_pos, N) if hp else Matrix.zeros(N)
        if x == a_index:
            M = M + embed(Matrix.identity(n + 1), ext_pos, N)
        mats.append(M)
    how = ("l + <a>: extended N-homomorphism, a acting as the identity",
           "h': induced action of the reducible witness")
    return _certified_ifas(L, EndoValuedMap(L, tuple(mats), how))


# -- explicit projective witnesses -----------------------------------------

def _assembled(algebra: LieAlgebra, rows_list, note: str) -> GradedHom:
    mats = [Matrix(tuple(tuple(F(x) for x in r) for r in rows)) for rows in rows_list]
    f = GradedHom.from_assembled(algebra, mats, (note,))
    _certified(check_n_hom(algebra, f), f"{algebra.name} N-homomorphism")
    return f


def sl2_n_hom() -> GradedHom:
    h, q = "1/2", "1/4"
    return _assembled(_catalog_algebra("A_3_8"), [
        [[0, 0, 0, 1], [0, h, 0, 0], [0, 0, "-1/2", 0], [q, 0, 0, 0]],
        [[0, 0, h, 0], ["-1/2", 0, 0, 1], [0, 0, 0, 0], [0, 0, q, 0]],
        [[0, "-1/2", 0, 0], [0, 0, 0, 0], [h, 0, 0, 1], [0, q, 0, 0]],
    ], "literal N-homomorphism of sl(2,R)")


def o3_n_hom() -> GradedHom:
    h, mh, mq = "1/2", "-1/2", "-1/4"
    return _assembled(_catalog_algebra("A_3_9"), [
        [[0, 0, 0, 1], [0, 0, mh, 0], [0, h, 0, 0], [mq, 0, 0, 0]],
        [[0, 0, h, 0], [0, 0, 0, 1], [mh, 0, 0, 0], [0, mq, 0, 0]],
        [[0, mh, 0, 0], [h, 0, 0, 0], [0, 0, 0, 1], [0, 0, mq, 0]],
    ], "literal N-homomorphism of o(3)")


def _e(n: int, i: int, j: int) -> Matrix:
    return Matrix(tuple(tuple(F(int(r == i and c == j)) for c in range(n)) for r in range(n)))


def sl_affine_basis(n: int) -> tuple[list[Matrix], list[str]]:
    """Basis of ``sl(n) ⋉ R^n`` inside (n+1)x(n+1) matrices.

    Order: lower E_ij, then H_i = E_ii - E_(i+1)(i+1), then upper E_ij, then
    the translations E_(i, n+1).  For n = 2 this is E21, H, E12, E13, E23.
    """
    N = n + 1
    mats, labels = [], []
    for i in range(n):
        for j in range(i):
            mats.append(_e(N, i, j))
            labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        mats.append(_e(N, i, i) - _e(N, i + 1, i + 1))
        labels.append(f"H{i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_e(N, i, j))
            labels.append(f"E{i + 1}{j + 1}")
    for i in range(n):
        mats.append(_e(N, i, n))
        labels.append(f"v{i + 1}")
    return mats, labels


def sl_affine_algebra(n: int) -> LieAlgebra:
    mats, labels = sl_affine_basis(n)
    return LieAlgebra.from_matrices(f"sl({n})xR{n}", mats, labels)


def sln_affine_n_hom(n: int) -> GradedHom:
    """N-homomorphism of ``sl(n) ⋉ R^n`` from n copies of the contragredient representation.

    The representation space is (n+1) x n matrices M with ``x.M = -iota(x)^T M``
    and ``e.M = M``.  The map ``x -> (x.v)`` with ``v = [I_n; 0]`` identifies
    ``(sl(n) ⋉ R^n) + a1`` with that space.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    basis, labels = sl_affine_basis(n)
    L = LieAlgebra.from_matrices(f"sl({n})xR{n}", basis, labels)
    d = L.dim
    N = n + 1
    I = Matrix.identity(N)
    v = Matrix(tuple(tuple(F(int(r == c)) for c in range(n)) for r in range(N)))

    def flat(M: Matrix) -> tuple:
        return tuple(x for r in M.rows for x in r)

    actions = [-(b.T) for b in basis] + [I]  # left multipliers on the representation space
    phi = Matrix.from_columns([flat(A @ v) for A in actions])
    if phi.n_rows != phi.n_cols:
        raise AssertionError("representation space and L + a1 differ in dimension")
    try:
        phi_inv = inverse(phi)
    except ZeroDivisionError:
        raise AssertionError("x -> x.v is not onto; identification failed") from None

    def operator(A: Matrix) -> Matrix:
        # matrix of M -> A M on flattened (row-major) (n+1) x n matrices
        cols = []
        for r, c in product(range(N), range(n)):
            cols.append(flat(A @ _e_rect(N, n, r, c)))
        return Matrix.from_columns(cols)

    mats = [phi_inv @ operator(A) @ phi for A in actions[:d]]
    return _assembled(L, [m.rows for m in mats], f"contragredient N-homomorphism of sl({n})xR{n}")


def _e_rect(r_n: int, c_n: int, i: int, j: int) -> Matrix:
    return Matrix(tuple(tuple(F(int(r == i and c == j)) for c in range(c_n)) for r in range(r_n)))


def ifps_to_ifas_extension(f: GradedHom) -> EndoValuedMap:
    """Affine witness on ``l + a1`` from an N-homomorphism on l."""
    g = extended_hom_from_n(f)
    return _certified_ifas(g.source, g)


# -- upper triangular matrices ---------------------------------------------

@dataclass(frozen=True)
class TriangularWitness:
    algebra: LieAlgebra
    witness: EndoValuedMap
    decomposition: GradedDecomposition
    a_index: int
    hprime: tuple
    basis: tuple = field(compare=False, default=())


def upper_triangular_ifas(n: int) -> TriangularWitness:
    """``t(n, R)`` with basis I_n, E_22..E_nn, then the superdiagonals E_(i, i+s) layer by layer."""
    if n < 2:
        raise ValueError("n must be at least 2")
    basis = [Matrix.identity(n)]
    labels = ["I"]
    for i in range(1, n):
        basis.append(_e(n, i, i))
        labels.append(f"E{i + 1}{i + 1}")
    layers = []
    for s in range(1, n):
        layer = []
        for i in range(n - s):
            layer.append(len(basis))
            basis.append(_e(n, i, i + s))
            labels.append(f"E{i + 1}{i + s + 1}")
        layers.append(tuple(layer))
    L = LieAlgebra.from_matrices(f"t({n})", basis, labels)
    d = GradedDecomposition(tuple(range(n)), tuple(layers), ())
    g = semidirect_ifas(L, d, EndoValuedMap.zero(L.subalgebra(range(n))))
    hprime = tuple(range(1, L.dim))
    rep = is_reducible(L, g, 0, hprime)
    if not rep.ok:
        raise CertificationError(f"t({n}) witness not reducible: {rep.violations}")
    return TriangularWitness(L, g, d, 0, hprime, tuple(basis))


# -- decision tree ---------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """One direct summand with whatever is known about it.

    Supply ``decomposition`` for a summand with an affine witness via the
    semidirect construction, ``witness`` for an explicit affine witness, or
    ``n_hom`` for a summand that is only known to be projectively flat.
    ``split`` = (a_index, hprime) marks a reducible affine witness.
    """

    algebra: LieAlgebra
    decomposition: GradedDecomposition | None = None
    witness: EndoValuedMap | None = None
    n_hom: GradedHom | None = None
    split: tuple | None = None

    def affine(self) -> EndoValuedMap | None:
        if self.witness is not None:
            return self.witness
        if self.decomposition is not None:
            return semidirect_ifas(self.algebra, self.decomposition)
        return None

    def reducible_split(self) -> tuple | None:
        if self.split is not None:
            return self.split
        d = self.decomposition
        if d is not None and len(d.h) == 1:
            a = d.h[0]
            return a, tuple(i for i in range(self.algebra.dim) if i != a)
        if self.algebra.dim == 1:
            return 0, ()
        return None


@dataclass(frozen=True)
class AutoIfasResult:
    status: str  # "certified" or "no-ifas-cited"
    witness: EndoValuedMap | None = None
    route: tuple = ()

    @property
    def certified(self) -> bool:
        return self.status == "certified"


NO_IFAS_CITED = "perfect - no IFAS (cited)"


class MetadataError(ValueError):
    """Not enough metadata to pick a construction."""


def auto_ifas(L: LieAlgebra, decomposition: GradedDecomposition | None = None,
              factors: Sequence[Factor] | None = None) -> AutoIfasResult:
    """Pick and run a construction from supplied metadata; never searches for one."""
    if is_perfect(L):
        return AutoIfasResult("no-ifas-cited", None, (NO_IFAS_CITED,))
    if decomposition is not None:
        g = semidirect_ifas(L, decomposition)
        return AutoIfasResult("certified", g, ("semidirect construction",) + g.provenance)
    if not factors:
        raise MetadataError(f"{L.name}: no decomposition and no factor list supplied")
    total = factors[0].algebra
    for fac in factors[1:]:
        total = direct_sum(total, fac.algebra)
    if total.brackets != L.brackets or total.dim != L.dim:
        raise MetadataError(f"{L.name}: factors do not sum to the algebra in its basis order")

    affine = [fac.affine() for fac in factors]
    if all(a is not None for a in affine):
        g = affine[0]
        for a in affine[1:]:
            g = direct_sum_ifas(g, a)
        return AutoIfasResult("certified", _rename(g, L), ("direct sum of affine witnesses",))

    proj = [i for i, a in enumerate(affine) if a is None]
    if len(proj) != 1 or factors[proj[0]].n_hom is None:
        raise MetadataError(f"{L.name}: need exactly one projective-only factor with an N-homomorphism")
    p = proj[0]
    red = next((i for i, fac in enumerate(factors)
                if i != p and fac.reducible_split() is not None
                and is_reducible(fac.algebra, affine[i], *fac.reducible_split()).ok), None)
    if red is None:
        raise MetadataError(f"{L.name}: no factor carries a reducible affine witness")
    a_index, hprime = factors[red].reducible_split()
    if red != p + 1:
        raise MetadataError(f"{L.name}: the reducible factor must directly follow the projective factor")
    g = reducible_sum_ifas(factors[p].n_hom, factors[red].algebra, affine[red], a_index, hprime)
    route = ["projective factor combined with reducible factor"]
    pieces = [affine[i] for i in range(len(factors)) if i < p]
    for w in pieces[::-1]:
        g = direct_sum_ifas(w, g)
    for i in range(red + 1, len(factors)):
        g = direct_sum_ifas(g, affine[i])
        route.append("direct sum with remaining affine factor")
    return AutoIfasResult("certified", _rename(g, L), tuple(route))


def _rename(g: EndoValuedMap, L: LieAlgebra) -> EndoValuedMap:
    out = EndoValuedMap(L, g.mats, g.provenance)
    _certified_ifas(L, out)
    return out
