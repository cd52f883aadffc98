from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import CELLS, cell_id
from flatlie.algebra import (
    GradedDecomposition,
    GradingError,
    JacobiError,
    LieAlgebra,
    Subspace,
    bracket,
    center,
    check_jacobi,
    derived_series,
    derived_subalgebra,
    direct_sum,
    is_derivation,
    is_ideal,
    is_nilpotent,
    is_perfect,
    is_solvable,
    lower_central_series,
    semidirect_sum,
    validate_grading,
)
from flatlie.catalog import lookup
from flatlie.flat import EndoValuedMap
from flatlie.linalg import Matrix

SL2 = LieAlgebra.from_constants("sl2", 3, oracle.SL2)
O3 = LieAlgebra.from_constants("o3", 3, oracle.O3)
A21 = LieAlgebra.from_constants("A21", 2, [(0, 1, 1, 1)])
A31 = LieAlgebra.from_constants("A31", 3, [(0, 1, 2, 1)])
A47_QUADS = [(0, 1, 1, 1), (0, 1, 2, 1), (0, 2, 2, 1), (0, 3, 3, 2), (1, 2, 3, -1)]


def e(n, i):
    return tuple(F(int(k == i)) for k in range(n))


def test_antisymmetric_fill():
    assert SL2.bracket(e(3, 2), e(3, 1)) == (-1, 0, 0)
    assert SL2.constant(2, 1, 0) == -1
    with pytest.raises(ValueError):
        LieAlgebra.from_constants("bad", 2, [(0, 0, 1, 1)])


def test_heisenberg_bracket():
    assert bracket(lookup("A_3_1"), e(3, 0), e(3, 1)) == e(3, 2)


def test_a539_bracket():
    assert bracket(lookup("A_5_39"), e(5, 0), e(5, 4)) == e(5, 3)


@given(st.lists(st.fractions(max_denominator=5, min_value=-5, max_value=5), min_size=3, max_size=3))
def test_self_bracket_vanishes(x):
    assert not any(SL2.bracket(x, x))


def test_bracket_matches_oracle_tensor():
    c = oracle.tensor(3, oracle.SL2)
    x, y = (F(1, 2), 2, -1), (3, F(-1, 3), 1)
    assert list(SL2.bracket(x, y)) == oracle.br(c, [F(v) for v in x], [F(v) for v in y])


# -- Jacobi ----------------------------------------------------------------

def test_jacobi_abelian():
    assert check_jacobi(LieAlgebra.abelian(4)) == []


def test_jacobi_a47():
    assert check_jacobi(LieAlgebra.from_constants("A47", 4, A47_QUADS)) == []


def test_jacobi_mutation_detected():
    quads = list(A47_QUADS)
    quads[3] = (0, 3, 3, -2)
    bad = check_jacobi(LieAlgebra.from_constants("A47bad", 4, quads))
    assert [t for t, _ in bad] == oracle.jacobi_violations(oracle.tensor(4, quads)) == [(0, 1, 2)]
    assert bad[0][1] == (0, 0, 0, -4)


def test_flipping_x2_x3_bracket_is_only_a_rescaling():
    # [X2,X3] = +X4 is X4 -> -X4 applied to A_4_7, so Jacobi still holds
    quads = A47_QUADS[:4] + [(1, 2, 3, 1)]
    assert check_jacobi(LieAlgebra.from_constants("A47flip", 4, quads)) == []


@pytest.mark.parametrize("cell", CELLS, ids=cell_id)
def test_catalog_jacobi_agrees_with_oracle(cell):
    _, _, L = cell
    quads = [(i, j, k, c) for (i, j), v in L.brackets for k, c in enumerate(v) if c]
    assert check_jacobi(L) == []
    assert oracle.jacobi_violations(oracle.tensor(L.dim, quads)) == []


# -- derived algebra, centre, series --------------------------------------

def test_derived_examples():
    assert derived_subalgebra(LieAlgebra.abelian(3)).dim == 0
    assert derived_subalgebra(SL2).dim == 3
    d = derived_subalgebra(lookup("A_4_12"))
    assert d == Subspace.coordinate(4, [2, 3])


def test_perfect_examples():
    assert is_perfect(O3)
    assert not is_perfect(lookup("A_1_1"))
    assert is_perfect(lookup("A_5_40"))


def test_center_examples():
    assert center(LieAlgebra.abelian(3)).dim == 3
    assert center(A31) == Subspace.coordinate(3, [2])
    assert center(SL2).dim == 0


def test_series():
    assert is_nilpotent(A31) and is_solvable(A31)
    assert is_solvable(A21) and not is_nilpotent(A21)
    assert not is_solvable(SL2)
    assert [s.dim for s in derived_series(A21)] == [2, 1, 0]
    assert [s.dim for s in lower_central_series(A31)] == [3, 1, 0]


# -- sums ------------------------------------------------------------------

def test_direct_sum_examples():
    a = direct_sum(lookup("A_1_1"), lookup("A_1_1"))
    assert a.dim == 2 and a.is_abelian()
    s = direct_sum(SL2, A21)
    assert s.dim == 5 and derived_subalgebra(s).dim == 4
    oo = direct_sum(O3, O3)
    assert oo.dim == 6 and is_perfect(oo)


small_algebras = st.sampled_from([c[2] for c in CELLS if c[2].dim <= 4])


@settings(max_examples=40, deadline=None)
@given(small_algebras, small_algebras)
def test_direct_sum_properties(L1, L2):
    s = direct_sum(L1, L2)
    assert check_jacobi(s) == []
    assert is_perfect(s) == (is_perfect(L1) and is_perfect(L2))


def test_semidirect_trivial_action_is_direct_sum():
    act = EndoValuedMap.zero(A21, 3)
    assert semidirect_sum(A21, O3, act).brackets == direct_sum(A21, O3).brackets


def test_semidirect_gives_a21():
    h, k = LieAlgebra.abelian(1, "h"), LieAlgebra.abelian(1, "k")
    L = semidirect_sum(h, k, EndoValuedMap(h, (Matrix.identity(1),)))
    assert L.brackets == A21.brackets


def test_semidirect_standard_representation_gives_a540():
    sl = LieAlgebra.from_matrices("sl2", [Matrix(((0, 0), (1, 0))), Matrix(((1, 0), (0, -1))),
                                          Matrix(((0, 1), (0, 0)))])
    act = EndoValuedMap(sl, (Matrix(((0, 0), (1, 0))), Matrix(((1, 0), (0, -1))), Matrix(((0, 1), (0, 0)))))
    L = semidirect_sum(sl, LieAlgebra.abelian(2), act)
    assert L.brackets == lookup("A_5_40").brackets


def test_semidirect_rejects_non_derivation():
    with pytest.raises(ValueError):
        semidirect_sum(LieAlgebra.abelian(1), SL2, EndoValuedMap(LieAlgebra.abelian(1), (Matrix.identity(3),)))


def test_is_derivation():
    assert all(is_derivation(SL2, SL2.ad(x)) for x in SL2.basis())
    assert not is_derivation(SL2, Matrix.identity(3))


def test_subalgebra_must_be_closed():
    assert SL2.subalgebra([0, 1]).brackets == A21.brackets
    with pytest.raises(ValueError):
        SL2.subalgebra([1, 2])


def test_jacobi_error_is_a_value_error():
    assert issubclass(JacobiError, ValueError)


# -- gradings --------------------------------------------------------------

def test_grading_a31_all_central():
    assert validate_grading(A31, GradedDecomposition((0,), (), (1, 2))) is None


def test_grading_n6_20_1():
    d = GradedDecomposition((0, 2), ((4, 5), (3,)), (1,))
    assert validate_grading(lookup("n6_20_1"), d) is None


def test_grading_violation_a31():
    v = validate_grading(A31, GradedDecomposition((2,), ((0, 1),), ()))
    assert v.condition == "[k1,k1] in k2+Z'"
    assert v.pair == (0, 1) and v.residual == (0, 0, 1)


def test_grading_partition_errors():
    with pytest.raises(GradingError):
        validate_grading(A31, GradedDecomposition((0,), (), (1,)))
    with pytest.raises(GradingError):
        validate_grading(A31, GradedDecomposition((0,), ((),), (1, 2)))


@pytest.mark.parametrize("cell", [c for c in CELLS if c[0].decomposition is not None], ids=cell_id)
def test_valid_grading_makes_k_part_an_ideal(cell):
    entry, _, L = cell
    d = entry.decomposition
    assert validate_grading(L, d) is None
    assert is_ideal(L, d.k_part)
