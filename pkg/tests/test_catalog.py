from __future__ import annotations

from fractions import Fraction as F

import pytest

from conftest import CELLS, FIXTURES
from flatlie.algebra import JacobiError, check_jacobi, is_perfect
from flatlie.catalog import (
    BUILTIN,
    Catalog,
    CatalogError,
    certify_all,
    decomposition_for,
    entries_from_text,
    load_entries,
    lookup,
    save_report,
)
from flatlie.constructors import semidirect_ifas
from flatlie.flat import verify_ifas
from flatlie.textio import ParseError

DIM_1_TO_4 = {"A_1_1", "A_2_1"} | {f"A_3_{i}" for i in range(1, 10)} | {f"A_4_{i}" for i in range(1, 13)}


def test_builtin_coverage():
    names = {e.name for e in BUILTIN}
    assert DIM_1_TO_4 | {"A_5_39", "A_5_40", "n6_20_1"} == names


def test_lookup_a35():
    L = lookup("A_3_5", {"a": F(1, 2)})
    assert L.basis_bracket(0, 1) == (0, F(1, 2), 0)
    assert L.basis_bracket(0, 2) == (0, 0, 1)
    assert L.name == "A_3_5[a=1/2]"


def test_lookup_a11_and_a49_endpoint():
    assert lookup("A_1_1").brackets == ()
    L = lookup("A_4_9", {"b": -1})
    assert not any(L.basis_bracket(0, 3))


def test_lookup_errors():
    with pytest.raises(CatalogError):
        lookup("A_9_9")
    with pytest.raises(ValueError):
        lookup("A_3_5", {"a": 2})
    with pytest.raises(ValueError):
        lookup("A_3_5", {})


def test_lookup_sum_and_alias():
    L = lookup("sl2+A_2_1")
    assert L.dim == 5 and L.name == "sl2+A_2_1"
    assert lookup("sl2").brackets == lookup("A_3_8").brackets


def test_decomposition_examples():
    d = decomposition_for("A_4_7")
    assert (d.h, d.layers, d.zprime) == ((0,), ((1, 2),), (3,))
    d5 = decomposition_for("A_5_3")
    assert (d5.h, d5.layers, d5.zprime) == ((0,), ((1, 2), (3,)), (4,))
    with pytest.raises(CatalogError, match="perfect"):
        decomposition_for("A_3_8")


def test_perfect_exactly_three():
    perfect = {e.name for e, _, L in CELLS if is_perfect(L)}
    assert perfect == {"A_3_8", "A_3_9", "A_5_40"}
    for e, _, L in CELLS:
        assert ("perfect" in e.flags) == is_perfect(L)


def test_samples_respect_ranges():
    by_name = {e.name: e for e in BUILTIN}
    assert [s["a"] for s in by_name["A_3_5"].samples()] == [F(-1), F(-1, 2), F(-1, 3), F(1, 3), F(1, 2), F(1)]
    assert [s["a"] for s in by_name["A_3_7"].samples()] == [F(0), F(1, 3), F(1, 2), F(1)]
    assert all(s["a"] <= s["b"] for s in by_name["A_4_5"].samples())
    assert len(CELLS) == 90


def test_certify_dims_1_to_4():
    report = certify_all(range(1, 5))
    assert report.failures == []
    for r in report.rows:
        assert (r.ifas_status, r.ifps_status) in {("certified", "via-ifas"), ("no-ifas-cited", "certified")}


def test_certify_dim_3():
    report = certify_all([3])
    assert [r.name for r in report.rows if r.perfect] == ["A_3_8", "A_3_9"]
    assert {r.name for r in report.rows} == {f"A_3_{i}" for i in range(1, 10)}


def test_certify_dim_5_builtin_only():
    report = certify_all([5])
    assert [(r.name, r.perfect, r.ifas_status, r.ifps_status) for r in report.rows] == [
        ("A_5_39", False, "certified", "via-ifas"), ("A_5_40", True, "no-ifas-cited", "certified")]


def test_certify_empty_range():
    assert len(certify_all([])) == 0


def test_certify_sums_and_grid_override():
    report = certify_all([4, 5], grid=[F(1, 2)], include_sums=True)
    assert report.failures == []
    names = [r.name for r in report.rows]
    assert "A_3_8+A_2_1" in names and "A_3_9+A_1_1+A_1_1" in names
    assert [r.params for r in report.rows if r.name == "A_4_2"] == [(("a", F(1, 2)),)]


def test_certify_parallel_matches_serial():
    a = certify_all(range(1, 5), jobs=1).to_tsv()
    b = certify_all(range(1, 5), jobs=3).to_tsv()
    assert a == b


def test_report_tsv_and_witness_files(tmp_path):
    report = save_report(certify_all([2, 3]), tmp_path / "r.tsv", tmp_path / "w")
    lines = (tmp_path / "r.tsv").read_text().splitlines()
    assert lines[0].split("\t") == ["name", "params", "dim", "perfect", "ifas_status", "ifps_status",
                                    "witness_file"]
    assert len(lines) == 1 + len(report.rows)
    assert all(r.witness_file != "-" for r in report.rows)
    assert (tmp_path / "w" / "A_3_5__a=-1over2.txt").exists()


def test_ingest_a539_matches_builtin():
    text = (FIXTURES / "a5_39.txt").read_text()
    [entry] = entries_from_text(text)
    assert entry.build().brackets == lookup("A_5_39").brackets
    assert entry.decomposition == decomposition_for("A_5_39")


def test_ingest_n6_20_1_certifies():
    cat = Catalog(())
    [entry] = load_entries(FIXTURES / "n6_20_1.txt", cat)
    L = entry.build()
    assert verify_ifas(L, semidirect_ifas(L, entry.decomposition))
    assert certify_all([6], catalog=cat).failures == []


def test_ingest_fills_table_metadata():
    [entry] = entries_from_text("algebra A_5_1 5\nc 3 5 1 1\nc 4 5 2 1\n")
    assert entry.decomposition == decomposition_for("A_5_1")


def test_ingest_errors():
    with pytest.raises(ParseError, match="zero denominator"):
        entries_from_text((FIXTURES / "bad_rational.txt").read_text())
    with pytest.raises(JacobiError, match=r"\(1,2,3\)"):
        entries_from_text((FIXTURES / "a4_7_mutated.txt").read_text())


def test_every_cell_passes_jacobi():
    assert all(check_jacobi(L) == [] for _, _, L in CELLS)
