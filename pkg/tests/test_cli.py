from __future__ import annotations

import pytest

from conftest import FIXTURES
from flatlie.cli import main
from flatlie.constructors import o3_n_hom
from flatlie.textio import parse_document, read_document


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- jacobi ----------------------------------------------------------------

def test_jacobi_pass(capsys):
    code, out, _ = run(capsys, "jacobi", FIXTURES / "a4_7.txt")
    assert code == 0 and out.strip() == "PASS A_4_7 jacobi"


def test_jacobi_mutated_reports_triple(capsys):
    code, out, _ = run(capsys, "jacobi", FIXTURES / "a4_7_mutated.txt")
    assert code == 1
    assert "at (1,2,3): residual (0, 0, 0, -4)" in out


def test_jacobi_abelian(capsys):
    assert run(capsys, "jacobi", FIXTURES / "abelian3.txt")[0] == 0


# -- verify ----------------------------------------------------------------

def test_verify_printed_n_homs(capsys):
    for name in ("sl2_nhom.txt", "o3_nhom.txt"):
        code, out, _ = run(capsys, "verify", FIXTURES / name)
        assert code == 0 and out.startswith("PASS n-hom")


def test_verify_half_ad_fails_endo_hom(capsys):
    code, out, _ = run(capsys, "verify", FIXTURES / "sl2_half_ad.txt")
    assert code == 1
    assert out.startswith("FAIL endo-hom at (1,2)")


def test_verify_zero_on_abelian(capsys):
    code, out, _ = run(capsys, "verify", FIXTURES / "abelian3.txt", FIXTURES / "abelian3_zero.txt")
    assert code == 0 and "PASS ifas" in out


def test_verify_phom_that_is_not_normal(capsys):
    code, out, _ = run(capsys, "verify", FIXTURES / "o3_perturbed.txt")
    assert code == 0 and out.startswith("PASS p-hom")
    code, out, _ = run(capsys, "verify", "--kind", "nhom", FIXTURES / "o3_perturbed.txt")
    assert code == 1 and "normal" in out


def test_verify_parse_error_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", FIXTURES / "bad_rational.txt")
    assert code == 2 and "zero denominator" in err


def test_verify_ingested_entry(capsys):
    code, out, _ = run(capsys, "construct", "n6_20_1", "--entries", FIXTURES / "n6_20_1.txt")
    assert code == 0 and out.rstrip().splitlines()[-1].startswith("# PASS ifas")


# -- construct -------------------------------------------------------------

def test_construct_to_file_round_trips(capsys, tmp_path):
    out_file = tmp_path / "a47.txt"
    code, out, _ = run(capsys, "construct", "A_4_7", "auto", "--out", out_file, "--explain")
    assert code == 0
    assert "# semidirect construction" in out and "PASS ifas A_4_7" in out
    code, out, _ = run(capsys, "verify", out_file)
    assert code == 0 and out.startswith("PASS ifas A_4_7")


def test_construct_t3(capsys, tmp_path):
    out_file = tmp_path / "t3.txt"
    assert run(capsys, "construct", "t", 3, "--out", out_file)[0] == 0
    doc = read_document(out_file)
    assert doc.algebras[0].algebra.dim == 6
    assert run(capsys, "verify", out_file)[0] == 0


def test_construct_sl3_n_hom(capsys):
    code, out, _ = run(capsys, "construct", "sl", 3)
    assert code == 0
    doc = parse_document(out)
    assert doc.witnesses[0].kind == "nhom" and doc.witnesses[0].size == 12


def test_construct_reducible_sum(capsys, tmp_path):
    out_file = tmp_path / "s.txt"
    code, out, _ = run(capsys, "construct", "sl2+A_2_1", "reducible-sum", "--out", out_file, "--explain")
    assert code == 0
    assert run(capsys, "verify", out_file)[0] == 0


def test_construct_line_sum_and_extension(capsys):
    code, out, _ = run(capsys, "construct", "sl2+o3", "line-sum")
    assert code == 0 and "PASS p-hom" in out
    code, out, _ = run(capsys, "construct", "o3", "extension")
    assert code == 0 and "PASS ifas" in out


def test_construct_on_perfect_target_is_a_failure(capsys):
    code, out, err = run(capsys, "construct", "sl2")
    assert code == 1 and "perfect" in out + err


def test_construct_with_params(capsys):
    code, out, _ = run(capsys, "construct", "A_3_5", "--params", "a=-1/3")
    assert code == 0 and "algebra A_3_5[a=-1/3] 3" in out


# -- normalize -------------------------------------------------------------

def test_normalize_recovers_printed_o3(capsys):
    code, out, _ = run(capsys, "normalize", FIXTURES / "o3_perturbed.txt")
    assert code == 0
    assert parse_document(out).witnesses[0].mats == list(o3_n_hom().matrices())


def test_normalize_a21(capsys):
    code, out, _ = run(capsys, "normalize", FIXTURES / "a2_1_phom.txt")
    assert code == 0
    m = parse_document(out).witnesses[0].mats[0]
    assert [[str(x) for x in r] for r in m.rows] == [["-2/3", "0", "1"], ["0", "2/3", "0"], ["-1/9", "0", "0"]]


def test_normalize_rejects_non_p_hom(capsys, tmp_path):
    # the printed sl2 witness with its top-right column cleared in f(X1)
    text = (FIXTURES / "sl2_nhom.txt").read_text().replace("map 1\n0 0 0 1\n", "map 1\n0 0 0 0\n")
    bad = tmp_path / "bad.txt"
    bad.write_text(text.replace("nhom", "phom"))
    code, _, err = run(capsys, "normalize", bad)
    assert code == 1 and err.startswith("FAIL")


def test_normalize_rejects_ifas_kind(capsys):
    assert run(capsys, "normalize", FIXTURES / "sl2_half_ad.txt")[0] == 2


# -- catalog / certify -----------------------------------------------------

def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--dim", 3)
    assert code == 0
    names = [line.split("\t")[0] for line in out.splitlines()[1:]]
    assert names == [f"A_3_{i}" for i in range(1, 10)]


def test_catalog_show(capsys):
    code, out, _ = run(capsys, "catalog", "show", "A_3_5", "--params", "a=1/2")
    assert code == 0 and "c 1 2 2 1/2" in out


def test_certify_1_to_4(capsys):
    code, out, _ = run(capsys, "certify", "1..4")
    rows = out.splitlines()
    assert code == 0 and len(rows) == 88
    assert not any("FAIL" in r for r in rows)


def test_certify_dim_3_perfect_rows(capsys):
    code, out, _ = run(capsys, "certify", "3")
    perfect = [r.split("\t") for r in out.splitlines()[1:] if r.split("\t")[3] == "true"]
    assert [(r[0], r[4], r[5]) for r in perfect] == [("A_3_8", "no-ifas-cited", "certified"),
                                                    ("A_3_9", "no-ifas-cited", "certified")]


def test_certify_writes_files(capsys, tmp_path):
    code, _, _ = run(capsys, "certify", "5..5", "--out", tmp_path / "r.tsv", "--witness-dir", tmp_path / "w",
                     "--jobs", 2)
    assert code == 0
    assert len((tmp_path / "r.tsv").read_text().splitlines()) == 3
    for f in (tmp_path / "w").iterdir():
        assert run(capsys, "verify", f)[0] == 0


# -- usage errors ----------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["catalog", "show", "nope"],
    ["certify", "5..3"],
    ["certify", "x"],
    ["construct", "A_4_7", "nonsense"],
    ["construct", "A_3_5"],
    ["jacobi", "/does/not/exist.txt"],
    ["construct", "t", "x"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
