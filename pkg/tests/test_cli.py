import json
import shutil
import subprocess

import pytest

from chibox import iterate, make_chi_nm, table_from_json
from chibox.cli import main

import golden


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_construct_text(capsys):
    rc, out, err = run_cli(capsys, "construct", "chi:5")
    assert rc == 0 and err == ""
    assert "family: chi:5" in out
    assert "n: 5" in out
    assert "permutation: true" in out
    assert "degree: 2" in out


def test_construct_structured(capsys):
    rc, out, _ = run_cli(capsys, "construct", "chi_nm:8:3", "--format", "structured")
    assert rc == 0
    doc = json.loads(out)
    assert doc["command"] == "construct"
    assert doc["family"] == "chi_nm:8:3"
    assert doc["n"] == 8
    assert doc["permutation"] is True
    assert doc["witness"] is None
    assert doc["degree"] == 3
    assert len(doc["entries"]) == 256
    assert all(len(h) == 2 for h in doc["entries"])


def test_construct_reports_collision(capsys):
    rc, out, _ = run_cli(capsys, "construct", "chi_nm:6:3")
    assert rc == 0
    assert "permutation: false" in out
    assert "collision: 000000 and 100100 both map to 000000" in out
    rc, out, _ = run_cli(capsys, "construct", "chi_nm:6:3", "--format", "structured")
    doc = json.loads(out)
    assert doc["witness"] == [0, 9]


def test_construct_writes_table_document(tmp_path, capsys):
    path = tmp_path / "chi53.tbl"
    rc, out, _ = run_cli(capsys, "construct", "chi_nm:5:3", "-o", str(path))
    assert rc == 0
    assert "wrote: %s" % path in out
    table, family = table_from_json(path.read_text())
    assert family == "chi_nm:5:3"
    assert table == make_chi_nm(5, 3)


def test_analyze_matches_frozen_row(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "chi:5", "--metrics", "ddt", "--format", "structured")
    assert rc == 0
    doc = json.loads(out)
    rep = doc["reports"][0]
    assert rep["metric"] == "differential"
    assert rep["headline"] == 8
    assert dict((v, c) for v, c in rep["spectrum"]) == golden.COMPUTED[("chi5", "differential")][1]


def test_analyze_text_spectrum(capsys):
    rc, out, _ = run_cli(capsys, "analyze", "chi:5", "--metrics", "ddt,walsh")
    assert rc == 0
    assert "differential: uniformity 8, spectrum {0^676,2^176,4^120,8^20}" in out
    assert "walsh: nonlinearity 8, spectrum {0^647,-8^126,8^210,-16^10,16^30,32}" in out


def test_analyze_canonical_metric_order(capsys):
    rc, out, _ = run_cli(
        capsys, "analyze", "chi:5", "--metrics", "cycles,walsh,ddt", "--format", "structured"
    )
    assert rc == 0
    doc = json.loads(out)
    assert [rep["metric"] for rep in doc["reports"]] == ["differential", "walsh", "cycles"]


def test_analyze_cycles_and_degree(capsys):
    rc, out, _ = run_cli(
        capsys, "analyze", "chi_nm:8:3", "--metrics", "degree,cycles", "--format", "structured"
    )
    assert rc == 0
    doc = json.loads(out)
    deg, cyc = doc["reports"]
    assert deg == {"metric": "degree", "n": 8, "value": 3}
    assert cyc["order"] == 4
    assert cyc["fixed_point_count"] == 48
    assert cyc["cycle_lengths"] == [[1, 48], [2, 72], [4, 16]]


def test_analyze_from_file_equals_from_spec(tmp_path, capsys):
    path = tmp_path / "f.tbl"
    rc, _, _ = run_cli(capsys, "construct", "chi_nm:5:3", "-o", str(path))
    assert rc == 0
    rc, from_spec, _ = run_cli(
        capsys, "analyze", "chi_nm:5:3", "--metrics", "ddt,walsh,bct,dlct", "--format", "structured"
    )
    assert rc == 0
    rc, from_file, _ = run_cli(
        capsys, "analyze", str(path), "--metrics", "ddt,walsh,bct,dlct", "--format", "structured"
    )
    assert rc == 0
    assert from_spec == from_file


def test_analyze_deterministic(capsys):
    rc, first, _ = run_cli(capsys, "analyze", "cchi:8", "--metrics", "ddt", "--format", "structured")
    assert rc == 0
    rc, second, _ = run_cli(capsys, "analyze", "cchi:8", "--metrics", "ddt", "--format", "structured")
    assert rc == 0
    assert first == second


def test_analyze_output_flag_writes_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    rc, out, _ = run_cli(
        capsys, "analyze", "chi:5", "--metrics", "ddt", "--format", "structured", "-o", str(path)
    )
    assert rc == 0
    assert path.read_text() == out


def test_group_inverse(capsys):
    rc, out, _ = run_cli(
        capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "inverse", "--format", "structured"
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["inverse"] == "111"
    assert doc["degree"] == 5
    rc, out, _ = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "inverse")
    assert "inverse: 111" in out
    assert "degree: 5" in out


def test_group_order_and_involution(capsys):
    rc, out, _ = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "order")
    assert rc == 0 and out == "order: 4\n"
    rc, out, _ = run_cli(capsys, "group", "--n", "6", "--m", "4", "--coeffs", "11", "involution")
    assert rc == 0 and out == "involution: true\n"
    rc, out, _ = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "involution")
    assert rc == 0 and out == "involution: false\n"


def test_group_iterate(capsys):
    rc, out, _ = run_cli(
        capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "iterate:2", "--format", "structured"
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["power"] == 2
    assert doc["iterate"] == "101"
    rc, out, _ = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "iterate:4")
    assert rc == 0 and out == "iterate 4: 100\n"


def test_group_materialize(tmp_path, capsys):
    path = tmp_path / "sq.tbl"
    rc, out, _ = run_cli(
        capsys,
        "group", "--n", "8", "--m", "3", "--coeffs", "101", "materialize",
        "--format", "structured", "-o", str(path),
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["permutation"] is True
    table, family = table_from_json(path.read_text())
    assert family == "comb:8:3:101"
    assert table == iterate(make_chi_nm(8, 3), 2)


def test_fixed_points_counts(capsys):
    rc, out, _ = run_cli(
        capsys, "fixed-points", "--n", "8", "--m", "3", "--power", "1", "--format", "structured"
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["count"] == 48
    assert doc["predicate_count"] == 48
    assert doc["agree"] is True
    assert len(doc["sample"]) == 16
    assert doc["sample"][0] == "00"
    assert int(doc["sample"][1], 16) == golden.FIXED_CHI83[1]

    rc, out, _ = run_cli(
        capsys, "fixed-points", "--n", "8", "--m", "3", "--power", "2", "--format", "structured"
    )
    doc = json.loads(out)
    assert doc["count"] == 192 and doc["agree"] is True

    rc, out, _ = run_cli(
        capsys, "fixed-points", "--n", "8", "--m", "3", "--power", "4", "--format", "structured"
    )
    doc = json.loads(out)
    assert doc["count"] == 256

    # powers that are not powers of two fall back to plain enumeration
    rc, out, _ = run_cli(
        capsys, "fixed-points", "--n", "8", "--m", "3", "--power", "3", "--format", "structured"
    )
    doc = json.loads(out)
    assert doc["predicate_count"] is None and doc["agree"] is None
    assert doc["count"] == 48


def test_fixed_points_text(capsys):
    rc, out, _ = run_cli(capsys, "fixed-points", "--n", "5", "--m", "3", "--power", "1")
    assert rc == 0
    assert "fixed points of chi_{5,3}^1: 12" in out
    assert "agreement: yes" in out


def test_cost_command(capsys):
    rc, out, _ = run_cli(capsys, "cost", "chi", "--n", "5", "--lib", "umc180")
    assert rc == 0
    assert "area_ge: 23.35" in out
    assert "latency_stages: 3" in out
    rc, out, _ = run_cli(
        capsys, "cost", "chi_prime3", "--n", "5", "--lib", "umc180", "--format", "structured"
    )
    doc = json.loads(out)
    assert doc["area_ge"] == "23.35"
    assert doc["latency_stages"] == 4


def test_cost_custom_gate_csv(tmp_path, capsys):
    csv_path = tmp_path / "gates.csv"
    csv_path.write_text(
        "gate,technology,ge\nXOR,demo,2.00\nAND,demo,1.00\nNOT,demo,0.50\n"
    )
    rc, out, _ = run_cli(
        capsys, "cost", "chi", "--n", "4", "--lib", "demo", "--gates", str(csv_path)
    )
    assert rc == 0
    assert "area_ge: 14.00" in out


def test_exit_code_2_usage(capsys):
    rc, _, err = run_cli(capsys, "analyze", "bogus:9", "--metrics", "ddt")
    assert rc == 2 and "error:" in err
    rc, _, err = run_cli(capsys, "analyze", "chi:5", "--metrics", "ddt,frob")
    assert rc == 2
    rc, _, err = run_cli(capsys, "analyze", "chi:5", "--metrics", "")
    assert rc == 2
    rc, _, err = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "frobnicate")
    assert rc == 2
    rc, _, err = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "iterate:x")
    assert rc == 2
    rc, _, err = run_cli(capsys, "construct", "chi")
    assert rc == 2


def test_exit_code_3_domain(capsys):
    rc, _, err = run_cli(capsys, "construct", "chi:2")
    assert rc == 3 and "error:" in err
    rc, _, err = run_cli(capsys, "analyze", "chi_nm:6:3", "--metrics", "bct")
    assert rc == 3
    rc, _, err = run_cli(capsys, "group", "--n", "6", "--m", "3", "--coeffs", "110", "order")
    assert rc == 3
    rc, _, err = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "010", "inverse")
    assert rc == 3
    rc, _, err = run_cli(capsys, "fixed-points", "--n", "6", "--m", "3", "--power", "1")
    assert rc == 3
    rc, _, err = run_cli(capsys, "cost", "chi", "--n", "5", "--lib", "intel14")
    assert rc == 3
    rc, _, err = run_cli(capsys, "group", "--n", "8", "--m", "3", "--coeffs", "110", "iterate:-1")
    assert rc == 3


def test_exit_code_4_io(tmp_path, capsys):
    rc, _, err = run_cli(capsys, "analyze", "/no/such/table.tbl", "--metrics", "ddt")
    assert rc == 4 and "error:" in err
    bad = tmp_path / "bad.tbl"
    bad.write_text("{not json")
    rc, _, err = run_cli(capsys, "analyze", str(bad), "--metrics", "ddt")
    assert rc == 4
    rc, _, err = run_cli(
        capsys, "construct", "chi:5", "-o", str(tmp_path / "missing" / "x.tbl")
    )
    assert rc == 4
    rc, _, err = run_cli(
        capsys, "cost", "chi", "--n", "5", "--lib", "umc180", "--gates", str(tmp_path / "no.csv")
    )
    assert rc == 4


def test_console_script_entry_point():
    exe = shutil.which("chibox")
    assert exe is not None
    proc = subprocess.run(
        [exe, "construct", "chi:3", "--format", "structured"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["entries"] == ["0", "3", "6", "1", "5", "4", "2", "7"]
