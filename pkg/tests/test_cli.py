import csv
import io
import json
import math

import pytest

from slabeig.cli import SPECTRUM_HEADER, main

PUBLISHED_HARMONIC_10 = {
    10: (1.19525, 3.97625, 5.73125, 7.00025, 9.71375, 12.34625),
    30: (1.07375, 3.13925, 5.20475, 7.27025, 9.33575, 11.40125, 13.46675),
    200: (1.00625, 3.01775, 5.02925, 7.04075, 9.05225, 11.05025, 13.06175),
    2000: (1.000586, 3.001487, 5.002569, 7.003471, 9.004435, 11.005464, 13.007584),
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_solve_harmonic_published(capsys):
    """Seven levels within 5e-3 of the published n=2000 column."""
    code, out, _ = run(capsys, "solve", "--potential", "harmonic", "--walls", "-10", "10", "--n", "2000", "--scan", "0", "14")
    assert code == 0
    assert out.splitlines()[0] == ",".join(SPECTRUM_HEADER)
    r = rows(out)
    assert len(r) == 7
    for row, ref in zip(r, PUBLISHED_HARMONIC_10[2000]):
        assert abs(float(row["energy"]) - ref) <= 5e-3
        assert int(row["nodes"]) == int(row["index"])


def test_solve_quartic(capsys):
    code, out, _ = run(capsys, "solve", "--potential", "poly:1*x^2+1*x^4", "--walls", "-1", "1", "--n", "2000", "--scan", "0", "12")
    assert code == 0
    assert [float(r["energy"]) for r in rows(out)] == pytest.approx([2.635, 10.265], abs=1e-2)


def test_solve_reversed_walls(capsys):
    code, out, err = run(capsys, "solve", "--potential", "harmonic", "--walls", "10", "-10", "--scan", "0", "14")
    assert code == 2
    assert out == ""
    assert "walls" in err


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["--n", "-1"], "--n"),
        (["--de", "0"], "--de"),
        (["--tol", "-1"], "--tol"),
        (["--scan", "3", "1"], "--scan"),
    ],
)
def test_validation_names_flag(capsys, argv, flag):
    code, _, err = run(capsys, "solve", "--potential", "harmonic", "--walls", "-1", "1", *argv)
    assert code == 2
    assert flag in err


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "solve", "--potential", "poly:1*x^2+", "--walls", "-1", "1")
    assert code == 2
    assert "position 11" in err or "11" in err


def test_wavefunction_box(capsys):
    code, out, _ = run(
        capsys, "wavefunction", "--potential", "squarewell", "--walls", "-5", "5", "--n", "0",
        "--level", "0", "--points", "1001", "--scan", "0", "0.5", "--tol", "1e-12", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["nodes"] == 0
    assert len(data["x"]) == 1001
    peak = max(range(1001), key=lambda i: data["psi"][i])
    assert data["x"][peak] == 0.0
    assert data["energy"] == pytest.approx(math.pi**2 / 100, rel=1e-8)


def test_wavefunction_harmonic_odd(capsys):
    code, out, _ = run(capsys, "wavefunction", "--potential", "harmonic", "--walls", "-10", "10", "--level", "1", "--scan", "0", "14")
    assert code == 0
    r = rows(out)
    assert list(r[0]) == ["x", "psi"]
    psi = [float(v["psi"]) for v in r]
    assert max(abs(a + b) for a, b in zip(psi, psi[::-1])) <= 1e-6
    signs = [p > 1e-9 for p in psi if abs(p) > 1e-9]
    assert sum(a != b for a, b in zip(signs, signs[1:])) == 1


def test_wavefunction_level_not_found(capsys):
    code, _, err = run(capsys, "wavefunction", "--potential", "harmonic", "--walls", "-10", "10", "--level", "99", "--scan", "0", "14")
    assert code == 3
    assert "7 level" in err


def test_convergence_morse(capsys):
    code, out, _ = run(
        capsys, "convergence", "--potential", "morse:400,1", "--walls", "-2", "2",
        "--n-values", "10", "30", "50", "200", "2000", "--levels", "1", "--scan", "0", "40",
    )
    assert code == 0
    assert out.splitlines()[0] == "n,E0"
    e0 = [float(r["E0"]) for r in rows(out)]
    assert all(a >= b for a, b in zip(e0, e0[1:]))
    assert all(e > 19.75 for e in e0[:3])
    assert abs(e0[-1] - 19.75) <= 0.05


def test_convergence_harmonic_published_block(capsys):
    """Every row of the L=10 block of the harmonic convergence table, per entry."""
    code, out, _ = run(
        capsys, "convergence", "--potential", "harmonic", "--walls", "-10", "10",
        "--n-values", "10", "30", "200", "2000", "--levels", "7", "--scan", "0", "14",
    )
    assert code == 0
    bad = []
    for r in rows(out):
        n = int(r["n"])
        for j, ref in enumerate(PUBLISHED_HARMONIC_10[n]):
            got = float(r[f"E{j}"])
            if abs(got - ref) > 5e-3:
                bad.append((n, j, got, ref))
    assert not bad, f"{len(bad)} entries off by more than 5e-3, e.g. {bad[:3]}"


def test_convergence_requires_n_values(capsys):
    code, _, err = run(capsys, "convergence", "--potential", "harmonic", "--walls", "-1", "1")
    assert code == 2
    assert "--n-values" in err


def test_oracle_compare_harmonic(capsys):
    code, out, _ = run(
        capsys, "oracle", "--potential", "harmonic", "--walls", "-10", "10",
        "--richardson", "--compare", "--format", "json",
    )
    assert code == 0
    levels = json.loads(out)["levels"]
    assert len(levels) == 4
    assert max(abs(lv["delta"]) for lv in levels) <= 2e-3


def test_oracle_quartic_adjudication(capsys):
    code, out, _ = run(
        capsys, "oracle", "--potential", "poly:1*x^2+1*x^4", "--walls", "-2", "2",
        "--levels", "2", "--richardson", "--compare", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    lit = {(e["index"], e["source"]): e for e in data["literature"]}
    assert lit[(1, "slab_method_n2000")]["value"] == 4.695
    assert lit[(1, "power_series_alhendi_lashin_2005")]["value"] == 4.58734092
    assert sum(e["supported_by_oracle"] for e in data["literature"] if e["index"] == 1) == 1
    assert data["levels"][1]["extrapolated"] is not None


def test_oracle_missing_potential(capsys):
    code, _, err = run(capsys, "oracle", "--walls", "-1", "1")
    assert code == 2
    assert "--potential" in err


def test_missing_subcommand(capsys):
    code, _, _ = run(capsys)
    assert code == 2


def test_csv_and_json_agree(capsys):
    base = ("solve", "--potential", "poly:1*x^2+1*x^6", "--walls", "-1", "1", "--n", "300", "--scan", "0", "12")
    _, csv_out, _ = run(capsys, *base)
    _, json_out, _ = run(capsys, *base, "--format", "json")
    js = json.loads(json_out)["levels"]
    cs = rows(csv_out)
    assert len(js) == len(cs) == 2
    for c, j in zip(cs, js):
        for key in SPECTRUM_HEADER:
            assert float(c[key]) == j[key]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "spec.csv"
    code, out, _ = run(capsys, "solve", "--potential", "harmonic", "--walls", "-1", "1", "--n", "100", "--scan", "0", "12", "--out", str(path))
    assert code == 0 and out == ""
    assert len(rows(path.read_text())) == 2


def test_config_file_flags_win(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"potential": "harmonic", "walls": [-1, 1], "n": 100, "scan": [0, 5], "format": "json"}))
    code, out, _ = run(capsys, "solve", "--config", str(cfg))
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 100 and len(data["levels"]) == 1

    code, out, _ = run(capsys, "solve", "--config", str(cfg), "--scan", "0", "12", "--n", "50")
    data = json.loads(out)
    assert data["n"] == 50 and len(data["levels"]) == 2


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"potental": "harmonic"}))
    code, _, err = run(capsys, "solve", "--config", str(cfg))
    assert code == 2
    assert "potental" in err
