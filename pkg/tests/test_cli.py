"""End-to-end checks of every CLI subcommand through main()."""

import json

import pytest

from surfenc.circuit_ir import Circuit
from surfenc.cli import main
from surfenc.harness import read_results_csv


def test_generate_roundtrips_through_text(tmp_path, capsys):
    out = tmp_path / "circ.txt"
    rc = main(
        [
            "generate",
            "--variant", "rotated",
            "-d", "3",
            "--scheme", "uea",
            "--target", "zero",
            "--p", "0.001",
            "--out", str(out),
        ]
    )
    assert rc == 0
    circ = Circuit.from_text(out.read_text())
    assert circ.metadata["scheme"] == "uea"
    assert circ.gate_count == 16

    rc = main(["generate", "--variant", "rotated", "-d", "3", "--scheme", "ue"])
    assert rc == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "# qubits: 17"
    assert "TICK" in text


def test_count_reports_sizes(capsys):
    rc = main(["count", "--variant", "unrotated", "-d", "5", "--scheme", "ue"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "cnot_count: 52" in out
    assert "entangling_depth: 12" in out
    assert "qubits: 81" in out


def test_simulate_with_config_file_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "variant": "rotated",
                "scheme": "ue",
                "target": "zero",
                "distances": [3],
                "noise_strengths": [0.05],
                "shots": 500,
                "seed": 3,
            }
        )
    )
    csv_path = tmp_path / "out.csv"
    rc = main(
        ["simulate", "--config", str(cfg), "--shots", "800", "--csv", str(csv_path)]
    )
    assert rc == 0
    with open(csv_path) as fh:
        results = read_results_csv(fh)
    assert len(results) == 1
    assert results[0].shots == 800  # flag overrides the file value
    assert results[0].variant == "rotated"

    rc = main(
        [
            "simulate",
            "--variant", "rotated",
            "--scheme", "me",
            "--target", "zero",
            "--distances", "3",
            "--noise-strengths", "0.05",
            "--shots", "400",
            "--seed", "1",
        ]
    )
    assert rc == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header == "variant,scheme,target,d,p,shots,failures,p_l,ci_lo,ci_hi"


def test_verify_clean_and_scrambled(capsys):
    rc = main(["verify", "--variant", "rotated", "-d", "3", "--scheme", "ue"])
    assert rc == 0
    assert "no failures" in capsys.readouterr().out

    rc = main(
        ["verify", "--variant", "rotated", "-d", "3", "--scheme", "ue", "--scrambled"]
    )
    assert rc == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_verify_pairs_flag(capsys):
    rc = main(
        ["verify", "--variant", "rotated", "-d", "3", "--scheme", "uea", "--pairs"]
    )
    # pairs at distance 3 exceed the code's guarantee, so failures are expected
    assert rc == 1
    assert "checked<=w2" in capsys.readouterr().out


def test_compare_from_csv(tmp_path, capsys):
    rows = "\n".join(
        [
            "variant,scheme,target,d,p,shots,failures,p_l,ci_lo,ci_hi",
            "rotated,ue,zero,3,1.000000e-03,100000,2,2e-05,5e-06,7e-05",
            "rotated,uea,zero,3,1.000000e-03,100000,20,0.0002,0.00013,0.00031",
        ]
    )
    path = tmp_path / "res.csv"
    path.write_text(rows + "\n")
    rc = main(["compare", str(path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "uea/ue" in out

    empty = tmp_path / "empty.csv"
    empty.write_text("variant,scheme,target,d,p,shots,failures,p_l,ci_lo,ci_hi\n")
    assert main(["compare", str(empty)]) == 1


def test_unknown_command_is_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
