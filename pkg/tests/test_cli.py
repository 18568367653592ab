from __future__ import annotations

import os

import pytest

from rankpke.cli import main

SEED = "00" * 31 + "01"
SEED2 = "00" * 31 + "02"


def _kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line.split("=")[0])


def test_params_l1(capsys):
    assert main(["params", "--preset", "L1"]) == 0
    kv = _kv(capsys.readouterr().out)
    assert kv["name"] == "L1" and kv["valid"] == "1"
    assert kv["size_pk_bytes"] == "256"


def test_params_invalid_w(capsys):
    assert main(["params", "--n", "64", "--k", "24", "--w", "16", "--l", "2"]) == 2


@pytest.mark.parametrize("argv", [
    ["params"],
    ["params", "--preset", "L1", "--n", "64"],
    ["bogus"],
    ["keygen", "--preset", "L1", "--pk", "a", "--sk", "b", "--seed", "zz"],
    ["keygen", "--preset", "L1", "--pk", "a", "--sk", "b", "--seed", "00"],
    ["failure-sim", "--n", "16", "--k", "6", "--w", "5", "--l", "1", "--trials", "0"],
])
def test_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert _code(argv) == 1


def _code(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def test_estimate_writes_figure(tmp_path, capsys):
    assert main(["estimate", "--preset", "L1", "--plot-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    fig = _kv(out)["figure"]
    assert os.path.getsize(fig) > 1000
    assert "minrank_groebner" in out


def _round_trip(tmp_path, preset="L1"):
    pk, sk, pt, ct, back = (str(tmp_path / x) for x in ("pk", "sk", "pt", "ct", "back"))
    assert main(["keygen", "--preset", preset, "--seed", SEED, "--pk", pk, "--sk", sk]) == 0
    assert main(["sample-plaintext", "--preset", preset, "--seed", SEED2, "--out", pt]) == 0
    assert main(["encrypt", "--pk", pk, "--in", pt, "--out", ct, "--seed", SEED]) == 0
    assert main(["decrypt", "--sk", sk, "--in", ct, "--out", back]) == 0
    return pk, sk, pt, ct, back


def test_round_trip_files(tmp_path, capsys):
    pk, sk, pt, ct, back = _round_trip(tmp_path)
    with open(pt, "rb") as a, open(back, "rb") as b:
        assert a.read() == b.read()
    assert os.path.getsize(pk) == 13 + 256
    sizes = {x: os.path.getsize(x) for x in (pk, sk, ct)}
    assert sizes[pk] == sizes[ct]


def test_seeded_runs_are_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    files_a = _round_trip(a)
    files_b = _round_trip(b)
    for x, y in zip(files_a, files_b):
        with open(x, "rb") as fx, open(y, "rb") as fy:
            assert fx.read() == fy.read()


def test_wrong_file_type(tmp_path, capsys):
    pk, sk, pt, ct, _ = _round_trip(tmp_path)
    assert main(["decrypt", "--sk", pk, "--in", ct, "--out", str(tmp_path / "x")]) == 1
    assert "expected" in capsys.readouterr().err
    assert main(["encrypt", "--pk", pk, "--in", ct, "--out", str(tmp_path / "x")]) == 1


def test_missing_file(tmp_path):
    assert main(["decrypt", "--sk", str(tmp_path / "none"), "--in", "x", "--out", "y"]) == 1


def test_truncated_ciphertext(tmp_path, capsys):
    pk, sk, pt, ct, _ = _round_trip(tmp_path)
    with open(ct, "rb") as fh:
        data = fh.read()
    with open(ct, "wb") as fh:
        fh.write(data[:-1])
    assert main(["decrypt", "--sk", sk, "--in", ct, "--out", str(tmp_path / "x")]) == 1
    assert "truncated" in capsys.readouterr().err


def test_parameter_mismatch(tmp_path):
    pk, sk, pt, ct, _ = _round_trip(tmp_path)
    other = tmp_path / "o"
    other.mkdir()
    pk3 = str(other / "pk")
    sk3 = str(other / "sk")
    assert main(["keygen", "--preset", "L3", "--seed", SEED, "--pk", pk3, "--sk", sk3]) == 0
    assert main(["decrypt", "--sk", sk3, "--in", ct, "--out", str(other / "x")]) == 1


def test_failure_sim_output(tmp_path, capsys):
    code = main(["failure-sim", "--n", "16", "--k", "6", "--w", "5", "--l", "1", "--trials", "300",
                 "--chunk", "100", "--seed", SEED, "--plot-dir", str(tmp_path)])
    kv = _kv(capsys.readouterr().out)
    assert kv["seed"] == SEED
    assert kv["trials"] == "300"
    assert kv["all_failures_explained"] == "1"
    assert os.path.exists(kv["figure"])
    assert code == (0 if kv["consistent_with_bound"] == "1" else 2)


def test_failure_sim_is_seed_deterministic(capsys):
    argv = ["failure-sim", "--n", "16", "--k", "6", "--w", "5", "--l", "1", "--trials", "120", "--seed", SEED]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
