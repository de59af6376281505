"""Command-line interface: subcommands, config, cache, determinism."""
import json
import os

import pytest

from crepant.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_models_listing(capsys):
    code, doc = _run(capsys, ["models", "--hard-lefschetz"])
    assert code == 0
    by_id = {m["id"]: m for m in doc["models"]}
    assert set(by_id) == {"P112", "P1113", "F2", "F3"}
    assert by_id["P1113"]["hard_lefschetz"] is False
    assert by_id["F2"]["variance"] == 8


def test_models_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["models", "--hard-lefschetz"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_pf_check_exit_codes(capsys):
    code, doc = _run(capsys, ["pf-check", "--model", "P1113", "--order", "5"])
    assert code == 0 and doc["pass"]


def test_ifun_cache_roundtrip(tmp_path, capsys):
    cache = tmp_path / "cache"
    args = ["--cache-dir", str(cache), "ifun", "--model", "F2",
            "--order", "3"]
    code, doc1 = _run(capsys, args)
    assert code == 0
    files = os.listdir(cache)
    assert len(files) == 1 and files[0].endswith(".json")
    code, doc2 = _run(capsys, args)
    assert doc1 == doc2
    assert len(os.listdir(cache)) == 1


def test_config_file_sets_order(tmp_path, capsys):
    cfg = tmp_path / "crepant.toml"
    cfg.write_text("order = 4\n")
    code, doc = _run(capsys, ["--config", str(cfg), "pf-check",
                              "--model", "F2"])
    assert code == 0 and doc["order"] == 4
    # CLI flag overrides the config value
    code, doc = _run(capsys, ["--config", str(cfg), "pf-check",
                              "--model", "F2", "--order", "3"])
    assert doc["order"] == 3


def test_cache_env_var(tmp_path, capsys, monkeypatch):
    cache = tmp_path / "envcache"
    monkeypatch.setenv("CREPANT_CACHE_DIR", str(cache))
    code, _ = _run(capsys, ["ifun", "--model", "P112", "--order", "2"])
    assert code == 0
    assert len(os.listdir(cache)) == 1


def test_mirror_map_subcommand(capsys):
    code, doc = _run(capsys, ["mirror-map", "--model", "F3", "--order", "4",
                              "--inverse"])
    assert code == 0
    flat = [item for comp in doc["components"] for item in comp]
    assert ["q1^1", "1/1"] in flat or ["q1^1", "1"] in flat


def test_umatrix_subcommand(capsys):
    code, doc = _run(capsys, ["umatrix", "--pair", "P112",
                              "--check", "symplectic,grading,opposite"])
    assert code == 0 and doc["pass"]
    assert doc["opposite"]["preserved"] is True


def test_theta_matrix_subcommand(capsys):
    code, doc = _run(capsys, ["theta", "--pair", "P112"])
    assert code == 0
    assert doc["matrix"][0][0] == "1"


def test_lg_subcommand(capsys):
    code, doc = _run(capsys, ["lg", "--model", "p112", "--y", "0.1",
                              "--what", "crit", "--precision", "25"])
    assert code == 0
    assert len(doc["critical_points"]) == 4


def test_unknown_check_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["umatrix", "--pair", "P112", "--check", "nonsense"])
