import json

import pytest

from nilforms import cli
from nilforms.manifest import dumps, parse, run
from nilforms.tables import table_suite

SO3 = {"zoo": "so", "params": {"n": 3}}


def write(tmp_path, data, name="m.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def manifest(checks, algebra=SO3, **extra):
    return dict({"schema_version": 1, "algebra": algebra, "checks": checks}, **extra)


def run_cli(tmp_path, argv):
    out = tmp_path / "out.json"
    code = cli.main(argv + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_nil_degree_manifest_exit_0(tmp_path):
    code, bundle = run_cli(tmp_path, ["run", write(tmp_path, manifest([{"check": "nil_degree", "k": 1}]))])
    assert code == 0
    rep = bundle["reports"][0]
    assert rep["result"]["degree"] == 2 and bundle["summary"]["exit_code"] == 0


def test_refuted_claim_exit_1(tmp_path):
    code, bundle = run_cli(tmp_path, ["run", write(tmp_path, manifest([{"check": "nil_bound", "k": 1, "s": 1}]))])
    assert code == 1 and bundle["reports"][0]["status"] == "refuted"


def test_malformed_index_exit_2(tmp_path, capsys):
    bad = {"inline": {"basis": ["a", "b"], "product": [[0, 5, [[0, "1"]]]]}}
    code = cli.main(["run", write(tmp_path, manifest([{"check": "flags"}], algebra=bad))])
    assert code == 2
    assert "(0, 5)" in capsys.readouterr().err


def test_bad_json_reports_position(tmp_path, capsys):
    code = cli.main(["run", write(tmp_path, "{bad\n")])
    assert code == 2
    err = capsys.readouterr().err
    assert "m.json:1:2:" in err


def test_unknown_check_is_validation_error(tmp_path, capsys):
    code = cli.main(["run", write(tmp_path, manifest([{"check": "frobnicate"}]))])
    assert code == 2 and "checks[0]" in capsys.readouterr().err


def test_resource_cap_exit_3(tmp_path):
    m = manifest([{"check": "nil_bound", "k": 1, "s": 3}], caps={"max_generators": 3})
    code, bundle = run_cli(tmp_path, ["run", write(tmp_path, m)])
    assert code == 3 and bundle["reports"][0]["status"] == "cap_exceeded"


def test_cap_from_command_line(tmp_path):
    m = manifest([{"check": "nil_bound", "k": 1, "s": 3}])
    code, _ = run_cli(tmp_path, ["run", write(tmp_path, m), "--max-generators", "2"])
    assert code == 3


def test_inspect(tmp_path):
    code, bundle = run_cli(tmp_path, ["inspect", "su", "--param", "n=2"])
    assert code == 0 and bundle["flags"]["jacobi"]["holds"]


def test_table1_is_deterministic():
    a = dumps(table_suite("table1")[1])
    b = dumps(table_suite("table1")[1])
    assert a == b


def test_table1_rows():
    code, bundle = table_suite("table1")
    assert code == 0
    abelian = {"so(2)", "u(1)"}
    for row in bundle["table"]:
        assert row["nil_degree_k1"] == (1 if row["family"] in abelian else 2)
        assert row["thresholds"] == [4, 6]


def test_bundle_round_trips_through_json():
    code, bundle = run(parse(manifest([{"check": "nil_degree", "k": 1}, {"check": "flags"}])))
    text = dumps(bundle)
    assert dumps(json.loads(text)) == text


def test_workers_preserve_order():
    checks = [{"check": "theorem_a", "condition": "G1", "k": 1, "s": 2, "n_range": [2, 3, 4, 5, 6]}]
    m = manifest(checks, algebra={"zoo": "iso", "params": {"n": 3}}, split="rotations/translations")
    from nilforms.manifest import Settings
    one = dumps(run(parse(m))[1])
    many = dumps(run(parse(m, Settings(workers=4)))[1])
    assert one == many


def test_modular_flag(tmp_path):
    code, bundle = run_cli(tmp_path, ["run", write(tmp_path, manifest([{"check": "nil_bound", "k": 1, "s": 2}])),
                                      "--mode", "modular", "--seed", "5"])
    assert code == 0
    rep = bundle["reports"][0]["result"]
    assert rep["mode"]["kind"] == "modular" and rep["mode"]["seed"] == 5
