import json
import os

import pytest
from deepdiff import DeepDiff

from trilat.config import RunConfig, get_config, load_config_file, make_run_config
from trilat.errors import InputError
from trilat.run_trilat import main
from trilat.surface.parser import parse_triangulation

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "data")


def _path(name):
    return os.path.join(DATA, name + ".tri")


def _last_json(text):
    return json.loads(text.strip().splitlines()[-1])


def _run(capsys, *argv, environ=None):
    code = main(list(argv), environ=environ or {})
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = _run(capsys, "validate", _path("T2"))
    assert code == 0
    report = json.loads(out)
    assert report["valid"] is True
    assert report["t"] == "2" and report["degree_type"] == ["4", "4", "4"]
    assert report["code"].startswith("tri:2:")


def test_validate_text_format(capsys):
    code, out, _ = _run(capsys, "--format", "text", "validate", _path("tetrahedron"))
    assert code == 0
    assert "t: 4" in out.splitlines()


def test_invariants_are_stable(capsys):
    _, first, _ = _run(capsys, "invariants", _path("T1"))
    _, second, _ = _run(capsys, "invariants", _path("T1"))
    assert first == second
    assert not DeepDiff(json.loads(first), json.loads(second))
    assert json.loads(first)["root_type_R"] == "E8^2+A2"


def test_compare(capsys, tmp_path):
    code, out, _ = _run(capsys, "compare", _path("T1"), _path("T2"))
    assert code == 0 and json.loads(out)["verdict"] == "distinguished"
    other = tmp_path / "t2.tri"
    other.write_text("tri v1\nfaces:\n2 1 0\n1 2 0\n")
    code, out, _ = _run(capsys, "compare", _path("T2"), str(other))
    assert json.loads(out) == {"verdict": "isomorphic", "fields": []}


def test_missing_file_exit_code(capsys):
    code, out, err = _run(capsys, "validate", _path("missing"))
    assert code == 1 and out == ""
    assert _last_json(err)["error"] == "InputError"


def test_invalid_file_exit_code(capsys, tmp_path):
    bad = tmp_path / "open.tri"
    bad.write_text("tri v1\nfaces:\n0 1 2\n")
    code, _, err = _run(capsys, "validate", str(bad))
    assert code == 2
    assert _last_json(err)["error"] == "TopologyError"


def test_corrupt_lift_exit_code(capsys):
    code, _, err = _run(capsys, "verify", _path("T2"), "--corrupt-lift")
    assert code == 3
    record = _last_json(err)
    assert record["stage"] == "thurston" and "triangle" in record


def test_verify_file(capsys):
    code, out, _ = _run(capsys, "verify", _path("T2"))
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_subdivide(capsys):
    code, out, _ = _run(capsys, "subdivide", _path("T2"), "2")
    assert code == 0
    assert parse_triangulation(out).t == 8


def test_enumerate(capsys):
    code, out, _ = _run(capsys, "enumerate", "--t-max", "4")
    assert code == 0
    report = json.loads(out)
    assert report["classes"]["2"] == "2"
    assert len(report["codes"]) == sum(int(c) for c in report["classes"].values())


def test_verify_small_corpus(capsys):
    code, out, _ = _run(capsys, "verify", "--corpus", "2")
    assert code == 0
    report = json.loads(out)
    assert report["classes"] == "2"
    assert report["audit"]["indistinguishable-by-fingerprint"] == []
    assert report["glued"] == "2"


@pytest.mark.slow
def test_verify_corpus_with_workers(capsys):
    code, out, _ = _run(capsys, "--workers", "2", "verify", "--corpus", "6")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify"], environ={})
    assert info.value.code == 2
    assert main([], environ={}) == 1


def test_config_precedence(tmp_path):
    cfg_file = tmp_path / "run.yaml"
    cfg_file.write_text("norm_bound: 4\nworkers: 3\n")
    parser = get_config()
    args = parser.parse_args(["--config", str(cfg_file), "--workers", "5", "validate", "x.tri"])
    cfg = make_run_config(args, environ={"TRILAT_WORKERS": "2"})
    assert cfg.workers == 5 and cfg.norm_bound == 4
    args = parser.parse_args(["validate", "x.tri"])
    cfg = make_run_config(args, environ={"TRILAT_WORKERS": "2"})
    assert cfg.workers == 2 and cfg.norm_bound == RunConfig.norm_bound
    assert cfg.paths == ("x.tri",)


def test_config_file_formats(tmp_path):
    toml_file = tmp_path / "run.toml"
    toml_file.write_text("mirror = true\n")
    assert load_config_file(str(toml_file)).mirror is True
    with pytest.raises(InputError):
        load_config_file(str(tmp_path / "run.ini"))


def test_unknown_config_key(tmp_path):
    cfg_file = tmp_path / "run.yaml"
    cfg_file.write_text("colour: blue\n")
    args = get_config().parse_args(["--config", str(cfg_file), "validate", "x.tri"])
    with pytest.raises(ValueError):
        make_run_config(args, environ={})


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(command="enumerate", t_max=1).validate()
    with pytest.raises(ValueError):
        RunConfig(command="subdivide", paths=("a",), k=0).validate()
    assert RunConfig(command="verify", paths=("a",)).validate().workers == 1
