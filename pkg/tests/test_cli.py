import io
import json
import os
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from hallk.cli import run
from cli_cases import CASES, SCHEMAS

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("HALLK_UPDATE_GOLDEN") == "1"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def render(code, out, err):
    return f"exit: {code}\n--- stdout\n{out}--- stderr\n{err}"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    got = render(*invoke(CASES[name]))
    path = GOLDEN / f"{name}.txt"
    if UPDATE:
        path.write_text(got)
    assert path.read_text() == got


@pytest.mark.parametrize("name", sorted(CASES))
def test_json_outputs_match_schema(name):
    argv = CASES[name]
    if "--format" in argv:
        return
    code, out, _ = invoke(argv)
    if code == 2:
        assert out == ""
        return
    key = (argv[0], argv[1]) if argv[0] == "oracle" else argv[0]
    schema = json.loads(resources.files("hallk").joinpath("schemas", SCHEMAS[key]).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.validate(json.loads(out), schema)


def test_schema_files_are_valid():
    for entry in resources.files("hallk").joinpath("schemas").iterdir():
        jsonschema.Draft202012Validator.check_schema(json.loads(entry.read_text()))


def test_spec_examples():
    assert invoke(CASES["nf-text"]) == (0, "q^-4 * f[1](1)*f[1](2) + q^-1 * P2[1](1,1)\n", "")
    assert invoke(CASES["verify-serre"])[0] == 0
    code, out, _ = invoke(CASES["lambda-json"])
    assert code == 0 and json.loads(out)["lambda"] == 6


def test_exit_codes():
    assert invoke(CASES["verify-expr-fails"])[0] == 1
    assert invoke(CASES["parse-grade-error"])[0] == 2
    assert invoke(CASES["oracle-crosscheck-r4"])[0] == 2
    assert invoke(["nonsense"])[0] == 2


def test_deterministic_bytes_across_processes():
    argv = CASES["verify-serre-json"]
    runs = [
        subprocess.run([sys.executable, "-m", "hallk", *argv], capture_output=True, env={**os.environ, "PYTHONHASHSEED": seed})
        for seed in ("1", "2")
    ]
    assert runs[0].returncode == runs[1].returncode == 0
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout.decode() == invoke(argv)[1]


def test_env_fuel(monkeypatch):
    monkeypatch.setenv("HALLK_MAX_STEPS", "1")
    code, _, err = invoke(["nf", "f[1](6)*f[1](-6)"])
    assert code == 2 and "rewrite steps" in err
