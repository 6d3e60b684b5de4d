import json

import pytest
from click.testing import CliRunner

from cftr.cli import main


@pytest.fixture
def cli():
    runner = CliRunner()

    def invoke(*args, input=None):
        return runner.invoke(main, list(args), input=input)

    return invoke


def test_expand(cli):
    r = cli("expand", "omega", "-r", "1")
    assert r.exit_code == 0
    assert r.stdout.count("label=") >= 4
    r = cli("expand", '{"kind": "line"}', "-r", "2", "--format", "json")
    assert len(json.loads(r.stdout)["vertices"]) == 5


def test_bad_spec(cli):
    assert cli("expand", "nonsense").exit_code == 2
    assert cli("expand", '{"kind": "mystery"}').exit_code == 2
    assert cli("expand", "{not json").exit_code == 2


def test_word_problem(cli):
    r = cli("wp", "omega", "c c")
    assert r.exit_code == 0 and json.loads(r.stdout)["identity"] is True
    assert cli("wp", "antenna", "a c⁻¹ b c a⁻¹ c⁻¹ b⁻¹ c").exit_code == 1
    assert cli("wp", "omega", "a x").exit_code == 2


def test_order(cli):
    r = cli("order", "omega", "a")
    assert r.exit_code == 1 and "infinite (certified)" in r.stderr
    r = cli("order", "cycle5", "a")
    assert r.exit_code == 0 and json.loads(r.stdout)["order"] == 5


def test_act(cli):
    r = cli("act", "omega", "root", "c a")
    assert r.exit_code == 0 and json.loads(r.stdout)["image"] == ["q", 0]


def test_infer_then_verify(cli, tmp_path):
    r = cli("infer", "line", "--d", "6", "--s", "2")
    assert r.exit_code == 0 and len(json.loads(r.stdout)["system"]["types"]) == 3
    path = tmp_path / "line.json"
    path.write_text(r.stdout)
    assert cli("verify", str(path), "line").exit_code == 0
    assert cli("verify", str(path), '{"kind": "cycle", "n": 5}').exit_code == 4


def test_system_from_stdin(cli):
    r = cli("examples", "show", "line")
    assert cli("wp", "-", "a a'", input=r.stdout).exit_code == 0


def test_transducer(cli):
    r = cli("transducer", "omega")
    assert r.exit_code == 0
    counts = json.loads(r.stdout)["counts"]
    assert counts["states"] == len(json.loads(r.stdout)["states"])
    r = cli("transducer", "line", "--run", "a", '[[-1, -1, null], [0, 0, "w"]]')
    assert json.loads(r.stdout)["output"] == [[-1, -1, None], [0, 0, None], [1, 0, "w"]]
    assert cli("transducer", "line", "--dot").stdout.startswith("digraph")


def test_freeproduct(cli):
    spec = {"kind": "free_product", "theta1": [{"kind": "line", "letter": "c"}],
            "theta2": [{"kind": "line", "letter": "a"}]}
    r = cli("freeproduct", json.dumps(spec), "-r", "1")
    assert r.exit_code == 0 and len(json.loads(r.stdout)["ball"]["vertices"]) == 5
    assert cli("freeproduct", "line").exit_code == 2


def test_pda_spec(cli):
    from cftr.pda import signed_counter_pda

    spec = json.dumps({"kind": "pda", "pda": signed_counter_pda().to_json()})
    r = cli("infer", spec, "--d", "6", "--s", "2")
    assert r.exit_code == 0 and len(json.loads(r.stdout)["system"]["types"]) == 3


def test_examples(cli):
    r = cli("examples", "list")
    assert r.exit_code == 0 and "omega" in {d["name"] for d in json.loads(r.stdout)}
    assert cli("examples", "show", "nope").exit_code == 2


def test_acceptance_subset(cli):
    r = cli("acceptance", "--only", "1", "--only", "9")
    assert r.exit_code == 0
    assert [d["passed"] for d in json.loads(r.stdout)] == [True, True]
