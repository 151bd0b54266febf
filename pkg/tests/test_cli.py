"""Command-line interface: exit codes, payloads, and output stability."""

import json
import subprocess
import sys

import pytest

from gimpl import (
    ExtValue,
    InstanceDoc,
    PaymentPromise,
    RectRegion,
    serialize_instance,
)
from gimpl.cli import run


def _write(tmp_path, name, doc: InstanceDoc) -> str:
    path = tmp_path / name
    path.write_text(serialize_instance(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def ex1_file(tmp_path, ex1):
    return _write(tmp_path, "ex1.json", InstanceDoc(game=ex1))


@pytest.fixture
def ex1_verify_file(tmp_path, ex1, ex1_promise_cheap, ex1_region):
    doc = InstanceDoc(
        game=ex1, region=ex1_region, budget=ExtValue(1), promise=ex1_promise_cheap
    )
    return _write(tmp_path, "ex1_verify.json", doc)


def test_analyze_worked_example(ex1_file):
    result = run(["analyze", ex1_file])
    assert result.status == "yes" and result.exit_code == 0
    sets = result.payload["undominated"]["names"]
    assert sets == [["s1", "s2"], ["t1", "t2"]]
    assert result.payload["promise_applied"] is False


def test_analyze_applies_promise(tmp_path, ex1, ex1_promise):
    path = _write(tmp_path, "ex1p.json", InstanceDoc(game=ex1, promise=ex1_promise))
    result = run(["analyze", str(path)])
    assert result.payload["promise_applied"] is True
    assert result.payload["undominated"]["names"] == [["s1"], ["t1"]]


def test_pne_on_graphical_document(tmp_path):
    from gimpl import GraphicalGame

    gg = GraphicalGame.make(
        ["left", "hub"],
        [["T", "F"], ["T", "F"]],
        [(0, 1)],
        [{(0, 0): 2, (0, 1): 1}, {}],
    )
    path = _write(
        tmp_path, "gg.json",
        InstanceDoc(game=gg, region=RectRegion.make([[0], [0]])),
    )
    result = run(["pne", str(path)])
    assert result.status == "yes"
    out = tmp_path / "zero.json"
    out.write_text(json.dumps(result.payload["instance"]), encoding="utf-8")
    verdict = run(["verify", str(out)])
    assert verdict.status == "yes" and verdict.payload["cost"] == 0


def test_verify_yes(ex1_verify_file):
    result = run(["verify", ex1_verify_file])
    assert result.status == "yes" and result.exit_code == 0
    assert result.payload["cost"] == 1
    assert result.payload["holds"] is True


def test_verify_exact_fails(ex1_verify_file):
    result = run(["verify", ex1_verify_file, "--exact"])
    assert result.status == "no" and result.exit_code == 2
    assert result.payload["violation"] == [0, 2]


def test_verify_without_promise_reports_violation(tmp_path, ce1, ce1_region):
    doc = InstanceDoc(game=ce1, region=ce1_region, budget=ExtValue(0))
    path = _write(tmp_path, "ce1.json", doc)
    result = run(["verify", str(path), "--exact"])
    assert result.status == "no" and result.exit_code == 2
    assert result.payload["violation"] == [0, 1]
    assert result.payload["cost"] == 0
    # the subset reading holds: survivors sit inside the desired sets
    assert run(["verify", str(path)]).status == "yes"


def test_error_exit_code(tmp_path):
    result = run(["analyze", str(tmp_path / "missing.json")])
    assert result.status == "error" and result.exit_code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert run(["analyze", str(bad)]).exit_code == 1
    assert run(["frobnicate", "x"]).exit_code == 1


def test_solve_counterexample(tmp_path, ce1, ce1_region):
    path = _write(tmp_path, "ce1.json", InstanceDoc(game=ce1, region=ce1_region))
    result = run(["solve", path, "--jobs", "1"])
    assert result.status == "yes"
    assert result.payload["delta"] == 0
    assert result.payload["mapping"] == [[], [[1, 0]]]
    # the emitted instance document verifies as-is
    solved = tmp_path / "solved.json"
    solved.write_text(json.dumps(result.payload["instance"]), encoding="utf-8")
    assert run(["verify", str(solved)]).status == "yes"


def test_solve_exactify_pipeline(tmp_path):
    from gimpl import Game

    game = Game.make(
        ["p1", "p2"],
        [["a", "b", "c", "d"], ["e", "f", "g", "h"]],
        [
            {(0, 0): 1, (1, 1): 3, (2, 0): 2, (3, 3): 4},
            {(0, 0): 2, (1, 2): 1, (2, 2): 3, (0, 3): 1},
        ],
    )
    path = _write(
        tmp_path, "eq.json", InstanceDoc(game=game, region=RectRegion.make([[0], [0]]))
    )
    result = run(["solve", str(path), "--exactify", "--jobs", "1"])
    assert result.status == "yes"
    assert result.payload["exactified"] is True
    out = tmp_path / "exact.json"
    out.write_text(json.dumps(result.payload["instance"]), encoding="utf-8")
    verdict = run(["verify", str(out), "--exact"])
    assert verdict.status == "yes"


def test_solve_exactify_reports_margins(tmp_path, ce1, ce1_region):
    path = _write(tmp_path, "ce1.json", InstanceDoc(game=ce1, region=ce1_region))
    result = run(["solve", path, "--exactify", "--jobs", "1"])
    assert result.status == "error"
    assert "not equitable" in result.payload["error"]
    assert "(-1, -1)" in result.payload["error"]


def test_pne_yes_and_no(tmp_path, ce1):
    yes = _write(
        tmp_path, "pne_yes.json",
        InstanceDoc(game=ce1, region=RectRegion.make([[0], [0]])),
    )
    result = run(["pne", yes])
    assert result.status == "yes" and result.payload["pne"] is True
    emitted = tmp_path / "zero.json"
    emitted.write_text(json.dumps(result.payload["instance"]), encoding="utf-8")
    assert run(["verify", str(emitted)]).status == "yes"

    no = _write(
        tmp_path, "pne_no.json",
        InstanceDoc(game=ce1, region=RectRegion.make([[1], [1]])),
    )
    result = run(["pne", no])
    assert result.status == "no" and result.exit_code == 2
    assert result.payload["defector"] == [0, 0]


def test_pne_on_promise_carrying_document(tmp_path, ce1):
    # the region {s2} x {s2} is stable only after sweetening (s2, s2)
    sweetener = PaymentPromise.make(ce1, [{(1, 1): 3}, {(1, 1): 3}])
    doc = InstanceDoc(
        game=ce1, region=RectRegion.make([[1], [1]]), promise=sweetener
    )
    path = _write(tmp_path, "sweet.json", doc)
    result = run(["pne", str(path)])
    assert result.status == "yes" and result.payload["pne"] is True
    # with an input promise the zero-cost promise is emitted standalone
    assert "instance" not in result.payload
    assert result.payload["promise"]


def test_oracle_command(tmp_path, ex1, ex1_region):
    path = _write(tmp_path, "ex1.json", InstanceDoc(game=ex1, region=ex1_region))
    result = run(["oracle", path])
    assert result.status == "yes"
    assert result.payload["delta"] == 1
    assert len(result.payload["landscape"]) == 2


def test_gen_x3c_pipes_into_solver_commands(tmp_path):
    result = run(["gen", "x3c", "--n", "1", "--seed", "0", "--force", "yes"])
    assert result.status == "yes"
    assert result.payload["format"] == "gipf-1"
    path = tmp_path / "x3c.json"
    path.write_text(json.dumps(result.payload), encoding="utf-8")
    assert run(["analyze", str(path)]).status == "yes"
    assert run(["pne", str(path)]).status == "no"


def test_gen_x3c_graphical_target():
    result = run(["gen", "x3c", "--n", "1", "--seed", "0", "--target", "graphical"])
    assert result.payload["kind"] == "graphical"
    assert result.payload["budget"] == "1/2"


def test_solve_expands_graphical_instances(tmp_path):
    generated = run(["gen", "x3c", "--n", "1", "--seed", "0", "--target", "graphical"])
    path = tmp_path / "graphical.json"
    path.write_text(json.dumps(generated.payload), encoding="utf-8")
    analyzed = run(["analyze", str(path)])
    assert analyzed.payload["kind"] == "graphical"
    solved = run(["solve", str(path), "--jobs", "1"])
    assert solved.status == "yes"
    assert solved.payload["instance"]["kind"] == "normal"
    out = tmp_path / "solved.json"
    out.write_text(json.dumps(solved.payload["instance"]), encoding="utf-8")
    # the emitted normal-form instance verifies at the reported delta
    assert run(["verify", str(out)]).status == "yes"


def test_gen_seed_env_override(monkeypatch):
    monkeypatch.setenv("GIMPL_SEED", "7")
    with_env = run(["gen", "x3c", "--n", "2", "--force", "yes"])
    explicit = run(["gen", "x3c", "--n", "2", "--seed", "7", "--force", "yes"])
    assert with_env.payload == explicit.payload
    other = run(["gen", "x3c", "--n", "2", "--seed", "8", "--force", "yes"])
    assert with_env.payload != other.payload


def test_gen_coloring_and_decode(tmp_path):
    edges = tmp_path / "k3.txt"
    edges.write_text("x y\ny z\nx z\n", encoding="utf-8")
    generated = run(["gen", "coloring", "--edges", str(edges)])
    assert generated.status == "yes"

    from gimpl.reductions import (
        brute_coloring,
        coloring_forward_promise,
        coloring_to_exact,
        parse_edge_list,
    )

    graph = parse_edge_list(edges.read_text(encoding="utf-8"))
    game, region, budget = coloring_to_exact(graph)
    promise = coloring_forward_promise(graph, brute_coloring(graph))
    doc = InstanceDoc(game=game, region=region, budget=budget, promise=promise)
    path = _write(tmp_path, "colored.json", doc)
    result = run(["decode", "--kind", "coloring", path])
    assert result.status == "yes"
    coloring = result.payload["coloring"]
    assert sorted(coloring) == ["x", "y", "z"]
    assert len(set(coloring.values())) == 3


def test_decode_x3c_2p(tmp_path):
    from gimpl.reductions import gen_x3c, x3c_forward_promise_2p, x3c_to_two_player

    inst = gen_x3c(1, 0)
    game, region, budget = x3c_to_two_player(inst)
    promise = x3c_forward_promise_2p(inst, (0,))
    doc = InstanceDoc(game=game, region=region, budget=budget, promise=promise)
    path = _write(tmp_path, "x3c.json", doc)
    result = run(["decode", "--kind", "x3c2p", path])
    assert result.status == "yes"
    assert result.payload["cover"] == [0]
    assert result.payload["triples"] == [[0, 1, 2]]


def test_decode_x3c_graphical(tmp_path):
    from gimpl.reductions import (
        gen_x3c,
        x3c_forward_promise_graphical,
        x3c_to_graphical,
    )

    inst = gen_x3c(2, 3, "yes")
    from gimpl.reductions import brute_x3c

    cover = brute_x3c(inst)
    gg, region, budget = x3c_to_graphical(inst)
    promise = x3c_forward_promise_graphical(inst, cover, budget)
    doc = InstanceDoc(game=gg, region=region, budget=budget, promise=promise)
    path = _write(tmp_path, "x3cg.json", doc)
    result = run(["decode", "--kind", "x3cgraph", path])
    assert result.status == "yes"
    assert tuple(result.payload["cover"]) == cover


def test_decode_without_promise_errors(ex1_file):
    result = run(["decode", "--kind", "x3c2p", ex1_file])
    assert result.status == "error"


def test_stdout_is_stable_json(ex1_verify_file):
    cmd = [sys.executable, "-m", "gimpl.cli", "verify", ex1_verify_file]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    payload = json.loads(first.stdout)
    assert payload["cost"] == 1
    assert first.stderr == b""


def test_cli_exit_code_no(tmp_path, ce1):
    doc = InstanceDoc(
        game=ce1, region=RectRegion.make([[1], [1]]), budget=ExtValue(0)
    )
    path = _write(tmp_path, "no.json", doc)
    proc = subprocess.run(
        [sys.executable, "-m", "gimpl.cli", "pne", str(path)], capture_output=True
    )
    assert proc.returncode == 2
