import json
import random

import pytest

from cftr.cone_system import infer_system, verify_presentation
from cftr.core import Alphabet, InputError, sphere_sizes, verify_isomorphic_balls, walk
from cftr.examples import cycle, line, line_system
from cftr.pda import (
    BOTTOM,
    Configuration,
    InversePDA,
    config_graph,
    finite_state_pda,
    pda_accepts,
    signed_counter_pda,
    step,
    tree_pda,
    validate_reversibility,
    without,
)


@pytest.fixture(scope="module")
def counter():
    return signed_counter_pda()


def test_step_examples(counter):
    c = step(counter, counter.start, "a")
    assert c == Configuration("q+", (BOTTOM, "X"))
    assert step(counter, c, "a'") == Configuration("q0", (BOTTOM,))
    assert step(counter, Configuration("q+", (BOTTOM,)), "a'") is None


def test_reversibility(counter):
    assert validate_reversibility(counter, 8)
    broken = without(counter, ("q+", "a'", "X"))
    rep = validate_reversibility(broken, 8)
    assert not rep and rep.witness["letter"] == "a"


def test_empty_move_is_rejected(counter):
    doc = counter.to_json()
    doc["delta_plus"].append(["q0", "", "X", "q0", ["X"]])
    with pytest.raises(InputError, match="real-time"):
        InversePDA.from_json(doc)
    table = dict(counter.transitions)
    table[("q0", "", "X")] = ("q0", ("X",))
    with pytest.raises(InputError, match="real-time"):
        InversePDA(counter.states, counter.alphabet, counter.stack_alphabet, table, "q0")


def test_counter_graph_is_the_line(counter):
    g = config_graph(counter)
    assert verify_presentation(line_system(), g, 10)
    assert len(infer_system(g, 6, 2)) == 3


def test_finite_state_graph_is_the_cycle():
    assert verify_isomorphic_balls(config_graph(finite_state_pda(5)), cycle("a", 5).graph, 8)


def test_tree_ball_sizes():
    M = tree_pda()
    assert validate_reversibility(M, 5)
    assert sphere_sizes(config_graph(M), 2) == [1, 4, 12]


def test_acceptance_matches_the_graph(counter):
    g = config_graph(counter)
    rng = random.Random(0)
    A = counter.alphabet
    for _ in range(200):
        w = tuple(rng.choice(A.letters) for _ in range(rng.randint(0, 10)))
        assert pda_accepts(counter, w) == (walk(g, g.root, w) == g.root)
        assert pda_accepts(counter, w) == (sum(1 if a == "a" else -1 for a in w) == 0)


def test_json_round_trip(counter):
    back = InversePDA.loads(json.dumps(counter.to_json()))
    assert back == counter
    with pytest.raises(InputError):
        InversePDA.from_json({"states": ["q"]})
