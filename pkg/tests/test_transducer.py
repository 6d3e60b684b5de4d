import random

import pytest

from cftr.cone_system import ROOT_LETTER, ConeLetter, VertexAddress, cone_of, encode_vertex
from cftr.examples import example_system
from cftr.transducer import (
    SINK,
    TState,
    Transducer,
    build_transducer,
    check_equivariance,
    check_inverse_law,
    check_lipschitz,
    fixes_ball,
    nominal_state_count,
    random_cone_word,
    run,
    state_count,
    word_action,
)

SYSTEMS = ["line", "cycle5", "free-tree", "omega", "antenna", "comb", "torsion"]


@pytest.fixture(scope="module")
def line_T(line_sys):
    return build_transducer(line_sys)


def test_line_state_count(line_sys, line_T):
    # two letters, four child slots: 2 * (4 + 1) + 1, plus one initial state per letter
    assert nominal_state_count(line_sys) == 11
    assert len(line_T.states) == state_count(line_sys) == 13


@pytest.mark.parametrize("name", SYSTEMS)
def test_total_and_bounded(name):
    T = build_transducer(example_system(name))
    assert T.is_total()
    assert T.max_output() <= 3
    assert len(T.states) == state_count(T.system)


def test_sink_echoes(line_T):
    for lam in line_T.alphabet:
        assert line_T.step(SINK, lam) == (SINK, (lam,))


def test_non_final_ascending_word(line_sys, line_T):
    w = (ROOT_LETTER, ConeLetter(0, 0), ConeLetter(1, 0))
    out, q = run(line_T, "a", w)
    assert out == w[:-1]
    assert q == TState("buf", "a", w[-1])


def test_non_well_formed_word_is_fixed(line_sys, line_T):
    rng = random.Random(0)
    for _ in range(50):
        eta = random_cone_word(line_sys, line_T, rng, 6, well_formed=False)
        for a in line_sys.alphabet.letters:
            out, q = run(line_T, a, eta)
            assert out == eta and q == SINK


def test_line_equivariance_example(line_sys, line_T):
    x = encode_vertex(line_sys, VertexAddress((0,), "w"))
    out, _ = run(line_T, "a", x)
    assert out == encode_vertex(line_sys, VertexAddress((0, 0), "w"))


@pytest.mark.parametrize("name", SYSTEMS)
def test_equivariance(name):
    sys = example_system(name)
    assert check_equivariance(sys, build_transducer(sys), 5)


@pytest.mark.parametrize("name", SYSTEMS)
def test_inverse_law(name):
    sys = example_system(name)
    T = build_transducer(sys)
    rng = random.Random(1)
    words = [random_cone_word(sys, T, rng, 7, well_formed=bool(k % 2)) for k in range(60)]
    assert check_inverse_law(T, words)


def test_mutation_is_caught(omega_sys):
    T = build_transducer(omega_sys)
    # a (stay) move: the held letter is re-emitted and the final letter keeps its cone
    key = next((q, lam) for (q, lam), (_, out) in T.table.items()
               if q.kind == "buf" and lam.final and lam.parent == cone_of(omega_sys, q.held)
               and len(out) == 2 and out[0] == q.held and out[1].cone == lam.cone)
    table = dict(T.table)
    q2, out = table[key]
    child = omega_sys.types[key[1].parent].children[key[1].slot]
    other = next(v for v in omega_sys.types[child].frontier if v != out[1].vertex)
    table[key] = (q2, (out[0], out[1]._replace(vertex=other)))
    bad = Transducer(T.system, T.states, T.alphabet, table)
    rep = check_equivariance(omega_sys, bad, 5)
    assert not rep and rep.witness is not None


def test_word_action_and_lipschitz(line_sys, omega_sys, line_T):
    w = encode_vertex(line_sys, VertexAddress((0, 0), "w"))
    assert word_action(line_T, (), w) == w
    assert check_lipschitz(line_sys, (), 5) == 0
    assert check_lipschitz(line_sys, ("a", "a"), 5) == 2
    assert check_lipschitz(omega_sys, ("c",), 5) <= 1


def test_fixes_ball(omega_sys):
    T = build_transducer(omega_sys)
    assert fixes_ball(omega_sys, T, omega_sys.alphabet.parse("c a c' b'"))
    assert not fixes_ball(omega_sys, T, ("a",))


def test_serialization(line_T):
    doc = line_T.to_json()
    assert len(doc["states"]) == 13
    assert len(doc["transitions"]) == len(line_T.states) * len(line_T.alphabet)
    assert line_T.to_dot().startswith("digraph")
