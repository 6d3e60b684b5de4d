import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftr.cone_system import (
    ConeLetter,
    ConeType,
    DecodeError,
    EndConeSystem,
    NotStabilized,
    VertexAddress,
    act_address,
    as_lazy_graph,
    constants,
    decode_vertex,
    encode_vertex,
    enumerate_addresses,
    infer_system,
    neighbor_address,
    validate,
    verify_presentation,
)
from cftr.core import InputError, bfs, expand_ball, sphere_size, walk
from cftr.examples import (
    ORACLES,
    cycle,
    cycle_system,
    example,
    example_system,
    free_tree,
    line,
    omega,
)

SYSTEMS = ["line", "cycle5", "loop", "free-tree", "omega", "antenna", "comb", "torsion"]


def test_hand_built_line_is_valid(line_sys):
    assert validate(line_sys)
    assert constants(line_sys) == (3, 1, 2)


def test_line_missing_cross_edge_is_invalid(line_sys):
    root = line_sys.types[0]
    broken = ConeType(root.frontier, (), (1,), root.cross_edges[:1])
    sys = EndConeSystem(line_sys.alphabet, [broken, *line_sys.types[1:]])
    rep = validate(sys)
    assert not rep and "root exit-letter set not covered" in rep.problems[0]


def test_inconsistent_contexts_are_invalid(line_sys):
    root = ConeType(("x0",), (), (1, 1), (("x0", "a", 0, "w"), ("x0", "a'", 1, "w")))
    sys = EndConeSystem(line_sys.alphabet, [root, *line_sys.types[1:]])
    rep = validate(sys)
    assert not rep and any("exit-letter consistency" in p for p in rep.problems)


def test_neighbor_address_line(line_sys):
    x = VertexAddress((0, 0), "w")
    assert neighbor_address(line_sys, x, "a") == VertexAddress((0, 0, 0), "w")
    assert neighbor_address(line_sys, x, "a'") == VertexAddress((0,), "w")


@pytest.mark.parametrize("name", SYSTEMS)
def test_every_example_system_validates(name):
    assert validate(example_system(name))


@pytest.mark.parametrize("name", ["line", "cycle5", "free-tree", "omega"])
def test_neighbor_address_matches_oracle(name):
    sys, og = example_system(name), example(name)
    g = as_lazy_graph(sys)
    # map the system ball onto oracle states edge by edge
    phi = {g.root: og.graph.root}
    frontier = [g.root]
    for _ in range(6):
        nxt = []
        for v in frontier:
            for a in sys.alphabet.letters:
                w = g.neighbor(v, a)
                assert walk(g, w, (sys.alphabet.inv(a),)) == v
                image = og.oracle_walk(phi[v], (a,))
                if w in phi:
                    assert phi[w] == image
                else:
                    phi[w] = image
                    nxt.append(w)
        frontier = nxt


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_inverse_axiom(data):
    sys = example_system(data.draw(st.sampled_from(SYSTEMS)))
    addrs = enumerate_addresses(sys, 4)
    x = data.draw(st.sampled_from(addrs))
    a = data.draw(st.sampled_from(sys.alphabet.letters))
    assert act_address(sys, x, (a, sys.alphabet.inv(a))) == x


def test_lazy_graph_examples(line_sys, omega_sys):
    g = as_lazy_graph(line_sys)
    assert all(sphere_size(g, None, n) == 2 for n in range(1, 6))
    assert len(expand_ball(as_lazy_graph(omega_sys), None, 1)) == 4
    c5 = as_lazy_graph(cycle_system("a", 5))
    assert len(bfs(c5, c5.root, 10)) == 5
    assert all(len(v[0]) <= 2 for v in bfs(c5, c5.root, 10))


def test_verify_presentation(line_sys, omega_sys):
    assert verify_presentation(line_sys, line().graph, 10)
    assert verify_presentation(omega_sys, omega().graph, 8)
    assert not verify_presentation(line_sys, cycle("a", 5).graph, 3)


def test_infer_examples():
    assert len(infer_system(line().graph, 6, 2)) == 3
    sys = infer_system(omega().graph, 8, 3)
    assert verify_presentation(sys, omega().graph, 5)
    assert len(infer_system(free_tree().graph, 6, 2)) == 5


def test_infer_argument_checks():
    with pytest.raises(InputError):
        infer_system(line().graph, 2, 2)


@pytest.mark.parametrize("name", SYSTEMS)
def test_codec_round_trip(name):
    sys = example_system(name)
    words = set()
    for x in enumerate_addresses(sys, 6):
        w = encode_vertex(sys, x)
        assert len(w) == len(x.slot_path) + 1
        assert decode_vertex(sys, w) == x
        words.add(w)
    # prefix-free: no encoding is a proper prefix of another
    for w in words:
        for k in range(1, len(w)):
            assert w[:k] not in words


def test_codec_examples(line_sys):
    assert len(encode_vertex(line_sys, line_sys.root)) == 1
    assert len(encode_vertex(line_sys, VertexAddress((0, 0), "w"))) == 3
    w = encode_vertex(line_sys, VertexAddress((0,), "w"))
    with pytest.raises(DecodeError) as err:
        decode_vertex(line_sys, w + (ConeLetter(1, 0, "w"),))
    assert err.value.position == 2
    with pytest.raises(DecodeError):
        decode_vertex(line_sys, (ConeLetter(0, 0, "w"),))


def test_json_round_trip(omega_sys):
    doc = json.loads(json.dumps(omega_sys.to_json()))
    assert EndConeSystem.from_json(doc) == omega_sys
    with pytest.raises(InputError):
        EndConeSystem.from_json({"types": []})


def test_grid_does_not_stabilize():
    from cftr.core import Alphabet, LazyInverseGraph

    A = Alphabet.from_generators(["a", "b"])
    steps = {"a": (1, 0), "a'": (-1, 0), "b": (0, 1), "b'": (0, -1)}

    def nb(v, a):
        dx, dy = steps[a]
        return (v[0] + dx, v[1] + dy)

    with pytest.raises(NotStabilized):
        infer_system(LazyInverseGraph(A, (0, 0), nb, True, "grid"), 8, 3)
