import pytest

from cftr.cone_system import VertexAddress
from cftr.core import Alphabet, InputError, bfs, verify_isomorphic_balls, walk
from cftr.examples import antenna, comb, line_graph, line_system, omega_system
from cftr.group import Ensemble, is_identity, order, Finite
from cftr.product import (
    Gluing,
    SchreierAutomaton,
    disjoint_union,
    free_product,
    inflated_graph,
    pad_graph,
    subgroup_graphs,
)

B = Alphabet.from_generators(["b"])


def test_antenna_action_examples():
    og = antenna()
    g = og.graph
    assert walk(g, g.root, ("a", "a", "a")) == g.root
    v = walk(g, g.root, ("c", "c"))
    assert walk(g, v, ("b",)) == v


def test_comb_single_entry():
    g = comb().graph
    assert walk(g, g.root, ("c",)) == ((1, 0, 1),)


def test_overlapping_alphabets_rejected():
    with pytest.raises(InputError):
        free_product([line_graph("a")], [line_graph("a")], [Gluing()], [Gluing()])


def test_gluing_json():
    g = Gluing(1, {3: 0}, ((None, 0, 0),))
    assert Gluing.from_json(g.to_json()) == g
    assert (g(3), g(-5), g(7)) == (0, 0, 1)


def test_padding_adds_loops():
    g = pad_graph(line_graph("a"), B)
    assert all(g.neighbor(v, "b") == v and g.neighbor(v, "b'") == v for v in bfs(g, 0, 3))


def test_padded_union_is_z2():
    ens = disjoint_union([line_system("a"), line_system("b")], pad=True)
    assert is_identity(ens, "a b a' b'")
    assert not is_identity(ens, "a")


def test_singleton_union():
    ens = disjoint_union([omega_system()])
    assert len(ens) == 1
    for w in ("c c", "a", "c a c' b'"):
        assert bool(is_identity(ens, w)) == bool(is_identity(omega_system(), w))


def test_trivial_automaton():
    A = Alphabet.from_generators(["a"])
    aut = SchreierAutomaton(["1"], A, {("1", x): ("1", (x,)) for x in A.letters}, "1")
    g = inflated_graph(aut, line_graph("a"))
    assert verify_isomorphic_balls(g, line_graph("a").rerooted(0), 6)


def test_two_sheet_automaton():
    T = Alphabet.from_generators(["t"])
    aut = SchreierAutomaton(
        ["x", "y"], T,
        {("x", "t"): ("y", ()), ("y", "t"): ("x", ()), ("x", "t'"): ("y", ()), ("y", "t'"): ("x", ())},
        "x",
    )
    g = inflated_graph(aut, line_graph("a"))
    assert len(bfs(g, g.root, 5)) == 2
    assert walk(g, g.root, ("t", "t")) == g.root


def test_length_two_outputs():
    T = Alphabet.from_generators(["s"])
    aut = SchreierAutomaton(["1"], T, {("1", "s"): ("1", ("a", "a")), ("1", "s'"): ("1", ("a'", "a'"))}, "1")
    g = inflated_graph(aut, line_graph("a"))
    assert walk(g, g.root, ("s",)) == ("1", 2)


def test_non_inverse_automaton_rejected():
    T = Alphabet.from_generators(["s"])
    aut = SchreierAutomaton(["1"], T, {("1", "s"): ("1", ("a",)), ("1", "s'"): ("1", ("a",))}, "1")
    with pytest.raises(InputError):
        inflated_graph(aut, line_graph("a"))


def test_subgroup_graphs_even_line():
    gs = subgroup_graphs(line_system(), ["a a", "a' a'"], 2)
    for g in gs:
        sizes = [len([v for v, d in bfs(g, g.root, r).items() if d == r]) for r in range(1, 4)]
        assert sizes == [2, 2, 2]


def test_subgroup_graphs_full_alphabet():
    sys = line_system()
    gs = subgroup_graphs(sys, ["a", "a'"], 1)
    assert gs and all(len(bfs(g, g.root, 3)) == 7 for g in gs)


def test_subgroup_graphs_omega_c():
    gs = subgroup_graphs(omega_system(), ["c", "c'"], 1)
    for g in gs:
        assert walk(g, g.root, ("c",)) != g.root
        assert walk(g, g.root, ("c", "c")) == g.root


def test_subgroup_graphs_need_pairs():
    with pytest.raises(InputError):
        subgroup_graphs(line_system(), ["a a"], 2)
