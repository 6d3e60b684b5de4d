import pytest

from cftr.core import InputError, bfs, walk
from cftr.group import commutator
from cftr.examples import (
    ORACLES,
    antenna_fixes_ball,
    comb_action,
    describe,
    example,
    example_system,
    omega,
    omega_action,
    torsion_action,
)

NAMES = sorted(ORACLES)


def test_omega_oracle():
    og = omega()
    assert og.oracle_walk(("p", 0), ("c",)) == ("q", 0)
    assert omega_action((2, 1), ("a", "b", "c")) == (3, 0)


def test_comb_and_torsion_oracles():
    assert comb_action((0, 0), ("c", "a")) == (1, 0)
    assert comb_action((0, 0), ("a", "c")) == (1, 1)
    assert torsion_action((0, 0), ("a",)) == (0, 1)
    assert torsion_action((0, 0), ("c'", "a", "c")) == (0, 0)


@pytest.mark.parametrize("name", NAMES)
def test_oracle_matches_lazy_graph(name):
    og = example(name)
    g = og.graph
    for v in bfs(g, g.root, 5):
        for a in g.alphabet.letters:
            assert walk(g, v, (a,)) == og.oracle_walk(v, (a,))


def test_unknown_example():
    with pytest.raises(InputError):
        example("nope")


def test_describe_lists_everything():
    assert [d["name"] for d in describe()] == NAMES


def test_antenna_symbolic_ball_check():
    A = example("antenna").alphabet
    rel = commutator(A, A.parse("c' a c"), A.parse("c b c'"))
    ok, witness = antenna_fixes_ball(rel, len(rel) + 5)
    assert ok and witness is None
    ok, witness = antenna_fixes_ball(("a", "c'", "b", "c", "a'", "c'", "b'", "c"), 13)
    assert not ok and witness is not None


def test_inferred_systems_are_cached():
    assert example_system("comb") is example_system("comb")
