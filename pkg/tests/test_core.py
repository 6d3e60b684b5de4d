import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftr.core import (
    Alphabet,
    InputError,
    accepts,
    expand_ball,
    free_reduce,
    inverse_word,
    is_reduced,
    propagate_morphism,
    random_reduced_word,
    sphere_size,
    walk,
)
from cftr.examples import OMEGA, comb, cycle, free_tree, line, omega, torsion_graph

AB = Alphabet.from_generators(["a", "b", "c"])
letters = st.sampled_from(AB.letters)


def test_alphabet_rejects_self_inverse():
    with pytest.raises(InputError):
        Alphabet(["a"], {"a": "a"})


@pytest.mark.parametrize("text,want", [
    ("a a⁻¹", ()),
    ("a b b⁻¹ a", ("a", "a")),
    ("b a⁻¹ a b⁻¹ c", ("c",)),
])
def test_free_reduce_examples(text, want):
    assert free_reduce(AB, AB.parse(text)) == want


def test_parse_forms():
    assert AB.parse("c^2 a^-1") == ("c", "c", "a'")
    assert AB.parse("ab⁻¹") == ("a", "b'")
    assert AB.parse("c a c'") == ("c", "a", "c'")
    with pytest.raises(InputError):
        AB.parse("a x")
    with pytest.raises(InputError):
        free_reduce(AB, ("z",))


@given(st.lists(letters, max_size=20))
def test_free_reduce_is_reduced_and_idempotent(w):
    r = free_reduce(AB, w)
    assert is_reduced(AB, r)
    assert free_reduce(AB, r) == r
    assert free_reduce(AB, tuple(w) + inverse_word(AB, w)) == ()


@given(st.lists(letters, max_size=12), st.lists(letters, max_size=12))
def test_free_reduce_is_a_homomorphism(u, v):
    assert free_reduce(AB, free_reduce(AB, u) + free_reduce(AB, v)) == free_reduce(AB, tuple(u) + tuple(v))


@given(st.integers(0, 15), st.integers(0, 10_000))
def test_random_reduced_word(n, seed):
    w = random_reduced_word(AB, n, random.Random(seed))
    assert len(w) == n and is_reduced(AB, w)


def test_walk_examples():
    g = omega().graph
    assert walk(g, ("p", 0), OMEGA.parse("a b")) == ("p", 1)
    assert walk(g, ("p", 3), ()) == ("p", 3)
    c = comb()
    end = walk(c.graph, c.graph.root, c.alphabet.parse("c a"))
    assert end is not None and end != c.graph.root
    assert end == c.oracle_walk(c.graph.root, c.alphabet.parse("c a"))


@given(st.lists(st.sampled_from(OMEGA.letters), max_size=15))
def test_walk_inverse_returns(w):
    g = omega().graph
    v = walk(g, g.root, w)
    assert walk(g, v, inverse_word(OMEGA, w)) == g.root


def test_expand_ball_examples():
    b = expand_ball(line().graph, 0, 2)
    assert len(b) == 5
    assert set(expand_ball(omega().graph, ("p", 0), 1).vertices) == {("p", 0), ("p", 1), ("p", -1), ("q", 0)}
    assert len(expand_ball(comb().graph, None, 1)) == 5


def test_sphere_sizes():
    assert sphere_size(line().graph, 0, 3) == 2
    assert sphere_size(free_tree().graph, (), 2) == 12
    assert sphere_size(torsion_graph().graph, None, 1) == 3


@given(st.integers(1, 5))
def test_tree_sphere_formula(n):
    assert sphere_size(free_tree().graph, (), n) == 4 * 3 ** (n - 1)


def test_propagate_morphism():
    g = omega().graph
    m = propagate_morphism(g, g, g.root, 4)
    assert m and all(k == v for k, v in m.mapping.items())
    shift = propagate_morphism(g, g, ("p", 5), 6)
    assert shift and shift[("p", 2)] == ("p", 7)
    bad = propagate_morphism(g, g, ("q", 0), 1)
    assert not bad
    assert (bad.vertex, bad.letter[0]) == (("p", 0), "b")


def test_accepts():
    assert accepts(line().graph, 0, ("a", "a'")).accepted
    g = omega().graph
    assert accepts(g, ("p", 0), ("b",)).accepted
    assert not accepts(g, ("q", 0), ("b",)).accepted
    assert accepts(cycle("a", 5).graph, 0, ("a",) * 5).accepted
