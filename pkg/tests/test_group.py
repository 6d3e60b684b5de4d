import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftr import _kernel
from cftr.cone_system import constants
from cftr.core import bfs, free_reduce, random_reduced_word
from cftr.examples import cycle_system, example, example_system, line_system, omega_system
from cftr.group import (
    EXCEEDS_U64,
    Ensemble,
    Finite,
    FiniteGroup,
    GroupElement,
    InfiniteCertified,
    InfiniteWitness,
    act,
    commutator,
    is_finite_group,
    is_identity,
    order,
    raw_order_bound,
    torsion_bound,
)

SYSTEMS = ["omega", "antenna", "comb", "torsion", "line", "cycle5"]


def test_act_examples(omega_sys):
    p0 = omega_sys.root
    assert act(omega_sys, 0, p0, "a b a⁻¹ b⁻¹") == p0
    assert act(omega_sys, 0, p0, ()) == p0
    comb = example_system("comb")
    assert act(comb, 0, comb.root, "a") != comb.root


@pytest.mark.parametrize("word,want", [("c c", True), ("c a c⁻¹ b⁻¹", True), ("a", False)])
def test_omega_word_problem(omega_sys, word, want):
    assert bool(is_identity(omega_sys, word)) is want


def test_antenna_word_problem():
    ant = example_system("antenna")
    assert not is_identity(ant, "a c⁻¹ b c a⁻¹ c⁻¹ b⁻¹ c")
    A = ant.alphabet
    assert is_identity(ant, commutator(A, A.parse("c' a c"), A.parse("c b c'")))


def test_constants_and_bounds(line_sys):
    assert constants(line_sys) == (3, 1, 2)
    assert raw_order_bound(line_sys, 1) == 8
    b = torsion_bound(cycle_system("a", 5), "a")
    assert b == EXCEEDS_U64 or b >= 5


def test_order_examples(omega_sys):
    assert order(omega_sys, "c") == Finite(2)
    assert isinstance(order(omega_sys, "a"), InfiniteCertified)
    assert order(example_system("torsion"), "c⁻¹ a c") == Finite(2)
    assert isinstance(order(example_system("comb"), "c a c⁻¹"), InfiniteCertified)
    assert order(cycle_system("a", 5), "a") == Finite(5)
    assert order(omega_sys, ()) == Finite(1)


def test_finiteness():
    assert is_finite_group(cycle_system("a", 5)) == FiniteGroup(5, 5)
    assert isinstance(is_finite_group(line_system()), InfiniteWitness)
    assert isinstance(is_finite_group(omega_system()), InfiniteWitness)


@pytest.mark.parametrize("name", SYSTEMS)
def test_word_problem_matches_oracle(name):
    """Identity iff the oracle action fixes a large ball; words short enough for the ball to decide."""
    sys, og = example_system(name), example(name)
    rng = random.Random(7)
    ball = list(bfs(og.graph, og.graph.root, 7))
    for _ in range(60):
        w = random_reduced_word(sys.alphabet, rng.randint(0, 4), rng)
        w = w + tuple(reversed([sys.alphabet.inv(a) for a in w[: rng.randint(0, len(w))]]))
        fixed = all(og.oracle_walk(v, w) == v for v in ball)
        assert bool(is_identity(sys, w)) == fixed, (name, w)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_group_laws(data):
    name = data.draw(st.sampled_from(SYSTEMS))
    ens = Ensemble([example_system(name)])
    A = ens.alphabet
    u = tuple(data.draw(st.lists(st.sampled_from(A.letters), max_size=6)))
    v = tuple(data.draw(st.lists(st.sampled_from(A.letters), max_size=6)))
    g, h = GroupElement.of(ens, u), GroupElement.of(ens, v)
    assert (g * g.inverse()).is_identity()
    # conjugation preserves triviality
    assert bool(is_identity(ens, u)) == bool(is_identity(ens, free_reduce(A, v + u + h.inverse().word)))
    # cyclic shifts preserve triviality
    if u:
        assert bool(is_identity(ens, u)) == bool(is_identity(ens, u[1:] + u[:1]))


@pytest.mark.parametrize("name", SYSTEMS)
def test_backends_agree(name):
    ens = Ensemble([example_system(name)])
    rng = random.Random(3)
    words = [random_reduced_word(ens.alphabet, rng.randint(1, 8), rng) for _ in range(40)]
    impls = _kernel.backends()
    answers = {
        label: [(bool(is_identity(ens, w, impl=m)), order(ens, w, max_exp=32, impl=m)) for w in words]
        for label, m in impls.items()
    }
    first = next(iter(answers.values()))
    assert all(a == first for a in answers.values())


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CFTR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import cftr; print(cftr.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
