import pytest

from cftr.boundary import (
    DomainError,
    PerturbationPair,
    boundary_order_bound,
    check_local_agreement,
    h_word,
    in_O_n,
    quotient_check,
    torsion_pair,
)
from cftr.core import InputError
from cftr.examples import companion_system, example_system
from cftr.group import Ensemble, Finite, is_identity, order


@pytest.fixture(scope="module")
def pair():
    return torsion_pair(1)


def test_agreement_with_companion(pair):
    assert check_local_agreement(pair, 8)


def test_single_padded_line_disagrees(torsion_sys):
    single = PerturbationPair(torsion_sys, Ensemble([companion_system()]), 1)
    rep = check_local_agreement(single, 8)
    assert not rep and rep.witness["reason"] == "component count mismatch"


@pytest.mark.parametrize("n", [0, 1, 2])
def test_self_agreement(torsion_sys, n):
    assert check_local_agreement(PerturbationPair(torsion_sys, torsion_sys, n), n + 4)


def test_agreement_radius_must_exceed_collar(pair):
    with pytest.raises(InputError):
        check_local_agreement(pair, 1)


def test_membership(pair):
    assert in_O_n(pair, "c⁻¹ a c")
    assert not in_O_n(pair, "c")
    assert in_O_n(pair, ())


def test_membership_needs_infinite_orbits(torsion_sys):
    p = PerturbationPair(torsion_sys, Ensemble([companion_system()] * 2), 1)
    with pytest.raises(DomainError):
        in_O_n(p, "a")


def test_order_bounds(pair, torsion_sys):
    assert boundary_order_bound(pair, "c⁻¹ a c") == 9
    assert boundary_order_bound(pair, "a") == 3
    assert boundary_order_bound(pair, ()) >= 1
    for g in ("c⁻¹ a c", "a"):
        o = order(torsion_sys, g)
        assert isinstance(o, Finite) and o.n == 2 <= boundary_order_bound(pair, g)
    with pytest.raises(DomainError):
        boundary_order_bound(pair, "c")


def test_quotient_examples(pair, torsion_sys):
    assert is_identity(torsion_sys, "c c⁻¹") and in_O_n(pair, "c c⁻¹")
    assert in_O_n(pair, "c⁻¹ a c") and not is_identity(torsion_sys, "c⁻¹ a c")
    assert not in_O_n(pair, "c") and not is_identity(torsion_sys, "c")


def test_h_words_are_distinct(torsion_sys):
    A = torsion_sys.alphabet
    for n in range(3):
        for m in range(n + 1, 4):
            assert not is_identity(torsion_sys, h_word(n) + A.parse("c^-" + str(m)) + ("a",) + A.parse(f"c^{m}"))


def test_quotient_check(pair):
    rep = quotient_check(pair, samples=80)
    assert rep, rep.violations
