"""Transition groups of end-cone systems: word problem, torsion and finiteness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Union

from . import _kernel
from .cone_system import (
    EndConeSystem,
    VertexAddress,
    act_address,
    constants,
    enumerate_addresses,
    neighbor_address,
    type_graph_cycle,
    validate,
)
from .core import Alphabet, InputError, Word, cyclic_shifts, free_reduce, inverse_word, key_to_json

U64_MAX = 2**64 - 1
EXCEEDS_U64 = "exceeds u64"


class Ensemble:
    """Disjoint union of systems over one alphabet."""

    def __init__(self, systems: Sequence[EndConeSystem], check: bool = True):
        if not systems:
            raise InputError("ensemble needs at least one system")
        self.systems = tuple(systems)
        self.alphabet: Alphabet = systems[0].alphabet
        for s in self.systems:
            if s.alphabet != self.alphabet:
                raise InputError("ensemble alphabets differ")
            if check:
                rep = validate(s)
                if not rep:
                    raise InputError(f"invalid system {s.name!r}: {rep.problems[0]}")

    def __iter__(self):
        return iter(self.systems)

    def __len__(self) -> int:
        return len(self.systems)

    def word(self, g: Union[str, Sequence[str]]) -> Word:
        return self.alphabet.parse(g)


def as_ensemble(x: Union[Ensemble, EndConeSystem, Sequence[EndConeSystem]]) -> Ensemble:
    if isinstance(x, Ensemble):
        return x
    if isinstance(x, EndConeSystem):
        return Ensemble([x])
    return Ensemble(list(x))


@dataclass(frozen=True)
class GroupElement:
    word: Word
    ensemble: Ensemble

    @classmethod
    def of(cls, ens: Ensemble, g: Union[str, Sequence[str]]) -> "GroupElement":
        return cls(free_reduce(ens.alphabet, ens.word(g)), ens)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(free_reduce(self.ensemble.alphabet, self.word + other.word), self.ensemble)

    def inverse(self) -> "GroupElement":
        return GroupElement(inverse_word(self.ensemble.alphabet, self.word), self.ensemble)

    def is_identity(self) -> bool:
        return bool(is_identity(self.ensemble, self.word))


def act(ens, index: int, addr: VertexAddress, g: Union[str, Sequence[str]]) -> VertexAddress:
    ens = as_ensemble(ens)
    sys = ens.systems[index]
    out = act_address(sys, VertexAddress(*addr), ens.word(g))
    assert out is not None
    return out


# word problem


@dataclass(frozen=True)
class IdentityResult:
    identity: bool
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.identity


def _grid(ens: Ensemble):
    for si, sys in enumerate(ens.systems):
        for t, ct in enumerate(sys.types):
            for qi in range(len(ct.frontier)):
                yield si, sys, t, qi


def is_identity(ens, g: Union[str, Sequence[str]], impl=None) -> IdentityResult:
    """True iff every completed in-cone walk of every cyclic shift of g is a circuit."""
    ens = as_ensemble(ens)
    w = ens.word(g)
    if not w:
        return IdentityResult(True)
    shifts = cyclic_shifts(w)
    for si, sys, t, qi in _grid(ens):
        tab = sys.tables
        for sh, u in enumerate(shifts):
            done, exited, (dep, fin, _typ, _low) = _kernel.orbit_scan(tab, t, qi, tab.word(u), 1, impl)
            if exited or (dep[0] == 0 and fin[0] == qi):
                continue
            q = sys.types[t].frontier[qi]
            end = act_address(sys, VertexAddress((), q), u, base=t)
            return IdentityResult(False, {
                "system": si, "type": t, "frontier_vertex": q, "shift": sh,
                "endpoint": key_to_json(tuple(end)),
            })
    return IdentityResult(True)


# torsion


def raw_order_bound(sys: EndConeSystem, length: int) -> int:
    """|g| δ γ^(N|g|)."""
    N, delta, gamma = constants(sys)
    return length * delta * gamma ** (N * length)


def circuit_order_bound(sys: EndConeSystem, length: int) -> int:
    """|g| δ (1 + γ + ... + γ^(N|g|)): vertices a periodic in-cone circuit can visit."""
    N, delta, gamma = constants(sys)
    lam = N * length
    geo = lam + 1 if gamma == 1 else (gamma ** (lam + 1) - 1) // (gamma - 1)
    return length * delta * geo


def _c_over_log(c: int) -> float:
    return c / math.log2(c)


def torsion_bound(ens, g: Union[str, Sequence[str]]) -> Union[int, str]:
    """Smallest C >= 3 with C/log2(C) >= the per-circuit bound, multiplied over components."""
    ens = as_ensemble(ens)
    n = len(free_reduce(ens.alphabet, ens.word(g)))
    if n == 0:
        return 1
    total = 1
    for sys in ens.systems:
        raw = circuit_order_bound(sys, n)
        if raw >= U64_MAX:
            return EXCEEDS_U64
        lo, hi = 3, 4
        while _c_over_log(hi) < raw:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if _c_over_log(mid) >= raw:
                hi = mid
            else:
                lo = mid + 1
        total *= lo
        if total > U64_MAX:
            return EXCEEDS_U64
    return total


@dataclass(frozen=True)
class Finite:
    n: int

    def to_json(self) -> dict[str, Any]:
        return {"kind": "finite", "order": self.n}


@dataclass(frozen=True)
class InfiniteCertified:
    witness: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"kind": "infinite", "witness": self.witness}


@dataclass(frozen=True)
class Unknown:
    searched: int
    bound: Union[int, str]

    def to_json(self) -> dict[str, Any]:
        return {"kind": "unknown", "searched": self.searched, "bound": self.bound}


OrderResult = Union[Finite, InfiniteCertified, Unknown]


@dataclass
class _Track:
    si: int
    t: int
    qi: int
    shift: int
    done: int
    exited: bool
    rec: list


def _certificate(tr: _Track) -> dict[str, Any] | None:
    """Two iteration boundaries with equal (type, vertex), the later one strictly deeper
    and never rising above the earlier: the walk pumps a self-similar cone forever."""
    dep, fin, typ, low = tr.rec
    states = [(0, tr.t, tr.qi)] + [(dep[k], typ[k], fin[k]) for k in range(tr.done)]
    for k2 in range(1, len(states)):
        d2, t2, f2 = states[k2]
        floor = low[k2 - 1]
        for k1 in range(k2 - 1, -1, -1):
            d1, t1, f1 = states[k1]
            if floor >= d1 and d2 > d1 and (t1, f1) == (t2, f2):
                return {"k1": k1, "k2": k2, "depth1": d1, "depth2": d2, "colour": [t1, f1]}
            if k1 > 0:
                floor = min(floor, low[k1 - 1])
    return None


def order(ens, g: Union[str, Sequence[str]], max_exp: int = 256, impl=None) -> OrderResult:
    """Finite(k) by exact search, InfiniteCertified by a pumping witness, else Unknown."""
    ens = as_ensemble(ens)
    w = free_reduce(ens.alphabet, ens.word(g))
    if not w:
        return Finite(1)
    bound = torsion_bound(ens, w)
    limit = max_exp if bound == EXCEEDS_U64 else min(max_exp, int(bound))
    shifts = cyclic_shifts(w)
    budget = 8
    while True:
        budget = min(budget, max(max_exp, 1))
        tracks = []
        for si, sys, t, qi in _grid(ens):
            tab = sys.tables
            for sh, u in enumerate(shifts):
                done, exited, rec = _kernel.orbit_scan(tab, t, qi, tab.word(u), budget, impl)
                tracks.append(_Track(si, t, qi, sh, done, exited, rec))
        for k in range(1, min(budget, limit) + 1):
            if all(_circuit_at(tr, k) for tr in tracks):
                return Finite(k)
        for tr in tracks:
            cert = _certificate(tr)
            if cert is not None:
                sys = ens.systems[tr.si]
                cert.update({
                    "system": tr.si, "type": tr.t,
                    "frontier_vertex": sys.types[tr.t].frontier[tr.qi], "shift": tr.shift,
                })
                cert["colour"] = [cert["colour"][0], sys.types[cert["colour"][0]].frontier[cert["colour"][1]]]
                return InfiniteCertified(cert)
        if budget >= max_exp:
            return Unknown(limit, bound)
        budget *= 2


def _circuit_at(tr: _Track, k: int) -> bool:
    if tr.done < k:
        return tr.exited
    return tr.rec[0][k - 1] == 0 and tr.rec[1][k - 1] == tr.qi


# finiteness


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    vertices: int

    def to_json(self) -> dict[str, Any]:
        return {"kind": "finite", "order": self.order, "vertices": self.vertices}


@dataclass(frozen=True)
class InfiniteWitness:
    system: int
    cycle: tuple[int, ...]

    def to_json(self) -> dict[str, Any]:
        return {"kind": "infinite", "system": self.system, "type_cycle": list(self.cycle)}


def is_finite_group(ens, cap: int = 100_000) -> Union[FiniteGroup, InfiniteWitness, Unknown]:
    """Infinite iff some system has a child-type cycle reachable from its root type."""
    ens = as_ensemble(ens)
    for si, sys in enumerate(ens.systems):
        cyc = type_graph_cycle(sys)
        if cyc is not None:
            return InfiniteWitness(si, tuple(cyc))
    points: list[tuple[int, VertexAddress]] = []
    for si, sys in enumerate(ens.systems):
        points += [(si, a) for a in enumerate_addresses(sys, len(sys.types))]
    if len(points) > cap:
        return Unknown(cap, len(points))
    index = {p: i for i, p in enumerate(points)}
    gens = []
    for a in ens.alphabet.positive:
        gens.append([index[(si, neighbor_address(ens.systems[si], addr, a))] for si, addr in points])
    return FiniteGroup(permutation_group_order(gens, len(points)), len(points))


def permutation_group_order(gens: list[list[int]], n: int) -> int:
    from sympy.combinatorics import Permutation, PermutationGroup

    perms = [Permutation(p) for p in gens] or [Permutation(list(range(n)))]
    return int(PermutationGroup(perms).order())


def powers(g: Word, k: int) -> Word:
    return tuple(g) * k


def commutator(alph: Alphabet, u: Sequence[str], v: Sequence[str]) -> Word:
    """[u, v] = u v u^-1 v^-1, freely reduced."""
    return free_reduce(alph, tuple(u) + tuple(v) + inverse_word(alph, u) + inverse_word(alph, v))


def orbit_points(sys: EndConeSystem, depth: int) -> Iterable[VertexAddress]:
    return enumerate_addresses(sys, depth)
