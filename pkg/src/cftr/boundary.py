"""Boundary subgroups of locally quasi-transitive graphs via a companion system."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence, Union

from .cone_system import EndConeSystem, as_lazy_graph
from .core import (
    InputError,
    Key,
    LazyInverseGraph,
    Word,
    bfs,
    free_reduce,
    inverse_word,
    key_to_json,
    propagate_morphism,
    sphere_size,
    walk,
)
from .group import Ensemble, as_ensemble, is_identity


class DomainError(InputError):
    """An operation was applied outside the set where it is defined."""


@dataclass
class PerturbationPair:
    """A perturbed system and its companion ensemble agreeing outside the radius-n disks.

    infinite_orbits is the caller's declaration that every vertex orbit of the companion is infinite.
    """

    gamma: EndConeSystem
    theta: Ensemble
    n: int
    infinite_orbits: bool = False
    agreement_radius: int = 0
    name: str = ""
    _gamma_graph: LazyInverseGraph | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.theta = as_ensemble(self.theta)
        if self.theta.alphabet != self.gamma.alphabet:
            raise InputError("the perturbed system and its companion must share an alphabet")
        if self.n < 0:
            raise InputError("collar radius must be non-negative")

    @property
    def gamma_graph(self) -> LazyInverseGraph:
        if self._gamma_graph is None:
            self._gamma_graph = as_lazy_graph(self.gamma)
        return self._gamma_graph

    def theta_graphs(self) -> list[LazyInverseGraph]:
        return [as_lazy_graph(s) for s in self.theta]


@dataclass(frozen=True)
class Agreement:
    ok: bool
    components: int
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "components": self.components, "witness": self.witness}


def _outside(g: LazyInverseGraph, disk: set) -> LazyInverseGraph:
    def nb(v: Key, a: str) -> Key | None:
        w = g.neighbor(v, a)
        return None if w is None or w in disk else w

    return LazyInverseGraph(g.alphabet, g.root, nb, False, g.name)


def _components(graphs: Sequence[LazyInverseGraph], n: int, r: int) -> list[tuple[LazyInverseGraph, list[Key]]]:
    """Components of each graph minus its radius-n disk, as (restricted graph, entry vertices at n+1)."""
    out = []
    for g in graphs:
        dist = bfs(g, g.root, n + 1)
        disk = {v for v, d in dist.items() if d <= n}
        h = _outside(g, disk)
        entries = [v for v, d in dist.items() if d == n + 1]
        seen: set = set()
        for e in entries:
            if e in seen:
                continue
            comp = bfs(h, e, r)
            seen.update(comp)
            out.append((h, [v for v in entries if v in comp]))
    return out


def _match(src: tuple[LazyInverseGraph, list[Key]], dst: tuple[LazyInverseGraph, list[Key]], r: int) -> bool:
    (g, es), (h, fs) = src, dst
    if len(es) != len(fs):
        return False
    e = es[0]
    for f in fs:
        fwd = propagate_morphism(g.rerooted(e), h, f, r)
        if not fwd or {fwd.mapping.get(x) for x in es} != set(fs):
            continue
        if propagate_morphism(h.rerooted(f), g, e, r):
            return True
    return False


def check_local_agreement(pair: PerturbationPair, r: int) -> Agreement:
    """Match components of Gamma minus D_n with components of the companion minus D_n, up to radius r."""
    if r <= pair.n:
        raise InputError("agreement radius must exceed the collar radius")
    left = _components([pair.gamma_graph], pair.n, r)
    right = _components(pair.theta_graphs(), pair.n, r)
    if len(left) != len(right):
        return Agreement(False, len(left), {"reason": "component count mismatch",
                                            "gamma": len(left), "theta": len(right)})
    # bipartite matching by augmenting paths
    adj = [[j for j, c in enumerate(right) if _match(l, c, r)] for l in left]
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(len(left)):
        if not augment(i, set()):
            return Agreement(False, len(left), {
                "reason": "no matching companion component",
                "entries": [key_to_json(v) for v in left[i][1]],
            })
    pair.agreement_radius = max(pair.agreement_radius, r)
    return Agreement(True, len(left))


def in_O_n(pair: PerturbationPair, u: Union[str, Sequence[str]]) -> bool:
    """Words circuiting everywhere outside the disk: the circuit language of the companion."""
    if not pair.infinite_orbits:
        raise DomainError("membership reduces to the companion only when all its vertex orbits are "
                          "infinite; declare infinite_orbits=True for this pair")
    return bool(is_identity(pair.theta, pair.theta.word(u)))


def boundary_order_bound(pair: PerturbationPair, g: Union[str, Sequence[str]]) -> int:
    """|S_n(x0)| |g| for g in the boundary subgroup; 1 for the identity word."""
    w = free_reduce(pair.gamma.alphabet, pair.theta.word(g))
    if not in_O_n(pair, w):
        raise DomainError(f"{pair.gamma.alphabet.format(w)} is not in O_n")
    return max(1, sphere_size(pair.gamma_graph, None, pair.n) * len(w))


@dataclass(frozen=True)
class QuotientReport:
    samples: int
    violations: list[dict[str, Any]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "samples": self.samples, "violations": self.violations}


def _theta_images_equal(pair: PerturbationPair, u: Word, v: Word, radius: int) -> bool:
    for g in pair.theta_graphs():
        for y in bfs(g, g.root, radius):
            if walk(g, y, u) != walk(g, y, v):
                return False
    return True


def quotient_check(pair: PerturbationPair, samples: int = 200, max_len: int = 6, seed: int = 0,
                   radius: int | None = None) -> QuotientReport:
    """L(Gamma) inside L(Theta); u v^-1 in O_n iff u and v act alike on a companion ball; O_n is normal."""
    rng = random.Random(seed)
    A = pair.gamma.alphabet
    bad: list[dict[str, Any]] = []

    def rand() -> Word:
        return free_reduce(A, tuple(rng.choice(A.letters) for _ in range(rng.randint(0, max_len))))

    for _ in range(samples):
        u, v, x = rand(), rand(), rand()
        if is_identity(pair.gamma, u) and not in_O_n(pair, u):
            bad.append({"kind": "circuit language not contained", "u": A.format(u)})
        r = radius if radius is not None else len(u) + len(v) + 2
        uv = free_reduce(A, u + inverse_word(A, v))
        member = in_O_n(pair, uv)
        if member != _theta_images_equal(pair, u, v, r):
            bad.append({"kind": "kernel mismatch", "u": A.format(u), "v": A.format(v), "in_O_n": member})
        if member:
            conj = free_reduce(A, inverse_word(A, x) + uv + x)
            if not in_O_n(pair, conj):
                bad.append({"kind": "not normal", "h": A.format(uv), "by": A.format(x)})
    return QuotientReport(samples, bad)


# the torsion-graph pair


def torsion_pair(n: int = 1) -> PerturbationPair:
    """The two-sheet torsion graph against two c-lines with a-loops everywhere."""
    from .examples import companion_system, example_system

    gamma = example_system("torsion")
    comp = companion_system()
    return PerturbationPair(gamma, Ensemble([comp, comp]), n, infinite_orbits=True, name="torsion")


def h_word(n: int) -> Word:
    """c^-n a c^n."""
    return ("c'",) * n + ("a",) + ("c",) * n
