"""Free products of graph families, padding and unions, inflated and subgroup graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Mapping, Sequence

from .cone_system import (
    ConeType,
    EndConeSystem,
    VertexAddress,
    act_address,
    infer_system,
    neighbor_address,
)
from .core import (
    Alphabet,
    InputError,
    Key,
    LazyInverseGraph,
    Word,
    free_reduce,
    inverse_word,
    walk,
)
from .group import Ensemble


@dataclass(frozen=True)
class Gluing:
    """Vertex -> index of a graph of the other family: exceptions, then integer ranges, then default."""

    default: int = 0
    exceptions: Mapping[Hashable, int] = field(default_factory=dict)
    ranges: tuple[tuple[int | None, int | None, int], ...] = ()

    def __call__(self, v: Key) -> int:
        if v in self.exceptions:
            return self.exceptions[v]
        if isinstance(v, int):
            for lo, hi, j in self.ranges:
                if (lo is None or v >= lo) and (hi is None or v <= hi):
                    return j
        return self.default

    def to_json(self) -> dict[str, Any]:
        return {
            "default": self.default,
            "exceptions": [[k, j] for k, j in self.exceptions.items()],
            "ranges": [list(r) for r in self.ranges],
        }

    @classmethod
    def from_json(cls, doc: Any) -> "Gluing":
        if isinstance(doc, int):
            return cls(doc)
        from .core import key_from_json

        return cls(
            int(doc.get("default", 0)),
            {key_from_json(k): int(j) for k, j in doc.get("exceptions", [])},
            tuple((r[0], r[1], int(r[2])) for r in doc.get("ranges", [])),
        )


def free_product(theta1: Sequence[LazyInverseGraph], theta2: Sequence[LazyInverseGraph],
                 glue1: Sequence[Gluing | Callable[[Key], int]],
                 glue2: Sequence[Gluing | Callable[[Key], int]], name: str = "") -> LazyInverseGraph:
    """Vertices are alternating tuples of (side, graph index, non-root factor vertex)."""
    if not theta1 or not theta2:
        raise InputError("both families must be non-empty")
    fam = {1: list(theta1), 2: list(theta2)}
    glue = {1: list(glue1), 2: list(glue2)}
    for s in (1, 2):
        if len(glue[s]) != len(fam[s]):
            raise InputError(f"side {s}: one gluing map per graph required")
        alph = fam[s][0].alphabet
        if any(g.alphabet != alph for g in fam[s]):
            raise InputError(f"side {s}: graphs must share an alphabet")
    A1, A2 = fam[1][0].alphabet, fam[2][0].alphabet
    if set(A1.letters) & set(A2.letters):
        raise InputError("alphabets of the two families overlap")
    alphabet = A1.union(A2)
    side = {a: 1 for a in A1.letters} | {a: 2 for a in A2.letters}

    def nb(v: Key, a: str) -> Key | None:
        s = side.get(a)
        if s is None:
            return None
        if v and v[-1][0] == s:
            _, gi, fk = v[-1]
            g = fam[s][gi]
            w = g.neighbor(fk, a)
            if w is None:
                return None
            if w == g.root:
                return v[:-1]
            return v[:-1] + ((s, gi, w),)
        if v:
            os_, ogi, ofk = v[-1]
            gi = glue[os_][ogi](ofk)
        else:
            gi = 0
        g = fam[s][gi]
        w = g.neighbor(g.root, a)
        if w is None:
            return None
        if w == g.root:
            return v
        return v + ((s, gi, w),)

    complete = all(g.complete for g in fam[1] + fam[2])
    return LazyInverseGraph(alphabet, (), nb, complete, name)


# padding and unions


def pad_graph(g: LazyInverseGraph, extra: Alphabet) -> LazyInverseGraph:
    """Add loops for every letter of extra at every vertex."""
    alph = g.alphabet.union(extra)
    own = set(g.alphabet.letters)

    def nb(v: Key, a: str) -> Key | None:
        if a in own:
            return g.neighbor(v, a)
        return v if a in alph else None

    return LazyInverseGraph(alph, g.root, nb, g.complete, g.name)


def pad_system(sys: EndConeSystem, extra: Alphabet) -> EndConeSystem:
    """Loops for the letters of extra; a superset alphabet also fixes the letter order."""
    own = set(sys.alphabet.letters)
    alph = extra if own <= set(extra.letters) else sys.alphabet.union(extra)
    new = [a for a in alph.letters if a not in sys.alphabet]
    types = []
    for ct in sys.types:
        loops = tuple((v, a, v) for v in ct.frontier for a in new)
        types.append(ConeType(ct.frontier, ct.internal_edges + loops, ct.children, ct.cross_edges))
    return EndConeSystem(alph, types, sys.name)


def disjoint_union(items: Sequence[EndConeSystem | LazyInverseGraph], pad: bool = False,
                   d: int = 8, s: int = 3) -> Ensemble:
    """Ensemble of systems; lazy graphs are inferred first, pad=True aligns alphabets with loops."""
    systems = [x if isinstance(x, EndConeSystem) else infer_system(x, d, s) for x in items]
    if pad:
        alph = systems[0].alphabet
        for x in systems[1:]:
            alph = alph.union(x.alphabet)
        systems = [pad_system(x, alph) if x.alphabet != alph else x for x in systems]
    return Ensemble(systems)


# inflated graphs


@dataclass
class SchreierAutomaton:
    """Letter-to-word automaton: (state, input letter) -> (state, output word)."""

    states: Sequence[Hashable]
    alphabet: Alphabet
    transitions: Mapping[tuple[Hashable, str], tuple[Hashable, Word]]
    initial: Hashable

    def check_inverse(self, base: Alphabet) -> None:
        for (t, y), (t2, u) in self.transitions.items():
            if y not in self.alphabet:
                raise InputError(f"transition ({t!r}, {y!r}) uses an unknown letter")
            base.check(u)
            back = self.transitions.get((t2, self.alphabet.inv(y)))
            if back is None or back[0] != t or free_reduce(base, back[1]) != free_reduce(base, inverse_word(base, u)):
                raise InputError(f"automaton is not inverse at transition ({t!r}, {y!r}) -> ({t2!r}, {list(u)})")


def inflated_graph(aut: SchreierAutomaton, g: LazyInverseGraph, x: Key | None = None) -> LazyInverseGraph:
    aut.check_inverse(g.alphabet)
    trans = aut.transitions

    def nb(v: Key, y: str) -> Key | None:
        t, p = v
        move = trans.get((t, y))
        if move is None:
            return None
        q = walk(g, p, move[1])
        return None if q is None else (move[0], q)

    root = (aut.initial, g.root if x is None else x)
    return LazyInverseGraph(aut.alphabet, root, nb, g.complete, "inflated")


# subgroup graphs


def word_alphabet(base: Alphabet, words: Sequence[Sequence[str]]) -> tuple[Alphabet, dict[str, Word]]:
    """Formal letters for the words of B, paired by inversion."""
    ws = [free_reduce(base, base.check(w)) for w in words]
    names = ["·".join(w) if w else "1" for w in ws]
    if len(set(ws)) != len(ws) or () in ws:
        raise InputError("B must consist of distinct non-trivial words")
    pos = {w: i for i, w in enumerate(ws)}
    inv = {}
    for i, w in enumerate(ws):
        j = pos.get(inverse_word(base, w))
        if j is None:
            raise InputError(f"B is not involution-paired: inverse of {names[i]} missing")
        inv[names[i]] = names[j]
    return Alphabet(names, inv), dict(zip(names, ws))


def _type_paths(sys: EndConeSystem) -> dict[int, tuple[int, ...]]:
    paths = {0: ()}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for j, h in enumerate(sys.types[t].children):
            if h not in paths:
                paths[h] = paths[t] + (j,)
                queue.append(h)
    return paths


def subgroup_graphs(sys: EndConeSystem, B: Sequence[Sequence[str] | str], n: int) -> list[LazyInverseGraph]:
    """One rooted B-graph per (cone type, vertex within distance n of its frontier)."""
    words = [sys.alphabet.parse(b) if isinstance(b, str) else tuple(b) for b in B]
    alph, table = word_alphabet(sys.alphabet, words)
    if n < max(len(w) for w in table.values()):
        raise InputError("collar depth n must be at least max |b|")

    def nb(v: Key, b: str) -> Key | None:
        w = table.get(b)
        return None if w is None else act_address(sys, VertexAddress(*v), w)

    out: list[LazyInverseGraph] = []
    seen: set[VertexAddress] = set()
    for t, path in sorted(_type_paths(sys).items()):
        dist = {VertexAddress(path, q): 0 for q in sys.types[t].frontier}
        queue = deque(dist)
        while queue:
            v = queue.popleft()
            if dist[v] == n:
                continue
            for a in sys.alphabet.letters:
                w = neighbor_address(sys, v, a)
                if w[0][: len(path)] == path and w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        for v in dist:
            if v not in seen:
                seen.add(v)
                out.append(LazyInverseGraph(alph, v, nb, True, f"type{t}:{v}"))
    return out
