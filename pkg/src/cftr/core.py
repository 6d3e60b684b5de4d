"""Involutive alphabets, words, lazy inverse graphs and bounded exploration."""

from __future__ import annotations

import json
import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Key = Hashable
Word = tuple[str, ...]


class InputError(ValueError):
    """Malformed user input: unknown letter, bad word, bad spec."""


class Alphabet:
    """Ordered letter set with a fixpoint-free involution."""

    __slots__ = ("letters", "_inv", "_index")

    def __init__(self, letters: Sequence[str], involution: Mapping[str, str]):
        self.letters: tuple[str, ...] = tuple(letters)
        self._inv = dict(involution)
        self._index = {a: i for i, a in enumerate(self.letters)}
        if len(self._index) != len(self.letters):
            raise InputError("duplicate letters in alphabet")
        for a in self.letters:
            b = self._inv.get(a)
            if b is None or b not in self._index:
                raise InputError(f"inverse of {a!r} is not a letter")
            if b == a:
                raise InputError(f"letter {a!r} is its own inverse")
            if self._inv.get(b) != a:
                raise InputError(f"involution is not an involution at {a!r}")
        if set(self._inv) != set(self.letters):
            raise InputError("involution defined on non-letters")

    @classmethod
    def from_generators(cls, gens: Iterable[str]) -> "Alphabet":
        """Letters g, g' for every generator g, in generator order."""
        letters: list[str] = []
        inv: dict[str, str] = {}
        for g in gens:
            letters += [g, g + "'"]
            inv[g], inv[g + "'"] = g + "'", g
        return cls(letters, inv)

    def inv(self, a: str) -> str:
        try:
            return self._inv[a]
        except KeyError:
            raise InputError(f"letter {a!r} not in alphabet") from None

    def index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise InputError(f"letter {a!r} not in alphabet") from None

    @property
    def positive(self) -> tuple[str, ...]:
        """One representative per inverse pair (the first one listed)."""
        seen: set[str] = set()
        out = []
        for a in self.letters:
            if a not in seen:
                out.append(a)
                seen.update((a, self._inv[a]))
        return tuple(out)

    def is_positive(self, a: str) -> bool:
        return self._index[a] < self._index[self.inv(a)]

    def __contains__(self, a: object) -> bool:
        return a in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters and self._inv == other._inv

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.positive)})"

    def union(self, other: "Alphabet") -> "Alphabet":
        letters = list(self.letters) + [a for a in other.letters if a not in self]
        inv = {**self._inv, **other._inv}
        return Alphabet(letters, inv)

    def to_json(self) -> dict[str, Any]:
        return {"letters": list(self.letters), "involution": {a: self._inv[a] for a in self.letters}}

    @classmethod
    def from_json(cls, doc: Any) -> "Alphabet":
        if isinstance(doc, list):
            return cls.from_generators(doc)
        if isinstance(doc, dict) and "generators" in doc:
            return cls.from_generators(doc["generators"])
        try:
            return cls(doc["letters"], doc["involution"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad alphabet document: {exc}") from None

    # words

    def check(self, w: Iterable[str]) -> Word:
        w = tuple(w)
        for a in w:
            if a not in self._index:
                raise InputError(f"letter {a!r} not in alphabet")
        return w

    def parse(self, text: str | Sequence[str]) -> Word:
        """Parse ``"c a c'"``, ``"aba⁻¹b⁻¹"``, ``"c^2 a^-1"`` or a letter list."""
        if not isinstance(text, str):
            return self.check(text)
        return _parse_word(self, text)

    def format(self, w: Sequence[str]) -> str:
        return " ".join(w) if w else "ε"


_SUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻", "0123456789-")
_EXP = re.compile(r"\^\(?(-?\d+)\)?|([⁻]?[⁰¹²³⁴⁵⁶⁷⁸⁹]+)")
_SKIP = set(" \t\n·*.,")


def _parse_word(alph: Alphabet, text: str) -> Word:
    s = text.strip()
    if s in ("", "1", "ε", "e"):
        return ()
    names = sorted(alph.letters, key=len, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(s):
        if s[i] in _SKIP:
            i += 1
            continue
        for name in names:
            if s.startswith(name, i):
                break
        else:
            raise InputError(f"cannot parse word {text!r} at position {i}")
        i += len(name)
        exp = 1
        m = _EXP.match(s, i)
        if m:
            exp = int(m.group(1) if m.group(1) is not None else m.group(2).translate(_SUP))
            i = m.end()
        letter = name if exp > 0 else alph.inv(name)
        out.extend([letter] * abs(exp))
    return tuple(out)


def inverse_word(alph: Alphabet, w: Sequence[str]) -> Word:
    return tuple(alph.inv(a) for a in reversed(w))


def free_reduce(alph: Alphabet, w: Sequence[str]) -> Word:
    """Cancel every factor a·inv(a)."""
    stack: list[str] = []
    for a in w:
        ia = alph.inv(a)
        if stack and stack[-1] == ia:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def is_reduced(alph: Alphabet, w: Sequence[str]) -> bool:
    return all(alph.inv(w[i]) != w[i + 1] for i in range(len(w) - 1))


def random_reduced_word(alph: Alphabet, length: int, rng: random.Random) -> Word:
    """Uniform among reduced words of the given length."""
    out: list[str] = []
    while len(out) < length:
        a = rng.choice(alph.letters)
        if not out or alph.inv(a) != out[-1]:
            out.append(a)
    return tuple(out)


def cyclic_shifts(w: Sequence[str]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


# keys


def key_to_json(k: Any) -> Any:
    if isinstance(k, tuple):
        return [key_to_json(x) for x in k]
    if isinstance(k, frozenset):
        return sorted(key_to_json(x) for x in k)
    return k


def key_from_json(k: Any) -> Any:
    if isinstance(k, list):
        return tuple(key_from_json(x) for x in k)
    return k


def key_str(k: Any) -> str:
    return json.dumps(key_to_json(k), ensure_ascii=False, separators=(",", ":"))


# graphs


@dataclass(frozen=True)
class LazyInverseGraph:
    """An inverse graph given by a root and a pure neighbour function."""

    alphabet: Alphabet
    root: Key
    neighbor: Callable[[Key, str], Key | None]
    complete: bool = True
    name: str = ""

    def rerooted(self, root: Key) -> "LazyInverseGraph":
        return LazyInverseGraph(self.alphabet, root, self.neighbor, self.complete, self.name)


def walk(g: LazyInverseGraph, v: Key, w: Iterable[str]) -> Key | None:
    """Endpoint of the w-labelled walk from v, or None if some edge is missing."""
    nb = g.neighbor
    for a in w:
        v = nb(v, a)
        if v is None:
            return None
    return v


@dataclass(frozen=True)
class Acceptance:
    accepted: bool
    incomplete: bool = False

    def __bool__(self) -> bool:
        return self.accepted


def accepts(g: LazyInverseGraph, x0: Key, w: Iterable[str]) -> Acceptance:
    end = walk(g, x0, w)
    if end is None:
        return Acceptance(False, True)
    return Acceptance(end == x0)


def bfs(g: LazyInverseGraph, center: Key, r: int) -> dict[Key, int]:
    """Distances of all vertices within radius r, in discovery order."""
    dist = {center: 0}
    queue = deque([center])
    letters = g.alphabet.letters
    nb = g.neighbor
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d == r:
            continue
        for a in letters:
            w = nb(v, a)
            if w is not None and w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def sphere_sizes(g: LazyInverseGraph, r: int, center: Key | None = None) -> list[int]:
    dist = bfs(g, g.root if center is None else center, r)
    counts = [0] * (r + 1)
    for d in dist.values():
        counts[d] += 1
    return counts


def sphere_size(g: LazyInverseGraph, center: Key | None, n: int) -> int:
    return sphere_sizes(g, n, center)[n]


@dataclass
class FiniteGraph:
    """A finite fragment: vertices in BFS order, labelled edges, distances."""

    alphabet: Alphabet
    vertices: list[Key]
    edges: list[tuple[int, str, int]]
    dist: list[int] | None = None
    root: int | None = 0
    partial: bool = False
    _index: dict[Key, int] = field(default_factory=dict, repr=False)
    _adj: dict[tuple[int, str], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._adj = {(i, a): j for i, a, j in self.edges}

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: Key) -> int:
        return self._index[v]

    def step(self, i: int, a: str) -> int | None:
        return self._adj.get((i, a))

    def undirected_edge_count(self) -> int:
        """Number of inverse edge pairs (a loop pair v-a->v, v-a'->v counts once)."""
        return len(self.edges) // 2

    def is_complete(self) -> bool:
        return len(self._adj) == len(self.vertices) * len(self.alphabet)

    @classmethod
    def from_edges(cls, alphabet: Alphabet, edges: Iterable[tuple[Key, str, Key]], root: Key,
                   symmetrize: bool = True) -> "FiniteGraph":
        """Build from (u, a, v) triples; adds inverse edges when asked."""
        triples = []
        for u, a, v in edges:
            alphabet.index(a)
            triples.append((u, a, v))
            if symmetrize:
                triples.append((v, alphabet.inv(a), u))
        adj: dict[tuple[Key, str], Key] = {}
        for u, a, v in triples:
            if adj.setdefault((u, a), v) != v:
                raise InputError(f"non-deterministic edge at ({u!r}, {a!r})")
        lazy = LazyInverseGraph(alphabet, root, lambda v, a: adj.get((v, a)), complete=False)
        dist = bfs(lazy, root, len(adj) + 1)
        order = list(dist)
        idx = {v: i for i, v in enumerate(order)}
        es = sorted((idx[u], a, idx[v]) for (u, a), v in adj.items() if u in idx)
        return cls(alphabet, order, es, [dist[v] for v in order], 0, False)

    def as_lazy(self, name: str = "") -> LazyInverseGraph:
        verts, adj = self.vertices, self._adj
        idx = self._index

        def nb(v: Key, a: str) -> Key | None:
            i = idx.get(v)
            if i is None:
                return None
            j = adj.get((i, a))
            return None if j is None else verts[j]

        root = verts[self.root if self.root is not None else 0]
        return LazyInverseGraph(self.alphabet, root, nb, complete=self.is_complete(), name=name)

    def to_json(self) -> dict[str, Any]:
        return {
            "alphabet": self.alphabet.to_json(),
            "root": self.root,
            "partial": self.partial,
            "vertices": [
                {"id": i, "key": key_to_json(v), **({"dist": self.dist[i]} if self.dist else {})}
                for i, v in enumerate(self.vertices)
            ],
            "edges": [[i, a, j] for i, a, j in self.edges],
        }

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {json.dumps(name)} {{", "  node [shape=circle];"]
        for i, v in enumerate(self.vertices):
            shape = ', shape=doublecircle' if i == self.root else ""
            lines.append(f"  {i} [label={json.dumps(key_str(v), ensure_ascii=False)}{shape}];")
        for i, a, j in self.edges:
            lines.append(f"  {i} -> {j} [label={json.dumps(a, ensure_ascii=False)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def expand_ball(g: LazyInverseGraph, center: Key | None = None, r: int = 0) -> FiniteGraph:
    """All vertices within distance r of center and all edges among them."""
    if r < 0:
        raise InputError("radius must be non-negative")
    c = g.root if center is None else center
    dist = bfs(g, c, r)
    order = list(dist)
    idx = {v: i for i, v in enumerate(order)}
    edges: list[tuple[int, str, int]] = []
    partial = False
    for v in order:
        i = idx[v]
        for a in g.alphabet.letters:
            w = g.neighbor(v, a)
            if w is None:
                partial = True
            elif w in idx:
                edges.append((i, a, idx[w]))
    return FiniteGraph(g.alphabet, order, edges, [dist[v] for v in order], 0, partial)


def scan_inverse_graph(g: LazyInverseGraph, r: int) -> list[str]:
    """Involution and (claimed) completeness violations within radius r."""
    problems = []
    for v in bfs(g, g.root, r):
        for a in g.alphabet.letters:
            w = g.neighbor(v, a)
            if w is None:
                if g.complete:
                    problems.append(f"missing edge at {key_str(v)} on {a}")
                continue
            back = g.neighbor(w, g.alphabet.inv(a))
            if back != v:
                problems.append(f"{key_str(v)} -{a}-> {key_str(w)} but reverse gives {key_str(back)}")
    return problems


# morphisms


@dataclass(frozen=True)
class Conflict:
    """First edge that a forced rooted morphism cannot respect."""

    vertex: Key
    letter: str
    expected: Key | None
    found: Key | None
    reason: str = "edge image mismatch"

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict[str, Any]:
        return {
            "vertex": key_to_json(self.vertex),
            "letter": self.letter,
            "expected": key_to_json(self.expected),
            "found": key_to_json(self.found),
            "reason": self.reason,
        }


@dataclass(frozen=True)
class Morphism:
    mapping: dict[Key, Key]

    def __bool__(self) -> bool:
        return True

    def __getitem__(self, v: Key) -> Key:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)


def propagate_morphism(src: LazyInverseGraph | FiniteGraph, dst: LazyInverseGraph, image: Key,
                       r: int) -> Morphism | Conflict:
    """Force root(src) -> image along edges of the radius-r ball of src."""
    if isinstance(src, FiniteGraph):
        src = src.as_lazy()
    phi = {src.root: image}
    dist = {src.root: 0}
    queue = deque([src.root])
    letters = src.alphabet.letters
    while queue:
        v = queue.popleft()
        d = dist[v]
        for a in letters:
            w = src.neighbor(v, a)
            if w is None:
                continue
            if w not in dist:
                if d == r:
                    continue
                dist[w] = d + 1
                queue.append(w)
            y = dst.neighbor(phi[v], a)
            if w in phi:
                if y != phi[w]:
                    return Conflict(v, a, phi[w], y)
            elif y is None:
                return Conflict(v, a, None, None, "missing edge in target")
            else:
                phi[w] = y
    return Morphism(phi)


@dataclass(frozen=True)
class Verification:
    ok: bool
    witness: Conflict | str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        w = self.witness
        return {"ok": self.ok, "witness": w.to_json() if isinstance(w, Conflict) else w}


def verify_isomorphic_balls(g1: LazyInverseGraph, g2: LazyInverseGraph, r: int) -> Verification:
    """Rooted isomorphism of radius-r balls via propagation in both directions."""
    if g1.alphabet != g2.alphabet:
        return Verification(False, "alphabets differ")
    fwd = propagate_morphism(g1, g2, g2.root, r)
    if not fwd:
        return Verification(False, fwd)
    bwd = propagate_morphism(g2, g1, g1.root, r)
    if not bwd:
        return Verification(False, bwd)
    return Verification(True)
