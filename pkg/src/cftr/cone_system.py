"""End-cone systems: finite presentations of context-free inverse graphs."""

from __future__ import annotations

import itertools
import json
from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Sequence

from .core import (
    Alphabet,
    InputError,
    Key,
    LazyInverseGraph,
    Verification,
    bfs,
    verify_isomorphic_balls,
)


class VertexAddress(NamedTuple):
    """Child-slot path from the root type plus a frontier vertex of the last type."""

    slot_path: tuple[int, ...]
    final: str

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.slot_path)) + "]" + self.final


@dataclass(frozen=True)
class ConeType:
    frontier: tuple[str, ...]
    internal_edges: tuple[tuple[str, str, str], ...] = ()
    children: tuple[int, ...] = ()
    cross_edges: tuple[tuple[str, str, int, str], ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "frontier": list(self.frontier),
            "internal_edges": [list(e) for e in self.internal_edges],
            "children": list(self.children),
            "cross_edges": [list(e) for e in self.cross_edges],
        }


def cone_type(frontier: Sequence[str], internal: Iterable[tuple[str, str, str]] = (),
              children: Sequence[int] = (), cross: Iterable[tuple[str, str, int, str]] = (),
              alphabet: Alphabet | None = None) -> ConeType:
    """Convenience constructor; with an alphabet, internal edges get their inverses added."""
    edges = list(internal)
    if alphabet is not None:
        full = set(edges)
        for u, a, v in edges:
            full.add((v, alphabet.inv(a), u))
        edges = sorted(full, key=lambda e: (e[0], alphabet.index(e[1]), e[2]))
    return ConeType(tuple(frontier), tuple(map(tuple, edges)), tuple(children),
                    tuple(tuple(e) for e in cross))


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


class NotStabilized(Exception):
    """Inference could not produce a verified system at the given radius."""

    def __init__(self, reason: str, witness: Any = None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


class EndConeSystem:
    """Cone types indexed 0..N-1, type 0 being the root type."""

    def __init__(self, alphabet: Alphabet, types: Sequence[ConeType], name: str = ""):
        self.alphabet = alphabet
        self.types: tuple[ConeType, ...] = tuple(types)
        self.name = name
        self._tables: Any = None
        self._prepare()

    # structure

    def _prepare(self) -> None:
        self._out: list[dict[tuple[str, str], tuple]] = []
        self._missing: list[dict[str, frozenset[str]]] = []
        self._up: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
        for t, ct in enumerate(self.types):
            out: dict[tuple[str, str], tuple] = {}
            for u, a, v in ct.internal_edges:
                out.setdefault((u, a), ("stay", v))
            for u, a, j, w in ct.cross_edges:
                out.setdefault((u, a), ("new", j, w))
                if a in self.alphabet:
                    self._up.setdefault((t, j), {}).setdefault((w, self.alphabet.inv(a)), u)
            self._out.append(out)
            self._missing.append({
                v: frozenset(a for a in self.alphabet.letters if (v, a) not in out) for v in ct.frontier
            })

    @property
    def root_vertex(self) -> str:
        return self.types[0].frontier[0]

    @property
    def root(self) -> VertexAddress:
        return VertexAddress((), self.root_vertex)

    def missing(self, t: int, v: str) -> frozenset[str]:
        return self._missing[t][v]

    def child_type(self, t: int, j: int) -> int:
        return self.types[t].children[j]

    def type_at(self, path: Sequence[int], base: int = 0) -> int:
        t = base
        for j in path:
            t = self.types[t].children[j]
        return t

    def __len__(self) -> int:
        return len(self.types)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EndConeSystem) and self.to_json() == other.to_json()

    def __repr__(self) -> str:
        return f"EndConeSystem({self.name or 'unnamed'}, {len(self.types)} types)"

    # serialization

    def to_json(self) -> dict[str, Any]:
        return {
            "alphabet": self.alphabet.to_json(),
            "types": [ct.to_json() for ct in self.types],
            "root_type": 0,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, doc: dict[str, Any], name: str = "") -> "EndConeSystem":
        try:
            alph = Alphabet.from_json(doc["alphabet"])
            if doc.get("root_type", 0) != 0:
                raise InputError("root_type must be 0")
            types = [
                ConeType(
                    tuple(t["frontier"]),
                    tuple(tuple(e) for e in t.get("internal_edges", [])),
                    tuple(t.get("children", [])),
                    tuple((e[0], e[1], int(e[2]), e[3]) for e in t.get("cross_edges", [])),
                )
                for t in doc["types"]
            ]
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad system document: {exc!r}") from None
        return cls(alph, types, name)

    # kernel tables

    @property
    def tables(self) -> "Tables":
        if self._tables is None:
            self._tables = Tables(self)
        return self._tables


def validate(sys: EndConeSystem) -> ValidationReport:
    """Check every structural invariant; an empty report means the system is sound."""
    rep = ValidationReport()
    P = rep.problems
    A = sys.alphabet
    T = sys.types
    if not T:
        P.append("no types")
        return rep
    if len(T[0].frontier) != 1:
        P.append(f"root frontier must be a singleton, got {list(T[0].frontier)}")
    for t, ct in enumerate(T):
        F = set(ct.frontier)
        if len(F) != len(ct.frontier) or not F:
            P.append(f"type {t}: frontier names must be distinct and non-empty")
        for h in ct.children:
            if not 0 <= h < len(T):
                P.append(f"type {t}: child type {h} out of range")
        seen: dict[tuple[str, str], Any] = {}
        for e in ct.internal_edges:
            u, a, v = e
            if u not in F or v not in F or a not in A:
                P.append(f"type {t}: bad internal edge {list(e)}")
                continue
            if (u, a) in seen and seen[(u, a)] != e:
                P.append(f"type {t}: non-deterministic at ({u}, {a})")
            seen[(u, a)] = e
        internal = set(ct.internal_edges)
        for u, a, v in internal:
            if a in A and (v, A.inv(a), u) not in internal:
                P.append(f"type {t}: internal edge {u}-{a}->{v} lacks its inverse")
        slot_hits = [set() for _ in ct.children]
        incoming: dict[tuple[int, str, str], list[str]] = {}
        for e in ct.cross_edges:
            u, a, j, w = e
            if u not in F or a not in A or not 0 <= j < len(ct.children):
                P.append(f"type {t}: bad cross edge {list(e)}")
                continue
            h = ct.children[j]
            if not 0 <= h < len(T) or w not in T[h].frontier:
                P.append(f"type {t}: cross edge {list(e)} targets unknown vertex")
                continue
            if (u, a) in seen:
                P.append(f"type {t}: non-deterministic at ({u}, {a})")
            seen[(u, a)] = e
            slot_hits[j].add(w)
            incoming.setdefault((j, w, A.inv(a)), []).append(u)
        for (j, w, a), us in incoming.items():
            if len(us) > 1:
                P.append(f"type {t}: slot {j} vertex {w} entered twice by {A.inv(a)} (from {sorted(us)})")
        for j, hit in enumerate(slot_hits):
            if not 0 <= ct.children[j] < len(T):
                continue
            if not hit:
                P.append(f"type {t}: slot {j} receives no cross edge")
            unreached = set(T[ct.children[j]].frontier) - hit
            if hit and unreached:
                P.append(f"type {t}: slot {j} frontier vertices {sorted(unreached)} receive no cross edge")
    if P:
        return rep
    for v in T[0].frontier:
        if sys.missing(0, v):
            P.append(f"root exit-letter set not covered: {v} lacks {sorted(sys.missing(0, v))}")
    for t, ct in enumerate(T):
        for j, h in enumerate(ct.children):
            up = sys._up.get((t, j), {})
            for w in T[h].frontier:
                entering = {a for (x, a) in up if x == w}
                miss = set(sys.missing(h, w))
                if entering != miss:
                    P.append(
                        f"exit-letter consistency: type {h} vertex {w} misses {sorted(miss)} "
                        f"but context (type {t}, slot {j}) supplies {sorted(entering)}"
                    )
    return rep


def neighbor_address(sys: EndConeSystem, addr: VertexAddress, a: str, base: int = 0) -> VertexAddress | None:
    """Move along one edge; None only when the move exits above the base cone."""
    path, v = addr
    t = sys.type_at(path, base)
    move = sys._out[t].get((v, a))
    if move is None:
        if not path:
            if base == 0 and a not in sys.alphabet:
                raise InputError(f"letter {a!r} not in alphabet")
            return None
        parent = sys.type_at(path[:-1], base)
        u = sys._up[(parent, path[-1])][(v, a)]
        return VertexAddress(path[:-1], u)
    if move[0] == "stay":
        return VertexAddress(path, move[1])
    return VertexAddress(path + (move[1],), move[2])


def act_address(sys: EndConeSystem, addr: VertexAddress, w: Iterable[str], base: int = 0) -> VertexAddress | None:
    for a in w:
        addr = neighbor_address(sys, addr, a, base)
        if addr is None:
            return None
    return addr


def as_lazy_graph(sys: EndConeSystem) -> LazyInverseGraph:
    def nb(v: Key, a: str) -> Key | None:
        return neighbor_address(sys, VertexAddress(*v), a)

    return LazyInverseGraph(sys.alphabet, sys.root, nb, complete=True, name=sys.name)


def verify_presentation(sys: EndConeSystem, g: LazyInverseGraph, r: int) -> Verification:
    return verify_isomorphic_balls(as_lazy_graph(sys), g, r)


def constants(sys: EndConeSystem) -> tuple[int, int, int]:
    """(number of types, max frontier size, max child count)."""
    return (
        len(sys.types),
        max(len(t.frontier) for t in sys.types),
        max(len(t.children) for t in sys.types),
    )


def type_graph_cycle(sys: EndConeSystem) -> list[int] | None:
    """A cycle of child types reachable from the root type, if any."""
    colour = {0: 1}
    stack = [(0, iter(sys.types[0].children))]
    trail = [0]
    while stack:
        t, it = stack[-1]
        for h in it:
            if colour.get(h) == 1:
                return trail[trail.index(h):] + [h]
            if h not in colour:
                colour[h] = 1
                trail.append(h)
                stack.append((h, iter(sys.types[h].children)))
                break
        else:
            colour[t] = 2
            trail.pop()
            stack.pop()
    return None


def enumerate_addresses(sys: EndConeSystem, max_depth: int) -> list[VertexAddress]:
    out = []
    queue = deque([((), 0)])
    while queue:
        path, t = queue.popleft()
        out.extend(VertexAddress(path, v) for v in sys.types[t].frontier)
        if len(path) < max_depth:
            for j, h in enumerate(sys.types[t].children):
                queue.append((path + (j,), h))
    return out


# codec between addresses and well-formed words


class ConeLetter(NamedTuple):
    """(parent type, slot, frontier vertex or None); parent -1 marks the root letters."""

    parent: int
    slot: int
    vertex: str | None = None

    @property
    def final(self) -> bool:
        return self.vertex is not None

    @property
    def cone(self) -> tuple[int, int]:
        return (self.parent, self.slot)

    def __str__(self) -> str:
        name = "G0" if self.parent < 0 else f"G{self.slot}^{self.parent}"
        return f"({name})" if self.vertex is None else f"({name},{self.vertex})"

    def to_json(self) -> list:
        return [self.parent, self.slot, self.vertex]


ROOT_LETTER = ConeLetter(-1, -1, None)


def cone_of(sys: EndConeSystem, lam: ConeLetter) -> int:
    """Type of the cone named by lam(1)."""
    return 0 if lam.parent < 0 else sys.types[lam.parent].children[lam.slot]


def cone_alphabet(sys: EndConeSystem) -> list[ConeLetter]:
    out = [ROOT_LETTER, ConeLetter(-1, -1, sys.root_vertex)]
    for i, ct in enumerate(sys.types):
        for j, h in enumerate(ct.children):
            out.append(ConeLetter(i, j))
            out.extend(ConeLetter(i, j, v) for v in sys.types[h].frontier)
    return out


class DecodeError(InputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def encode_vertex(sys: EndConeSystem, addr: VertexAddress) -> tuple[ConeLetter, ...]:
    path, v = addr
    if not path:
        return (ConeLetter(-1, -1, v),)
    out = [ROOT_LETTER]
    t = 0
    for k, j in enumerate(path):
        out.append(ConeLetter(t, j, v if k == len(path) - 1 else None))
        t = sys.types[t].children[j]
    return tuple(out)


def decode_vertex(sys: EndConeSystem, word: Sequence[ConeLetter]) -> VertexAddress:
    if not word:
        raise DecodeError("empty word", 0)
    first = word[0]
    if first.parent >= 0:
        raise DecodeError("word does not start with a root letter", 0)
    if first.final:
        if first.vertex != sys.root_vertex:
            raise DecodeError("unknown root vertex", 0)
        if len(word) > 1:
            raise DecodeError("letter after final letter", 1)
        return sys.root
    t = 0
    path: list[int] = []
    for k in range(1, len(word)):
        lam = word[k]
        if k > 1 and word[k - 1].final:
            raise DecodeError("letter after final letter", k)
        if lam.parent != t or not 0 <= lam.slot < len(sys.types[t].children):
            raise DecodeError("order violated", k)
        path.append(lam.slot)
        t = sys.types[t].children[lam.slot]
        if lam.final:
            if lam.vertex not in sys.types[t].frontier:
                raise DecodeError("unknown frontier vertex", k)
            if k != len(word) - 1:
                raise DecodeError("letter after final letter", k + 1)
            return VertexAddress(tuple(path), lam.vertex)
    raise DecodeError("missing final letter", len(word))


# integer tables for the walk kernel


STAY, DOWN, UP = 0, 1, 2


class Tables:
    """Flat int arrays describing every move of a system."""

    def __init__(self, sys: EndConeSystem):
        A = sys.alphabet
        L = len(A)
        T = sys.types
        self.L = L
        self.maxF = max(len(t.frontier) for t in T)
        self.local = [{v: i for i, v in enumerate(t.frontier)} for t in T]
        voff, soff, n_v, n_s = [], [], 0, 0
        for t in T:
            voff.append(n_v)
            soff.append(n_s)
            n_v += len(t.frontier)
            n_s += len(t.children)
        self.voff = array("i", voff)
        self.soff = array("i", soff)
        self.slot_child = array("i", [h for t in T for h in t.children] or [0])
        kind = array("i", [UP] * (n_v * L))
        mx = array("i", [-1] * (n_v * L))
        my = array("i", [-1] * (n_v * L))
        up = array("i", [-1] * (max(n_s, 1) * self.maxF * L))
        for ti, t in enumerate(T):
            loc = self.local[ti]
            for (u, a), move in sys._out[ti].items():
                g = (voff[ti] + loc[u]) * L + A.index(a)
                if move[0] == "stay":
                    kind[g], mx[g] = STAY, loc[move[1]]
                else:
                    j, w = move[1], move[2]
                    kind[g], mx[g], my[g] = DOWN, j, self.local[t.children[j]][w]
            for j, h in enumerate(t.children):
                for (w, a), u in sys._up.get((ti, j), {}).items():
                    gs = soff[ti] + j
                    up[(gs * self.maxF + self.local[h][w]) * L + A.index(a)] = loc[u]
        self.kind, self.mx, self.my, self.up = kind, mx, my, up
        self.index = {a: i for i, a in enumerate(A.letters)}

    def word(self, w: Sequence[str]) -> array:
        return array("i", [self.index[a] for a in w])


# inference


def infer_system(g: LazyInverseGraph, d: int, s: int, margin: int = 1,
                 max_frontier: int = 8) -> EndConeSystem:
    """Discover cone types inside the radius-d ball and verify the result at radius d - s.

    Raises NotStabilized when the classes are not stable or verification fails.
    """
    if not d > s >= 1:
        raise InputError("need d > s >= 1")
    return _Inference(g, d, s, margin, max_frontier).run()


@dataclass
class _Cone:
    level: int
    frontier: list[int]
    children: list[int] = field(default_factory=list)


class _Inference:
    def __init__(self, g: LazyInverseGraph, d: int, s: int, margin: int, max_frontier: int):
        self.g, self.d, self.s, self.margin, self.max_frontier = g, d, s, margin, max_frontier
        self.A = g.alphabet
        self.L = len(self.A)
        self._memo: dict[tuple[int, int], tuple[Any, list[tuple[int, ...]]]] = {}

    def run(self) -> EndConeSystem:
        self._explore()
        self._cones()
        d, s, m = self.d, self.s, self.margin
        top = d - m - (s + 1)
        if top < 1:
            raise NotStabilized(f"radius {d} too small for s={s}")
        pool = [c for c, cone in enumerate(self.cones) if cone.level <= top]
        cls_s = {c: self.form(c, s)[0] for c in pool}
        cls_s1 = {c: self.form(c, s + 1)[0] for c in pool}
        pairing: dict[Any, Any] = {}
        back: dict[Any, Any] = {}
        for c in pool:
            a, b = cls_s[c], cls_s1[c]
            if pairing.setdefault(a, b) != b or back.setdefault(b, a) != a:
                raise NotStabilized(f"cone classes split between depth {s} and {s + 1}",
                                    {"level": self.cones[c].level})
        reps: dict[Any, int] = {}
        for c in pool:
            reps.setdefault(cls_s[c], c)
        for f, c in reps.items():
            if self.cones[c].level >= top:
                raise NotStabilized("new cone types still appear at the probe horizon",
                                    {"level": self.cones[c].level})
        order = sorted(reps, key=lambda f: reps[f])
        tid = {f: i for i, f in enumerate(order)}
        types = [self._assemble(reps[f], tid, s) for f in order]
        sys = EndConeSystem(self.A, types, name=(self.g.name + "-inferred") if self.g.name else "inferred")
        rep = validate(sys)
        if not rep:
            raise NotStabilized("assembled system is invalid", rep.problems)
        ver = verify_presentation(sys, self.g, d - s)
        if not ver:
            raise NotStabilized("verification failed", ver.witness)
        return sys

    # ball and cones

    def _explore(self) -> None:
        g, d = self.g, self.d
        dist = bfs(g, g.root, d)
        self.keys = list(dist)
        idx = {v: i for i, v in enumerate(self.keys)}
        self.level = [dist[v] for v in self.keys]
        self.adj: list[list[int]] = []
        for v in self.keys:
            row = []
            for a in self.A.letters:
                w = g.neighbor(v, a)
                if w is None:
                    raise NotStabilized("graph is not complete", {"vertex": v, "letter": a})
                row.append(idx.get(w, -1))
            self.adj.append(row)

    def _cones(self) -> None:
        n = len(self.keys)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        by_level: list[list[int]] = [[] for _ in range(self.d + 1)]
        for v in range(n):
            by_level[self.level[v]].append(v)
        self.cones: list[_Cone] = []
        self.cone_of = [-1] * n
        prev: list[int] = []
        for lev in range(self.d, -1, -1):
            for v in by_level[lev]:
                for w in self.adj[v]:
                    if w >= 0 and self.level[w] >= lev:
                        rv, rw = find(v), find(w)
                        if rv != rw:
                            parent[rv] = rw
            groups: dict[int, list[int]] = {}
            for v in by_level[lev]:
                groups.setdefault(find(v), []).append(v)
            made: dict[int, int] = {}
            for root, members in groups.items():
                made[root] = len(self.cones)
                self.cones.append(_Cone(lev, members))
                for v in members:
                    self.cone_of[v] = made[root]
            for c in prev:
                self.cones[made[find(self.cones[c].frontier[0])]].children.append(c)
            prev = list(made.values())
        # renumber so cones follow BFS discovery order of their first frontier vertex
        order = sorted(range(len(self.cones)), key=lambda c: min(self.cones[c].frontier))
        rank = {c: i for i, c in enumerate(order)}
        self.cones = [self.cones[c] for c in order]
        for cone in self.cones:
            cone.children = sorted(rank[c] for c in cone.children)
            cone.frontier.sort()
        self.cone_of = [rank[c] for c in self.cone_of]

    # canonical forms

    def _local(self, c: int) -> tuple[list[tuple], dict[int, list[tuple[int, int]]]]:
        """Per-frontier-vertex data and the cross edges into each child."""
        cone = self.cones[c]
        lev = cone.level
        rows = []
        cross: dict[int, list[tuple[int, int, int]]] = {}
        for v in cone.frontier:
            miss, down, inner = [], [], []
            for ai, w in enumerate(self.adj[v]):
                if w < 0:
                    down.append(ai)
                    continue
                lw = self.level[w]
                if lw < lev:
                    miss.append(ai)
                elif lw == lev:
                    inner.append((ai, w))
                else:
                    down.append(ai)
                    cross.setdefault(self.cone_of[w], []).append((v, ai, w))
            rows.append((tuple(miss), tuple(down), inner))
        return rows, cross

    def form(self, c: int, k: int) -> tuple[Any, list[tuple[int, ...]]]:
        """Canonical form of the depth-k truncation of cone c and its optimal frontier orders."""
        key = (c, k)
        if key in self._memo:
            return self._memo[key]
        cone = self.cones[c]
        F = cone.frontier
        if len(F) > self.max_frontier:
            raise NotStabilized("frontier too large to canonicalize", {"size": len(F)})
        rows, cross = self._local(c)
        kids = []
        if k > 0:
            for ch in cone.children:
                f, perms = self.form(ch, k - 1)
                kids.append((ch, f, perms, cross.get(ch, [])))
        # refinement colour of each frontier vertex
        colour = []
        for i, v in enumerate(F):
            miss, down, inner = rows[i]
            touch = sorted((f, ai) for ch, f, _, es in kids for (u, ai, _w) in es if u == v) if k > 0 else []
            colour.append((miss, down, tuple(sorted(ai for ai, _ in inner)), tuple(touch)))
        blocks: dict[Any, list[int]] = {}
        for i in range(len(F)):
            blocks.setdefault(colour[i], []).append(i)
        block_keys = sorted(blocks)
        best = None
        best_perms: list[tuple[int, ...]] = []
        for choice in itertools.product(*(itertools.permutations(blocks[b]) for b in block_keys)):
            order = [i for part in choice for i in part]
            num = {F[i]: n for n, i in enumerate(order)}
            ser = self._serialize(F, order, rows, num, kids, colour)
            if best is None or ser < best:
                best, best_perms = ser, [tuple(F[i] for i in order)]
            elif ser == best:
                best_perms.append(tuple(F[i] for i in order))
        result = (best, best_perms)
        self._memo[key] = result
        return result

    def _serialize(self, F, order, rows, num, kids, colour):
        head = tuple(colour[i][:2] for i in order)
        inner = sorted((num[F[i]], ai, num[w]) for i in order for ai, w in rows[i][2])
        ks = []
        for _ch, f, perms, es in kids:
            best = None
            for p in perms:
                cn = {v: n for n, v in enumerate(p)}
                ser = tuple(sorted((num[u], ai, cn[w]) for u, ai, w in es))
                if best is None or ser < best:
                    best = ser
            ks.append((f, best))
        ks.sort()
        return (head, tuple(inner), tuple(ks))

    # assembly

    def _assemble(self, c: int, tid: dict[Any, int], s: int) -> ConeType:
        cone = self.cones[c]
        f, perms = self.form(c, s)
        order = perms[0]
        root = cone.level == 0
        name = {v: ("x0" if root else f"v{n}") for n, v in enumerate(order)}
        rows, cross = self._local(c)
        pos = {v: i for i, v in enumerate(cone.frontier)}
        internal = []
        for v in order:
            for ai, w in rows[pos[v]][2]:
                internal.append((name[v], self.A.letters[ai], name[w]))
        kids = []
        for ch in cone.children:
            cf, cperms = self.form(ch, s)
            es = cross.get(ch, [])
            best, best_p = None, None
            for p in cperms:
                cn = {v: n for n, v in enumerate(p)}
                ser = tuple(sorted((order.index(u), ai, cn[w]) for u, ai, w in es))
                if best is None or ser < best:
                    best, best_p = ser, p
            kids.append((tid[cf], best, best_p, es, cf))
        kids.sort(key=lambda x: (x[4], x[1]))
        children, cross_edges = [], []
        for j, (h, _, p, es, _) in enumerate(kids):
            children.append(h)
            cn = {v: n for n, v in enumerate(p)}
            for u, ai, w in sorted(es, key=lambda e: (order.index(e[0]), e[1])):
                cross_edges.append((name[u], self.A.letters[ai], j, f"v{cn[w]}"))
        internal.sort(key=lambda e: (e[0], self.A.index(e[1]), e[2]))
        return ConeType(tuple(name[v] for v in order), tuple(internal), tuple(children), tuple(cross_edges))
