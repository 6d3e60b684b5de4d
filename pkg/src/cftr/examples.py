"""Worked example graphs with closed-form action oracles, and hand-built systems."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence

from .cone_system import ConeType, EndConeSystem, cone_type, infer_system
from .core import Alphabet, InputError, Key, LazyInverseGraph, Word
from .product import Gluing, free_product, pad_system

State = Hashable


@dataclass(frozen=True)
class OracleGraph:
    """A lazy graph plus an independent action map on oracle states.

    ``key_of``/``state_of`` translate between oracle states and lazy vertex keys.
    """

    name: str
    graph: LazyInverseGraph
    action: Callable[[State, Sequence[str]], State]
    key_of: Callable[[State], Key]
    state_of: Callable[[Key], State]
    root_state: State

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    def oracle_walk(self, v: Key, w: Sequence[str]) -> Key:
        return self.key_of(self.action(self.state_of(v), w))


# generic building blocks


def line_graph(letter: str = "a") -> LazyInverseGraph:
    alph = Alphabet.from_generators([letter])
    pos, neg = alph.letters

    def nb(v: int, a: str) -> int | None:
        return v + 1 if a == pos else v - 1 if a == neg else None

    return LazyInverseGraph(alph, 0, nb, True, f"line-{letter}")


def line(letter: str = "a") -> OracleGraph:
    g = line_graph(letter)
    pos = g.alphabet.letters[0]

    def action(x: int, w: Sequence[str]) -> int:
        return x + sum(1 if a == pos else -1 for a in w)

    return OracleGraph(g.name, g, action, lambda s: s, lambda k: k, 0)


def cycle(letter: str = "a", n: int = 5) -> OracleGraph:
    if n < 1:
        raise InputError("cycle length must be positive")
    alph = Alphabet.from_generators([letter])
    pos, neg = alph.letters

    def nb(v: int, a: str) -> int | None:
        return (v + 1) % n if a == pos else (v - 1) % n if a == neg else None

    def action(x: int, w: Sequence[str]) -> int:
        return (x + sum(1 if a == pos else -1 for a in w)) % n

    g = LazyInverseGraph(alph, 0, nb, True, f"cycle-{letter}{n}")
    return OracleGraph(g.name, g, action, lambda s: s, lambda k: k, 0)


def loop_vertex(gens: Sequence[str] = ("a",)) -> OracleGraph:
    alph = Alphabet.from_generators(gens)
    g = LazyInverseGraph(alph, 0, lambda v, a: v if a in alph else None, True, "loop")
    return OracleGraph("loop", g, lambda s, w: s, lambda s: s, lambda k: k, 0)


def free_tree(gens: Sequence[str] = ("a", "b")) -> OracleGraph:
    """Cayley graph of the free group; vertices are reduced words."""
    alph = Alphabet.from_generators(gens)

    def nb(v: tuple, a: str) -> tuple | None:
        if a not in alph:
            return None
        if v and v[-1] == alph.inv(a):
            return v[:-1]
        return v + (a,)

    def action(v: tuple, w: Sequence[str]) -> tuple:
        out = list(v)
        for a in w:
            if out and out[-1] == alph.inv(a):
                out.pop()
            else:
                out.append(a)
        return tuple(out)

    g = LazyInverseGraph(alph, (), nb, True, "free-tree")
    return OracleGraph("free-tree", g, action, lambda s: s, lambda k: k, ())


# the omega graph


OMEGA = Alphabet.from_generators(["a", "b", "c"])


def omega_graph() -> LazyInverseGraph:
    """p_i -a-> p_(i+1), q_i -b-> q_(i+1), b-loops on p, a-loops on q, c and c' swap p_i, q_i."""

    def nb(v: tuple[str, int], x: str) -> tuple[str, int] | None:
        row, i = v
        if x in ("c", "c'"):
            return ("q" if row == "p" else "p", i)
        mover = "a" if row == "p" else "b"
        if x == mover:
            return (row, i + 1)
        if x == mover + "'":
            return (row, i - 1)
        return v if x in OMEGA else None

    return LazyInverseGraph(OMEGA, ("p", 0), nb, True, "omega")


def omega_action(xy: tuple[int, int], w: Sequence[str]) -> tuple[int, int]:
    """(x, y) * a^n b^m c^j = (x + y m + (1 - y) n, y + j mod 2), one syllable at a time."""
    x, y = xy
    for letter in w:
        gen, e = letter[0], -1 if letter.endswith("'") else 1
        n = e if gen == "a" else 0
        m = e if gen == "b" else 0
        j = 1 if gen == "c" else 0
        x, y = x + y * m + (1 - y) * n, (y + j) % 2
    return (x, y)


def omega() -> OracleGraph:
    return OracleGraph(
        "omega", omega_graph(), omega_action,
        lambda s: ("p" if s[1] == 0 else "q", s[0]),
        lambda k: (k[1], 0 if k[0] == "p" else 1),
        (0, 0),
    )


# antenna, comb and the torsion graph as free products


def _mover_graph(alph: Alphabet, mover: str, name: str) -> LazyInverseGraph:
    """Line in the letter ``mover`` with loops for the other letters of alph."""
    inv = alph.inv(mover)

    def nb(v: int, x: str) -> int | None:
        if x == mover:
            return v + 1
        if x == inv:
            return v - 1
        return v if x in alph else None

    return LazyInverseGraph(alph, 0, nb, True, name)


def _single_loop(alph: Alphabet, name: str) -> LazyInverseGraph:
    return LazyInverseGraph(alph, 0, lambda v, x: v if x in alph else None, True, name)


def antenna_graph() -> LazyInverseGraph:
    C = Alphabet.from_generators(["c"])
    AB = Alphabet.from_generators(["a", "b"])
    c_line = line_graph("c")
    lam_b = _mover_graph(AB, "b", "b-line")
    lam_a = _mover_graph(AB, "a", "a-line")
    # c-line vertices with index <= 0 carry the b-line, positive ones the a-line
    psi1 = Gluing(default=1, ranges=((None, 0, 0),))
    return free_product([c_line], [lam_b, lam_a], [psi1], [Gluing(0), Gluing(0)], "antenna")


def antenna_action(v: tuple, w: Sequence[str]) -> tuple:
    """Syllable form (gen, exponent)*; the action table of the antenna."""
    out = list(v)
    for letter in w:
        gen, e = letter[0], -1 if letter.endswith("'") else 1
        if not out:
            if gen == "a":
                continue
            out.append((gen, e))
            continue
        last, s = out[-1]
        if last == gen:
            if s + e == 0:
                out.pop()
            else:
                out[-1] = (gen, s + e)
        elif last == "c":
            if gen == "b" and s > 0 or gen == "a" and s < 0:
                continue
            out.append((gen, e))
        elif gen == "c":
            out.append((gen, e))
        # a on a b-syllable or b on an a-syllable is a loop
    return tuple(out)


_ANTENNA_ENTRY = {"c": (1, 0), "b": (2, 0), "a": (2, 1)}
_ANTENNA_GEN = {v: k for k, v in _ANTENNA_ENTRY.items()}


def antenna() -> OracleGraph:
    def key_of(s: tuple) -> tuple:
        return tuple(_ANTENNA_ENTRY[g] + (e,) for g, e in s)

    def state_of(k: tuple) -> tuple:
        return tuple((_ANTENNA_GEN[(side, gi)], e) for side, gi, e in k)

    return OracleGraph("antenna", antenna_graph(), antenna_action, key_of, state_of, ())


def comb_graph() -> LazyInverseGraph:
    A = Alphabet.from_generators(["a"])
    return free_product(
        [line_graph("c")],
        [line_graph("a"), _single_loop(A, "a-loop")],
        [Gluing(1)],
        [Gluing(0), Gluing(0)],
        "comb",
    )


def comb_action(v: tuple[int, int], w: Sequence[str]) -> tuple[int, int]:
    """z_i^(j): c moves i; a moves j only on the spine i = 0."""
    i, j = v
    for letter in w:
        e = -1 if letter.endswith("'") else 1
        if letter[0] == "c":
            i += e
        elif i == 0:
            j += e
    return (i, j)


def _two_level_key(i: int, j: int, spine: tuple[int, int]) -> tuple:
    out = []
    if j != 0:
        out.append(spine + (j,))
    if i != 0:
        out.append((1, 0, i))
    return tuple(out)


def _two_level_state(k: tuple) -> tuple[int, int]:
    i = j = 0
    for side, _gi, e in k:
        if side == 1:
            i = e
        else:
            j = e
    return (i, j)


def comb() -> OracleGraph:
    return OracleGraph(
        "comb", comb_graph(), comb_action,
        lambda s: _two_level_key(s[0], s[1], (2, 0)), _two_level_state, (0, 0),
    )


def torsion_graph_lazy() -> LazyInverseGraph:
    A = Alphabet.from_generators(["a"])

    def swap(v: int, x: str) -> int | None:
        return 1 - v if x in A else None

    bridge = LazyInverseGraph(A, 0, swap, True, "a-swap")
    return free_product(
        [line_graph("c")],
        [bridge, _single_loop(A, "a-loop")],
        [Gluing(1)],
        [Gluing(0), Gluing(0)],
        "torsion",
    )


def torsion_action(v: tuple[int, int], w: Sequence[str]) -> tuple[int, int]:
    """Level i moves by the c-exponent sum; the sheet flips on each a-letter read at level 0."""
    i, j = v
    crossings = 0
    for letter in w:
        if letter[0] == "c":
            i += -1 if letter.endswith("'") else 1
        elif i == 0:
            crossings += 1
    return (i, (j + crossings) % 2)


def torsion_graph() -> OracleGraph:
    return OracleGraph(
        "torsion", torsion_graph_lazy(), torsion_action,
        lambda s: _two_level_key(s[0], s[1], (2, 0)), _two_level_state, (0, 0),
    )


def companion_line() -> LazyInverseGraph:
    """c-line with a-loops everywhere."""
    return _mover_graph(Alphabet.from_generators(["c", "a"]), "c", "c-line-a-loops")


# hand-built systems


def line_system(letter: str = "a") -> EndConeSystem:
    A = Alphabet.from_generators([letter])
    p, m = A.letters
    return EndConeSystem(A, [
        ConeType(("x0",), (), (1, 2), (("x0", p, 0, "w"), ("x0", m, 1, "w"))),
        ConeType(("w",), (), (1,), (("w", p, 0, "w"),)),
        ConeType(("w",), (), (2,), (("w", m, 0, "w"),)),
    ], f"line-{letter}")


def cycle_system(letter: str = "a", n: int = 5) -> EndConeSystem:
    """Levels of the n-cycle from vertex 0; level k holds k ('p') and n - k ('m')."""
    A = Alphabet.from_generators([letter])
    p, m = A.letters
    if n == 1:
        return EndConeSystem(A, [cone_type(["x0"], [("x0", p, "x0")], alphabet=A)], f"cycle-{letter}1")
    top = n // 2
    types = []
    for k in range(top + 1):
        single = k == 0 or (n % 2 == 0 and k == top)
        F = ["x0"] if k == 0 else ["p"] if single else ["p", "m"]
        internal = [("p", p, "m")] if (n % 2 == 1 and k == top and k > 0) else []
        if k == top:
            types.append(cone_type(F, internal, alphabet=A))
            continue
        nxt_single = n % 2 == 0 and k + 1 == top
        src_p, src_m = ("x0", "x0") if k == 0 else ("p", "m")
        cross = [(src_p, p, 0, "p"), (src_m, m, 0, "p" if nxt_single else "m")]
        types.append(cone_type(F, internal, [k + 1], cross, alphabet=A))
    return EndConeSystem(A, types, f"cycle-{letter}{n}")


def loop_system(gens: Sequence[str] = ("a",)) -> EndConeSystem:
    A = Alphabet.from_generators(gens)
    return EndConeSystem(A, [cone_type(["x0"], [("x0", a, "x0") for a in A.positive], alphabet=A)], "loop")


def free_tree_system(gens: Sequence[str] = ("a", "b")) -> EndConeSystem:
    A = Alphabet.from_generators(gens)
    letters = A.letters
    tid = {a: i + 1 for i, a in enumerate(letters)}
    types = [ConeType(("x0",), (), tuple(tid[a] for a in letters),
                      tuple(("x0", a, j, "v") for j, a in enumerate(letters)))]
    for a in letters:
        nxt = [b for b in letters if b != A.inv(a)]
        types.append(ConeType(("v",), (), tuple(tid[b] for b in nxt),
                              tuple(("v", b, j, "v") for j, b in enumerate(nxt))))
    return EndConeSystem(A, types, "free-tree")


def companion_system() -> EndConeSystem:
    """c-line with a-loops everywhere, as a system."""
    return pad_system(line_system("c"), Alphabet.from_generators(["a"]))


def omega_system() -> EndConeSystem:
    A = OMEGA
    root = cone_type(["x0"], [("x0", "b", "x0")], [1],
                     [("x0", "a", 0, "pr"), ("x0", "a'", 0, "pl"), ("x0", "c", 0, "q0"), ("x0", "c'", 0, "q0")],
                     alphabet=A)
    middle = cone_type(
        ["pr", "q0", "pl"],
        [("pr", "b", "pr"), ("pl", "b", "pl"), ("q0", "a", "q0")],
        [2, 3],
        [("pr", "a", 0, "p"), ("pr", "c", 0, "q"), ("pr", "c'", 0, "q"), ("q0", "b", 0, "q"),
         ("q0", "b'", 1, "q"), ("pl", "a'", 1, "p"), ("pl", "c", 1, "q"), ("pl", "c'", 1, "q")],
        alphabet=A,
    )

    def ray(e: str, t: int) -> ConeType:
        a, b = ("a", "b") if e == "" else ("a'", "b'")
        return cone_type(["p", "q"], [("p", "b", "p"), ("q", "a", "q")], [t],
                         [("p", a, 0, "p"), ("p", "c", 0, "q"), ("p", "c'", 0, "q"), ("q", b, 0, "q")],
                         alphabet=A)

    return EndConeSystem(A, [root, middle, ray("", 2), ray("'", 3)], "omega")


# registry

INFERENCE_RADII = {"antenna": (8, 3), "comb": (8, 3), "torsion": (8, 3)}

ORACLES: dict[str, Callable[[], OracleGraph]] = {
    "line": line,
    "cycle5": lambda: cycle("a", 5),
    "loop": loop_vertex,
    "free-tree": free_tree,
    "omega": omega,
    "antenna": antenna,
    "comb": comb,
    "torsion": torsion_graph,
}

_HAND_BUILT: dict[str, Callable[[], EndConeSystem]] = {
    "line": line_system,
    "cycle5": lambda: cycle_system("a", 5),
    "loop": loop_system,
    "free-tree": free_tree_system,
    "omega": omega_system,
}


def example(name: str) -> OracleGraph:
    try:
        return ORACLES[name]()
    except KeyError:
        raise InputError(f"unknown example {name!r}; known: {sorted(ORACLES)}") from None


@functools.lru_cache(maxsize=None)
def example_system(name: str) -> EndConeSystem:
    """Hand-built system where one exists, otherwise the verified inferred one."""
    if name in _HAND_BUILT:
        return _HAND_BUILT[name]()
    d, s = INFERENCE_RADII.get(name, (8, 3))
    return infer_system(example(name).graph, d, s)


def describe() -> list[dict[str, Any]]:
    return [
        {"name": n, "alphabet": list(ORACLES[n]().alphabet.positive),
         "system": "hand-built" if n in _HAND_BUILT else "inferred"}
        for n in sorted(ORACLES)
    ]


# exact ball check for the antenna without materialising the ball


class _Touched(Exception):
    """The walk reached into the unknown part of a vertex."""


def _antenna_run(tail: tuple, u: Sequence[str]) -> tuple:
    """Action on (unknown non-empty prefix) + tail; the first tail syllable may continue into the prefix."""
    out = list(tail)
    for letter in u:
        gen, e = letter[0], -1 if letter.endswith("'") else 1
        if not out:
            raise _Touched
        last, s = out[-1]
        if last == gen:
            if s + e == 0:
                if len(out) == 1:
                    raise _Touched
                out.pop()
            else:
                out[-1] = (gen, s + e)
        elif last == "c":
            if gen == "b" and s > 0 or gen == "a" and s < 0:
                continue
            out.append((gen, e))
        elif gen == "c":
            out.append((gen, e))
    return tuple(out)


_FILLER = {"a": ("c", 1), "b": ("c", -1), "c": ("b", 1)}


def antenna_fixes_ball(u: Sequence[str], radius: int) -> tuple[bool, tuple | None]:
    """Does u fix every antenna vertex within radius of the root? Returns a moved vertex otherwise.

    Vertices are grown backwards from their last syllable, and only as far as the walk of u looks.
    The distance of a vertex is the sum of its syllable exponents (the graph is a tree of lines).
    """
    u = tuple(u)
    if antenna_action((), u) != ():
        return False, ()
    stack = [((g, e),) for g in "abc" for e in (1, -1)]
    while stack:
        T = stack.pop()
        w = sum(abs(e) for _, e in T)
        if T[0][0] != "a" and w <= radius and antenna_action(T, u) != T:
            return False, T
        if w + 1 > radius:
            continue
        try:
            if _antenna_run(T, u) != T:
                return False, (_FILLER[T[0][0]],) + T
        except _Touched:
            g, s = T[0]
            stack.append(((g, s + (1 if s > 0 else -1)),) + T[1:])
            if g == "a":
                stack.append((("c", 1),) + T)
            elif g == "b":
                stack.append((("c", -1),) + T)
            else:
                stack.extend(((x, e),) + T for x in "ab" for e in (1, -1))
    return True, None
