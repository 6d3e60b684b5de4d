"""Asynchronous transducers realising the letter actions of an end-cone system on cone-letter words."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

from .cone_system import (
    ROOT_LETTER,
    ConeLetter,
    EndConeSystem,
    VertexAddress,
    act_address,
    cone_alphabet,
    cone_of,
    encode_vertex,
    enumerate_addresses,
    neighbor_address,
)
from .core import Word, key_to_json


class TState(NamedTuple):
    """Init(a), Buffered(X, a) holding the last unread non-final letter X, or the sink E."""

    kind: str
    letter: str | None = None
    held: ConeLetter | None = None

    def __str__(self) -> str:
        if self.kind == "E":
            return "E"
        if self.kind == "init":
            return f"init[{self.letter}]"
        return f"{self.held}[{self.letter}]"


SINK = TState("E")
LetterWord = tuple[ConeLetter, ...]


@dataclass(frozen=True)
class Transducer:
    """States, cone alphabet and a total table (state, letter) -> (next state, output)."""

    system: EndConeSystem
    states: tuple[TState, ...]
    alphabet: tuple[ConeLetter, ...]
    table: Mapping[tuple[TState, ConeLetter], tuple[TState, LetterWord]]

    def initial(self, a: str) -> TState:
        return TState("init", a)

    def step(self, q: TState, lam: ConeLetter) -> tuple[TState, LetterWord]:
        return self.table[(q, lam)]

    def is_total(self) -> bool:
        return all((q, lam) in self.table for q in self.states for lam in self.alphabet)

    def max_output(self) -> int:
        return max(len(o) for _, o in self.table.values())

    def to_json(self) -> dict[str, Any]:
        return {
            "states": [str(q) for q in self.states],
            "alphabet": [lam.to_json() for lam in self.alphabet],
            "transitions": [
                {"from": str(q), "input": lam.to_json(), "to": str(q2), "output": [x.to_json() for x in out]}
                for (q, lam), (q2, out) in self.table.items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_dot(self, name: str = "T") -> str:
        lines = [f"digraph {name} {{"]
        ids = {q: i for i, q in enumerate(self.states)}
        for q, i in ids.items():
            shape = "doublecircle" if q.kind == "init" else "circle"
            lines.append(f'  s{i} [label="{q}", shape={shape}];')
        for (q, lam), (q2, out) in self.table.items():
            label = f"{lam} | {''.join(map(str, out)) or '1'}"
            lines.append(f'  s{ids[q]} -> s{ids[q2]} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


def nominal_state_count(sys: EndConeSystem) -> int:
    """|A| (1 + number of second-level cones) + 1: one state per (cone, letter) plus the sink."""
    slots = sum(len(t.children) for t in sys.types)
    return len(sys.alphabet) * (slots + 1) + 1


def state_count(sys: EndConeSystem) -> int:
    """nominal_state_count plus one fresh initial state per letter."""
    return nominal_state_count(sys) + len(sys.alphabet)


def _buffered_step(sys: EndConeSystem, X: ConeLetter, a: str, lam: ConeLetter) -> tuple[TState, LetterWord]:
    h = cone_of(sys, X)
    kids = sys.types[h].children
    if lam.parent != h or not 0 <= lam.slot < len(kids):
        return SINK, (X, lam)
    if not lam.final:
        return TState("buf", a, lam), (X,)
    c = kids[lam.slot]
    move = sys._out[c].get((lam.vertex, a))
    if move is None:
        u = sys._up[(h, lam.slot)][(lam.vertex, a)]
        return SINK, (X._replace(vertex=u),)
    if move[0] == "stay":
        return SINK, (X, lam._replace(vertex=move[1]))
    return SINK, (X, lam._replace(vertex=None), ConeLetter(c, move[1], move[2]))


def _init_step(sys: EndConeSystem, a: str, lam: ConeLetter) -> tuple[TState, LetterWord]:
    if lam == ROOT_LETTER:
        return TState("buf", a, ROOT_LETTER), ()
    if lam.parent < 0 and lam.vertex == sys.root_vertex:
        z = neighbor_address(sys, sys.root, a)
        return SINK, encode_vertex(sys, z)
    return SINK, (lam,)


def build_transducer(sys: EndConeSystem) -> Transducer:
    alph = tuple(cone_alphabet(sys))
    held = [lam for lam in alph if not lam.final]
    states = [TState("init", a) for a in sys.alphabet.letters]
    states += [TState("buf", a, X) for a in sys.alphabet.letters for X in held]
    states.append(SINK)
    table: dict[tuple[TState, ConeLetter], tuple[TState, LetterWord]] = {}
    for q in states:
        for lam in alph:
            if q.kind == "E":
                table[(q, lam)] = (SINK, (lam,))
            elif q.kind == "init":
                table[(q, lam)] = _init_step(sys, q.letter, lam)
            else:
                table[(q, lam)] = _buffered_step(sys, q.held, q.letter, lam)
    return Transducer(sys, tuple(states), alph, table)


def build_transducers(systems: Iterable[EndConeSystem]) -> list[Transducer]:
    return [build_transducer(s) for s in systems]


def run(T: Transducer, a: str | TState, word: Iterable[ConeLetter]) -> tuple[LetterWord, TState]:
    """Output produced on a finite prefix and the state reached; held letters are not flushed."""
    q = a if isinstance(a, TState) else T.initial(a)
    out: list[ConeLetter] = []
    for lam in word:
        q, o = T.table[(q, lam)]
        out.extend(o)
    return tuple(out), q


def word_action(T: Transducer, g: Sequence[str], word: Sequence[ConeLetter]) -> LetterWord:
    """Apply gamma_(a_1), then gamma_(a_2), ..., matching x . a_1 a_2 ... a_p."""
    cur = tuple(word)
    for a in g:
        cur, _ = run(T, a, cur)
    return cur


# checks


@dataclass(frozen=True)
class Report:
    ok: bool
    checked: int
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "checked": self.checked, "witness": self.witness}


def ball_addresses(sys: EndConeSystem, radius: int) -> list[VertexAddress]:
    """Addresses at graph distance <= radius; cone depth equals distance from the root."""
    return enumerate_addresses(sys, radius)


def _fmt(w: Sequence[ConeLetter]) -> str:
    return "".join(map(str, w))


def check_equivariance(sys: EndConeSystem, T: Transducer, radius: int, trials: int = 2,
                       seed: int = 0) -> Report:
    """run(T, a, encode(x) eta) == encode(x . a) eta for every ball vertex, letter and random tail."""
    rng = random.Random(seed)
    n = 0
    for x in ball_addresses(sys, radius):
        wx = encode_vertex(sys, x)
        for a in sys.alphabet.letters:
            want = encode_vertex(sys, neighbor_address(sys, x, a))
            for _ in range(trials):
                eta = tuple(rng.choice(T.alphabet) for _ in range(rng.randint(0, 4)))
                got, _ = run(T, a, wx + eta)
                n += 1
                if got != want + eta:
                    return Report(False, n, {
                        "vertex": key_to_json(tuple(x)), "letter": a, "tail": _fmt(eta),
                        "expected": _fmt(want + eta), "got": _fmt(got),
                    })
    return Report(True, n)


def random_cone_word(sys: EndConeSystem, T: Transducer, rng: random.Random, length: int,
                     well_formed: bool) -> LetterWord:
    """A well-formed word plus random tail, or a random word that is not well-formed."""
    if well_formed:
        x = rng.choice(ball_addresses(sys, max(length // 2, 0)))
        w = encode_vertex(sys, x)
        return w + tuple(rng.choice(T.alphabet) for _ in range(max(length - len(w), 0)))
    while True:
        w = tuple(rng.choice(T.alphabet) for _ in range(max(length, 1)))
        if not _has_well_formed_prefix(sys, w):
            return w


def _has_well_formed_prefix(sys: EndConeSystem, w: Sequence[ConeLetter]) -> bool:
    if not w or w[0].parent >= 0:
        return False
    if w[0].final:
        return True
    t = 0
    for lam in w[1:]:
        if lam.parent != t:
            return False
        if lam.final:
            return True
        t = cone_of(sys, lam)
    return False


def check_inverse_law(T: Transducer, words: Iterable[Sequence[ConeLetter]], lag: int = 2) -> Report:
    """gamma_(a') after gamma_a returns a prefix of the input, at most lag letters short."""
    alph = T.system.alphabet
    n = 0
    for xi in words:
        xi = tuple(xi)
        for a in alph.letters:
            out = word_action(T, (a, alph.inv(a)), xi)
            n += 1
            if out != xi[: len(out)] or len(xi) - len(out) > lag:
                return Report(False, n, {"word": _fmt(xi), "letter": a, "got": _fmt(out)})
    return Report(True, n)


def type_depth(sys: EndConeSystem) -> int:
    """Smallest cone depth at which every reachable type has appeared."""
    seen, frontier, depth = {0}, [0], 0
    while True:
        nxt = [h for t in frontier for h in sys.types[t].children if h not in seen]
        if not nxt:
            return depth
        seen.update(nxt)
        frontier = nxt
        depth += 1


def fixes_ball(sys: EndConeSystem, T: Transducer, g: Word, radius: int | None = None) -> Report:
    """Does the composed transformation of g fix every encoded vertex within radius?"""
    r = len(g) + 2 + type_depth(sys) if radius is None else radius
    n = 0
    for x in ball_addresses(sys, r):
        w = encode_vertex(sys, x)
        n += 1
        got = word_action(T, g, w)
        if got != w:
            return Report(False, n, {"vertex": key_to_json(tuple(x)), "image": _fmt(got)})
    return Report(True, n)


def check_lipschitz(sys: EndConeSystem, g: Sequence[str], radius: int, T: Transducer | None = None) -> int:
    """Max | |encode(x g)| - |encode(x)| | over the ball, computed through the transducer."""
    T = T or build_transducer(sys)
    best = 0
    for x in ball_addresses(sys, radius):
        w = encode_vertex(sys, x)
        out = word_action(T, g, w)
        assert out == encode_vertex(sys, act_address(sys, x, g))
        best = max(best, abs(len(out) - len(w)))
    return best
