"""Inverse (real-time, reversible) pushdown automata and their configuration graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

from .core import Alphabet, InputError, LazyInverseGraph

BOTTOM = "⊥"


class Configuration(NamedTuple):
    state: str
    stack: tuple[str, ...]

    def __str__(self) -> str:
        return f"({self.state},{''.join(self.stack)})"


Rule = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class InversePDA:
    """transitions[(q, a, x)] = (p, gamma): in state q reading a with top x, go to p replacing x by gamma.

    Positive letters form the forward function, inverse letters the backward one.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    stack_alphabet: tuple[str, ...]
    transitions: Mapping[tuple[str, str, str], Rule]
    initial: str
    bottom: str = BOTTOM
    final: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.final:
            object.__setattr__(self, "final", frozenset([self.initial]))
        problems = structural_problems(self)
        if problems:
            raise InputError(problems[0])

    @property
    def start(self) -> Configuration:
        return Configuration(self.initial, (self.bottom,))

    def forward(self) -> dict[tuple[str, str, str], Rule]:
        return {k: v for k, v in self.transitions.items() if self.alphabet.is_positive(k[1])}

    def backward(self) -> dict[tuple[str, str, str], Rule]:
        return {k: v for k, v in self.transitions.items() if not self.alphabet.is_positive(k[1])}

    def to_json(self) -> dict[str, Any]:
        def rows(d: Mapping) -> list:
            return [[q, a, x, p, list(g)] for (q, a, x), (p, g) in d.items()]

        return {
            "states": list(self.states),
            "generators": list(self.alphabet.positive),
            "stack": list(self.stack_alphabet),
            "bottom": self.bottom,
            "initial": self.initial,
            "final": sorted(self.final),
            "delta_plus": rows(self.forward()),
            "delta_minus": rows(self.backward()),
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "InversePDA":
        try:
            alph = Alphabet.from_generators(doc["generators"])
            table: dict[tuple[str, str, str], Rule] = {}
            for key in ("delta_plus", "delta_minus"):
                for row in doc.get(key, []):
                    q, a, x, p, g = row
                    if a is None or a == "":
                        raise InputError(f"real-time violation: empty-input move from {q!r}")
                    if a not in alph:
                        raise InputError(f"unknown letter {a!r} in {key}")
                    if alph.is_positive(a) != (key == "delta_plus"):
                        raise InputError(f"letter {a!r} listed under the wrong function {key}")
                    if (q, a, x) in table:
                        raise InputError(f"non-deterministic transitions on {(q, a, x)!r}")
                    table[(q, a, x)] = (p, tuple(g))
            return cls(
                tuple(doc["states"]), alph, tuple(doc["stack"]), table, doc["initial"],
                doc.get("bottom", BOTTOM), frozenset(doc.get("final", [])),
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"malformed PDA spec: {e}") from e

    @classmethod
    def loads(cls, text: str) -> "InversePDA":
        return cls.from_json(json.loads(text))


def structural_problems(M: InversePDA) -> list[str]:
    out = []
    states, stack = set(M.states), set(M.stack_alphabet)
    if M.initial not in states:
        out.append(f"initial state {M.initial!r} unknown")
    if M.bottom not in stack:
        out.append(f"bottom symbol {M.bottom!r} not in the stack alphabet")
    for (q, a, x), (p, g) in M.transitions.items():
        where = f"transition ({q}, {a}, {x})"
        if a is None or a == "":
            out.append(f"real-time violation: {where} reads no input")
            continue
        if a not in M.alphabet:
            out.append(f"{where}: unknown letter")
        if q not in states or p not in states:
            out.append(f"{where}: unknown state")
        if x not in stack or any(y not in stack for y in g):
            out.append(f"{where}: unknown stack symbol")
        if x == M.bottom and (not g or g[0] != M.bottom or M.bottom in g[1:]):
            out.append(f"{where}: the bottom symbol must stay at the bottom exactly once")
        if x != M.bottom and M.bottom in g:
            out.append(f"{where}: pushes the bottom symbol")
    return out


def step(M: InversePDA, c: Configuration, a: str) -> Configuration | None:
    """(q, xi x) -a-> (p, xi gamma); None when undefined."""
    if not c.stack:
        return None
    rule = M.transitions.get((c.state, a, c.stack[-1]))
    if rule is None:
        return None
    p, g = rule
    stack = c.stack[:-1] + g
    if not stack:
        return None
    return Configuration(p, stack)


def simulate(M: InversePDA, w: Iterable[str], c: Configuration | None = None) -> Configuration | None:
    c = M.start if c is None else c
    for a in w:
        c = step(M, c, a)
        if c is None:
            return None
    return c


def pda_accepts(M: InversePDA, w: Iterable[str]) -> bool:
    """Acceptance by final state with the stack back at the bottom."""
    c = simulate(M, w)
    return c is not None and c.state in M.final and c.stack == (M.bottom,)


@dataclass(frozen=True)
class Reversibility:
    ok: bool
    explored: int
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "explored": self.explored, "witness": self.witness}


def validate_reversibility(M: InversePDA, depth: int) -> Reversibility:
    """c -a-> c2 iff c2 -a'-> c, over configurations reachable within depth steps."""
    problems = structural_problems(M)
    if problems:
        return Reversibility(False, 0, {"reason": problems[0]})
    dist = {M.start: 0}
    queue = deque([M.start])
    while queue:
        c = queue.popleft()
        for a in M.alphabet.letters:
            c2 = step(M, c, a)
            if c2 is None:
                continue
            back = step(M, c2, M.alphabet.inv(a))
            if back != c:
                return Reversibility(False, len(dist), {
                    "from": str(c), "letter": a, "to": str(c2),
                    "back": None if back is None else str(back),
                })
            if c2 not in dist and dist[c] < depth:
                dist[c2] = dist[c] + 1
                queue.append(c2)
    return Reversibility(True, len(dist))


def config_graph(M: InversePDA) -> LazyInverseGraph:
    def nb(v: Configuration, a: str) -> Configuration | None:
        if a not in M.alphabet:
            return None
        return step(M, Configuration(*v), a)

    return LazyInverseGraph(M.alphabet, M.start, nb, False, "pda")


# example machines


def signed_counter_pda(letter: str = "a") -> InversePDA:
    """Counts the exponent sum of a; X marks the first symbol above the bottom so its pop returns to q0."""
    A = Alphabet.from_generators([letter])
    a, ai = A.letters
    t: dict[tuple[str, str, str], Rule] = {}
    for sgn, up, down in (("+", a, ai), ("-", ai, a)):
        q = "q" + sgn
        t[("q0", up, BOTTOM)] = (q, (BOTTOM, "X"))
        t[(q, up, "X")] = (q, ("X", "Y"))
        t[(q, up, "Y")] = (q, ("Y", "Y"))
        t[(q, down, "Y")] = (q, ())
        t[(q, down, "X")] = ("q0", ())
    return InversePDA(("q0", "q+", "q-"), A, (BOTTOM, "X", "Y"), t, "q0")


def tree_pda(gens: Sequence[str] = ("a", "b")) -> InversePDA:
    """Stack holds the reduced word; configuration graph is the free-group Cayley tree."""
    A = Alphabet.from_generators(gens)
    syms = tuple(A.letters)
    t: dict[tuple[str, str, str], Rule] = {}
    for a in A.letters:
        for x in (BOTTOM,) + syms:
            if x == A.inv(a):
                t[("q", a, x)] = ("q", ())
            else:
                t[("q", a, x)] = ("q", (x, a))
    return InversePDA(("q",), A, (BOTTOM,) + syms, t, "q")


def finite_state_pda(n: int = 5, letter: str = "a") -> InversePDA:
    """An n-cycle of states that never touches the stack."""
    A = Alphabet.from_generators([letter])
    a, ai = A.letters
    states = tuple(f"s{i}" for i in range(n))
    t: dict[tuple[str, str, str], Rule] = {}
    for i in range(n):
        t[(states[i], a, BOTTOM)] = (states[(i + 1) % n], (BOTTOM,))
        t[(states[i], ai, BOTTOM)] = (states[(i - 1) % n], (BOTTOM,))
    return InversePDA(states, A, (BOTTOM,), t, "s0")


def without(M: InversePDA, key: tuple[str, str, str]) -> InversePDA:
    """Copy of M with one transition removed, for fault injection."""
    return InversePDA(M.states, M.alphabet, M.stack_alphabet,
                      {k: v for k, v in M.transitions.items() if k != key}, M.initial, M.bottom, M.final)
