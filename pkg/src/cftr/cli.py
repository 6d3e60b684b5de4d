"""Command-line front end: JSON on stdout, a one-line summary on stderr."""

from __future__ import annotations

import json
import os
import sys
from typing import Any, NoReturn

import click

from .cone_system import (
    ConeLetter,
    EndConeSystem,
    NotStabilized,
    as_lazy_graph,
    infer_system,
    validate,
    verify_presentation,
)
from .core import (
    Alphabet,
    FiniteGraph,
    InputError,
    LazyInverseGraph,
    expand_ball,
    key_from_json,
    key_to_json,
    walk,
)
from .examples import (
    ORACLES,
    cycle,
    cycle_system,
    describe,
    example,
    example_system,
    line,
    line_system,
)
from .group import Ensemble, Finite, InfiniteCertified, is_identity, order
from .pda import InversePDA, config_graph
from .product import Gluing, disjoint_union, free_product

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_UNKNOWN, EXIT_VERIFY = 0, 1, 2, 3, 4


def _emit(doc: Any, summary: str, code: int = EXIT_OK) -> NoReturn:
    click.echo(json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False))
    click.echo(summary, err=True)
    sys.exit(code)


def _fail(msg: str, code: int = EXIT_INPUT) -> NoReturn:
    click.echo(json.dumps({"error": msg}, ensure_ascii=False))
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


# graph specs


def load_spec(arg: str) -> dict[str, Any]:
    """A bare example name, '-' for stdin, a JSON file path, or inline JSON."""
    if arg in ORACLES:
        return {"kind": "example", "name": arg}
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    else:
        raise InputError(f"{arg!r} is neither an example name, a file nor JSON")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError("spec must be a JSON object with a 'kind' field")
    return doc


def _sub(doc: Any) -> dict[str, Any]:
    if isinstance(doc, str):
        return load_spec(doc)
    if isinstance(doc, dict) and "kind" in doc:
        return doc
    raise InputError(f"bad nested spec {doc!r}")


def spec_graph(doc: dict[str, Any]) -> LazyInverseGraph:
    kind = doc.get("kind")
    try:
        if kind == "example":
            return example(doc["name"]).graph
        if kind == "line":
            return line(doc.get("letter", "a")).graph
        if kind == "cycle":
            return cycle(doc.get("letter", "a"), int(doc.get("n", 5))).graph
        if kind == "finite":
            alph = Alphabet.from_generators(doc["generators"])
            edges = [(key_from_json(u), a, key_from_json(v)) for u, a, v in doc["edges"]]
            fg = FiniteGraph.from_edges(alph, edges, key_from_json(doc["root"]))
            return fg.as_lazy(doc.get("name", "finite"))
        if kind == "free_product":
            t1 = [spec_graph(_sub(x)) for x in doc["theta1"]]
            t2 = [spec_graph(_sub(x)) for x in doc["theta2"]]
            g1 = [Gluing.from_json(x) for x in doc.get("glue1", [0] * len(t1))]
            g2 = [Gluing.from_json(x) for x in doc.get("glue2", [0] * len(t2))]
            return free_product(t1, t2, g1, g2, doc.get("name", "free-product"))
        if kind == "pda":
            return config_graph(InversePDA.from_json(doc["pda"]))
        if kind == "system":
            return as_lazy_graph(spec_system(doc))
        if kind == "union":
            raise InputError("a union is an ensemble, not a single rooted graph")
    except KeyError as e:
        raise InputError(f"spec of kind {kind!r} lacks field {e}") from None
    raise InputError(f"unknown spec kind {kind!r}")


def spec_system(doc: dict[str, Any]) -> EndConeSystem:
    payload = doc.get("system", doc)
    if isinstance(payload, str):
        with open(payload, encoding="utf-8") as fh:
            payload = json.load(fh)
    try:
        sys_ = EndConeSystem.from_json(payload)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"malformed system: {e}") from e
    rep = validate(sys_)
    if not rep:
        raise InputError(f"invalid system: {rep.problems[0]}")
    return sys_


def spec_ensemble(doc: dict[str, Any], d: int, s: int) -> Ensemble:
    """Systems for a spec; graphs without a stored system are inferred."""
    kind = doc.get("kind")
    if kind == "system":
        return Ensemble([spec_system(doc)])
    if kind == "example":
        return Ensemble([example_system(doc["name"])])
    if kind == "line":
        return Ensemble([line_system(doc.get("letter", "a"))])
    if kind == "cycle":
        return Ensemble([cycle_system(doc.get("letter", "a"), int(doc.get("n", 5)))])
    if kind == "union":
        items = []
        for x in doc["items"]:
            items.extend(spec_ensemble(_sub(x), d, s).systems)
        return disjoint_union(items, pad=bool(doc.get("pad", False)))
    return Ensemble([infer_system(spec_graph(doc), d, s)])


def _guard(fn):
    """Map library errors onto exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NotStabilized as e:
            _fail(f"inference did not stabilize: {e}", EXIT_UNKNOWN)
        except InputError as e:
            _fail(str(e), EXIT_INPUT)
        except (OSError, ValueError) as e:
            _fail(str(e), EXIT_INPUT)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


infer_opts = [
    click.option("--d", "d", default=8, show_default=True, help="Inference exploration radius."),
    click.option("--s", "s", default=3, show_default=True, help="Inference stabilization depth."),
]


def _with_infer(fn):
    for opt in reversed(infer_opts):
        fn = opt(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option("0.1.0", prog_name="cftr")
def main() -> None:
    """Transition groups of context-free inverse graphs."""


@main.command()
@click.argument("spec")
@click.option("--center", default=None, help="Vertex key as JSON (default: root).")
@click.option("--radius", "-r", default=2, show_default=True, type=click.IntRange(0))
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot", show_default=True)
@_guard
def expand(spec: str, center: str | None, radius: int, fmt: str) -> None:
    """Expand the ball of a graph."""
    g = spec_graph(load_spec(spec))
    c = g.root if center is None else key_from_json(json.loads(center))
    ball = expand_ball(g, c, radius)
    if fmt == "dot":
        click.echo(ball.to_dot())
    else:
        click.echo(json.dumps(ball.to_json(), indent=2, ensure_ascii=False))
    click.echo(f"{len(ball)} vertices, {len(ball.edges)} edges within radius {radius}", err=True)


@main.command()
@click.argument("spec")
@click.argument("word")
@_with_infer
@_guard
def wp(spec: str, word: str, d: int, s: int) -> None:
    """Decide whether WORD is the identity."""
    ens = spec_ensemble(load_spec(spec), d, s)
    w = ens.word(word)
    res = is_identity(ens, w)
    _emit({"word": ens.alphabet.format(w), "identity": res.identity, "witness": res.witness},
          "identity" if res else "not the identity", EXIT_OK if res else EXIT_NO)


@main.command("order")
@click.argument("spec")
@click.argument("word")
@click.option("--max", "max_exp", default=256, show_default=True, type=click.IntRange(1))
@_with_infer
@_guard
def order_cmd(spec: str, word: str, max_exp: int, d: int, s: int) -> None:
    """Order of WORD: finite, certified infinite or unknown."""
    ens = spec_ensemble(load_spec(spec), d, s)
    res = order(ens, ens.word(word), max_exp)
    doc = res.to_json()
    if isinstance(res, Finite):
        _emit(doc, f"finite, order {res.n}", EXIT_OK)
    if isinstance(res, InfiniteCertified):
        _emit(doc, "infinite (certified)", EXIT_NO)
    _emit(doc, f"unknown after {res.searched} powers", EXIT_UNKNOWN)


@main.command()
@click.argument("spec")
@click.argument("vertex")
@click.argument("word")
@_guard
def act(spec: str, vertex: str, word: str) -> None:
    """Image of VERTEX (JSON key or 'root') under WORD."""
    g = spec_graph(load_spec(spec))
    v = g.root if vertex == "root" else key_from_json(json.loads(vertex))
    w = g.alphabet.parse(word)
    end = walk(g, v, w)
    if end is None:
        _emit({"vertex": key_to_json(v), "word": g.alphabet.format(w), "image": None},
              "walk leaves the graph", EXIT_NO)
    _emit({"vertex": key_to_json(v), "word": g.alphabet.format(w), "image": key_to_json(end)},
          f"image {json.dumps(key_to_json(end), ensure_ascii=False)}")


@main.command()
@click.argument("spec")
@click.option("--build", "mode", flag_value="build", default=True, help="Print the transition table.")
@click.option("--run", "run_args", nargs=2, default=None, metavar="LETTER WORD",
              help="Run the state for LETTER on a JSON list of cone letters [parent, slot, vertex].")
@click.option("--dot", is_flag=True, help="Emit DOT instead of JSON with --build.")
@_with_infer
@_guard
def transducer(spec: str, mode: str, run_args: tuple[str, str] | None, dot: bool, d: int, s: int) -> None:
    """Build or run the transducer of a system."""
    from .transducer import build_transducer, nominal_state_count, run

    ens = spec_ensemble(load_spec(spec), d, s)
    if len(ens) != 1:
        raise InputError("transducers are built one system at a time")
    sys_ = ens.systems[0]
    T = build_transducer(sys_)
    if run_args is not None:
        letter, raw = run_args
        sys_.alphabet.check([letter])
        word = [ConeLetter(int(p), int(j), v) for p, j, v in json.loads(raw)]
        known = set(T.alphabet)
        for lam in word:
            if lam not in known:
                raise InputError(f"{lam} is not a cone letter of this system")
        out, q = run(T, letter, word)
        _emit({"output": [x.to_json() for x in out], "state": str(q)}, f"{len(word)} letters in, {len(out)} out")
    if dot:
        click.echo(T.to_dot())
        click.echo(f"{len(T.states)} states, {len(T.table)} transitions", err=True)
        return
    doc = T.to_json()
    doc["counts"] = {"states": len(T.states), "transitions": len(T.table),
                     "letters": len(T.alphabet), "nominal_states": nominal_state_count(sys_)}
    _emit(doc, f"{len(T.states)} states, {len(T.table)} transitions")


@main.command()
@click.argument("spec")
@_with_infer
@click.option("--margin", default=1, show_default=True)
@_guard
def infer(spec: str, d: int, s: int, margin: int) -> None:
    """Infer an end-cone system from a graph."""
    g = spec_graph(load_spec(spec))
    sys_ = infer_system(g, d, s, margin)
    _emit({"kind": "system", "system": sys_.to_json()}, f"{len(sys_.types)} cone types")


@main.command()
@click.argument("system")
@click.argument("spec")
@click.option("--r", "r", default=8, show_default=True, type=click.IntRange(0))
@_guard
def verify(system: str, spec: str, r: int) -> None:
    """Check that SYSTEM presents the graph of SPEC on the radius-r ball."""
    sdoc = load_spec(system)
    if sdoc.get("kind") == "system":
        sys_ = spec_system(sdoc)
    else:
        sys_ = spec_ensemble(sdoc, 8, 3).systems[0]
    res = verify_presentation(sys_, spec_graph(load_spec(spec)), r)
    _emit(res.to_json(), "presentation verified" if res else "presentation FAILED",
          EXIT_OK if res else EXIT_VERIFY)


@main.command()
@click.argument("productspec")
@click.option("--radius", "-r", default=2, show_default=True, type=click.IntRange(0))
@click.option("--infer/--no-infer", "do_infer", default=False, help="Also infer its end-cone system.")
@_with_infer
@_guard
def freeproduct(productspec: str, radius: int, do_infer: bool, d: int, s: int) -> None:
    """Build a free product from a spec of kind free_product."""
    doc = load_spec(productspec)
    if doc.get("kind") != "free_product":
        raise InputError("spec kind must be free_product")
    g = spec_graph(doc)
    out: dict[str, Any] = {"ball": expand_ball(g, g.root, radius).to_json()}
    if do_infer:
        out["system"] = infer_system(g, d, s).to_json()
    _emit(out, f"{len(out['ball']['vertices'])} vertices within radius {radius}")


@main.group()
def examples() -> None:
    """Built-in example graphs."""


@examples.command("list")
def examples_list() -> None:
    """List example names."""
    items = describe()
    _emit(items, f"{len(items)} examples")


@examples.command("show")
@click.argument("name")
@_guard
def examples_show(name: str) -> None:
    """Print the end-cone system of an example."""
    sys_ = example_system(name)
    _emit({"kind": "system", "name": name, "system": sys_.to_json()}, f"{len(sys_.types)} cone types")


@main.command()
@click.option("--only", type=click.IntRange(1, 10), multiple=True, help="Run selected criteria.")
def acceptance(only: tuple[int, ...]) -> None:
    """Run the acceptance criteria."""
    from .acceptance import CRITERIA, run_criterion

    numbers = list(only) or [n for n, *_ in CRITERIA]
    results = [run_criterion(n) for n in numbers]
    for r in results:
        click.echo(r.line(), err=True)
    ok = all(r.passed for r in results)
    _emit([r.to_json() for r in results], "all criteria pass" if ok else "some criteria FAIL",
          EXIT_OK if ok else EXIT_VERIFY)


if __name__ == "__main__":
    main()
