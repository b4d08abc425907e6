"""Graph file formats (DIMACS edge format, JSON) and the JSON witness schema."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .graph import Graph
from .verdict import Verdict
from . import witnesses as W

log = logging.getLogger(__name__)

FORMATS = ("dimacs", "json")


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def _text(data: bytes | str) -> str:
    return data.decode() if isinstance(data, (bytes, bytearray)) else data


def parse_dimacs(data: bytes | str) -> Graph:
    """``p edge n m`` then 1-indexed ``e u v`` lines; ``c`` lines are comments."""
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(_text(data).splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise ParseError(lineno, "second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(lineno, "expected 'p edge <n> <m>'")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError(lineno, "non-integer size") from None
            if n < 0:
                raise ParseError(lineno, "negative vertex count")
        elif parts[0] == "e":
            if n is None:
                raise ParseError(lineno, "edge before problem line")
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "non-integer vertex") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, f"vertex out of range 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at {u}")
            e = (min(u, v) - 1, max(u, v) - 1)
            if e in edges:
                log.warning("line %d: duplicate edge %d-%d ignored", lineno, u, v)
            edges.add(e)
        else:
            raise ParseError(lineno, f"unknown line type {parts[0]!r}")
    if n is None:
        raise ParseError(0, "missing problem line")
    return Graph(n, sorted(edges))


def emit_dimacs(g: Graph) -> bytes:
    lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode()


def graph_from_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [tuple(e) for e in obj.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(0, f"bad graph object: {exc}") from None
    seen = set()
    for i, e in enumerate(edges):
        if len(e) != 2:
            raise ParseError(0, f"edge {i} is not a pair")
        u, v = e
        if u == v:
            raise ParseError(0, f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(0, f"edge {i} out of range")
        key = (min(u, v), max(u, v))
        if key in seen:
            log.warning("duplicate edge %d-%d ignored", u, v)
        seen.add(key)
    return Graph(n, sorted(seen))


def graph_to_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def parse_graph(data: bytes | str, fmt: str = "dimacs") -> Graph:
    if fmt == "dimacs":
        return parse_dimacs(data)
    if fmt == "json":
        try:
            obj = json.loads(_text(data))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from None
        return graph_from_obj(obj)
    raise ValueError(f"unknown format {fmt!r}")


def emit_graph(g: Graph, fmt: str = "dimacs") -> bytes:
    if fmt == "dimacs":
        return emit_dimacs(g)
    if fmt == "json":
        return (json.dumps(graph_to_obj(g)) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def guess_format(path: str | Path) -> str:
    return "json" if str(path).endswith(".json") else "dimacs"


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    return parse_graph(Path(path).read_bytes(), fmt or guess_format(path))


# witnesses

WITNESS_TYPES = (
    "levelling",
    "kcover",
    "multicover",
    "independent-multicover",
    "tick",
    "clique-cover",
    "clique-multicover",
    "theta",
)


def _ints(xs) -> list[int]:
    return sorted(int(x) for x in xs)


def _covers(d: dict) -> dict[int, W.Levelling]:
    return {int(i): W.Levelling(levels) for i, levels in d.items()}


def _clique_covers(d: dict) -> dict[int, W.CliqueCover]:
    return {int(i): W.CliqueCover(c["X"], c["N"], c["W"]) for i, c in d.items()}


def load_witness(doc: dict, base: Path | None = None) -> tuple[str, Graph, dict, dict]:
    """``(type, graph, sets, params)``; ``graph`` may be inline or a path relative to ``base``."""
    wtype = doc.get("type")
    if wtype not in WITNESS_TYPES:
        raise ParseError(0, f"unknown witness type {wtype!r}")
    ref = doc.get("graph")
    if isinstance(ref, dict):
        g = graph_from_obj(ref)
    elif isinstance(ref, str):
        p = Path(ref)
        g = read_graph(p if p.is_absolute() or base is None else base / p)
    else:
        raise ParseError(0, "witness needs a graph object or path")
    return wtype, g, doc.get("sets", {}), doc.get("params", {})


def check_witness(doc: dict, base: Path | None = None) -> Verdict:
    wtype, g, s, p = load_witness(doc, base)
    if wtype == "levelling":
        return W.check_levelling(g, W.Levelling(s["levels"]))
    if wtype == "kcover":
        return W.check_kcover(g, W.Levelling(s["levels"]), s["C"])
    if wtype == "multicover":
        return W.check_multicover(g, _covers(s["covers"]), s["C"])
    if wtype == "independent-multicover":
        return W.check_independent_multicover(g, _covers(s["covers"]), s["C"])
    if wtype == "tick":
        paths = {int(i): list(q) for i, q in s["paths"].items()}
        return W.check_tick(g, _covers(s["covers"]), s["C"], int(p["head"]), paths)
    if wtype == "clique-cover":
        return W.check_clique_cover(g, W.CliqueCover(s["X"], s["N"], s["W"]), s["C"], int(p["xi"]))
    if wtype == "clique-multicover":
        return W.check_clique_multicover(g, _clique_covers(s["covers"]), s["C"], int(p["xi"]))
    from .extraction import ThetaCertificate, verify_theta

    cert = ThetaCertificate(int(s["u"]), int(s["v"]), tuple(tuple(q) for q in s["paths"]), int(p["ell"]))
    return verify_theta(cert, g, int(p["n"]), int(p["ell"]))


def witness_doc(wtype: str, g: Graph | str, sets: dict, params: dict | None = None) -> dict:
    """Canonical witness document: sets sorted, cover indices as strings."""
    if wtype not in WITNESS_TYPES:
        raise ValueError(f"unknown witness type {wtype!r}")

    def canon(v):
        if isinstance(v, W.Levelling):
            return [_ints(L) for L in v.levels]
        if isinstance(v, W.CliqueCover):
            return {"X": _ints(v.X), "N": _ints(v.N), "W": _ints(v.W)}
        if isinstance(v, dict):
            return {str(k): canon(x) for k, x in sorted(v.items(), key=lambda kv: int(kv[0]))}
        if isinstance(v, (set, frozenset)):
            return _ints(v)
        if isinstance(v, (list, tuple)):
            return [canon(x) for x in v]
        return v

    ref = g if isinstance(g, str) else graph_to_obj(g)
    return {"type": wtype, "graph": ref, "sets": {k: canon(v) for k, v in sets.items()}, "params": dict(params or {})}
