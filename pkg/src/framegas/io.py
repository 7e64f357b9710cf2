"""Text formats: facet files, edge lists, DOT, configuration JSON, orbit logs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

import networkx as nx

from .bundle import Bundle
from .complex import ComplexError, SimplicialComplex, closure_of, whitney
from .dynamics import Configuration


def _rows(text: str, source: str = "<text>") -> list[list[int]]:
    rows = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = [int(tok) for tok in line.split()]
        except ValueError:
            raise ComplexError(f"{source}:{n}: expected integers, got {line!r}") from None
        if any(v < 0 for v in vals):
            raise ComplexError(f"{source}:{n}: negative vertex label")
        rows.append(vals)
    return rows


def parse_facets(text: str, source: str = "<text>") -> SimplicialComplex:
    return closure_of(_rows(text, source))


def parse_edges_text(text: str, source: str = "<text>") -> list[tuple[int, int]]:
    rows = _rows(text, source)
    for r in rows:
        if len(r) != 2:
            raise ComplexError(f"{source}: edge lines need exactly two integers, got {r}")
    return [tuple(r) for r in rows]


def read_facets(path: str | Path) -> SimplicialComplex:
    return parse_facets(Path(path).read_text(encoding="utf-8"), str(path))


def read_whitney(path: str | Path) -> SimplicialComplex:
    return whitney(parse_edges_text(Path(path).read_text(encoding="utf-8"), str(path)))


def format_facets(c: SimplicialComplex) -> str:
    return "".join(" ".join(map(str, f)) + "\n" for f in c.maximal)


def write_facets(c: SimplicialComplex, path: str | Path) -> None:
    Path(path).write_text(format_facets(c), encoding="utf-8")


def to_dot(g: nx.Graph, name: str = "dual") -> str:
    """DOT text for a graph whose nodes are sorted vertex tuples."""
    label = {v: " ".join(map(str, v)) for v in g.nodes}
    ident = {v: "f" + "_".join(map(str, v)) for v in g.nodes}
    lines = [f"graph {name} {{"]
    for v in sorted(g.nodes):
        lines.append(f'  {ident[v]} [label="{label[v]}"];')
    for a, b in sorted(tuple(sorted(e)) for e in g.edges):
        lines.append(f"  {ident[a]} -- {ident[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_configuration(path: str | Path) -> Configuration:
    return Configuration.from_json(Path(path).read_text(encoding="utf-8"))


def write_configuration(cfg: Configuration, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), sort_keys=True) + "\n", encoding="utf-8")


def orbit_lines(states: Iterable[Configuration]) -> Iterable[str]:
    for t, s in enumerate(states):
        yield json.dumps({"t": t, "state": s.to_dict()}, sort_keys=True, separators=(",", ":")) + "\n"


def read_orbit_log(path: str | Path) -> list[Configuration]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            rec = json.loads(line)
            if rec["t"] != len(out):
                raise ValueError(f"orbit log out of order at t={rec['t']}")
            out.append(Configuration.from_dict(rec["state"]))
    return out


def occupancy_csv(bundle: Bundle, states: Iterable[Configuration]) -> str:
    """Rows: time; columns: net particle count (positives minus negatives) per facet."""
    fi = bundle.facet_index
    head = "t," + ",".join("-".join(map(str, f)) for f in bundle.facets)
    lines = [head]
    for t, s in enumerate(states):
        row = [0] * len(fi)
        for p in s.positives:
            row[fi[tuple(sorted(p))]] += 1
        for p in s.negatives:
            row[fi[tuple(sorted(p))]] -= 1
        lines.append(f"{t}," + ",".join(map(str, row)))
    return "\n".join(lines) + "\n"
