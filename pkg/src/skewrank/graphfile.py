"""Plain-text oriented graph files.

::

    # comment
    4
    0 1
    2 1

The first data line is the vertex count; every further data line ``u v`` is
an arc from ``u`` to ``v``.  Blank lines and lines starting with ``#`` are
ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .graph import Graph, OrientedGraph


class GraphFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


def parse(text: str) -> OrientedGraph:
    n = None
    arcs = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise GraphFileError("expected a single vertex count", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise GraphFileError(f"bad vertex count {parts[0]!r}", lineno) from None
            if n < 0:
                raise GraphFileError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise GraphFileError("expected two vertex ids", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFileError(f"bad vertex id in {line!r}", lineno) from None
        if u == v:
            raise GraphFileError("self-loop", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFileError(f"vertex id out of range 0..{n - 1}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFileError(f"duplicate pair {key[0]} {key[1]} (first at line {seen[key]})", lineno)
        seen[key] = lineno
        arcs.append((u, v))
    if n is None:
        raise GraphFileError("missing vertex count")
    return OrientedGraph.from_arcs(n, arcs)


def read(path: Union[str, Path]) -> OrientedGraph:
    return parse(Path(path).read_text())


def serialize(g: Union[OrientedGraph, Graph]) -> str:
    """Canonical text: vertex count, then arcs sorted by (tail, head).

    A plain :class:`Graph` is written with every edge as an arc low -> high.
    """
    arcs = g.sorted_arcs() if isinstance(g, OrientedGraph) else g.sorted_edges()
    return "".join([f"{g.n}\n"] + [f"{u} {v}\n" for u, v in arcs])


def write(path: Union[str, Path], g: Union[OrientedGraph, Graph]) -> None:
    Path(path).write_text(serialize(g))
