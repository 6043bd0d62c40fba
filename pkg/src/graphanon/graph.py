"""Simple undirected graphs on vertices ``0..n-1``.

The dense boolean adjacency matrix is the reference representation: row ``v``
is the neighbor vector of ``v``. Rows are also exposed as Python int bitmasks,
which the exhaustive checkers use for fast subset tests.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import ParameterError, ParseError


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if a.shape != (self.n, self.n):
            raise ParameterError(f"adjacency shape {a.shape} does not match n={self.n}")
        if a.diagonal().any():
            raise ParameterError("self-loops are not allowed")
        if not np.array_equal(a, a.T):
            raise ParameterError("adjacency must be symmetric")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ParameterError("vertex count must be non-negative")
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(n, a)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, np.zeros((n, n), dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.n, self.adjacency.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1).astype(np.int64)
        d.setflags(write=False)
        return d

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.degrees[v])

    def min_degree(self) -> int:
        return int(self.degrees.min()) if self.n else 0

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Neighbor vectors as bitmasks (bit ``u`` set iff ``u`` is a neighbor)."""
        weights = [1 << u for u in range(self.n)]
        return tuple(
            sum(w for w, bit in zip(weights, row) if bit) for row in self.adjacency.tolist()
        )

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return [int(u) for u in np.flatnonzero(self.adjacency[v])]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adjacency[u, v])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def _check_vertex(self, v):
        if not (0 <= int(v) < self.n):
            raise ParameterError(f"vertex {v} out of range for n={self.n}")


def neighbor_vector(g: Graph, v: int) -> np.ndarray:
    """0/1 row of the adjacency matrix for ``v``."""
    g._check_vertex(v)
    return g.adjacency[v].astype(np.int8)


def neighbor_partition(g: Graph) -> list[list[int]]:
    """Group vertices with identical neighbor vectors.

    Classes are listed in order of their smallest member; members ascend.
    Looplessness makes every class an independent set: if ``u`` and ``v``
    shared a row and were adjacent, ``u`` would be its own neighbor.
    """
    groups: dict[int, list[int]] = defaultdict(list)
    for v, mask in enumerate(g.row_masks):
        groups[mask].append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` relabelled ``0..|S|-1`` in ascending original order.

    Returns the subgraph and the id map (new id -> original id).
    """
    ids = sorted(set(int(v) for v in vertices))
    for v in ids:
        g._check_vertex(v)
    idx = np.array(ids, dtype=np.intp)
    return Graph(len(ids), g.adjacency[np.ix_(idx, idx)]), ids


def remove_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, list[int]]:
    removed = set(removed)
    return induced_subgraph(g, (v for v in range(g.n) if v not in removed))


# -- generators -------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    _require(n >= 1, "n must be >= 1")
    return Graph(n, ~np.eye(n, dtype=bool))


def cycle_graph(n: int) -> Graph:
    _require(n >= 3, "a simple cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    _require(n >= 1, "n must be >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    _require(a >= 1 and b >= 1, "both sides must be non-empty")
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Graph:
    return complete_bipartite_graph(1, leaves)


def gnp_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p).

    Uses numpy's PCG64 bit generator seeded with ``seed``: one uniform draw per
    vertex pair, pairs visited in lexicographic order ``(0,1), (0,2), ...``.
    """
    _require(n >= 1, "n must be >= 1")
    _require(0.0 <= p <= 1.0, "p must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    iu = np.triu_indices(n, 1)
    draws = rng.random(len(iu[0]))
    a = np.zeros((n, n), dtype=bool)
    keep = draws < p
    a[iu[0][keep], iu[1][keep]] = True
    return Graph(n, a | a.T)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph.from_edges(offset, edges)


def generate(kind: str, **params) -> Graph:
    """Dispatch by name: ``complete``, ``cycle``, ``complete_bipartite``, ``gnp``."""
    try:
        if kind == "complete":
            return complete_graph(params["n"])
        if kind == "cycle":
            return cycle_graph(params["n"])
        if kind in ("complete_bipartite", "bipartite"):
            return complete_bipartite_graph(params["a"], params["b"])
        if kind == "gnp":
            return gnp_graph(params["n"], params["p"], params.get("seed", 0))
    except KeyError as exc:
        raise ParameterError(f"generator {kind!r} needs parameter {exc.args[0]!r}") from None
    raise ParameterError(f"unknown generator {kind!r}")


def all_graphs(n: int):
    """Every labelled simple graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for i, p in enumerate(pairs) if bits >> i & 1))


def _require(cond, message):
    if not cond:
        raise ParameterError(message)


# -- edge-list I/O ----------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError("expected the vertex count", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[0]!r}", lineno) from None
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range for n={n}", lineno)
        edges.add((min(u, v), max(u, v)))
    if n is None:
        raise ParseError("missing vertex count header")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(str(g.n))
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def save_edge_list(g: Graph, path: str | os.PathLike, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g, comments))


def read_header_comments(path: str | os.PathLike) -> list[str]:
    """Comment lines (without the leading ``#``) found before the vertex count."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if not line.startswith("#"):
                break
            out.append(line[1:].strip())
    return out
