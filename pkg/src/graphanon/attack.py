"""Re-identification of vertices from a couple of known neighbors.

Includes the clique-plus-cycle construction that satisfies Feder et al.'s
(k,l)-anonymity while leaving its cycle ("border") vertices exposed.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import ParameterError
from .graph import Graph


class AuxiliaryModel(str, Enum):
    NEIGHBORS_ONLY = "neighbors_only"
    NEIGHBORS_PLUS_DEGREE = "neighbors_plus_degree"

    @classmethod
    def parse(cls, value) -> "AuxiliaryModel":
        if isinstance(value, cls):
            return value
        aliases = {"neighbors": cls.NEIGHBORS_ONLY, "neighbors_only": cls.NEIGHBORS_ONLY,
                   "neighbors+degree": cls.NEIGHBORS_PLUS_DEGREE,
                   "neighbors_plus_degree": cls.NEIGHBORS_PLUS_DEGREE}
        try:
            return aliases[str(value)]
        except KeyError:
            raise ParameterError(f"unknown auxiliary model {value!r}") from None


@dataclass(frozen=True)
class Example6:
    graph: Graph
    k: int
    l: int
    m: int

    @property
    def clique(self) -> list[int]:
        return list(range(self.k))

    @property
    def border(self) -> list[int]:
        return list(range(self.k, self.k + self.m))

    def role(self, v: int) -> str:
        return "clique" if v < self.k else "border"

    def cycle_neighbors(self, v: int) -> tuple[int, int]:
        """The two border vertices adjacent to border vertex ``v`` on the cycle."""
        i = v - self.k
        if not 0 <= i < self.m:
            raise ParameterError(f"vertex {v} is not a border vertex")
        prev_, next_ = self.k + (i - 1) % self.m, self.k + (i + 1) % self.m
        return min(prev_, next_), max(prev_, next_)

    def known_neighbors(self) -> dict[int, tuple[int, int]]:
        return {v: self.cycle_neighbors(v) for v in self.border}

    def header(self) -> str:
        return f"example6 k={self.k} l={self.l} m={self.m}"

    @staticmethod
    def parse_header(comments: Iterable[str]) -> tuple[int, int, int] | None:
        for c in comments:
            match = re.fullmatch(r"example6 k=(\d+) l=(\d+) m=(\d+)", c.strip())
            if match:
                return tuple(int(x) for x in match.groups())
        return None


def gen_example6(k: int, l: int, m: int) -> Example6:
    """Clique on ``0..k-1`` plus an m-cycle on ``k..k+m-1``.

    Border vertex ``u_i`` (id ``k+i``) is joined to the rotating clique window
    ``{(i + j) mod k : 0 <= j < l}``.
    """
    if not (k >= l >= 1):
        raise ParameterError(f"need k >= l >= 1, got k={k}, l={l}")
    if m <= 2:
        raise ParameterError(f"need m > 2, got m={m}")
    edges = [(a, b) for a in range(k) for b in range(a + 1, k)]
    edges += [(k + i, k + (i + 1) % m) for i in range(m)]
    edges += [(k + i, (i + j) % k) for i in range(m) for j in range(l)]
    return Example6(Graph.from_edges(k + m, edges), k, l, m)


def example6_edge_count(k: int, l: int, m: int) -> int:
    return k * (k - 1) // 2 + m + m * l


def candidate_set(g: Graph, known: Iterable[int], degree_filter: int | None = None) -> set[int]:
    """Vertices outside ``known`` adjacent to every vertex in ``known``.

    With ``degree_filter`` only vertices of exactly that degree are kept.
    """
    smask = 0
    known = set(int(x) for x in known)
    for x in known:
        g._check_vertex(x)
        smask |= 1 << x
    out = set()
    for v, row in enumerate(g.row_masks):
        if v in known or row & smask != smask:
            continue
        if degree_filter is not None and g.degrees[v] != degree_filter:
            continue
        out.add(v)
    return out


@dataclass
class AttackReport:
    total_targets: int
    uniquely_identified: int
    candidate_size_histogram: dict[int, int]
    auxiliary_model: AuxiliaryModel
    n_vertices: int
    skipped: list[int] = field(default_factory=list)

    @property
    def proportion(self) -> float:
        """Uniquely identified vertices as a share of all vertices of the graph."""
        return self.uniquely_identified / self.n_vertices if self.n_vertices else 0.0

    def to_dict(self) -> dict:
        return {"auxiliary_model": self.auxiliary_model.value,
                "total_targets": self.total_targets,
                "uniquely_identified": self.uniquely_identified,
                "candidate_size_histogram": {str(s): c for s, c in
                                             sorted(self.candidate_size_histogram.items())},
                "n_vertices": self.n_vertices,
                "proportion": self.proportion,
                "skipped": self.skipped}


def attack_report(g: Graph, targets: Iterable[int], auxiliary_model="neighbors_plus_degree",
                  known: Mapping[int, tuple[int, int]] | None = None) -> AttackReport:
    """Query each target's candidate set from two neighbors the adversary knows.

    ``known`` fixes those neighbors per target; otherwise the two lowest-id
    neighbors are used. Targets with fewer than two neighbors are skipped.
    """
    model = AuxiliaryModel.parse(auxiliary_model)
    hist: Counter[int] = Counter()
    skipped = []
    for t in targets:
        g._check_vertex(t)
        if known is not None and t in known:
            pair = known[t]
        else:
            nbrs = g.neighbors(t)
            if len(nbrs) < 2:
                skipped.append(int(t))
                continue
            pair = tuple(nbrs[:2])
        degree = int(g.degrees[t]) if model is AuxiliaryModel.NEIGHBORS_PLUS_DEGREE else None
        hist[len(candidate_set(g, pair, degree))] += 1
    total = sum(hist.values())
    return AttackReport(total, hist.get(1, 0), dict(hist), model, g.n, skipped)
