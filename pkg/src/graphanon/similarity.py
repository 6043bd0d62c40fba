"""Vertex similarities on adjacency rows: Manhattan (l1) and 2-path."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterError
from .graph import Graph


class SimilarityKind(str, Enum):
    MANHATTAN = "manhattan"
    TWO_PATH = "two_path"

    @classmethod
    def parse(cls, value) -> "SimilarityKind":
        if isinstance(value, cls):
            return value
        aliases = {"l1": cls.MANHATTAN, "manhattan": cls.MANHATTAN,
                   "2path": cls.TWO_PATH, "two_path": cls.TWO_PATH, "2-path": cls.TWO_PATH}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ParameterError(f"unknown similarity {value!r}") from None


@dataclass(frozen=True)
class SimilarityMatrix:
    kind: SimilarityKind
    values: np.ndarray

    def __getitem__(self, idx):
        return self.values[idx]

    def to_csv(self) -> str:
        return "\n".join(",".join(str(int(x)) for x in row) for row in self.values) + "\n"


def sim_l1(g: Graph, u: int, v: int) -> int:
    """Number of coordinates on which the neighbor vectors of u and v agree."""
    g._check_vertex(u)
    g._check_vertex(v)
    return g.n - bin(g.row_masks[u] ^ g.row_masks[v]).count("1")


def sim_2path(g: Graph, u: int, v: int) -> int:
    """Number of common neighbors, i.e. paths of length two from u to v."""
    g._check_vertex(u)
    g._check_vertex(v)
    return bin(g.row_masks[u] & g.row_masks[v]).count("1")


def similarity_matrix(g: Graph, kind="manhattan") -> SimilarityMatrix:
    kind = SimilarityKind.parse(kind)
    a = g.adjacency.astype(np.int64)
    if kind is SimilarityKind.TWO_PATH:
        values = a @ a
    else:
        # agreements = common ones + common zeros
        ones = a @ a.T
        zeros = (1 - a) @ (1 - a).T
        values = ones + zeros
    values.setflags(write=False)
    return SimilarityMatrix(kind, values)


def pairwise(kind):
    kind = SimilarityKind.parse(kind)
    return sim_l1 if kind is SimilarityKind.MANHATTAN else sim_2path
