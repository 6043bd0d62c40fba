"""Anonymity checkers and largest-l measures for graphs.

Conventions used throughout:

* the target vertex counts among the ``k`` matching vertices, except in the
  Feder et al. check whose matching set must exclude the target;
* witnesses are the lowest-id violating vertex;
* (k,l) Definition I index sets range over the coordinates of the *other*
  vertices, ``I ⊆ V \\ {v}``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Any

import numpy as np

from .errors import BudgetError, CapabilityError, ParameterError
from .graph import Graph, induced_subgraph, neighbor_partition
from .isomorphism import isomorphism_classes
from .similarity import similarity_matrix

SUBSET_BUDGET = 1 << 24
ISO_CAP = 10


class Definition(str, Enum):
    NEIGHBOR_K = "neighbor_k"
    KL_DEF1 = "kl_def1"
    KL_DEF2 = "kl_def2"
    FEDER = "feder"
    DEGREE = "degree"
    NEIGH1 = "neigh1"
    K_CANDIDATE = "k_candidate"


@dataclass(frozen=True)
class AnonymityReport:
    definition: Definition
    k: int
    satisfied: bool
    witness: Any = None
    l: int | None = None

    def __bool__(self):
        return self.satisfied

    def to_dict(self) -> dict:
        witness = self.witness
        if isinstance(witness, tuple):
            witness = {"vertex": witness[0], "subset": list(witness[1])}
        return {"definition": self.definition.value, "k": self.k, "l": self.l,
                "satisfied": self.satisfied, "witness": witness}


def _check_k(k):
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")


def _check_k_below_n(g, k):
    _check_k(k)
    if k >= g.n:
        raise ParameterError(f"k={k} must be smaller than the vertex count n={g.n}")


def _class_report(definition, classes, k, l=None):
    small = [min(c) for c in classes if len(c) < k]
    if small:
        return AnonymityReport(definition, k, False, min(small), l)
    return AnonymityReport(definition, k, True, None, l)


# -- neighbor-set k-anonymity ----------------------------------------------

def is_k_anonymous(g: Graph, k: int) -> AnonymityReport:
    """Every vertex shares its exact neighbor set with at least k-1 others."""
    _check_k(k)
    return _class_report(Definition.NEIGHBOR_K, neighbor_partition(g), k)


def max_k(g: Graph) -> int:
    if g.n < 1:
        raise ParameterError("max_k needs at least one vertex")
    return min(len(c) for c in neighbor_partition(g))


# -- (k,l) heuristics driven by similarity counts ---------------------------

def largest_l_alg2(g: Graph, k: int) -> int:
    """Lower the Manhattan threshold from n until every vertex has k vertices at or above it."""
    _check_k_below_n(g, k)
    sim = similarity_matrix(g, "manhattan").values
    s = g.n
    while ((sim >= s).sum(axis=0) < k).any():
        s -= 1
    return s


def largest_l_alg3(g: Graph, k: int) -> int:
    """Per-vertex 2-path thresholds starting at the degree; returns their minimum."""
    _check_k_below_n(g, k)
    sim = similarity_matrix(g, "two_path").values
    s = g.degrees.astype(np.int64).copy()
    for i in range(g.n):
        while (sim[:, i] >= s[i]).sum() < k:
            s[i] -= 1
    return int(s.min()) if g.n else 0


# -- exact (k,l) checks by subset enumeration -------------------------------

class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def reserve(self, amount):
        if self.used + amount > self.limit:
            raise BudgetError(
                f"exhaustive search needs more than {self.limit} subsets "
                f"({self.used} used, {amount} more requested)")
        self.used += amount


def _def1_violations(g, k, size, budget, first_only):
    """Yield (v, I) with |I| = size, v not in I, and fewer than k rows agreeing with v on I."""
    masks = g.row_masks
    budget.reserve(comb(g.n, size))
    for idx in combinations(range(g.n), size):
        imask = 0
        for i in idx:
            imask |= 1 << i
        keys = [m & imask for m in masks]
        counts = Counter(keys)
        for v in range(g.n):
            if not imask >> v & 1 and counts[keys[v]] < k:
                yield v, idx
                if first_only:
                    return
                break


def _def2_violations(g, k, size, budget, first_only):
    """Yield (v, S) with S a subset of N(v) of size min(size, deg v) contained in fewer than k neighborhoods."""
    masks = g.row_masks
    nbrs = [g.neighbors(v) for v in range(g.n)]
    budget.reserve(sum(comb(len(nb), min(size, len(nb))) for nb in nbrs))
    cache: dict[int, int] = {}
    for v in range(g.n):
        for sub in combinations(nbrs[v], min(size, len(nbrs[v]))):
            smask = 0
            for x in sub:
                smask |= 1 << x
            c = cache.get(smask)
            if c is None:
                c = cache[smask] = sum(1 for m in masks if m & smask == smask)
            if c < k:
                yield v, sub
                if first_only:
                    return
                break


def is_kl_anonymous_def1(g: Graph, k: int, l: int, budget: int = SUBSET_BUDGET) -> AnonymityReport:
    """Exact Definition I check: every <= l coordinates of N(v) outside v are matched by k vertices.

    Passing with |I| = l implies passing for every smaller I (fewer constraints,
    more matches), so only index sets of size ``min(l, n-1)`` are enumerated.
    """
    _check_k(k)
    if l < 0:
        raise ParameterError("l must be non-negative")
    size = min(l, max(g.n - 1, 0))
    found = list(_def1_violations(g, k, size, _Budget(budget), first_only=False))
    if not found:
        return AnonymityReport(Definition.KL_DEF1, k, True, None, l)
    return AnonymityReport(Definition.KL_DEF1, k, False, min(found), l)


def is_kl_anonymous_def2(g: Graph, k: int, l: int, budget: int = SUBSET_BUDGET) -> AnonymityReport:
    """Exact Definition II check: every S ⊆ N(v) with |S| <= l lies in k neighborhoods."""
    _check_k(k)
    if l < 0:
        raise ParameterError("l must be non-negative")
    found = list(_def2_violations(g, k, l, _Budget(budget), first_only=False))
    if not found:
        return AnonymityReport(Definition.KL_DEF2, k, True, None, l)
    return AnonymityReport(Definition.KL_DEF2, k, False, min(found), l)


def _largest_l(g, k, upper, violations, budget):
    tracker = _Budget(budget)
    best = 0
    for size in range(1, upper + 1):
        if next(violations(g, k, size, tracker, True), None) is not None:
            break
        best = size
    return best


def largest_l_exact_def1(g: Graph, k: int, l_cap: int, budget: int = SUBSET_BUDGET) -> int:
    """Largest l <= min(l_cap, n-1) for which ``g`` is (k,l)-anonymous under Definition I."""
    _check_k_below_n(g, k)
    upper = min(l_cap, g.n - 1)
    if k == 1:
        return upper
    return _largest_l(g, k, upper, _def1_violations, budget)


def largest_l_exact_def2(g: Graph, k: int, l_cap: int, budget: int = SUBSET_BUDGET) -> int:
    """Largest l <= min(l_cap, min degree) for which ``g`` is (k,l)-anonymous under Definition II."""
    _check_k_below_n(g, k)
    upper = min(l_cap, g.min_degree())
    if k == 1:
        return upper
    return _largest_l(g, k, upper, _def2_violations, budget)


# -- prior-work definitions -------------------------------------------------

def is_feder_kl(g: Graph, k: int, l: int) -> AnonymityReport:
    """Each v has at least k *other* vertices sharing at least l neighbors with it."""
    _check_k(k)
    if l < 1:
        raise ParameterError("l must be a positive integer")
    sim = similarity_matrix(g, "two_path").values
    counts = (sim >= l).sum(axis=0) - (np.diag(sim) >= l)
    bad = np.flatnonzero(counts < k)
    witness = int(bad[0]) if bad.size else None
    return AnonymityReport(Definition.FEDER, k, witness is None, witness, l)


def is_k_degree_anonymous(g: Graph, k: int) -> AnonymityReport:
    return k_candidate_check(g, "degree", k, definition=Definition.DEGREE)


def one_neighborhood(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.neighbors(v))[0]


def is_k_neighborhood_anonymous(g: Graph, k: int, iso_cap: int = ISO_CAP) -> AnonymityReport:
    """Group vertices by isomorphism type of their 1-neighborhood."""
    _check_k(k)
    too_big = np.flatnonzero(g.degrees > iso_cap)
    if too_big.size:
        v = int(too_big[0])
        raise CapabilityError(
            f"vertex {v} has degree {g.degree(v)} above the isomorphism cap {iso_cap}")
    hoods = [one_neighborhood(g, v) for v in range(g.n)]
    return _class_report(Definition.NEIGH1, isomorphism_classes(hoods), k)


QUERIES = ("degree", "neighbor_degree_multiset", "neighbor_vector")


def structural_query(g: Graph, query: str, v: int):
    if query == "degree":
        return int(g.degrees[v])
    if query == "neighbor_degree_multiset":
        return tuple(sorted(int(g.degrees[u]) for u in g.neighbors(v)))
    if query == "neighbor_vector":
        return g.row_masks[v]
    raise ParameterError(f"unknown query {query!r}; expected one of {QUERIES}")


def candidate_classes(g: Graph, query: str) -> list[list[int]]:
    groups = defaultdict(list)
    for v in range(g.n):
        groups[structural_query(g, query, v)].append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def k_candidate_check(g: Graph, query: str, k: int,
                      definition: Definition = Definition.K_CANDIDATE) -> AnonymityReport:
    """Every candidate set ``{v : Q(x) = Q(v)}`` has at least k members."""
    _check_k(k)
    if query not in QUERIES:
        raise ParameterError(f"unknown query {query!r}; expected one of {QUERIES}")
    return _class_report(definition, candidate_classes(g, query), k)
