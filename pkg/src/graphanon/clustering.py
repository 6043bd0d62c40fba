"""Fixed-size greedy clustering over a similarity matrix (microaggregation style)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class Clustering:
    classes: tuple[tuple[int, ...], ...]
    min_size: int

    def __post_init__(self):
        classes = tuple(tuple(sorted(int(x) for x in c)) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if self.min_size < 1:
            raise ParameterError("min_size must be positive")
        for c in classes:
            if len(c) < self.min_size:
                raise ParameterError(f"class {list(c)} is smaller than {self.min_size}")
        members = [x for c in classes for x in c]
        if sorted(members) != list(range(len(members))):
            raise ParameterError("classes must partition 0..n-1")

    @classmethod
    def of(cls, classes, min_size=None) -> "Clustering":
        classes = [list(c) for c in classes]
        if min_size is None:
            min_size = min((len(c) for c in classes), default=1)
        return cls(tuple(tuple(c) for c in classes), min_size)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    def labels(self) -> np.ndarray:
        out = np.empty(self.n, dtype=np.int64)
        for i, c in enumerate(self.classes):
            out[list(c)] = i
        return out

    def as_lists(self) -> list[list[int]]:
        return [list(c) for c in self.classes]


def greedy_fixed_size(sim: np.ndarray, k: int) -> Clustering:
    """Partition ``0..n-1`` into floor(n/k) classes using similarity ``sim``.

    Each round seeds a class with the unassigned item least similar in total to
    the other unassigned items, then adds its k-1 most similar unassigned items.
    All ties break towards the lowest id. A remainder smaller than k joins the
    last class formed.
    """
    sim = np.asarray(sim)
    n = sim.shape[0]
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    if k > n:
        raise ParameterError(f"k={k} exceeds the number of items n={n}")
    unassigned = list(range(n))
    classes: list[list[int]] = []
    while len(unassigned) >= k:
        idx = np.array(unassigned)
        sub = sim[np.ix_(idx, idx)]
        totals = sub.sum(axis=1) - np.diag(sub)
        seed_pos = int(np.argmin(totals))  # argmin returns the first minimum
        seed = unassigned[seed_pos]
        rest = [u for u in unassigned if u != seed]
        # stable sort on -similarity keeps ascending id among ties
        rest.sort(key=lambda u: -sim[seed, u])
        members = [seed] + rest[: k - 1]
        classes.append(sorted(members))
        taken = set(members)
        unassigned = [u for u in unassigned if u not in taken]
    if unassigned:
        classes[-1] = sorted(classes[-1] + unassigned)
    return Clustering.of(classes, k)
