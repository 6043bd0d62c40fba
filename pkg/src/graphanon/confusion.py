"""Re-identification risk for tables: k-anonymity, confusion and (n,t)-confusion.

A re-identification method maps a protected record's quasi-identifier values
and one auxiliary table to a probability vector over the original records.
Confusion of a method counts, for the worst protected record and the worst
auxiliary table, how many original indices keep probability at least ``t``.
"""

from __future__ import annotations

import csv
import io
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .clustering import Clustering, greedy_fixed_size
from .errors import ParameterError

PROB_TOL = 1e-9
# slack when comparing probabilities to a threshold such as 1/3
THRESHOLD_SLACK = 1e-12


@dataclass(frozen=True)
class Table:
    attributes: tuple[str, ...]
    records: tuple[tuple, ...]
    qi: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "records", tuple(tuple(r) for r in self.records))
        object.__setattr__(self, "qi", tuple(self.qi))
        width = len(self.attributes)
        for i, r in enumerate(self.records):
            if len(r) != width:
                raise ParameterError(f"record {i} has {len(r)} values, expected {width}")
        missing = [q for q in self.qi if q not in self.attributes]
        if missing:
            raise ParameterError(f"quasi-identifier columns not in table: {missing}")

    @property
    def n(self) -> int:
        return len(self.records)

    def with_qi(self, qi: Sequence[str]) -> "Table":
        return Table(self.attributes, self.records, tuple(qi))

    def with_records(self, records) -> "Table":
        return Table(self.attributes, records, self.qi)

    def column(self, name: str) -> list:
        j = self.attributes.index(name)
        return [r[j] for r in self.records]

    def qi_values(self, i: int) -> tuple:
        idx = [self.attributes.index(q) for q in self.qi]
        return tuple(self.records[i][j] for j in idx)

    def qi_tuples(self) -> list[tuple]:
        idx = [self.attributes.index(q) for q in self.qi]
        return [tuple(r[j] for j in idx) for r in self.records]

    def qi_matrix(self) -> np.ndarray:
        try:
            return np.array(self.qi_tuples(), dtype=float).reshape(self.n, len(self.qi))
        except (TypeError, ValueError):
            raise ParameterError("quasi-identifier columns must be numeric") from None


def _parse_cell(text):
    try:
        return float(text)
    except ValueError:
        return text


def read_table_csv(source, qi: Sequence[str] = ()) -> Table:
    """Header row, then records. A column is numeric when every cell parses as a decimal."""
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(io.StringIO(source)))
    rows = [r for r in rows if r]
    if not rows:
        raise ParameterError("table CSV is empty")
    header, body = rows[0], rows[1:]
    columns = list(zip(*body)) if body else [() for _ in header]
    parsed = []
    for col in columns:
        values = [_parse_cell(x) for x in col]
        if not all(isinstance(v, float) for v in values):
            values = list(col)
        parsed.append(values)
    records = list(zip(*parsed)) if body else []
    return Table(tuple(header), records, tuple(qi))


def write_table_csv(t: Table, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(t.attributes)
        w.writerows(t.records)


# -- table k-anonymity -------------------------------------------------------

@dataclass(frozen=True)
class TableAnonymityReport:
    k: int
    satisfied: bool
    witness: int | None = None

    def __bool__(self):
        return self.satisfied


def qi_groups(t: Table) -> dict[tuple, list[int]]:
    groups = defaultdict(list)
    for i, key in enumerate(t.qi_tuples()):
        groups[key].append(i)
    return groups


def is_table_k_anonymous(t: Table, k: int) -> TableAnonymityReport:
    if not t.qi:
        raise ParameterError("a quasi-identifier must be declared")
    if k < 1:
        raise ParameterError("k must be positive")
    small = [g[0] for g in qi_groups(t).values() if len(g) < k]
    if small:
        return TableAnonymityReport(k, False, min(small))
    return TableAnonymityReport(k, True)


# -- re-identification methods ----------------------------------------------

def uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def validate_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if (p < 0).any() or abs(p.sum() - 1.0) > PROB_TOL:
        raise ParameterError(f"not a probability vector (sum={p.sum()!r})")
    return p


@dataclass(frozen=True)
class ReidMethod:
    name: str
    fn: Callable[[tuple, Table], np.ndarray]

    def __call__(self, y: tuple, aux: Table) -> np.ndarray:
        return validate_distribution(self.fn(y, aux))


def _uniform_over(indices, n):
    if not indices:
        return uniform(n)
    p = np.zeros(n)
    p[list(indices)] = 1.0 / len(indices)
    return p


def canonical_reid(y: tuple, x: Table) -> np.ndarray:
    """Uniform over the records of ``x`` whose QI tuple equals ``y``; uniform over all if none do."""
    y = tuple(y)
    return _uniform_over([i for i, q in enumerate(x.qi_tuples()) if q == y], x.n)


def method_aware_reid(anonymizer: Callable[[Table], Table], name="canonical_method_aware") -> ReidMethod:
    """Canonical matching after re-running the (deterministic) anonymizer on the auxiliary table.

    Models an adversary who holds the original QI values and knows the method.
    """
    cached = lru_cache(maxsize=16)(anonymizer)
    return ReidMethod(name, lambda y, a: canonical_reid(y, cached(a)))


def geometric_reid(clustering: Clustering, name="canonical_geometric") -> ReidMethod:
    """Assign ``y`` to the cluster of ``aux`` with the nearest QI mean; uniform over its members."""
    def fn(y, aux):
        pts = aux.qi_matrix()
        means = np.array([pts[list(c)].mean(axis=0) for c in clustering.classes])
        d = np.linalg.norm(means - np.asarray(y, dtype=float), axis=1)
        return _uniform_over(clustering.classes[int(np.argmin(d))], aux.n)
    return ReidMethod(name, fn)


CANONICAL = ReidMethod("canonical_exact", canonical_reid)


# -- confusion ---------------------------------------------------------------

@dataclass
class ConfusionResult:
    value: int
    per_record: list[int]
    zero_branch: list[int] = field(default_factory=list)

    def __int__(self):
        return self.value


def _check_t(t):
    if not (0 < t <= 1):
        raise ParameterError(f"threshold t must lie in (0, 1], got {t!r}")


def confusion_report(r: ReidMethod | Callable, y_table: Table, aux: Sequence[Table],
                     t: float) -> ConfusionResult:
    """Exact double infimum over protected records and the finite auxiliary list.

    When no index reaches ``t`` for some auxiliary table, that record scores the
    number of original records; such records are listed in ``zero_branch``.
    """
    _check_t(t)
    if y_table.n == 0:
        raise ParameterError("protected table is empty")
    if not aux:
        raise ParameterError("at least one auxiliary table is required")
    per_record, zero = [], []
    for j, y in enumerate(y_table.qi_tuples()):
        counts = []
        for a in aux:
            p = validate_distribution(r(y, a))
            counts.append(int((p >= t - THRESHOLD_SLACK).sum()))
            size = len(p)
        m = min(counts)
        if m == 0:
            m = size
            zero.append(j)
        per_record.append(m)
    return ConfusionResult(min(per_record), per_record, zero)


def confusion(r, y_table: Table, aux: Sequence[Table], t: float) -> int:
    return confusion_report(r, y_table, aux, t).value


@dataclass
class NtConfusionReport:
    n: int
    t: float
    satisfied: bool
    catalog: list[str]
    confusions: dict[str, int]
    vacuous: bool

    def __bool__(self):
        return self.satisfied

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "satisfied": self.satisfied,
                "catalog": self.catalog, "confusions": self.confusions,
                "vacuous": self.vacuous}


def check_nt_confusion(methods: Sequence[ReidMethod], y_table: Table, aux: Sequence[Table],
                       n: int, t: float) -> NtConfusionReport:
    """(n,t)-confusion against a finite catalog of methods standing in for "all methods"."""
    if n < 1:
        raise ParameterError("n must be positive")
    if not (0 < t <= 1.0 / n + THRESHOLD_SLACK):
        raise ParameterError(f"threshold t must lie in (0, 1/n], got {t!r} for n={n}")
    values = {getattr(m, "name", repr(m)): confusion(m, y_table, aux, t) for m in methods}
    return NtConfusionReport(n, t, all(v >= n for v in values.values()), list(values),
                             values, vacuous=not methods)


# -- anonymization of tables -------------------------------------------------

def _standardized(points: np.ndarray) -> np.ndarray:
    sd = points.std(axis=0)
    sd[sd == 0] = 1.0
    return (points - points.mean(axis=0)) / sd


def euclidean_clusters(points: np.ndarray, k: int) -> Clustering:
    diff = points[:, None, :] - points[None, :, :]
    return greedy_fixed_size(-np.sqrt((diff ** 2).sum(axis=-1)), k)


def qi_clustering(t: Table, k: int) -> Clustering:
    """Fixed-size clusters of the standardized numeric QI columns."""
    if not t.qi:
        raise ParameterError("a quasi-identifier must be declared")
    return euclidean_clusters(_standardized(t.qi_matrix()), k)


def generalize_qi(t: Table, k: int) -> tuple[Table, Clustering]:
    """k-anonymize by replacing each record's QI values with its cluster's QI mean."""
    c = qi_clustering(t, k)
    pts = t.qi_matrix()
    qidx = [t.attributes.index(q) for q in t.qi]
    records = [list(r) for r in t.records]
    for cl in c.classes:
        mean = pts[list(cl)].mean(axis=0)
        for i in cl:
            for j, value in zip(qidx, mean):
                records[i][j] = float(value)
    return t.with_records(records), c


def swap_within_clusters(t: Table, c: Clustering, seed: int) -> Table:
    """Independently permute every attribute inside every cluster (seeded PCG64)."""
    if c.n != t.n:
        raise ParameterError("clustering does not cover the table's records")
    rng = np.random.Generator(np.random.PCG64(seed))
    records = [list(r) for r in t.records]
    for cl in c.classes:
        cl = list(cl)
        for j in range(len(t.attributes)):
            perm = rng.permutation(len(cl))
            values = [t.records[i][j] for i in cl]
            for dst, src in zip(cl, perm):
                records[dst][j] = values[src]
    return t.with_records(records)


# -- three-point clusters in R^3 ----------------------------------------------

@dataclass
class Example3Report:
    seed: int
    variant: str
    epsilon_ratio: float
    k_anonymous: bool
    confusion: int
    nt_confusion: bool
    resamples: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _plane_normal(p):
    normal = np.cross(p[1] - p[0], p[2] - p[0])
    return normal, float(np.linalg.norm(normal))


def example3_demo(seed: int = 0, variant: str = "average", epsilon_ratio: float = 0.5,
                  n_points: int = 30, k: int = 3) -> Example3Report:
    """30 random points in the unit cube, 10 clusters of 3, two ways to publish them.

    ``average`` replaces each point by its cluster mean. ``perturbed`` keeps the
    mean for the first member and shifts the other two by plus/minus eps along
    the unit normal of the cluster's plane, eps = epsilon_ratio * cluster radius.
    """
    if variant not in ("average", "perturbed"):
        raise ParameterError(f"unknown variant {variant!r}")
    if not (0 <= epsilon_ratio < 1):
        raise ParameterError("epsilon_ratio must lie in [0, 1)")
    if k != 3:
        raise ParameterError("the plane-normal perturbation needs clusters of exactly 3")
    rng = np.random.Generator(np.random.PCG64(seed))
    resamples = 0
    while True:
        pts = rng.random((n_points, 3))
        c = euclidean_clusters(pts, k)
        normals = [_plane_normal(pts[list(cl)]) for cl in c.classes]
        distinct = len({tuple(p) for p in pts}) == n_points
        if distinct and (variant == "average" or all(norm > 1e-12 for _, norm in normals)):
            break
        resamples += 1
    protected = np.empty_like(pts)
    for cl, (normal, norm) in zip(c.classes, normals):
        members = pts[list(cl)]
        mean = members.mean(axis=0)
        if variant == "average":
            protected[list(cl)] = mean
            continue
        radius = float(np.linalg.norm(members - mean, axis=1).max())
        shift = epsilon_ratio * radius * normal / norm
        protected[cl[0]] = mean
        protected[cl[1]] = mean + shift
        protected[cl[2]] = mean - shift
    attrs = ("x", "y", "z")
    original = Table(attrs, [tuple(map(float, p)) for p in pts], attrs)
    released = Table(attrs, [tuple(map(float, p)) for p in protected], attrs)
    method = geometric_reid(c)
    conf = confusion(method, released, [original], 1.0 / k)
    nt = check_nt_confusion([method], released, [original], k, 1.0 / k)
    return Example3Report(seed, variant, epsilon_ratio, is_table_k_anonymous(released, k).satisfied,
                          conf, nt.satisfied, resamples)
