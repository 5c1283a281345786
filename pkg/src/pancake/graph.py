"""Implicit prefix-reversal graph: BFS distance fields and verifications.

The graph on S_n is never materialized; neighbors are generated by
applying the reversals r_2..r_n.  Distances from a source are stored as
one byte per vertex, indexed by lexicographic rank (sentinel 255 =
unvisited), which keeps n = 12 (479,001,600 vertices) under half a GiB.
"""

from __future__ import annotations

import hashlib
import os
import random
import tempfile
from dataclasses import dataclass
from math import factorial

import numba
import numpy as np

from . import _kernels
from .perm import (
    Perm,
    apply_reversal,
    check_perm,
    compose,
    identity,
    inverse,
    rank,
    unrank,
)

DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes; covers n <= 12
LARGE_DEGREE = 13  # beyond 12 only with an explicit override
UNSEEN = _kernels.UNSEEN

FIELD_MAGIC = b"PNKD"
FIELD_VERSION = 1
_HEADER_LEN = 20  # magic(4) + version(1) + n(1) + source rank(8) + reserved(6)


class MemoryBudgetError(RuntimeError):
    """A run was refused because the distance field would not fit."""

    def __init__(self, n: int, required_bytes: int, budget: int):
        self.n = n
        self.required_bytes = required_bytes
        self.budget = budget
        super().__init__(
            f"n={n} needs {required_bytes} bytes for the distance field, "
            f"budget is {budget}"
        )


def neighbors(p: Perm):
    """The n-1 reversal images of p, in increasing reversal-index order."""
    return [apply_reversal(p, i) for i in range(2, len(p) + 1)]


@dataclass(frozen=True)
class LayerProfile:
    """Histogram of a distance field: counts[d] vertices at distance d."""

    n: int
    counts: tuple

    @property
    def eccentricity(self) -> int:
        return len(self.counts) - 1

    def csv_text(self) -> str:
        lines = ["distance,count"]
        lines += [f"{d},{c}" for d, c in enumerate(self.counts)]
        return "\n".join(lines) + "\n"


@dataclass
class DistanceField:
    """BFS distances from one source, one byte per vertex, rank-indexed."""

    n: int
    source: int  # LexRank of the source
    dist: np.ndarray  # uint8, length n!

    def eccentricity(self) -> int:
        m = int(self.dist.max())
        if m == UNSEEN:
            raise ValueError("distance field is incomplete (unvisited vertices)")
        return m

    def layer_profile(self) -> LayerProfile:
        ecc = self.eccentricity()
        counts = np.bincount(self.dist, minlength=ecc + 1)
        return LayerProfile(self.n, tuple(int(c) for c in counts[: ecc + 1]))

    def distance(self, p: Perm) -> int:
        return int(self.dist[rank(p)])

    def sha256(self) -> str:
        return hashlib.sha256(self.dist.tobytes()).hexdigest()

    def save(self, path) -> None:
        header = (
            FIELD_MAGIC
            + bytes([FIELD_VERSION, self.n])
            + int(self.source).to_bytes(8, "little")
            + b"\x00" * 6
        )
        atomic_write_bytes(path, header + self.dist.tobytes())

    @classmethod
    def load(cls, path) -> "DistanceField":
        with open(path, "rb") as fh:
            header = fh.read(_HEADER_LEN)
            if len(header) < _HEADER_LEN or header[:4] != FIELD_MAGIC:
                raise ValueError(f"{path}: not a distance-field file")
            if header[4] != FIELD_VERSION:
                raise ValueError(f"{path}: unsupported version {header[4]}")
            n = header[5]
            source = int.from_bytes(header[6:14], "little")
            payload = np.fromfile(fh, dtype=np.uint8)
        if payload.shape[0] != factorial(n):
            raise ValueError(f"{path}: payload length != {n}!")
        return cls(n, source, payload)


def atomic_write_bytes(path, data: bytes) -> None:
    """Write via a temp file in the same directory, then rename."""
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".pancake-tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path, text: str) -> None:
    atomic_write_bytes(path, text.encode())


def set_workers(workers) -> int:
    """Clamp and apply the numba thread count; returns the effective value."""
    maxw = numba.config.NUMBA_NUM_THREADS
    w = maxw if workers is None else max(1, min(int(workers), maxw))
    numba.set_num_threads(w)
    return w


def required_bytes(n: int) -> int:
    return factorial(n)


def bfs(
    n: int,
    source: Perm | None = None,
    *,
    memory_budget: int | None = None,
    workers: int | None = None,
    allow_large: bool = False,
) -> DistanceField:
    """Full BFS over S_n from ``source`` (default: identity).

    Refuses, without touching any output, when the byte field would
    exceed the memory budget or when n >= 13 without ``allow_large``.
    """
    if not 2 <= n <= 20:
        raise ValueError(f"degree must be in [2, 20], got {n}")
    budget = DEFAULT_MEMORY_BUDGET if memory_budget is None else int(memory_budget)
    need = required_bytes(n)
    if n >= LARGE_DEGREE and not allow_large:
        raise MemoryBudgetError(n, need, budget)
    if need > budget:
        raise MemoryBudgetError(n, need, budget)
    if source is None:
        source = identity(n)
    else:
        source = check_perm(source)
        if len(source) != n:
            raise ValueError(f"source degree {len(source)} != {n}")
    w = set_workers(workers)
    dist = np.full(need, UNSEEN, dtype=np.uint8)
    dist[rank(source)] = 0
    fact = _kernels.FACTORIALS
    nchunks = min(need, max(1, w * 16))
    level = 0
    while True:
        wrote = _kernels.bfs_sweep(dist, level, n, fact, nchunks)
        if wrote == 0:
            break
        level += 1
    return DistanceField(n, rank(source), dist)


_identity_fields: dict = {}


def identity_field(n: int, **kwargs) -> DistanceField:
    """BFS field from the identity, cached per degree."""
    f = _identity_fields.get(n)
    if f is None:
        f = bfs(n, **kwargs)
        _identity_fields[n] = f
    return f


def clear_field_cache() -> None:
    _identity_fields.clear()


def eccentricity_of_identity(n: int, **kwargs) -> int:
    """Equals the diameter by translation invariance of the metric."""
    return identity_field(n, **kwargs).eccentricity()


# ---------------------------------------------------------------------------
# structural verifications


@dataclass(frozen=True)
class Prop3Report:
    """All-vertex eccentricities plus translation-invariance spot checks."""

    n: int
    eccentricities_equal: bool
    eccentricity: int
    distinct_values: tuple
    eq7_checked: int
    eq7_failures: tuple  # ((u, v), d_uv, d_translated) triples

    @property
    def ok(self) -> bool:
        return self.eccentricities_equal and not self.eq7_failures


def eq7_check(n: int, pairs: int, seed: int = 0):
    """Check d(u, v) = d(I, u^-1 v) on random pairs.

    The left side comes from a fresh BFS rooted at u, the right side from
    the identity field, so the two routes are independent.
    """
    rng = random.Random(seed)
    total = factorial(n)
    us = np.array([rng.randrange(total) for _ in range(pairs)], dtype=np.int64)
    vs = np.array([rng.randrange(total) for _ in range(pairs)], dtype=np.int64)
    left = _kernels.pair_distances(n, _kernels.FACTORIALS, us, vs)
    fld = identity_field(n)
    failures = []
    for t in range(pairs):
        u = unrank(int(us[t]), n)
        v = unrank(int(vs[t]), n)
        right = fld.distance(compose(inverse(u), v))
        if int(left[t]) != right:
            failures.append(((u, v), int(left[t]), right))
    return pairs, tuple(failures)


def verify_prop3(n: int, eq7_pairs: int = 500, seed: int = 0) -> Prop3Report:
    """Every vertex of P_n has the same eccentricity (n <= 6)."""
    if not 2 <= n <= 6:
        raise ValueError("all-pairs verification is limited to n <= 6")
    ecc = _kernels.all_eccentricities(n, _kernels.FACTORIALS)
    values = tuple(sorted(set(int(e) for e in ecc)))
    checked, failures = eq7_check(n, eq7_pairs, seed)
    return Prop3Report(
        n=n,
        eccentricities_equal=len(values) == 1,
        eccentricity=values[-1],
        distinct_values=values,
        eq7_checked=checked,
        eq7_failures=failures,
    )


@dataclass(frozen=True)
class HierarchyReport:
    """Partition of P_n into n copies of P_{n-1} by the last entry."""

    n: int
    class_sizes: dict
    closed_under_short_reversals: bool
    last_reversal_leaves_class: bool
    isomorphic_to_smaller: bool

    @property
    def ok(self) -> bool:
        return (
            all(sz == factorial(self.n - 1) for sz in self.class_sizes.values())
            and self.closed_under_short_reversals
            and self.last_reversal_leaves_class
            and self.isomorphic_to_smaller
        )


def _drop_last(p: Perm) -> Perm:
    """Delete the last entry and relabel order-preservingly onto 1..n-1."""
    k = p[-1]
    return tuple(v - 1 if v > k else v for v in p[:-1])


def verify_hierarchy(n: int) -> HierarchyReport:
    if not 3 <= n <= 8:
        raise ValueError("hierarchy verification is limited to 3 <= n <= 8")
    sizes = {k: 0 for k in range(1, n + 1)}
    closed = True
    leaves = True
    iso = True
    for r in range(factorial(n)):
        p = unrank(r, n)
        k = p[-1]
        sizes[k] += 1
        small = _drop_last(p)
        for i in range(2, n):
            q = apply_reversal(p, i)
            if q[-1] != k:
                closed = False
            if _drop_last(q) != apply_reversal(small, i):
                iso = False
        if apply_reversal(p, n)[-1] == k:
            leaves = False
    return HierarchyReport(n, sizes, closed, leaves, iso)


@dataclass(frozen=True)
class BoundCheck:
    """One classical inequality evaluated in exact integer arithmetic."""

    name: str
    applies: bool
    satisfied: bool
    detail: str
    slack: int


def check_classical_bounds(n: int, d: int):
    """Evaluate the published diameter inequalities for (n, d)."""
    checks = []
    ub1 = (5 * n + 5) // 3
    checks.append(
        BoundCheck("upper (5n+5)/3", True, d <= ub1, f"{d} <= {ub1}", ub1 - d)
    )
    ub2 = (18 * n) // 11
    checks.append(BoundCheck("upper 18n/11", True, d <= ub2, f"{d} <= {ub2}", ub2 - d))
    if n % 16 == 0:
        ok = 17 * n <= 16 * d
        checks.append(
            BoundCheck("lower 17n/16", True, ok, f"17*{n} <= 16*{d}", 16 * d - 17 * n)
        )
    else:
        checks.append(BoundCheck("lower 17n/16", False, True, "16 does not divide n", 0))
    if n % 14 == 0:
        ok = 15 * n <= 14 * d
        checks.append(
            BoundCheck("lower 15n/14", True, ok, f"15*{n} <= 14*{d}", 14 * d - 15 * n)
        )
    else:
        checks.append(BoundCheck("lower 15n/14", False, True, "14 does not divide n", 0))
    return checks
