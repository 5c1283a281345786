"""Permutations in one-line notation and the prefix-reversal generators.

A permutation of degree n is a plain tuple of the integers 1..n, e.g.
``(3, 1, 2)`` meaning the map 1->3, 2->1, 3->2.  Every operation here is
pure: nothing mutates its arguments, and values are freely shareable
across threads.

The generator r_i reverses the first i entries of the one-line notation.
r_1 is the identity and is excluded, so valid reversal indices are 2..n.
Composition is fixed as ``compose(a, b)(j) = a(b(j))``, which makes
generator application a right multiplication:
``apply_reversal(p, i) == compose(p, reversal_perm(n, i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

# n! must stay well inside a 64-bit integer.
MAX_DEGREE = 20

Perm = tuple


class InvalidGeneratorError(ValueError):
    """Reversal index outside [2, n]."""


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def check_perm(entries) -> Perm:
    """Validate one-line notation, naming the duplicated or missing value."""
    p = tuple(int(x) for x in entries)
    n = len(p)
    if not 2 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must be in [2, {MAX_DEGREE}], got {n}")
    seen = [False] * (n + 1)
    for v in p:
        if not 1 <= v <= n:
            raise ValueError(f"value {v} out of range 1..{n}")
        if seen[v]:
            raise ValueError(f"duplicate value {v}; not a bijection")
        seen[v] = True
    missing = [v for v in range(1, n + 1) if not seen[v]]
    if missing:  # unreachable given the duplicate check, kept for clarity
        raise ValueError(f"missing value {missing[0]}; not a bijection")
    return p


def parse_perm(text: str) -> Perm:
    """Parse the space-separated text form, e.g. ``"3 1 2"``."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty permutation")
    entries = []
    for tok in tokens:
        try:
            entries.append(int(tok))
        except ValueError:
            raise ValueError(f"invalid token {tok!r}; expected an integer") from None
    return check_perm(entries)


def format_perm(p: Perm) -> str:
    return " ".join(str(v) for v in p)


def apply_reversal(p: Perm, i: int) -> Perm:
    """Reverse the first i entries of p (the generator r_i, 2 <= i <= n)."""
    if not 2 <= i <= len(p):
        raise InvalidGeneratorError(
            f"reversal index {i} outside [2, {len(p)}] (r_1 is the identity and excluded)"
        )
    return p[i - 1 :: -1] + p[i:]


def reversal_perm(n: int, i: int) -> Perm:
    """One-line notation of the generator r_i itself."""
    return apply_reversal(identity(n), i)


def compose(a: Perm, b: Perm) -> Perm:
    """c with c(j) = a(b(j)).  Degrees must match."""
    if len(a) != len(b):
        raise ValueError(f"degree mismatch: {len(a)} vs {len(b)}")
    return tuple(a[v - 1] for v in b)


def inverse(p: Perm) -> Perm:
    q = [0] * len(p)
    for j, v in enumerate(p):
        q[v - 1] = j + 1
    return tuple(q)


def rank(p: Perm) -> int:
    """Lexicographic rank (Lehmer code) in [0, n!)."""
    n = len(p)
    r = 0
    for k in range(n):
        smaller = sum(1 for j in range(k + 1, n) if p[j] < p[k])
        r += smaller * factorial(n - 1 - k)
    return r


def unrank(r: int, n: int) -> Perm:
    """Inverse of rank; r must lie in [0, n!)."""
    total = factorial(n)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range [0, {total})")
    avail = list(range(1, n + 1))
    out = []
    for k in range(n):
        f = factorial(n - 1 - k)
        d, r = divmod(r, f)
        out.append(avail.pop(d))
    return tuple(out)


@dataclass(frozen=True)
class GpStats:
    """Adjacency/block/free statistics of a permutation.

    ``adjacency_positions`` holds the positions j (1-based) such that the
    pair (j, j+1) is an adjacency: |p(j) - p(j+1)| = 1 or
    {p(j), p(j+1)} = {1, n}.  ``blocks`` are the maximal runs of
    consecutive adjacencies, given as inclusive entry spans (start, end).
    ``free_positions`` are the positions covered by no adjacency on
    either side.
    """

    adjacency_positions: frozenset
    blocks: tuple
    free_positions: frozenset


def gp_stats(p: Perm) -> GpStats:
    n = len(p)
    adj = set()
    for j in range(1, n):
        a, b = p[j - 1], p[j]
        if abs(a - b) == 1 or {a, b} == {1, n}:
            adj.add(j)
    blocks = []
    j = 1
    while j < n:
        if j in adj:
            start = j
            while j in adj:
                j += 1
            blocks.append((start, j))  # adjacencies start..j-1 cover entries start..j
        else:
            j += 1
    free = frozenset(
        j for j in range(1, n + 1) if j not in adj and (j - 1) not in adj
    )
    return GpStats(frozenset(adj), tuple(blocks), free)
