"""Greedy prefix-reversal sorter: an explicit constructive upper bound.

Sorting a permutation by prefix reversals walks the graph from that
vertex to the identity (each flip is a right multiplication), so the
flip count of any sorting sequence upper-bounds the graph distance
d(I, u).  The greedy strategy places values n, n-1, ..., 2 in turn with
at most two flips each, never more than 2n - 3 in total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm import Perm, apply_reversal, format_perm, identity


@dataclass(frozen=True)
class FlipSequence:
    source: Perm
    flips: tuple

    def __len__(self) -> int:
        return len(self.flips)


def greedy_sort(p: Perm) -> FlipSequence:
    """Sort p to the identity, largest misplaced value first."""
    n = len(p)
    cur = p
    flips = []
    for v in range(n, 1, -1):
        if cur[v - 1] == v:
            continue
        pos = cur.index(v) + 1
        if pos > 1:
            cur = apply_reversal(cur, pos)
            flips.append(pos)
        cur = apply_reversal(cur, v)
        flips.append(v)
    return FlipSequence(p, tuple(flips))


def replay(f: FlipSequence):
    """The vertex trace of a flip sequence, starting at its source."""
    trace = [f.source]
    cur = f.source
    for i in f.flips:
        cur = apply_reversal(cur, i)
        trace.append(cur)
    return trace


def verify_flip_sequence(f: FlipSequence) -> bool:
    """Replay reaches the identity and the greedy length bound holds."""
    n = len(f.source)
    if len(f.flips) > max(0, 2 * n - 3):
        return False
    return replay(f)[-1] == identity(n)


def trace_text(f: FlipSequence) -> str:
    return "\n".join(format_perm(p) for p in replay(f)) + "\n"
