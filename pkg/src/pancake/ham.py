"""Hamiltonian orders of the prefix-reversal graph and translate trees.

A Hamiltonian order is built recursively over the copies-of-smaller-graph
hierarchy: a flip program for degree n-1 (which never touches the last
entry) sweeps one copy, a full reversal r_n hops to the next copy, and so
on through all n copies.  Validity is never assumed: every constructed
order goes through ``validate_ham`` before it is returned.

Left translations x -> g.x map right-multiplication edges to edges, so
translating a Hamiltonian order by every g in S_n yields a candidate
path-covering collection of spanning trees.  Whether the collection
actually realizes every graph distance is checked empirically via the
quotient-gap table, not assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

import numpy as np

from . import _kernels
from .graph import identity_field
from .perm import Perm, apply_reversal, identity, rank, unrank

HAM_MAGIC = "PNKH"


@dataclass
class HamOrder:
    n: int
    order: np.ndarray  # int64 LexRanks, length n!
    cyclic: bool
    _perms: np.ndarray | None = None  # lazily built (n!, n) 0-based entries

    def perms(self) -> np.ndarray:
        if self._perms is None:
            arr = np.empty((len(self.order), self.n), dtype=np.int64)
            for k, r in enumerate(self.order):
                arr[k] = [v - 1 for v in unrank(int(r), self.n)]
            self._perms = arr
        return self._perms

    def text(self) -> str:
        head = f"# {HAM_MAGIC} n={self.n} cyclic={int(self.cyclic)}"
        return "\n".join([head] + [str(int(r)) for r in self.order]) + "\n"

    @classmethod
    def parse(cls, text: str) -> "HamOrder":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith(f"# {HAM_MAGIC} "):
            raise ValueError("missing PNKH header line")
        fields = dict(tok.split("=") for tok in lines[0].split()[2:])
        n = int(fields["n"])
        cyclic = bool(int(fields["cyclic"]))
        order = np.array([int(ln) for ln in lines[1:]], dtype=np.int64)
        return cls(n, order, cyclic)


def zaks_flips(n: int):
    """Flip program visiting all n! permutations, one reversal per step."""
    if n == 2:
        return [2]
    inner = zaks_flips(n - 1)
    out = []
    for _ in range(n - 1):
        out += inner
        out.append(n)
    out += inner
    return out


def build_ham(n: int, want_cycle: bool = True) -> HamOrder:
    """Hamiltonian path (or cycle) of P_n starting at the identity, 3 <= n <= 8."""
    if not 3 <= n <= 8:
        raise ValueError("Hamiltonian construction is limited to 3 <= n <= 8")
    p = identity(n)
    ranks = [rank(p)]
    for i in zaks_flips(n):
        p = apply_reversal(p, i)
        ranks.append(rank(p))
    order = np.array(ranks, dtype=np.int64)
    h = HamOrder(n, order, cyclic=want_cycle)
    res = validate_ham(h)
    if not res.ok:
        raise RuntimeError(f"construction bug: {res.reason} at index {res.first_violation}")
    return h


@dataclass(frozen=True)
class HamValidation:
    ok: bool
    first_violation: int | None
    reason: str


def _adjacent_pairs(perms: np.ndarray) -> np.ndarray:
    """Whether each consecutive row pair differs by exactly one prefix reversal.

    For permutations, if b equals a with its first i entries reversed
    (i >= 2), then position i-1 is the last mismatch, so the reversal
    length is recoverable from the mismatch pattern alone.
    """
    a = perms[:-1]
    b = perms[1:]
    n = perms.shape[1]
    mism = a != b
    ok = mism.any(axis=1)
    last = (n - 1) - np.argmax(mism[:, ::-1], axis=1)
    ilen = last + 1
    ok &= ilen >= 2
    for i0 in np.unique(ilen[ok]) if ok.any() else []:
        rows = np.flatnonzero(ok & (ilen == i0))
        good = (b[rows, :i0] == a[rows, i0 - 1 :: -1]).all(axis=1)
        ok[rows] &= good
    return ok


def sequence_is_ham(perms: np.ndarray, cyclic: bool):
    """(ok, first bad index, reason) for an explicit vertex sequence."""
    m, n = perms.shape
    if m != factorial(n):
        return False, None, f"length {m} != {n}!"
    ok = _adjacent_pairs(perms)
    if not ok.all():
        k = int(np.flatnonzero(~ok)[0])
        return False, k, f"vertices {k} and {k + 1} are not adjacent"
    if cyclic:
        closure = _adjacent_pairs(perms[[m - 1, 0]])
        if not closure.all():
            return False, m - 1, "last and first vertices are not adjacent"
    return True, None, "ok"


def validate_ham(h: HamOrder) -> HamValidation:
    order = np.asarray(h.order, dtype=np.int64)
    if order.shape[0] != factorial(h.n):
        return HamValidation(False, None, f"length {order.shape[0]} != {h.n}!")
    seen = np.zeros(factorial(h.n), dtype=bool)
    for k, r in enumerate(order):
        if r < 0 or r >= seen.shape[0] or seen[r]:
            return HamValidation(False, k, f"rank {int(r)} repeated or out of range")
        seen[r] = True
    ok, idx, reason = sequence_is_ham(h.perms(), h.cyclic)
    return HamValidation(ok, idx, reason)


def translate_perms(h: HamOrder, g: Perm) -> np.ndarray:
    """Vertex sequence of the translate g.H as a (n!, n) 0-based array."""
    g0 = np.array([v - 1 for v in g], dtype=np.int64)
    return g0[h.perms()]


@dataclass(frozen=True)
class TranslateCheck:
    n: int
    checked: int
    failures: tuple  # ranks of translating elements whose image is not Hamiltonian


def check_translates(h: HamOrder, g_ranks) -> TranslateCheck:
    """Verify that each listed left translate of h is again a Hamiltonian order."""
    failures = []
    for gr in g_ranks:
        g = unrank(int(gr), h.n)
        ok, _, _ = sequence_is_ham(translate_perms(h, g), h.cyclic)
        if not ok:
            failures.append(int(gr))
    return TranslateCheck(h.n, len(list(g_ranks)), tuple(failures))


def sample_translate_check(h: HamOrder, count: int, seed: int = 0) -> TranslateCheck:
    total = factorial(h.n)
    if count >= total:
        g_ranks = range(total)
    else:
        rng = random.Random(seed)
        g_ranks = [rng.randrange(total) for _ in range(count)]
    return check_translates(h, g_ranks)


def translate_position_index(h: HamOrder) -> np.ndarray:
    """Minimum order-position gap realizing each group element as a quotient.

    minseg[rank(w)] is the least m - k over index pairs k < m in h with
    order[k]^-1 . order[m] = w.  Because left translation preserves
    quotients, the minimum over all translate trees of the tree distance
    between u and v equals minseg[rank(u^-1 v)], which reduces the whole
    translate collection to this single table.
    """
    perms = h.perms()
    invs = np.empty_like(perms)
    for k in range(perms.shape[0]):
        invs[k, perms[k]] = np.arange(h.n, dtype=np.int64)
    return _kernels.minseg_table(perms, invs, _kernels.FACTORIALS)


@dataclass(frozen=True)
class Prop2Report:
    """Comparison of translate-tree distances against graph distances.

    ``equality_holds`` is the empirical verdict for this degree; the
    lower-bound direction (tree distance >= graph distance) must hold
    unconditionally since every tree path is a walk in the graph.
    """

    n: int
    lower_bound_ok: bool
    equality_holds: bool
    counterexample_count: int
    max_gap: int
    gap_histogram: dict  # (minseg - graph distance) -> count
    tie_break: str = "smallest gap, then smallest start index"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lower_bound_ok": self.lower_bound_ok,
            "equality_holds": self.equality_holds,
            "counterexample_count": self.counterexample_count,
            "max_gap": self.max_gap,
            "gap_histogram": {str(k): v for k, v in sorted(self.gap_histogram.items())},
            "tie_break": self.tie_break,
        }


def verify_prop2(n: int, h: HamOrder | None = None) -> Prop2Report:
    """Does some translate tree realize every graph distance from the identity?"""
    if not 3 <= n <= 7:
        raise ValueError("quotient-gap scan is limited to 3 <= n <= 7")
    if h is None:
        h = build_ham(n, want_cycle=False)
    minseg = translate_position_index(h)
    if (minseg < 0).any():
        raise RuntimeError("some group element never occurs as an order quotient")
    dist = identity_field(n).dist.astype(np.int64)
    gaps = minseg - dist
    hist: dict = {}
    for g in np.unique(gaps):
        hist[int(g)] = int((gaps == g).sum())
    counter = int((gaps > 0).sum())
    return Prop2Report(
        n=n,
        lower_bound_ok=bool((gaps >= 0).all()),
        equality_holds=counter == 0,
        counterexample_count=counter,
        max_gap=int(gaps.max()),
        gap_histogram=hist,
    )
