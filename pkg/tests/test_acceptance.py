"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Heavy cases: degree 10 takes seconds, degree 11 about a minute on one
core.  Degree 12 (~457 MiB field) is optional; enable it with
PANCAKE_ACCEPT_N12=1.
"""

import hashlib
import os
from math import factorial

import pytest

from pancake.bound import build_mset_chunked, build_mset_exact, certify_bound, compare_mset_methods
from pancake.cli import main
from pancake.graph import (
    check_classical_bounds,
    eq7_check,
    eccentricity_of_identity,
    identity_field,
)
from pancake.ham import build_ham, check_translates, sample_translate_check, verify_prop2
from pancake.perm import unrank
from pancake.sorter import greedy_sort, verify_flip_sequence
from pancake.table import DIAMETERS


def _report(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_01_table_reproduction():
    computed = {n: eccentricity_of_identity(n) for n in range(2, 12)}
    ok = all(computed[n] == DIAMETERS[n] for n in computed)
    _report(1, ok, f"eccentricity of identity for n=2..11: {computed}")


@pytest.mark.skipif(
    os.environ.get("PANCAKE_ACCEPT_N12") != "1",
    reason="optional: set PANCAKE_ACCEPT_N12=1 (needs ~457 MiB and several minutes)",
)
def test_criterion_01b_table_reproduction_n12():
    ecc = eccentricity_of_identity(12)
    _report("1b", ecc == DIAMETERS[12], f"n=12 eccentricity {ecc}")


def test_criterion_02_classical_bounds():
    bad = []
    for n in range(2, 20):
        d = DIAMETERS[n]
        for chk in check_classical_bounds(n, d):
            if chk.applies and not chk.satisfied:
                bad.append((n, chk.name, chk.detail))
    _report(2, not bad, f"classical bounds for n=2..19, violations: {bad}")


def test_criterion_03_vertex_transitive_distances():
    from pancake.graph import verify_prop3

    eq_ok = True
    for n in range(2, 7):
        rep = verify_prop3(n, eq7_pairs=200, seed=0)
        eq_ok &= rep.eccentricities_equal and not rep.eq7_failures
    checked, failures = eq7_check(7, 10_000, seed=0)
    ok = eq_ok and not failures
    _report(
        3,
        ok,
        f"all eccentricities equal for n<=6; d(u,v)=d(I,u^-1 v) on {checked} "
        f"random pairs at n=7 with {len(failures)} failures",
    )


def test_criterion_04_monotonicity():
    eccs = [eccentricity_of_identity(n) for n in range(2, 12)]
    nondec = all(a <= b for a, b in zip(eccs, eccs[1:]))
    matches = eccs == [DIAMETERS[n] for n in range(2, 12)]
    _report(4, nondec and matches, f"identity eccentricities n=2..11: {eccs}")


def test_criterion_05_translate_trees_are_spanning_paths():
    h4 = build_ham(4)
    rep4 = check_translates(h4, range(factorial(4)))
    reps = [rep4]
    for n in (5, 6):
        reps.append(sample_translate_check(build_ham(n), 1000, seed=n))
    ok = all(not r.failures for r in reps)
    detail = ", ".join(f"n={r.n}: {r.checked} translates, {len(r.failures)} failures" for r in reps)
    _report(5, ok, detail)


def test_criterion_06_translate_tree_distance_experiment():
    verdicts = {}
    ok = True
    for n in range(3, 7):
        rep = verify_prop2(n)
        ok &= rep.lower_bound_ok
        ok &= sum(rep.gap_histogram.values()) == factorial(n)
        ok &= rep.counterexample_count == sum(
            c for g, c in rep.gap_histogram.items() if g > 0
        )
        ok &= min(rep.gap_histogram) >= 0
        verdicts[n] = (rep.equality_holds, rep.counterexample_count, rep.max_gap)
    ok &= verdicts[3][0]  # equality must hold on the 6-cycle
    _report(
        6,
        ok,
        "lower bound holds n=3..6; (equality, counterexamples, max gap) = "
        f"{verdicts}",
    )


def test_criterion_07_bound_soundness():
    rows = {}
    ok = True
    for n in range(4, 10):
        rep = certify_bound(n)
        sound = (
            rep.exact_diameter
            <= rep.threshold + rep.d_n_refined
            <= rep.threshold + rep.d_n
        )
        ok &= sound and rep.sound
        rows[n] = (rep.exact_diameter, rep.bound_refined, rep.bound)
    _report(7, ok, f"n=4..9 exact <= refined bound <= bound: {rows}")


def test_criterion_08_mset_method_agreement():
    rows = []
    consistent = True
    for n in range(4, 8):
        for t in range(1, DIAMETERS[n - 1] + 1):
            rep = compare_mset_methods(n, t)
            # the report must enumerate every discrepancy exactly
            e = set(int(x) for x in build_mset_exact(n, t).members)
            c = set(int(x) for x in build_mset_chunked(n, t).members)
            consistent &= set(rep.only_exact) == e - c
            consistent &= set(rep.only_chunked) == c - e
            consistent &= rep.agrees == (e == c)
            if not rep.agrees:
                rows.append((n, t, len(rep.only_exact), len(rep.only_chunked)))
    _report(
        8,
        consistent,
        f"all reports internally consistent; discrepancies (n, t, missed, extra): {rows}",
    )


def test_criterion_09_sorter():
    ok = True
    worst = {}
    for n in range(2, 8):
        field = identity_field(n)
        hi = 0
        for r in range(factorial(n)):
            p = unrank(r, n)
            seq = greedy_sort(p)
            d = int(field.dist[r])
            if not verify_flip_sequence(seq) or not d <= len(seq.flips) <= max(0, 2 * n - 3):
                ok = False
            hi = max(hi, len(seq.flips))
        worst[n] = hi
    _report(9, ok, f"greedy in [exact, 2n-3] exhaustively for n<=7; worst counts {worst}")


def test_criterion_10_determinism(tmp_path):
    files = []
    for w in ("1", "8"):
        path = tmp_path / f"n9-w{w}.pnkd"
        rc = main(["diameter", "--n", "9", "--workers", w, "--field-out", str(path)])
        assert rc == 0
        files.append(hashlib.sha256(path.read_bytes()).hexdigest())
    _report(10, files[0] == files[1], f"n=9 field hashes across worker counts: {files}")
