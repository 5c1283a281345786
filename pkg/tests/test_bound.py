from math import factorial

import numpy as np
import pytest

import pancake.bound as bound_mod
from pancake.bound import (
    ChunkBudgetError,
    MSet,
    analyze_components,
    build_mset_chunked,
    build_mset_exact,
    certify_bound,
    compare_mset_methods,
    compute_dn,
    _induced_diameter,
)
from pancake.graph import identity_field
from pancake.perm import apply_reversal, identity, rank
from pancake.table import DIAMETERS


def test_exact_mset_examples():
    assert len(build_mset_exact(4, 3)) == 14  # layers [.., 11, 3]
    assert len(build_mset_exact(3, 1)) == 5  # everything but the identity
    assert len(build_mset_exact(5, 0)) == factorial(5)


def test_exact_mset_membership():
    field = identity_field(4)
    m = build_mset_exact(4, 3, field)
    assert (field.dist[m.members] >= 3).all()
    outside = np.setdiff1d(np.arange(factorial(4)), m.members)
    assert (field.dist[outside] < 3).all()


def test_monotone_pruning():
    prev = None
    for t in range(DIAMETERS[4], 0, -1):
        cur = set(int(x) for x in build_mset_exact(5, t).members)
        if prev is not None:
            assert prev <= cur
        prev = cur


def test_chunked_matches_exact_small_thresholds():
    # single sub-5 chunk: walk interiors are exactly the shallow layers
    for n, t in [(4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3), (6, 3)]:
        rep = compare_mset_methods(n, t)
        assert rep.agrees, (n, t, rep)


def test_chunked_threshold_one_is_nonidentity_set():
    m = build_mset_chunked(5, 1)
    assert len(m) == factorial(5) - 1
    assert 0 not in m.members  # identity pruned


def test_agreement_report_itemizes_discrepancies():
    # the literal walk-pruning procedure re-admits some shallow vertices
    # as walk endpoints at deeper thresholds; the report must name them
    rep = compare_mset_methods(5, 4)
    field = identity_field(5)
    assert rep.only_exact == ()  # chunked never loses a far vertex here
    for r in rep.only_chunked:
        assert field.dist[r] < 4
    assert rep.agrees == (not rep.only_exact and not rep.only_chunked)


def test_chunked_node_budget():
    with pytest.raises(ChunkBudgetError):
        build_mset_chunked(7, 7, node_budget=100)


def test_chunked_degree_cap():
    with pytest.raises(ValueError):
        build_mset_chunked(10, 3)


def test_components_empty_and_singletons():
    empty = MSet(4, 99, np.empty(0, np.int64), "exact")
    comp = analyze_components(empty)
    assert comp.count == 0
    d_n, refined, unreach = compute_dn(empty, identity_field(4), comp)
    assert (d_n, refined, unreach) == (0, 0, 0)

    # two non-adjacent vertices: singleton components, no induced edge
    iso = MSet(4, 0, np.array(sorted([rank((1, 2, 3, 4)), rank((1, 3, 2, 4))]), np.int64), "exact")
    comp = analyze_components(iso)
    assert comp.sizes == (1, 1)
    assert _induced_diameter(comp) == 0


def test_single_edge_component():
    members = np.array(sorted([rank(identity(4)), rank(apply_reversal(identity(4), 2))]), np.int64)
    mset = MSet(4, 0, members, "exact")
    comp = analyze_components(mset)
    assert comp.sizes == (2,)
    d_n, refined, unreach = compute_dn(mset, identity_field(4), comp)
    assert d_n == 1 and refined == 1 and unreach == 0


def test_n4_component_structure_against_oracle():
    # explicit induced-subgraph BFS over the 14 far vertices of degree 4
    mset = build_mset_exact(4, 3)
    members = set(int(x) for x in mset.members)
    adj = {}
    from pancake.perm import unrank

    for r in members:
        p = unrank(r, 4)
        adj[r] = [
            rank(apply_reversal(p, i))
            for i in range(2, 5)
            if rank(apply_reversal(p, i)) in members
        ]
    # oracle components by BFS over the dict
    seen = set()
    sizes = []
    for s in members:
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v])
        seen |= comp
        sizes.append(len(comp))
    comp_rep = analyze_components(mset)
    assert tuple(sorted(sizes, reverse=True)) == comp_rep.sizes

    # oracle max pairwise distance
    def bfs_from(s):
        dist = {s: 0}
        q = [s]
        while q:
            v = q.pop(0)
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    q.append(u)
        return dist

    oracle_dn = max(max(bfs_from(s).values()) for s in members)
    assert _induced_diameter(comp_rep) == oracle_dn


def test_bounding_diameter_matches_brute_force(monkeypatch):
    mset = build_mset_exact(6, 4)
    comp = analyze_components(mset)
    brute = _induced_diameter(comp)
    monkeypatch.setattr(bound_mod, "BRUTE_FORCE_LIMIT", 0)
    assert _induced_diameter(comp) == brute


def test_certify_bound_n5():
    rep = certify_bound(5)
    assert rep.threshold == 4
    assert rep.exact_diameter == 5
    assert rep.d_n >= 1  # 5 <= 4 + d_5
    assert rep.bound == 4 + rep.d_n
    assert rep.sound
    assert rep.longest_segment_T == rep.d_n
    assert rep.d_n_refined <= rep.d_n
    assert rep.bound_refined <= rep.bound


@pytest.mark.parametrize("n", [4, 5, 6])
def test_soundness_small(n):
    rep = certify_bound(n)
    assert rep.exact_diameter <= rep.threshold + rep.d_n_refined <= rep.threshold + rep.d_n
    assert rep.threshold <= rep.exact_diameter  # previous diameter is a lower bound


def test_certify_bound_rejects_small_degree():
    with pytest.raises(ValueError):
        certify_bound(3)


def test_certify_chunked_embeds_agreement():
    rep = certify_bound(5, mset_method="chunked")
    assert rep.mset_method == "chunked"
    assert rep.agreement is not None
    d = rep.to_dict()
    assert "mset_agreement" in d
    assert d["mset_agreement"]["agrees"] == rep.agreement.agrees


def test_report_serialization_keys():
    d = certify_bound(4).to_dict()
    for key in [
        "n",
        "threshold",
        "mset_size",
        "mset_method",
        "component_sizes",
        "longest_segment_T",
        "d_n",
        "d_n_refined",
        "bound",
        "bound_refined",
        "exact_diameter",
        "sound",
        "classical_bounds",
    ]:
        assert key in d
    assert d["component_sizes"] == sorted(d["component_sizes"], reverse=True)
