import itertools
from collections import deque
from math import factorial

from pancake.graph import identity_field
from pancake.perm import identity, rank
from pancake.sorter import FlipSequence, greedy_sort, replay, verify_flip_sequence


def test_examples():
    assert greedy_sort((3, 2, 1, 4)).flips == (3,)
    assert greedy_sort(identity(5)).flips == ()
    seq = greedy_sort((2, 1, 4, 3))
    assert seq.flips == (3, 4, 3)
    assert replay(seq) == [
        (2, 1, 4, 3),
        (4, 1, 2, 3),
        (3, 2, 1, 4),
        (1, 2, 3, 4),
    ]


def test_truncated_sequence_fails():
    seq = greedy_sort((2, 1, 4, 3))
    assert verify_flip_sequence(seq)
    assert not verify_flip_sequence(FlipSequence(seq.source, seq.flips[:-1]))


def test_exhaustive_s5():
    field = identity_field(5)
    for p in itertools.permutations(range(1, 6)):
        seq = greedy_sort(p)
        assert verify_flip_sequence(seq)
        assert field.distance(p) <= len(seq.flips) <= 2 * 5 - 3


def test_convention_pin_n4():
    # the flip count sorting u walks the graph from vertex u to the
    # identity, so d(I, u) is the sorting distance of u itself (not of
    # its inverse); pinned against a tuple-space BFS oracle
    def sort_distance(u):
        start = tuple(u)
        dist = {start: 0}
        q = deque([start])
        target = identity(4)
        while q:
            p = q.popleft()
            if p == target:
                return dist[p]
            for i in range(2, 5):
                r = p[i - 1 :: -1] + p[i:]
                if r not in dist:
                    dist[r] = dist[p] + 1
                    q.append(r)
        raise AssertionError("unreachable")

    field = identity_field(4)
    for u in itertools.permutations(range(1, 5)):
        assert field.distance(u) == sort_distance(u)


def test_mean_greedy_dominates_mean_distance():
    field = identity_field(6)
    total_greedy = 0
    for p in itertools.permutations(range(1, 7)):
        total_greedy += len(greedy_sort(p).flips)
    mean_greedy = total_greedy / factorial(6)
    mean_exact = float(field.dist.mean())
    assert mean_greedy >= mean_exact
