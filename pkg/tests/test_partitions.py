from hypothesis import given, strategies as st

from hilbclass.partitions import (
    Partition,
    partition_concat,
    partition_stats,
    partitions_of,
    table_order,
)

parts = st.lists(st.integers(1, 6), max_size=6)


def euler_counts(n_max):
    """Partition numbers from Euler's pentagonal recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def test_stats_examples():
    assert partition_stats((2, 1)) == (2, 3, 5, 1)
    assert partition_stats((1, 1, 2)) == (3, 4, 6, 2)
    assert partition_stats(()) == (0, 0, 0, 1)


def test_concat_examples():
    assert partition_concat((2,), (1,)) == (2, 1)
    assert partition_concat((1, 1), (1,)) == (1, 1, 1)
    assert partition_concat((3, 1), (2, 1)) == (3, 2, 1, 1)


def test_partitions_of_small():
    assert partitions_of(0) == [()]
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions_of(6)) == 11


def test_counts_match_pentagonal_recurrence():
    counts = euler_counts(18)
    for n in range(19):
        lams = partitions_of(n)
        assert len(lams) == counts[n]
        assert len(set(lams)) == len(lams)
        assert all(lam.weight == n for lam in lams)


def test_table_order_layout():
    lams = sorted((lam for n in range(1, 4) for lam in partitions_of(n)), key=table_order)
    assert lams == [(1,), (1, 1), (2,), (1, 1, 1), (2, 1), (3,)]


def test_parse_round_trip():
    for n in range(7):
        for lam in partitions_of(n):
            assert Partition.parse(str(lam)) == lam


def test_rejects_nonpositive_parts():
    try:
        Partition([2, 0])
    except ValueError:
        return
    raise AssertionError("zero part accepted")


@given(parts, parts, parts)
def test_concat_commutative_associative(a, b, c):
    assert partition_concat(a, b) == partition_concat(b, a)
    assert partition_concat(partition_concat(a, b), c) == partition_concat(a, partition_concat(b, c))


@given(parts, parts)
def test_stats_additive_under_concat(a, b):
    sa, sb, sab = partition_stats(a), partition_stats(b), partition_stats(partition_concat(a, b))
    assert sab.length == sa.length + sb.length
    assert sab.weight == sa.weight + sb.weight
    assert sab.norm2 == sa.norm2 + sb.norm2


@given(parts)
def test_partition_is_order_free(a):
    assert Partition(a) == Partition(reversed(a)) == Partition(sorted(a))
