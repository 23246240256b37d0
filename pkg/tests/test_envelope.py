import math
import random
from fractions import Fraction as F

import pytest

from emdut.envelope import (
    LinearFn,
    NaiveEnvelope,
    TreeEnvelope,
    build,
    node_allocations,
)


def test_build_examples():
    empty = build([], "tree")
    assert empty.first_root_at_or_after(F(0)) is None
    with pytest.raises(ValueError):
        empty.envelope_value(F(0))

    single = build([LinearFn(F(-2), F(4))])
    assert single.envelope_value(F(0)) == 4
    assert single.first_root_at_or_after(F(0)) == 2

    pair = build([LinearFn(F(-2), F(4)), LinearFn(F(-1), F(1))])
    assert pair.envelope_value(F(0)) == 1
    assert pair.envelope_value(F(3)) == -2
    assert pair.first_root_at_or_after(F(0)) == 1


def test_build_rejects_slope_disorder():
    with pytest.raises(ValueError):
        build([LinearFn(F(0), F(1)), LinearFn(F(-1), F(1))])


def test_insert_remove_round_trip_and_errors():
    env = build([], "tree")
    env.insert(0, LinearFn(F(-1), F(2)))
    assert env.remove(0) == LinearFn(F(-1), F(2))
    assert len(env) == 0
    with pytest.raises(IndexError):
        env.remove(0)
    env.insert(0, LinearFn(F(0), F(1)))
    with pytest.raises(ValueError):
        env.insert(0, LinearFn(F(5), F(0)))  # would sit above a smaller slope
    with pytest.raises(IndexError):
        env.insert(7, LinearFn(F(1), F(0)))


def test_range_add_contract():
    env = build([LinearFn(F(-1), F(1))])
    env.range_add(0, LinearFn(F(0), F(0)))
    assert env.lines == [LinearFn(F(-1), F(1))]
    env.range_add(0, LinearFn(F(-1), F(2)))
    assert env.lines == [LinearFn(F(-2), F(3))]
    with pytest.raises(ValueError):
        env.range_add(0, LinearFn(F(1), F(0)))


def test_root_none_when_all_positive_constant():
    env = build([LinearFn(F(0), F(3)), LinearFn(F(0), F(5))])
    assert env.first_root_at_or_after(F(-100)) is None


def _random_ops(seed, ops, naive, tree, slope_lo=-40, slope_hi=40):
    rng = random.Random(seed)
    k = len(naive)
    for step in range(ops):
        action = rng.random()
        if action < 0.45 or k == 0:
            pos = rng.randrange(k + 1)
            lo = naive.get(pos - 1)[0] if pos > 0 else None
            hi = naive.get(pos)[0] if pos < k else None
            if lo is None:
                lo = (hi if hi is not None else 0) - 20
            if hi is None:
                hi = lo + 20
            a = rng.randint(math.ceil(lo), math.floor(hi))
            b = rng.randint(-50, 50)
            naive.insert(pos, a, b, step)
            tree.insert(pos, a, b, step)
            k += 1
        elif action < 0.62:
            pos = rng.randrange(k)
            assert naive.remove(pos)[:2] == tree.remove(pos)[:2]
            k -= 1
        else:
            lo = rng.randrange(k)
            da = rng.choice([0, 0, -1, -2, -4])
            db = rng.randint(-30, 30)
            if lo == 0 or naive.get(lo - 1)[0] <= naive.get(lo)[0] + da:
                naive.add_range(lo, k, da, db)
                tree.add_range(lo, k, da, db)
        if k:
            for tau in (rng.randint(-60, 60), F(rng.randint(-99, 99), 2)):
                assert naive.value_at(tau) == tree.value_at(tau)
            t0 = rng.randint(-80, 80)
            assert naive.first_root(t0) == tree.first_root(t0)
    return k


def test_tree_matches_naive_reference():
    for seed in range(60):
        naive = NaiveEnvelope()
        tree = TreeEnvelope(seed=seed)
        _random_ops(seed, 60, naive, tree)


def test_lazy_offsets_flush_to_same_answers():
    # rebuilding from the flushed line list must not change any query
    rng = random.Random(77)
    for seed in range(20):
        naive = NaiveEnvelope()
        tree = TreeEnvelope(seed=seed)
        _random_ops(1000 + seed, 50, naive, tree)
        rebuilt = TreeEnvelope(tree.lines(), seed=seed + 1)
        assert rebuilt.lines() == tree.lines()
        for _ in range(12):
            tau = F(rng.randint(-200, 200), rng.randint(1, 3))
            if len(tree):
                assert rebuilt.value_at(tau) == tree.value_at(tau)
            assert rebuilt.first_root(tau) == tree.first_root(tau)


def test_update_work_grows_sublinearly():
    # measured smoke check: allocations per update should grow far slower
    # than the line count (polylogarithmic target, not asserted tightly)
    costs = {}
    for k in (64, 512):
        rng = random.Random(k)
        tree = TreeEnvelope(seed=1)
        for i in range(k):
            tree.insert(i, i, rng.randint(-50, 50), i)
        before = node_allocations()
        for step in range(100):
            pos = rng.randrange(len(tree))
            a, b, tag = tree.remove(pos)
            tree.insert(pos, a, b, tag)
            tree.first_root(rng.randint(-100, 100))
        costs[k] = (node_allocations() - before) / 100
    assert costs[512] < costs[64] * (512 / 64) / 2, costs
