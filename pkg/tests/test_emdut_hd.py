import random
from fractions import Fraction as F

import pytest

from emdut.core import Metric, matching_cost, point_set, point_set_1d
from emdut.emd import emd_bruteforce, emd_hungarian
from emdut.emdut_hd import (
    BudgetExceeded,
    Hyperplane,
    arrangement_vertices,
    candidate_translations,
    emdut_hd,
    hyperplanes_l1,
    hyperplanes_linf,
    rotate_45_to_l1,
)
from emdut.sweep1d import emdut_1d_sweep

from conftest import rand_points


def test_hyperplanes_l1_examples():
    B = point_set(2, [(0, 0)])
    planes = hyperplanes_l1(B, point_set(2, [(1, 2)]))
    assert {(p.normal, p.offset) for p in planes} == {
        ((F(1), F(0)), F(-1)),
        ((F(0), F(1)), F(-2)),
    }
    assert len(hyperplanes_l1(B, point_set(2, [(1, 2), (3, 4)]))) == 4
    # duplicate differences collapse
    assert len(hyperplanes_l1(B, point_set(2, [(1, 2), (1, 2)]))) == 2


def test_hyperplanes_linf_examples():
    B = point_set(2, [(0, 0)])
    planes = hyperplanes_linf(B, point_set(2, [(1, 2)]))
    assert {(p.normal, p.offset) for p in planes} == {
        ((F(1), F(0)), F(-1)),
        ((F(0), F(1)), F(-2)),
        ((F(1), F(-1)), F(1)),
        ((F(1), F(1)), F(-3)),
    }
    # d = 1 degenerates to the axis planes
    b1, r1 = point_set_1d([0, 1]), point_set_1d([4, 6])
    assert hyperplanes_linf(b1, r1) == hyperplanes_l1(b1, r1)


def test_hyperplane_family_size_per_pair():
    rng = random.Random(20)
    for d in (2, 3):
        B = rand_points(rng, 1, d, -100, 100)
        R = rand_points(rng, 1, d, 200, 400)  # far apart: no coincidences
        assert len(hyperplanes_linf(B, R)) == d * d


def test_arrangement_vertices_examples():
    h1 = Hyperplane((F(1), F(0)), F(-1))
    h2 = Hyperplane((F(0), F(1)), F(-2))
    assert arrangement_vertices([h1, h2], 2) == ((F(1), F(2)),)
    # parallel pair contributes no vertex
    h3 = Hyperplane((F(1), F(0)), F(-5))
    assert arrangement_vertices([h1, h3], 2) == ()
    # axis-aligned arrangement is the cartesian product of offsets
    B = point_set(2, [(0, 0)])
    R = point_set(2, [(1, 2), (3, 4)])
    verts = arrangement_vertices(hyperplanes_l1(B, R), 2)
    assert set(verts) == {(F(1), F(2)), (F(1), F(4)), (F(3), F(2)), (F(3), F(4))}
    assert set(candidate_translations(B, R, Metric.L1)) == set(verts)


def test_budget_errors_name_the_budget():
    B = point_set(2, [(0, 0), (1, 5)])
    R = point_set(2, [(i, 2 * i + 1) for i in range(4)])
    with pytest.raises(BudgetExceeded) as err:
        emdut_hd(B, R, Metric.LINF, budget=10)
    assert "budget of 10" in str(err.value)


def test_emdut_hd_examples():
    ps = point_set(2, [(0, 0), (4, 1)])
    assert emdut_hd(ps, ps, Metric.L1) == (0, (0, 0), (0, 1))
    value, tau, _ = emdut_hd(point_set(2, [(0, 0)]), point_set(2, [(5, 5)]), Metric.L1)
    assert (value, tau) == (0, (5, 5))
    value, _, _ = emdut_hd(
        point_set(2, [(0, 0), (1, 0)]), point_set(2, [(0, 0), (3, 0)]), Metric.L1
    )
    assert value == 2


def test_emdut_hd_matches_candidate_bruteforce():
    rng = random.Random(21)
    for _ in range(40):
        m = rng.randint(1, 3)
        n = rng.randint(m, 4)
        B, R = rand_points(rng, m, 2), rand_points(rng, n, 2)
        for metric in (Metric.L1, Metric.LINF):
            value, tau, phi = emdut_hd(B, R, metric)
            best = min(
                emd_bruteforce(B.translate(t), R, metric)
                for t in candidate_translations(B, R, metric)
            )
            assert value == best
            assert value <= emd_hungarian(B, R, metric)[0]
            assert matching_cost(B, R, metric, phi, tau) == value


def test_returned_translation_is_optimal_for_returned_matching():
    rng = random.Random(22)
    for _ in range(30):
        B, R = rand_points(rng, 2, 2), rand_points(rng, 3, 2)
        for metric in (Metric.L1, Metric.LINF):
            value, tau, phi = emdut_hd(B, R, metric)
            for cand in candidate_translations(B, R, metric):
                assert matching_cost(B, R, metric, phi, cand) >= value


def test_emdut_hd_agrees_with_1d_sweep():
    rng = random.Random(23)
    for _ in range(30):
        m = rng.randint(1, 4)
        n = rng.randint(m, 6)
        B = point_set_1d([rng.randint(-15, 15) for _ in range(m)])
        R = point_set_1d([rng.randint(-15, 15) for _ in range(n)])
        hd_value, hd_tau, _ = emdut_hd(B, R, Metric.L1)
        sw_value, sw_tau, _ = emdut_1d_sweep(B, R)
        assert (hd_value, hd_tau[0]) == (sw_value, sw_tau)


def test_emdut_hd_linf_three_dimensional():
    rng = random.Random(26)
    for _ in range(10):
        m = rng.randint(1, 2)
        B = rand_points(rng, m, 3, -4, 4)
        R = rand_points(rng, 2, 3, -4, 4)
        value, tau, phi = emdut_hd(B, R, Metric.LINF)
        best = min(
            emd_bruteforce(B.translate(t), R, Metric.LINF)
            for t in candidate_translations(B, R, Metric.LINF)
        )
        assert value == best
        assert matching_cost(B, R, Metric.LINF, phi, tau) == value


def test_rotation_examples():
    rot = rotate_45_to_l1(point_set(2, [(0, 0), (2, 0)]))
    assert rot.points == ((F(0), F(0)), (F(1), F(1)))
    with pytest.raises(ValueError):
        rotate_45_to_l1(point_set_1d([1]))


def test_rotation_turns_linf_into_l1():
    rng = random.Random(24)
    for _ in range(40):
        m = rng.randint(1, 3)
        n = rng.randint(m, 4)
        B, R = rand_points(rng, m, 2), rand_points(rng, n, 2)
        v_inf = emdut_hd(B, R, Metric.LINF)[0]
        v_rot = emdut_hd(rotate_45_to_l1(B), rotate_45_to_l1(R), Metric.L1)[0]
        assert v_inf == v_rot


def test_translation_invariance():
    rng = random.Random(25)
    for _ in range(20):
        B, R = rand_points(rng, 2, 2), rand_points(rng, 3, 2)
        shift = (F(rng.randint(-9, 9), 2), F(rng.randint(-9, 9), 3))
        for metric in (Metric.L1, Metric.LINF):
            assert (
                emdut_hd(B.translate(shift), R, metric)[0]
                == emdut_hd(B, R, metric)[0]
            )


def test_empty_blue_set():
    assert emdut_hd(point_set(2, []), point_set(2, [(1, 1)]), Metric.L1) == (
        0,
        (0, 0),
        (),
    )
