from fractions import Fraction

import numpy as np
import pytest

from altgen.embeddings import CubeModel
from altgen.walks import (ExactDistribution, FloatDistribution, WalkConfig,
                          averaging_operator, binomial_sigma,
                          doeblin_contraction_check, full_sweep,
                          mixing_time_points, point_walk_batch, sample_Ei,
                          sample_stream, tuple_walk, urn_bound, urn_mc)


def test_uniform_fixed_by_averaging():
    model = CubeModel(1, 2)
    u = ExactDistribution.uniform(model)
    for axis in (1, 2):
        assert u.axis_average(axis).tv_to_uniform() == 0
    uf = FloatDistribution.uniform(model)
    assert np.allclose(uf.axis_average(1).weights, uf.weights)


def test_axis_average_idempotent():
    model = CubeModel(1, 2)
    rng = np.random.default_rng(0)
    w = rng.random(model.N)
    d = FloatDistribution(model, w / w.sum())
    once = d.axis_average(2)
    twice = once.axis_average(2)
    assert np.allclose(once.weights, twice.weights, atol=1e-15)
    # rational mode: idempotence is exact
    e = ExactDistribution.point_mass(model, 3).axis_average(1)
    again = e.axis_average(1)
    assert [Fraction(n, e.den) for n in e.num] == \
        [Fraction(n, again.den) for n in again.num]


def test_full_sweep_exactly_uniform():
    model = CubeModel(1, 2)
    for start in (0, 17, 48):
        d = full_sweep(ExactDistribution.point_mass(model, start))
        assert d.tv_to_uniform() == 0
    # any distribution, not only point masses
    num = [i % 5 for i in range(model.N)]
    total = sum(num)
    d = ExactDistribution(model, num, total)
    assert full_sweep(d).tv_to_uniform() == 0


def test_mass_preserved():
    model = CubeModel(1, 6)
    rng = np.random.default_rng(1)
    w = rng.random(model.N)
    d = FloatDistribution(model, w / w.sum())
    for axis in range(1, 7):
        d = d.axis_average(axis)
        assert abs(d.weights.sum() - 1.0) < 1e-12


def test_sampled_shift_uniform_chi_square():
    model = CubeModel(1, 2)
    rng = sample_stream(0, 0)
    counts = np.zeros((7, 7), dtype=int)  # line x residue
    trials = 7000
    for _ in range(trials):
        sv = sample_Ei(model, rng, 1)
        for line in range(7):
            counts[line, sv.shifts[line]] += 1
    expected = trials / 7
    for line in range(7):
        chi2 = ((counts[line] - expected) ** 2 / expected).sum()
        # chi-square with 6 dof: mean 6, sd sqrt(12); 4 sigma gate
        assert chi2 < 6 + 4 * np.sqrt(12)


def test_composition_of_samples_is_group_addition():
    model = CubeModel(1, 2)
    rng = sample_stream(1, 0)
    a = sample_Ei(model, rng, 2)
    b = sample_Ei(model, rng, 2)
    assert (a * b).materialize() == a.materialize() * b.materialize()


def test_tuple_distinctness_preserved():
    model = CubeModel(1, 6)
    cfg = WalkConfig(seed=2, samples=50, h=5, pattern="Q2Q1Q2Q1")
    start = np.array([0, 1, 7, 50, 117648])
    stats = tuple_walk(model, cfg, start)  # internal asserts check each step
    assert stats.samples == 50


def test_point_walk_uniform_after_full_block():
    model = CubeModel(1, 6)
    pts = point_walk_batch(model, seed=3, samples=200000, start_point=5,
                           axes=[3, 2, 1, 6, 5, 4])
    # frequency of an arbitrary target within 4 sigma of 1/N
    p = 1 / model.N
    sigma = binomial_sigma(p, 200000)
    for target in (0, 117648, 70000):
        freq = float((pts == target).mean())
        assert abs(freq - p) <= 4 * sigma


def test_h1_exactly_uniform_via_averaging():
    # h = 1 reduces the tuple walk to the point walk, whose distribution
    # after the six averages is exactly uniform
    model = CubeModel(1, 2)
    d = full_sweep(ExactDistribution.point_mass(model, 11))
    assert d.tv_to_uniform() == 0


def test_b1_fraction_bound():
    model = CubeModel(1, 6)
    geo = model.geometry
    start = [geo.index((0, 0, 0, i % 7, i // 7, 0)) for i in range(9)]
    cfg = WalkConfig(seed=4, samples=3000, h=9)
    stats = tuple_walk(model, cfg, np.array(start))
    bound = 1 - Fraction(81, 686)
    sigma = binomial_sigma(bound, cfg.samples)
    assert stats.b1_fraction >= float(bound) - 3 * sigma


def test_doeblin_exact_values():
    rep = doeblin_contraction_check(7, 9)
    assert rep.stated_norm_bound == Fraction(262, 343)
    assert rep.contraction == Fraction(81, 343)
    assert rep.inequality_holds
    assert rep.tuple_space_size == int(np.prod([7**6 - i for i in range(9)], dtype=object))
    zero = doeblin_contraction_check(7, 0)
    assert zero.q_factor == 1 and zero.stated_norm_bound == 1


def test_doeblin_inequality_range():
    for K, h in [(7, 2), (7, 9), (7, 17), (63, 100), (31, 50), (511, 5000)]:
        assert doeblin_contraction_check(K, h).inequality_holds
    # below h = sqrt(2) the chained inequality genuinely fails
    assert not doeblin_contraction_check(7, 1).inequality_holds


def test_urn_bound_exact_and_edge_cases():
    assert urn_bound(10, 10, 10, 3) == Fraction(120, 729)
    assert urn_bound(10, 10, 10, 11) == 0
    assert urn_bound(1, 10, 5, 3) >= 1  # vacuous but valid
    with pytest.raises(ValueError):
        urn_bound(2, 3, 6, 1)


def test_urn_mc_within_bound():
    for l, k, p, q in [(10, 10, 10, 3), (5, 4, 6, 2), (3, 7, 5, 4),
                       (8, 2, 9, 2), (4, 4, 7, 3)]:
        bound = urn_bound(l, k, p, q)
        freq = urn_mc(l, k, p, q, 1500, seed=7)
        sigma = binomial_sigma(bound, 1500)
        assert freq <= float(bound) + 3 * sigma


def test_urn_mc_q_gt_p_impossible():
    assert urn_mc(10, 10, 4, 5, 200, seed=8) == 0.0


def test_stream_independence_of_batching():
    # per-sample streams: splitting the work differently changes nothing
    freqs = []
    for chunks in ((0, 1000),), ((0, 400), (400, 1000)):
        hits = 0
        for lo, hi in chunks:
            for i in range(lo, hi):
                rng = sample_stream(9, i)
                urns = rng.choice(20, size=5, replace=False)
                hits += int((urns < 10).sum()) >= 3
        freqs.append(hits)
    assert freqs[0] == freqs[1]


def test_mixing_time_monotone_and_averaging_one_step():
    model = CubeModel(1, 2)
    op = averaging_operator(model)
    steps, curve = mixing_time_points(op, model, tol=1e-9, lazy=False)
    assert steps == 1
    from altgen.embeddings import build_SN
    from altgen.graphs import schreier_graph
    graph = schreier_graph(build_SN(1, 2))
    steps, curve = mixing_time_points(graph.matvec, model, tol=1e-6)
    assert all(curve[i + 1] <= curve[i] + 1e-12 for i in range(len(curve) - 1))
    assert curve[-1] < 1e-6
