import math

import numpy as np
import pytest

from altgen.embeddings import CubeModel, build_SN, delta_h_generating_set
from altgen.graphs import (ActionGraph, AxisBlockGraph, EdgeGraph, cayley_graph,
                           read_edge_list, schreier_graph, write_edge_list)
from altgen.perms import Permutation
from altgen.spectral import (exact_conductance, expansion_exact, kazhdan_bracket,
                             spectral_gap)


def cyclic_graph(n, shifts=(1,)):
    return ActionGraph([Permutation(np.arange(n) * 0 + (np.arange(n) + s) % n)
                        for s in shifts])


def brute_vertex_expansion(adj, n):
    """Independent oracle for the expansion constant."""
    from itertools import combinations
    best = float("inf")
    for size in range(1, n // 2 + 1):
        for sub in combinations(range(n), size):
            s = set(sub)
            boundary = set()
            for x in sub:
                boundary |= adj[x]
            boundary -= s
            best = min(best, len(boundary) / size)
    return best


def test_complete_graph_gap_analytic():
    for m in (4, 6, 9):
        edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
        rep = spectral_gap(EdgeGraph(m, edges), method="dense")
        assert abs(rep.gap - m / (m - 1)) < 1e-12


def test_disconnected_zero_gap():
    g = EdgeGraph(4, [(0, 1), (2, 3)])
    assert abs(spectral_gap(g, method="dense").gap) < 1e-12
    assert not g.is_connected()


def test_dense_vs_power_agreement():
    rng = np.random.default_rng(0)
    graphs = [ActionGraph([Permutation.random(n, rng) for _ in range(k)])
              for n, k in [(100, 2), (500, 3), (1500, 2)]]
    graphs.append(cyclic_graph(101))
    for g in graphs:
        r_dense = spectral_gap(g, method="dense")
        r_power = spectral_gap(g, method="power", seed=3)
        assert abs(r_dense.gap - r_power.gap) < 1e-6


def test_lanczos_agrees_with_dense():
    rng = np.random.default_rng(1)
    g = ActionGraph([Permutation.random(800, rng) for _ in range(3)])
    r_dense = spectral_gap(g, method="dense")
    r_l = spectral_gap(g, method="lanczos", seed=5)
    assert abs(r_dense.gap - r_l.gap) < 1e-8


def test_gap_invariant_under_relabeling():
    rng = np.random.default_rng(2)
    perms = [Permutation.random(60, rng) for _ in range(3)]
    g = ActionGraph(perms)
    base = spectral_gap(g, method="dense").gap
    for _ in range(3):
        u = Permutation.random(60, rng)
        relabeled = ActionGraph([u * p * u.inverse() for p in perms])
        assert abs(spectral_gap(relabeled, method="dense").gap - base) < 1e-9


def test_expansion_exact_small_graphs():
    c4 = EdgeGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    adj = {0: {1, 3}, 1: {0, 2}, 2: {1, 3}, 3: {0, 2}}
    assert expansion_exact(c4) == brute_vertex_expansion(adj, 4)
    k4 = EdgeGraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    adj4 = {i: set(range(4)) - {i} for i in range(4)}
    assert expansion_exact(k4) == brute_vertex_expansion(adj4, 4)
    disc = EdgeGraph(4, [(0, 1), (2, 3)])
    assert expansion_exact(disc) == 0.0


def test_expansion_exact_random_oracle():
    rng = np.random.default_rng(3)
    for _ in range(5):
        n = 8
        edges = set()
        perm = rng.permutation(n)
        for i in range(n):  # a Hamilton cycle plus chords, 3-regular-ish
            edges.add(tuple(sorted((int(perm[i]), int(perm[(i + 1) % n])))))
        g = EdgeGraph(n, sorted(edges)) if _edge_regular(edges, n) else None
        if g is None:
            continue
        adj = {i: set() for i in range(n)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        assert expansion_exact(g) == brute_vertex_expansion(adj, n)


def _edge_regular(edges, n):
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return len(set(deg)) == 1


def test_cheeger_sandwich_holds():
    rng = np.random.default_rng(4)
    for _ in range(5):
        g = ActionGraph([Permutation.random(40, rng) for _ in range(2)])
        rep = spectral_gap(g, method="dense")
        assert rep.gap / 2 <= rep.cheeger_upper + 1e-12


def test_exact_conductance_between_cheeger_bounds():
    # lam/2 <= h <= sqrt(2 lam) on small explicit graphs
    graphs = [
        EdgeGraph(6, [(i, (i + 1) % 6) for i in range(6)]),
        EdgeGraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
        EdgeGraph(8, [(i, (i + 1) % 8) for i in range(8)]
                  + [(i, (i + 4) % 8) for i in range(4)]),
    ]
    for g in graphs:
        rep = spectral_gap(g, method="dense")
        h = exact_conductance(g)
        lam = rep.gap
        assert lam / 2 <= h + 1e-12
        assert h <= math.sqrt(2 * lam) + 1e-12
        assert h <= rep.cheeger_upper + 1e-12


def test_cayley_graph_sizes():
    z5 = cayley_graph([Permutation.from_cycles(5, [tuple(range(5))])])
    assert z5.n == 5 and z5.degree == 2 and z5.is_connected()
    a = Permutation.from_cycles(5, [(0, 1, 2)])
    b = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
    alt5 = cayley_graph([a, b])
    assert alt5.n == 60 and alt5.is_connected()
    from altgen.schreier_sims import group_order
    assert alt5.n == group_order([a, b])


def test_cayley_limit():
    a = Permutation.from_cycles(9, [(0, 1, 2)])
    b = Permutation.from_cycles(9, [tuple(range(9))])
    with pytest.raises(ValueError, match="limit"):
        cayley_graph([a, b], limit=1000)


def test_kazhdan_full_set_sqrt2():
    # S = G for a few groups of order <= 60: the regular graph is complete
    for elems in ([Permutation(np.array([(i + k) % 5 for i in range(5)]))
                   for k in range(5)],):
        g = ActionGraph(elems)
        rep = spectral_gap(g, method="dense")
        assert abs(rep.gap - 1.0) < 1e-12
        assert abs(rep.kazhdan_lower - math.sqrt(2)) < 1e-12


def test_kazhdan_bracket_z3_collapses():
    z3 = ActionGraph([Permutation(np.array([1, 2, 0])),
                      Permutation(np.array([2, 0, 1]))])
    # 2x2 character oracle: the nontrivial characters move by |w - 1| = sqrt(3)
    lower, upper, rep = kazhdan_bracket(z3, method="dense")
    assert abs(lower - math.sqrt(3)) < 1e-9
    assert abs(upper - math.sqrt(3)) < 1e-9
    assert lower <= upper + 1e-12


def test_bracket_ordering_random():
    rng = np.random.default_rng(5)
    for _ in range(5):
        g = ActionGraph([Permutation.random(30, rng) for _ in range(3)])
        lower, upper, _ = kazhdan_bracket(g, method="dense")
        assert lower <= upper + 1e-9


def test_schreier_small_and_axis_block_agree():
    sn = build_SN(1, 2)
    small = schreier_graph(sn)           # 49 points: action form
    big = AxisBlockGraph(sn)             # same graph, implicit form
    v = np.random.default_rng(6).standard_normal(49)
    assert np.allclose(small.matvec(v), big.matvec(v), atol=1e-12)
    assert small.is_connected() and big.is_connected()
    r1 = spectral_gap(small, method="dense")
    r2 = spectral_gap(big, method="dense")
    assert abs(r1.gap - r2.gap) < 1e-10


def test_matvec_doubly_stochastic():
    sn = build_SN(1, 2)
    g = AxisBlockGraph(sn)
    ones = np.ones(g.n)
    assert np.allclose(g.matvec(ones), ones)
    v = np.random.default_rng(7).standard_normal(g.n)
    assert abs(g.matvec(v).sum() - v.sum()) < 1e-8


def test_edge_list_roundtrip(tmp_path):
    z7 = cyclic_graph(7)
    path = tmp_path / "edges.txt"
    write_edge_list(z7, path)
    back = read_edge_list(path)
    assert back.n == 7
    r1 = spectral_gap(z7, method="dense")
    r2 = spectral_gap(back, method="dense")
    assert abs(r1.gap - r2.gap) < 1e-12
