import numpy as np
import pytest

from altgen.perms import Permutation, compose, product


def brute_parity(table):
    """Independent oracle: count inversions mod 2."""
    n = len(table)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if table[i] > table[j])
    return inv % 2


def test_identity_compose():
    rng = np.random.default_rng(1)
    p = Permutation.random(30, rng)
    e = Permutation.identity(30)
    assert e * p == p and p * e == p
    assert p * p.inverse() == e and p.inverse() * p == e


def test_composition_convention():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    r = p * q
    # (p o q)(x) = p(q(x))
    for x in range(3):
        assert r(x) == p(q(x))


def test_associativity_and_parity_homomorphism():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        p = Permutation.random(12, rng)
        q = Permutation.random(12, rng)
        assert (p * q).parity == (p.parity + q.parity) % 2
    for _ in range(50):
        p, q, r = (Permutation.random(15, rng) for _ in range(3))
        assert (p * q) * r == p * (q * r)


def test_parity_against_inversion_oracle():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = Permutation.random(100, rng)
        assert p.parity == brute_parity(p.table.tolist())


def test_cycle_type_identity():
    p = Permutation.identity(49)
    assert p.cycle_type() == tuple([1] * 49)


def test_cycle_type_line_shift():
    # shift x -> x+1 mod 7 on the first line of a 7x7 grid
    table = np.arange(49)
    table[:7] = (np.arange(7) + 1) % 7
    p = Permutation(table)
    assert p.cycle_type() == (7,) + (1,) * 42


def test_two_line_tree_cycle():
    # two crossing lines in the 7x7 grid: shift both, apply and trace
    from altgen.embeddings import CubeModel, ShiftVector
    model = CubeModel(1, 2)
    s1 = np.zeros(7, dtype=np.int64)
    s1[0] = 1
    axis1 = ShiftVector(model, 1, s1).materialize()   # the line x2 = 0
    axis2 = ShiftVector(model, 2, s1).materialize()   # the line x1 = 0
    p = axis2 * axis1
    assert p.cycle_type()[0] == 13 == 1 + 2 * 6


def test_cycle_type_conjugation_invariant():
    rng = np.random.default_rng(4)
    for _ in range(50):
        p = Permutation.random(40, rng)
        u = Permutation.random(40, rng)
        assert (u * p * u.inverse()).cycle_type() == p.cycle_type()


def test_mismatched_sizes():
    with pytest.raises(ValueError):
        Permutation.identity(3) * Permutation.identity(4)


def test_validation_rejects_non_bijections():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([0, 1, 3])


def test_product_helper():
    rng = np.random.default_rng(5)
    ps = [Permutation.random(10, rng) for _ in range(4)]
    acc = ps[0] * ps[1] * ps[2] * ps[3]
    assert product(ps) == acc
    assert product([], n=5) == Permutation.identity(5)
