import math

import numpy as np
import pytest

from altgen.embeddings import (CubeModel, GeneratingSet, ShiftVector, build_Fn,
                               build_sym, build_SN, delta_h_generating_set,
                               embed_pi)
from altgen.gf2 import primitive_order_K_element
from altgen.perms import Permutation
from altgen.ring import EL3Element, random_el3
from altgen.schreier_sims import group_order


def test_embed_identity():
    model = CubeModel(1, 2)
    ident = EL3Element.identity(1, 7)
    assert embed_pi(model, 1, ident).is_identity()


def test_embed_shift_structure():
    # the all-lines order-K element along axis 1 is 7 disjoint 7-cycles at d=2
    model = CubeModel(1, 2)
    M = primitive_order_K_element(1)
    el = EL3Element.from_copy_matrices([M] * 7)
    p = embed_pi(model, 1, el)
    assert p.cycle_type() == (7,) * 7
    sv = ShiftVector(model, 1, np.ones(7, dtype=np.int64))
    assert p == sv.materialize()


def test_embed_is_homomorphism():
    model = CubeModel(1, 2)
    rng = np.random.default_rng(0)
    for _ in range(100):
        g = random_el3(1, 7, rng, length=6)
        h = random_el3(1, 7, rng, length=6)
        assert embed_pi(model, 2, g * h) == embed_pi(model, 2, g) * embed_pi(model, 2, h)


def test_embed_acts_per_line():
    model = CubeModel(1, 2)
    rng = np.random.default_rng(1)
    g = random_el3(1, 7, rng, length=8)
    p = embed_pi(model, 1, g)
    lid = model.geometry.line_id_array(1)
    for x in range(model.N):
        assert lid[p.table[x]] == lid[x]


def test_shift_vector_even_and_inverse():
    model = CubeModel(1, 2)
    rng = np.random.default_rng(2)
    for _ in range(20):
        sv = ShiftVector(model, 1, rng.integers(0, 7, size=7))
        p = sv.materialize()
        assert p.parity == 0
        assert (sv * sv.inverse()).materialize().is_identity()


def test_build_sn_counts_and_regimes():
    sn12 = build_SN(1, 2)
    assert len(sn12) == 72 and sn12.regime == "desk"
    sn16 = build_SN(1, 6)
    assert len(sn16) == 648 and sn16.regime == "desk"
    sn76 = build_SN(7, 6)
    assert len(sn76) == 216 and sn76.regime == "certified-shape"
    assert not sn76.materializable
    with pytest.raises(ValueError):
        sn76.materialize(0)


def test_build_sn_unique_labels_and_parity():
    sn = build_SN(1, 2)
    assert len(set(sn.labels())) == len(sn)
    assert sn.all_even()
    # structural parity agrees with the materialized one
    for i in range(0, len(sn), 17):
        assert sn.parity(i) == sn.materialize(i).parity


def test_build_sn_generates_full_alternating_group():
    sn = build_SN(1, 2)
    assert group_order(sn.permutations()) == math.factorial(49) // 2


def test_window_embeddings():
    from altgen.cli import desk_base
    base = desk_base(10)
    specs, windows = build_Fn(30, base, 10)
    assert len(specs) <= len(windows) * len(base)
    for spec in specs:
        p = spec.payload
        assert p.parity == 0
    order = group_order([s.payload for s in specs])
    assert order == math.factorial(30) // 2
    full = build_sym(30, specs)
    assert group_order([s.payload for s in full]) == math.factorial(30)


def test_build_fn_trivial_window():
    from altgen.cli import desk_base
    base = desk_base(9)
    specs, windows = build_Fn(9, base, 9)
    assert len(windows) == 1
    assert len(specs) == len(base)
    for spec, b in zip(specs, base):
        assert spec.payload == b


def test_delta_h_pluggable_model():
    model = CubeModel(1, 2)
    h = Permutation.from_cycles(7, [tuple(range(7))])
    genset = delta_h_generating_set(model, [h])
    assert len(genset) == 2  # one generator per axis
    p = genset.materialize(0)
    assert p.cycle_type() == (7,) * 7
