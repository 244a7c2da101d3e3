"""Axis embeddings of the line groups into Alt(N) and labeled generating sets.

Each axis i carries one embedding: an element acting independently on every
axis-i line (a matrix per line, or a cyclic shift per line) becomes a
permutation of all N cube points.  The main constructions are the involution
generating set pulled through all d embeddings and the window-embedded sets
for general degrees.
"""

import numpy as np

from .geometry import CubeGeometry
from .gf2 import SideFieldAction
from .perms import Permutation
from .ring import EL3Element, el3_generating_set, el3_generating_set_size
from . import blocks as _blocks

# discrete-log tables get big past this side length
DLOG_LIMIT = 1 << 21


class CubeModel:
    """Geometry plus the side-field labeling shared by all constructions."""

    def __init__(self, s, d):
        self.geometry = CubeGeometry(s, d)
        self.s = s
        self.d = d
        self.K = self.geometry.K
        self.N = self.geometry.N
        self._action = None

    @property
    def materializable(self):
        return self.geometry.materializable and self.K <= DLOG_LIMIT

    @property
    def action(self):
        if self._action is None:
            if self.K > DLOG_LIMIT:
                raise ValueError(f"side {self.K} too large for discrete-log tables")
            self._action = SideFieldAction(self.s)
        return self._action

    def lines_to_permutation(self, axis, line_perms):
        """Permutation applying line_perms[line] within each axis-`axis` line.

        line_perms: (lines, K) int array, each row a permutation of [0, K).
        """
        geo = self.geometry
        lp = geo.line_points(axis)
        lid = geo.line_id_array(axis)
        pos = geo.coord_array(axis)
        table = lp[lid, np.asarray(line_perms)[lid, pos]]
        return Permutation(table, _validate=False)


class ShiftVector:
    """Element of the axis-i image of the product of cyclic line groups."""

    def __init__(self, model, axis, shifts):
        geo = model.geometry
        shifts = np.asarray(shifts, dtype=np.int64) % geo.K
        if shifts.shape != (geo.lines_per_axis,):
            raise ValueError(
                f"expected one shift per line ({geo.lines_per_axis}), got {shifts.shape}")
        if not 1 <= axis <= geo.d:
            raise ValueError(f"axis {axis} out of range")
        shifts.setflags(write=False)
        self.model = model
        self.axis = axis
        self.shifts = shifts

    def materialize(self):
        geo = self.model.geometry
        lp = geo.line_points(self.axis)
        lid = geo.line_id_array(self.axis)
        pos = geo.coord_array(self.axis)
        table = lp[lid, (pos + self.shifts[lid]) % geo.K]
        return Permutation(table, _validate=False)

    def inverse(self):
        return ShiftVector(self.model, self.axis, -self.shifts)

    def __mul__(self, other):
        if not isinstance(other, ShiftVector):
            return NotImplemented
        if other.axis != self.axis:
            raise ValueError("can only merge shift vectors on the same axis")
        return ShiftVector(self.model, self.axis, self.shifts + other.shifts)

    def is_identity(self):
        return not self.shifts.any()

    def __repr__(self):
        nz = int(np.count_nonzero(self.shifts))
        return f"ShiftVector(axis={self.axis}, {nz} shifted lines)"


def embed_pi(model, axis, el3):
    """The axis-i embedding applied to one element of the product group.

    Copy j of the element acts on axis-i line j through the discrete-log
    labeling; the result permutes every line independently.
    """
    vid, tables = el3_line_actions(model, el3)
    return model.lines_to_permutation(axis, tables[vid])


def el3_line_actions(model, el3):
    """Per-line actions of an EL3 element: (variant ids, variant K-perms)."""
    geo = model.geometry
    if el3.m != geo.lines_per_axis:
        raise ValueError(
            f"element has {el3.m} copies; geometry needs {geo.lines_per_axis}")
    sig = np.concatenate(
        [el3.blocks[i][j].rows for i in range(3) for j in range(3)], axis=1)
    _, rep_idx, vid = np.unique(sig, axis=0, return_index=True, return_inverse=True)
    tables = np.empty((len(rep_idx), geo.K), dtype=np.int64)
    for v, rep in enumerate(rep_idx):
        perm = model.action.matrix_to_permutation(el3.copy_matrix(int(rep)))
        tables[v] = perm.table
    return vid.astype(np.int64), tables


def _perm_parity_small(table):
    n = len(table)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = int(table[x])
    return (n - cycles) % 2


class GeneratorSpec:
    """One labeled generator; materializable as a Permutation on demand."""

    __slots__ = ("label", "axis", "kind", "payload", "provenance")

    def __init__(self, label, axis, kind, payload, provenance=""):
        if kind not in ("lines", "shift", "perm", "symbolic"):
            raise ValueError(f"unknown generator kind {kind!r}")
        self.label = label
        self.axis = axis
        self.kind = kind
        self.payload = payload
        self.provenance = provenance


class GeneratingSet:
    """Labeled generators with provenance, realizable as permutations."""

    def __init__(self, model, specs, regime="desk", name="", el3_elements=None):
        self.model = model
        self.specs = list(specs)
        self.regime = regime
        self.name = name
        self.el3_elements = el3_elements
        labels = [s.label for s in self.specs]
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be unique")

    def __len__(self):
        return len(self.specs)

    def labels(self):
        return [s.label for s in self.specs]

    @property
    def materializable(self):
        return all(s.kind != "symbolic" for s in self.specs)

    def materialize(self, i):
        spec = self.specs[i]
        if spec.kind == "lines":
            axis, vid, tables = spec.payload
            return self.model.lines_to_permutation(axis, tables[vid])
        if spec.kind == "shift":
            return spec.payload.materialize()
        if spec.kind == "perm":
            return spec.payload
        raise ValueError(f"generator {spec.label!r} is symbolic (shape-only set)")

    def permutations(self):
        return [self.materialize(i) for i in range(len(self))]

    def parity(self, i):
        """0 for even, 1 for odd, without materializing the full table."""
        spec = self.specs[i]
        if spec.kind == "lines":
            axis, vid, tables = spec.payload
            variant_par = np.array([_perm_parity_small(t) for t in tables])
            counts = np.bincount(vid, minlength=len(tables))
            return int(counts @ variant_par) % 2
        if spec.kind == "shift":
            sv = spec.payload
            K = self.model.K
            # a cyclic shift of an odd-length line is always even
            par = [(K - np.gcd(int(r), K)) % 2 for r in sv.shifts if r]
            return int(sum(par)) % 2
        if spec.kind == "perm":
            return spec.payload.parity
        raise ValueError("symbolic generator has no computable parity")

    def all_even(self):
        return all(self.parity(i) == 0 for i in range(len(self)))


_POSITION_NAMES = ["12", "13", "21", "23", "31", "32"]


def build_SN(s, d=6):
    """The union over all d axis embeddings of the involution generating set.

    At desk sizes every generator is realizable; past the table limits the
    set is shape-only (labels and counts, no permutations).
    """
    model = CubeModel(s, d)
    regime = "certified-shape" if (s > 6 and d == 6) else "desk"
    m = model.geometry.lines_per_axis

    if not model.materializable:
        size = el3_generating_set_size(s, d)
        specs = []
        for axis in range(1, d + 1):
            for k in range(size):
                specs.append(GeneratorSpec(
                    f"pi{axis}.g{k}", axis, "symbolic", None,
                    provenance=f"axis {axis}, involution {k}"))
        return GeneratingSet(model, specs, regime=regime, name=f"S_N(s={s},d={d})")

    sbar = el3_generating_set(s, m)
    gen_names = _involution_labels(s, m)
    specs = []
    for axis in range(1, d + 1):
        for k, el in enumerate(sbar):
            vid, tables = el3_line_actions(model, el)
            specs.append(GeneratorSpec(
                f"pi{axis}.{gen_names[k]}", axis, "lines", (axis, vid, tables),
                provenance=f"axis {axis}, involution {gen_names[k]}"))
    return GeneratingSet(model, specs, regime=regime,
                         name=f"S_N(s={s},d={d})", el3_elements=sbar)


def _involution_labels(s, m):
    from .ring import ring_generators, tuple_length
    t = tuple_length(s, m)
    names = [f"e{p}" for p in _POSITION_NAMES]
    ring_names = ["a", "b"] + [f"g{i}" for i in range(t)]
    for rn in ring_names:
        names.extend(f"{rn}.e{p}" for p in _POSITION_NAMES)
    return names


def delta_h_generating_set(model, h_perms, labels=None):
    """Generators of the pluggable-model product group, one per (axis, h).

    Each h is a permutation of the K line points; the generator applies h on
    every axis-i line simultaneously.
    """
    K = model.K
    specs = []
    for g in h_perms:
        if g.n != K:
            raise ValueError("pluggable generators must act on the K line points")
    m = model.geometry.lines_per_axis
    for axis in range(1, model.d + 1):
        for k, g in enumerate(h_perms):
            name = labels[k] if labels else f"h{k}"
            vid = np.zeros(m, dtype=np.int64)
            tables = g.table[None, :]
            specs.append(GeneratorSpec(
                f"pi{axis}.{name}", axis, "lines", (axis, vid, tables),
                provenance=f"axis {axis}, transitive-group generator {name}"))
    return GeneratingSet(model, specs, regime="desk", name="Delta(H)")


def build_Fn(n, base_perms, m, base_labels=None):
    """Union of the base set's images under the window embeddings of [0, n).

    `base_perms` act on [0, m); each window is an m-subset of [0, n) and the
    embedded copy acts on the window's sorted points.
    """
    windows = _blocks.window_family(n, m)
    specs = []
    for w_idx, window in enumerate(windows):
        points = np.asarray(window, dtype=np.int64)
        assert len(points) == m
        for k, g in enumerate(base_perms):
            if g.n != m:
                raise ValueError("base generators must act on [0, m)")
            table = np.arange(n, dtype=np.int64)
            table[points] = points[g.table]
            name = base_labels[k] if base_labels else f"b{k}"
            specs.append(GeneratorSpec(
                f"w{w_idx}.{name}", None, "perm", Permutation(table, _validate=False),
                provenance=f"window {w_idx}, base generator {name}"))
    return specs, windows


def build_sym(n, fn_specs):
    """Append one odd permutation (the transposition of the first two points)."""
    table = np.arange(n, dtype=np.int64)
    table[0], table[1] = 1, 0
    out = list(fn_specs)
    out.append(GeneratorSpec(
        "t01", None, "perm", Permutation(table, _validate=False),
        provenance="odd coset representative"))
    return out
