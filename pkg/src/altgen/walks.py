"""Random-walk analysis on the cube: exact averaging operators and sampling.

The six axis-averaging operators act exactly on point distributions (each
line's mass replaced by its mean).  Tuple walks are sampled with lazily drawn
line shifts; every Monte-Carlo estimator uses counter-based per-sample
streams so results do not depend on how samples are batched.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np


# -- exact point distributions -------------------------------------------------


class ExactDistribution:
    """Probability weights as integers over a common denominator."""

    def __init__(self, model, numerators, denominator):
        self.model = model
        self.num = list(map(int, numerators))
        self.den = int(denominator)
        if len(self.num) != model.N:
            raise ValueError("weight count must equal the point count")
        if any(x < 0 for x in self.num):
            raise ValueError("weights must be nonnegative")
        if sum(self.num) != self.den:
            raise ValueError("weights must sum to one exactly")

    @classmethod
    def point_mass(cls, model, point):
        num = [0] * model.N
        num[point] = 1
        return cls(model, num, 1)

    @classmethod
    def uniform(cls, model):
        return cls(model, [1] * model.N, model.N)

    def axis_average(self, axis):
        """Replace each axis line's weights by their average, exactly."""
        geo = self.model.geometry
        lid = geo.line_id_array(axis)
        K = geo.K
        sums = [0] * geo.lines_per_axis
        for x, w in enumerate(self.num):
            if w:
                sums[lid[x]] += w
        new = [sums[lid[x]] for x in range(self.model.N)]
        return ExactDistribution(self.model, new, self.den * K)

    def tv_to_uniform(self):
        """Total variation distance to uniform, as an exact Fraction."""
        N = self.model.N
        total = 0
        for w in self.num:
            total += abs(w * N - self.den)
        return Fraction(total, 2 * N * self.den)

    def to_floats(self):
        return np.array(self.num, dtype=float) / self.den


class FloatDistribution:
    """Dense float weights; renormalization guards accumulated error."""

    MASS_TOL = 1e-12

    def __init__(self, model, weights):
        w = np.asarray(weights, dtype=float)
        if w.shape != (model.N,):
            raise ValueError("weight count must equal the point count")
        if w.min() < -self.MASS_TOL:
            raise ValueError("weights must be nonnegative")
        total = w.sum()
        if abs(total - 1.0) > self.MASS_TOL:
            w = w / total
        self.model = model
        self.weights = w

    @classmethod
    def point_mass(cls, model, point):
        w = np.zeros(model.N)
        w[point] = 1.0
        return cls(model, w)

    @classmethod
    def uniform(cls, model):
        return cls(model, np.full(model.N, 1.0 / model.N))

    def axis_average(self, axis):
        geo = self.model.geometry
        lid = geo.line_id_array(axis)
        sums = np.bincount(lid, weights=self.weights, minlength=geo.lines_per_axis)
        return FloatDistribution(self.model, sums[lid] / geo.K)

    def tv_to_uniform(self):
        return 0.5 * float(np.abs(self.weights - 1.0 / self.model.N).sum())


def axis_average(dist, axis):
    return dist.axis_average(axis)


def full_sweep(dist, axes=None):
    """Apply every axis average once; uniformizes any start distribution."""
    if axes is None:
        axes = range(1, dist.model.d + 1)
    for axis in axes:
        dist = dist.axis_average(axis)
    return dist


# -- sampling -------------------------------------------------------------------


def sample_stream(seed, index):
    """Independent counter-based stream for sample `index` of a master seed."""
    return np.random.Generator(np.random.Philox(key=[seed, index]))


def sample_Ei(model, rng, axis):
    """Uniform element of the axis image: one independent residue per line."""
    from .embeddings import ShiftVector
    shifts = rng.integers(0, model.K, size=model.geometry.lines_per_axis)
    return ShiftVector(model, axis, shifts)


@dataclass
class WalkConfig:
    seed: int = 0
    samples: int = 1
    h: int | None = None            # tuple size; default floor(K^(3/2)/2)
    pattern: str = "Q2Q1"           # Q1 = U1U2U3, Q2 = U4U5U6

    def resolved_h(self, model):
        if self.h is not None:
            return self.h
        return int(model.K ** 1.5 // 2)


def _pattern_axes(pattern, d):
    """Axis application order: rightmost operator acts first, and inside each
    U-product the rightmost factor's element is sampled first."""
    blocks = {"Q1": [1, 2, 3], "Q2": [4, 5, 6]}
    if d != 6 and pattern in ("Q1", "Q2", "Q2Q1", "Q2Q1Q2Q1"):
        raise ValueError("named operator patterns assume six axes")
    parts = []
    token = pattern
    while token:
        for name in ("Q2Q1", "Q2", "Q1"):  # longest match first
            if token.startswith(name):
                if name == "Q2Q1":
                    parts.extend(["Q2", "Q1"])
                else:
                    parts.append(name)
                token = token[len(name):]
                break
        else:
            raise ValueError(f"cannot parse pattern {pattern!r}")
    axes = []
    for name in reversed(parts):        # rightmost block first
        axes.extend(reversed(blocks[name]))
    return axes


def apply_sampled_word(model, rng, axes, points):
    """Apply one uniformly sampled element of each axis group, lazily.

    Only the shifts of lines actually carrying points are drawn; points on a
    shared line receive the same shift, so the law matches the full group
    element.  `points` is an int array of distinct cube points.
    """
    geo = model.geometry
    K = geo.K
    pts = np.array(points, dtype=np.int64)
    for axis in axes:
        lid = geo.line_id_array(axis)[pts]
        uniq, inverse = np.unique(lid, return_inverse=True)
        shifts = rng.integers(0, K, size=len(uniq))
        weight = K ** (axis - 1)
        digit = (pts // weight) % K
        pts = pts + ((digit + shifts[inverse]) % K - digit) * weight
    return pts


@dataclass
class TupleWalkStats:
    samples: int
    h: int
    b1_fraction: float
    b2_fraction: float
    hit_counts: dict


def _distinct_first3(model, pts):
    K = model.K
    keys = pts % K**3
    return len(np.unique(keys)) == len(pts)


def _distinct_last3(model, pts):
    K = model.K
    keys = pts // K**3
    return len(np.unique(keys)) == len(pts)


def tuple_walk(model, config, start, target=None):
    """Monte-Carlo tuple walk; reports membership fractions and target hits.

    Simulates `config.samples` independent applications of the pattern to
    the start tuple.  b1 counts tuples with pairwise distinct first three
    coordinates after the first Q1 block; b2 likewise for the last three
    after the first Q2 block; hits count exact arrivals at `target`.
    """
    start = np.asarray(start, dtype=np.int64)
    h = len(start)
    if len(set(start.tolist())) != h:
        raise ValueError("start tuple must have distinct points")
    axes = _pattern_axes(config.pattern, model.d)
    q1_end = _prefix_end(axes, [3, 2, 1])
    q2_end = _prefix_end(axes, [6, 5, 4])

    b1 = b2 = 0
    hits = 0
    for i in range(config.samples):
        rng = sample_stream(config.seed, i)
        pts = start.copy()
        for k, axis in enumerate(axes):
            pts = apply_sampled_word(model, rng, [axis], pts)
            assert len(np.unique(pts)) == h, "tuple lost distinctness"
            if k + 1 == q1_end and _distinct_first3(model, pts):
                b1 += 1
            if k + 1 == q2_end and _distinct_last3(model, pts):
                b2 += 1
        if target is not None and np.array_equal(pts, np.asarray(target)):
            hits += 1
    return TupleWalkStats(samples=config.samples, h=h,
                          b1_fraction=b1 / config.samples,
                          b2_fraction=b2 / config.samples,
                          hit_counts={"target": hits})


def _prefix_end(axes, block):
    """Index just past the first occurrence of `block` in the axis sequence."""
    for k in range(len(axes) - len(block) + 1):
        if axes[k:k + len(block)] == block:
            return k + len(block)
    return -1


def point_walk_batch(model, seed, samples, start_point, axes):
    """Vectorized one-point walk: all samples advance together.

    With a single point per sample the per-line shifts are independent
    uniforms, so one draw per (sample, letter) is the exact law.
    """
    rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
    K = model.K
    pts = np.full(samples, start_point, dtype=np.int64)
    for axis in axes:
        weight = K ** (axis - 1)
        digit = (pts // weight) % K
        shifts = rng.integers(0, K, size=samples)
        pts = pts + ((digit + shifts) % K - digit) * weight
    return pts


# -- exact bounds ----------------------------------------------------------------


@dataclass
class DoeblinReport:
    K: int
    h: int
    q_factor: Fraction              # (1 - h^2/2K^3)^2 (1 - h^2/2K^6)
    contraction: Fraction           # h^2/K^3, the factor used downstream
    stated_norm_bound: Fraction     # 1 - h^2/K^3, the operator-norm reading
    tuple_space_size: int           # product_{i<h} (K^6 - i)
    inequality_holds: bool

    def entry_lower_bound(self):
        """Per-entry lower bound relative to uniform: 1 - h^2/K^3."""
        return 1 - self.contraction


def doeblin_contraction_check(K, h):
    """Exact rational evaluation of the averaging-contraction chain."""
    K2 = Fraction(h * h, 2 * K**3)
    K6 = Fraction(h * h, 2 * K**6)
    lhs = (1 - K2) ** 2 * (1 - K6)
    rhs = 1 - Fraction(h * h, K**3)
    size = 1
    for i in range(h):
        size *= K**6 - i
    return DoeblinReport(K=K, h=h, q_factor=lhs,
                         contraction=Fraction(h * h, K**3),
                         stated_norm_bound=rhs,
                         tuple_space_size=size,
                         inequality_holds=bool(lhs >= rhs))


def urn_bound(l, k, p, q):
    """Exact tail bound: C(p, q) * (k / (l*k - p))^q for distinct-urn placement."""
    if p >= l * k:
        raise ValueError("more balls than urns")
    if q > p:
        return Fraction(0)
    return comb(p, q) * Fraction(k, l * k - p) ** q


def urn_mc(l, k, p, q, samples, seed=0):
    """Empirical frequency of >= q balls landing in the first box."""
    hits = 0
    for i in range(samples):
        rng = sample_stream(seed, i)
        urns = rng.choice(l * k, size=p, replace=False)
        if int((urns < k).sum()) >= q:
            hits += 1
    return hits / samples


def binomial_sigma(p_true, samples):
    p = min(max(float(p_true), 0.0), 1.0)
    return sqrt(p * (1.0 - p) / samples)


# -- mixing ----------------------------------------------------------------------


def mixing_time_points(operator, model, tol=1e-9, start=0, max_steps=10**4,
                       lazy=True):
    """First step with total variation to uniform below `tol`.

    `operator` maps a weight array to the stepped weights; by default the
    lazy version (I + T)/2 is iterated.  Returns (steps, tv_curve).
    """
    w = np.zeros(model.N)
    w[start] = 1.0
    curve = []
    uniform = 1.0 / model.N
    for step in range(1, max_steps + 1):
        w = 0.5 * (w + operator(w)) if lazy else operator(w)
        tv = 0.5 * float(np.abs(w - uniform).sum())
        curve.append(tv)
        if tv < tol:
            return step, curve
    raise RuntimeError(f"walk did not mix within {max_steps} steps (tv={curve[-1]})")


def averaging_operator(model, axes=None):
    """The full-sweep operator as a dense-weights function."""
    def op(w):
        dist = FloatDistribution(model, w)
        return full_sweep(dist, axes).weights
    return op
