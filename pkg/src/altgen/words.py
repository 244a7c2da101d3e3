"""Words in the axis line-groups realizing prescribed permutations.

A letter is one element of some axis image of the product of cyclic line
groups (a shift vector).  The constructors here give explicit short words:
face routing in exactly 4d-5 letters, a two-letter move of any point set
into the face, a five-letter cycle supported in the face, and the
conjugation word assembling all three.
"""

import numpy as np

from .perms import Permutation
from .embeddings import ShiftVector


class WordInE:
    """Ordered letters (shift vectors); the product is tracked exactly."""

    def __init__(self, model, letters):
        self.model = model
        self.letters = list(letters)

    def __len__(self):
        return len(self.letters)

    def axes(self):
        return [w.axis for w in self.letters]

    def product(self):
        acc = Permutation.identity(self.model.N)
        for letter in self.letters:
            acc = acc * letter.materialize()
        return acc

    def inverse(self):
        return WordInE(self.model, [w.inverse() for w in reversed(self.letters)])

    def __add__(self, other):
        return WordInE(self.model, self.letters + other.letters)

    def to_records(self):
        return [{"axis": w.axis, "shifts": w.shifts.tolist()} for w in self.letters]

    @classmethod
    def from_records(cls, model, records):
        return cls(model, [ShiftVector(model, r["axis"], np.asarray(r["shifts"]))
                           for r in records])


def standard_cycle_length(K, d):
    """Largest 1 + a(K-1) strictly below K^(d-1)/(3 ln K), with its a."""
    import math
    threshold = K ** (d - 1) / (3 * math.log(K))
    a = int((threshold - 1) // (K - 1))
    if 1 + a * (K - 1) >= threshold:
        a -= 1
    return 1 + a * (K - 1), a


# -- regular bipartite edge coloring ------------------------------------------


def _perfect_matching(eids, left, right, n_left, n_right):
    """One perfect matching of a regular bipartite multigraph (edge ids)."""
    adj = [[] for _ in range(n_left)]
    for eid in eids:
        adj[left[eid]].append(eid)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    for u in range(n_left):  # greedy pass
        for eid in adj[u]:
            v = right[eid]
            if match_r[v] == -1:
                match_l[u], match_r[v] = eid, eid
                break
    for u in range(n_left):  # augment the rest, iteratively
        if match_l[u] != -1:
            continue
        parent = {}  # right node -> edge id used to reach it
        frontier = [u]
        found = -1
        visited = set()
        while frontier and found == -1:
            nxt = []
            for uu in frontier:
                for eid in adj[uu]:
                    v = right[eid]
                    if v in visited:
                        continue
                    visited.add(v)
                    parent[v] = eid
                    if match_r[v] == -1:
                        found = v
                        break
                    nxt.append(left[match_r[v]])
                if found != -1:
                    break
            frontier = nxt
        if found == -1:
            raise AssertionError("regular bipartite graph has a perfect matching")
        v = found
        while True:
            eid = parent[v]
            uu = left[eid]
            prev = match_l[uu]
            match_l[uu], match_r[v] = eid, eid
            if prev == -1:
                break
            v = right[prev]
    return [match_l[u] for u in range(n_left)]


def _euler_split(eids, left, right, n_left, n_right):
    """Split an all-even-degrees multigraph into two halves of equal degrees."""
    incid = [[] for _ in range(n_left + n_right)]
    for eid in eids:
        incid[left[eid]].append(eid)
        incid[n_left + right[eid]].append(eid)
    ptr = [0] * (n_left + n_right)
    used = set()
    half = {}
    for start in range(n_left + n_right):
        while ptr[start] < len(incid[start]):
            # walk a circuit from `start`
            circuit = []
            node = start
            stack = [(node, None)]
            path_edges = []
            while stack:
                node, via = stack[-1]
                advanced = False
                while ptr[node] < len(incid[node]):
                    eid = incid[node][ptr[node]]
                    ptr[node] += 1
                    if eid in used:
                        continue
                    used.add(eid)
                    other = n_left + right[eid] if node < n_left else left[eid]
                    stack.append((other, eid))
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
                    if via is not None:
                        circuit.append(via)
            for k, eid in enumerate(circuit):
                half[eid] = k & 1
    h0 = [e for e in eids if half[e] == 0]
    h1 = [e for e in eids if half[e] == 1]
    return h0, h1


def color_regular_bipartite(left, right, n_left, n_right, degree):
    """Proper edge coloring of a degree-regular bipartite multigraph.

    Returns an array of colors in [0, degree); every node sees each color
    exactly once.  Odd degrees peel a perfect matching, even degrees split
    along Euler circuits.
    """
    left = np.asarray(left)
    right = np.asarray(right)
    colors = np.full(len(left), -1, dtype=np.int64)

    def rec(eids, deg, base):
        if deg == 0 or not eids:
            return
        if deg == 1:
            for e in eids:
                colors[e] = base
            return
        if deg % 2:
            matched = _perfect_matching(eids, left, right, n_left, n_right)
            taken = set(matched)
            for e in matched:
                colors[e] = base + deg - 1
            rec([e for e in eids if e not in taken], deg - 1, base)
        else:
            h0, h1 = _euler_split(eids, left, right, n_left, n_right)
            rec(h0, deg // 2, base)
            rec(h1, deg // 2, base + deg // 2)

    rec(list(range(len(left))), degree, 0)
    assert (colors >= 0).all()
    return colors


def butterfly_factor(g, a_size, b_size):
    """Factor a grid permutation as (within rows) * (within columns) * (within rows).

    Points are alpha + a_size * beta; rows are the fibers of beta, columns
    the fibers of alpha.  Returns (a, b, c) with a * b * c == g, where a and
    c move points only within rows and b only within columns.
    """
    n = a_size * b_size
    if g.n != n:
        raise ValueError("permutation degree does not match the grid")
    pts = np.arange(n, dtype=np.int64)
    alpha, beta = pts % a_size, pts // a_size
    img = g.table
    if ((img % a_size) == alpha).all():
        # already column-supported: its own rows give a proper coloring
        colors = alpha
    else:
        colors = color_regular_bipartite(beta, img // a_size, b_size, b_size, a_size)

    c_table = colors + a_size * beta
    c = Permutation(c_table)
    b_table = np.empty(n, dtype=np.int64)
    b_table[c_table] = colors + a_size * (img // a_size)
    b = Permutation(b_table)
    a_table = np.empty(n, dtype=np.int64)
    a_table[b_table[c_table]] = img
    a = Permutation(a_table)
    assert a * b * c == g
    return a, b, c


# -- face routing ---------------------------------------------------------------


def face_point(model, f):
    """Cube index of the face point with face index f (first coordinate 0)."""
    return model.K * f


def face_restriction(model, perm):
    """Face permutation induced by a cube permutation supported on the face."""
    K, d = model.K, model.d
    L = K ** (d - 1)
    face_idx = np.arange(L, dtype=np.int64) * K
    images = perm.table[face_idx]
    if (images % K).any():
        raise ValueError("permutation does not preserve the face")
    off_face = np.delete(perm.table, face_idx)
    if (off_face != np.delete(np.arange(model.N), face_idx)).any():
        raise ValueError("permutation moves points outside the face")
    return images // K


def _axis_level_shifts(model, axis):
    """Shift of each axis-`axis` line by its own first coordinate."""
    geo = model.geometry
    lid = geo.line_id_array(axis)
    x1 = geo.coord_array(1)
    shifts = np.zeros(geo.lines_per_axis, dtype=np.int64)
    shifts[lid] = x1
    return shifts


def _round_letters(model, axis, targets):
    """Three letters realizing prescribed within-line moves on the face.

    targets[f] is the wanted axis-`axis` coordinate of the face point at
    face position f.  The first letter lifts each face point to the level
    named by its shift amount, the middle letter shifts every line at level
    r by r (delivering the move), the final letter drops everything back to
    the face.  Returned in application order.
    """
    K, d = model.K, model.d
    L = K ** (d - 1)
    f = np.arange(L, dtype=np.int64)
    weight = K ** (axis - 2)
    digit = (f // weight) % K
    targets = np.asarray(targets, dtype=np.int64)
    delta = (targets - digit) % K

    lift = ShiftVector(model, 1, delta)
    deliver = ShiftVector(model, axis, _axis_level_shifts(model, axis))
    f_to = f + (targets - digit) * weight
    drop_shifts = np.zeros(L, dtype=np.int64)
    drop_shifts[f_to] = (K - delta) % K
    drop = ShiftVector(model, 1, drop_shifts)
    return [lift, deliver, drop]


def grid_route(model, sigma_face):
    """Word of exactly 4d-5 letters whose product restricts to the face as given.

    The letters alternate between axis 1 and axes 2..d..2 in a palindrome;
    off-face behaviour is unconstrained.  sigma_face is a permutation of the
    K^(d-1) face indices.
    """
    K, d = model.K, model.d
    L = K ** (d - 1)
    cur = np.asarray(sigma_face, dtype=np.int64).copy()
    if cur.shape != (L,):
        raise ValueError(f"face permutation must have length {L}")

    pre_rounds = []   # (axis, targets), application order
    post_rounds = []  # gathered in reverse
    f = np.arange(L, dtype=np.int64)
    for q in range(d - 2):  # peel axes 2..d-1
        axis = q + 2
        weight = K ** q
        digit = (f // weight) % K
        suffix = f // (weight * K)
        img_digit = (cur // weight) % K
        img_suffix = cur // (weight * K)
        # nodes combine the already-fixed prefix with the suffix
        prefix = f % weight
        node_from = prefix + weight * suffix
        node_to = cur % weight + weight * img_suffix
        assert (cur % weight == prefix).all(), "peel invariant broken"
        n_nodes = L // K
        colors = color_regular_bipartite(node_from, node_to, n_nodes, n_nodes, K)

        pre_rounds.append((axis, colors.copy()))
        f_c = f + (colors - digit) * weight
        # after the middle stages the point sits at (prefix, color, image suffix)
        p_ab = prefix + weight * colors + weight * K * img_suffix
        post_targets = np.empty(L, dtype=np.int64)
        post_targets[p_ab] = img_digit
        post_rounds.append((axis, post_targets))

        nxt = np.empty(L, dtype=np.int64)
        nxt[f_c] = prefix + weight * colors + weight * K * img_suffix
        cur = nxt

    # the residue moves points only along the last axis
    weight = K ** (d - 2)
    assert ((cur % weight) == (f % weight)).all(), "residue touches lower digits"
    middle = (d, (cur // weight) % K)

    rounds = pre_rounds + [middle] + post_rounds[::-1]
    letters_app = []
    for axis, targets in rounds:
        lift, deliver, drop = _round_letters(model, axis, targets)
        if letters_app:
            letters_app[-1] = letters_app[-1] * lift  # merge adjacent axis-1 letters
        else:
            letters_app.append(lift)
        letters_app.append(deliver)
        letters_app.append(drop)

    word = WordInE(model, letters_app[::-1])
    assert len(word) == 4 * d - 5
    return word


# -- moving a point set into the face -------------------------------------------


def tosquare_word(model, points):
    """Two letters moving the given distinct points into the face, or None.

    Greedy over the axis-2 lines in index order: each line gets the smallest
    shift that avoids putting two points onto one axis-1 line; a bad position
    makes the greedy fail, which is reported as None.
    """
    geo = model.geometry
    K = geo.K
    points = np.asarray(sorted(set(map(int, points))), dtype=np.int64)
    if len(points) == 0:
        zero = np.zeros(geo.lines_per_axis, dtype=np.int64)
        return ShiftVector(model, 2, zero), ShiftVector(model, 1, zero)
    if points.min() < 0 or points.max() >= geo.N:
        raise ValueError("point index out of range")

    lid1 = geo.line_id_array(1)
    lid2 = geo.line_id_array(2)
    x2 = geo.coord_array(2)

    by_line = {}
    for p in points:
        by_line.setdefault(int(lid2[p]), []).append(int(p))

    shifts2 = np.zeros(geo.lines_per_axis, dtype=np.int64)
    occupied = set()
    for line in sorted(by_line):
        pts = by_line[line]
        slots = [int(lid1[p]) for p in pts]
        digits = [int(x2[p]) for p in pts]
        good = -1
        for t in range(K):
            trial = [s - dg + (dg + t) % K for s, dg in zip(slots, digits)]
            if all(sl not in occupied for sl in trial):
                good = t
                occupied.update(trial)
                break
        if good == -1:
            return None
        shifts2[line] = good

    g = ShiftVector(model, 2, shifts2)
    gp = g.materialize()
    x1 = geo.coord_array(1)
    shifts1 = np.zeros(geo.lines_per_axis, dtype=np.int64)
    moved = gp.table[points]
    shifts1[lid1[moved]] = (K - x1[moved]) % K
    h = ShiftVector(model, 1, shifts1)
    final = h.materialize().table[moved]
    assert (x1[final] == 0).all(), "points did not land in the face"
    return g, h


# -- the face cycle -------------------------------------------------------------


def comb_tree_lines(model, count):
    """`count` face lines along axes 2..d whose union is a tree.

    A spine along axis 2 plus levels of teeth: the level-l teeth vary axis l
    and attach to the previous level at coordinate 0.  Returns a list of
    (axis, line_id) pairs.
    """
    geo = model.geometry
    K, d = geo.K, geo.d
    capacity = (K ** (d - 1) - 1) // (K - 1)
    if not 1 <= count < capacity:
        raise ValueError(f"line count must be in [1, {capacity})")
    lines = [(2, 0)]  # the spine: all coordinates zero except axis 2
    if count == 1:
        return lines
    level_prefixes = [()]  # tuples (j2, ..., j_{l-1}) indexing teeth of level l
    for axis in range(3, d + 1):
        new_prefixes = []
        for prefix in level_prefixes:
            for j in range(K):
                tooth = prefix + (j,)
                new_prefixes.append(tooth)
                lines.append((axis, _tooth_line_id(geo, axis, tooth)))
                if len(lines) == count:
                    return lines
        level_prefixes = new_prefixes
    raise AssertionError("capacity check should have caught this")


def _tooth_line_id(geo, axis, prefix):
    """Line id (axis `axis`) of the tooth with coordinates prefix on axes 2.."""
    coords = [0] * geo.d  # x1 = 0, trailing coordinates 0
    for k, val in enumerate(prefix):
        coords[1 + k] = val
    lid = 0
    mult = 1
    for j in range(1, geo.d + 1):
        if j == axis:
            continue
        lid += coords[j - 1] * mult
        mult *= geo.K
    return lid


def cycle_word(model, a):
    """At most d-1 letters whose product is a cycle of length 1+a(K-1) in the face."""
    geo = model.geometry
    K = geo.K
    lines = comb_tree_lines(model, a)
    by_axis = {}
    for axis, lid in lines:
        by_axis.setdefault(axis, []).append(lid)
    letters = []
    for axis in sorted(by_axis):
        shifts = np.zeros(geo.lines_per_axis, dtype=np.int64)
        shifts[by_axis[axis]] = 1
        letters.append(ShiftVector(model, axis, shifts))
    word = WordInE(model, letters)
    perm = word.product()
    support = perm.support()
    expected = 1 + a * (K - 1)
    assert len(support) == expected, "tree union has the wrong size"
    assert (geo.coord_array(1)[support] == 0).all(), "cycle leaves the face"
    assert perm.cycle_type()[0] == expected, "product is not a single cycle"
    return word


# -- conjugating an arbitrary cycle into the standard one -----------------------


def conjugacy_word47(model, cycle_perm):
    """Word of at most 4(4d-5)/2... exactly <= 8d - 1 letters equal to the cycle.

    Returns None when the greedy face-moving step fails (the caller decides
    whether to resample).  On success the product equals the input exactly.
    """
    geo = model.geometry
    K, d = geo.K, geo.d
    support = cycle_perm.support()
    L = len(support)
    if L == 0 or cycle_perm.cycle_type()[0] != L:
        raise ValueError("input must be a single cycle")
    if (L - 1) % (K - 1):
        raise ValueError("cycle length must be 1 mod K-1")
    a = (L - 1) // (K - 1)

    moved = tosquare_word(model, support)
    if moved is None:
        return None
    g, h = moved
    gp, hp = g.materialize(), h.materialize()
    t = hp * gp
    sigma_hat = t * cycle_perm * t.inverse()
    sigma_face = face_restriction(model, sigma_hat)

    c0_word = cycle_word(model, a)
    c0 = c0_word.product()

    rho = _match_cycles(model, c0, sigma_face)
    w = grid_route(model, rho)

    letters = ([g.inverse(), h.inverse()]
               + w.letters
               + c0_word.letters
               + w.inverse().letters
               + [h, g])
    word = WordInE(model, letters)
    assert len(word) <= 8 * d - 1
    return word


def _match_cycles(model, c0, sigma_face):
    """Face permutation conjugating the standard cycle to the target cycle."""
    K = model.K
    L_face = K ** (model.d - 1)
    c0_face = face_restriction(model, c0)

    def orbit(table, start):
        out = [start]
        x = int(table[start])
        while x != start:
            out.append(x)
            x = int(table[x])
        return out

    c0_start = int(np.flatnonzero(c0_face != np.arange(L_face))[0])
    sg_start = int(np.flatnonzero(sigma_face != np.arange(L_face))[0])
    src = orbit(c0_face, c0_start)
    dst = orbit(sigma_face, sg_start)
    assert len(src) == len(dst)

    rho = np.full(L_face, -1, dtype=np.int64)
    rho[src] = dst
    rest_src = np.setdiff1d(np.arange(L_face), np.array(src))
    rest_dst = np.setdiff1d(np.arange(L_face), np.array(dst))
    rho[rest_src] = rest_dst
    return rho
