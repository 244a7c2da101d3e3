"""Schreier and Cayley graphs in explicit and implicit (action) form.

All spectral work uses the degree-normalized adjacency T as the single
convention; generating multisets are symmetrized (every generator listed
together with its inverse, involutions twice), which keeps T symmetric and
doubly stochastic.
"""

import numpy as np

from .perms import Permutation

CAYLEY_LIMIT = 2 * 10**6
SCHREIER_LIMIT = 10**7


class SparseGraph:
    """Regular multigraph given by its normalized adjacency action."""

    n = 0
    degree = 0

    def matvec(self, v):
        raise NotImplementedError

    def generator_actions(self):
        """Iterator over the (unsymmetrized) generator permutation tables."""
        raise NotImplementedError

    def to_dense(self, limit=4000):
        if self.n > limit:
            raise ValueError(f"{self.n} vertices exceed the dense limit {limit}")
        T = np.zeros((self.n, self.n))
        eye = np.eye(self.n)
        for i in range(self.n):
            T[:, i] = self.matvec(eye[:, i])
        return T

    def is_connected(self):
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            nbrs = self.neighbors(frontier)
            new = nbrs[~seen[nbrs]]
            if new.size == 0:
                break
            new = np.unique(new)
            seen[new] = True
            frontier = new
        return bool(seen.all())

    def neighbors(self, xs):
        raise NotImplementedError


class ActionGraph(SparseGraph):
    """Graph of a point set under a list of permutations (plus inverses)."""

    def __init__(self, perms):
        if not perms:
            raise ValueError("need at least one permutation")
        self.n = perms[0].n
        self.perms = list(perms)
        tables = []
        for p in perms:
            if p.n != self.n:
                raise ValueError("permutations act on different point counts")
            tables.append(p.table)
            tables.append(p.inverse().table)
        self._tables = np.array(tables)
        self.degree = len(tables)

    def matvec(self, v):
        out = np.zeros_like(v, dtype=float)
        for t in self._tables:
            out += v[t]
        return out / self.degree

    def generator_actions(self):
        return iter(t for t in self._tables[::2])

    def neighbors(self, xs):
        return self._tables[:, xs].ravel()

    def edge_pairs(self):
        """Directed pairs (x, g(x)) over the original generators."""
        xs = np.arange(self.n, dtype=np.int64)
        for t in self._tables[::2]:
            yield np.stack([xs, t], axis=1)


class EdgeGraph(SparseGraph):
    """Explicit symmetric multigraph from an edge list; must be regular."""

    def __init__(self, n, edges):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.n = n
        both = np.concatenate([edges, edges[:, ::-1]])
        deg = np.bincount(both[:, 0], minlength=n)
        if n and not (deg == deg[0]).all():
            raise ValueError("edge list is not regular; spectral convention needs "
                             "a constant degree")
        self.degree = int(deg[0]) if n else 0
        self.edges = edges
        self._both = both

    def matvec(self, v):
        out = np.zeros(self.n, dtype=float)
        np.add.at(out, self._both[:, 0], v[self._both[:, 1]])
        return out / self.degree

    def neighbors(self, xs):
        mask = np.isin(self._both[:, 0], xs)
        return self._both[mask, 1]

    def generator_actions(self):
        raise ValueError("edge-list graphs carry no generator actions")

    def adjacency_sets(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[int(u)].add(int(v))
            adj[int(v)].add(int(u))
        return adj


class AxisBlockGraph(SparseGraph):
    """Schreier graph of an axis-embedded generating set, in implicit form.

    Each axis stores one (lines, K, K) stochastic block: the average of the
    per-line permutation matrices of all that axis's generators (and their
    inverses).  Matvec cost is a few gathers per axis.
    """

    def __init__(self, genset):
        model = genset.model
        geo = model.geometry
        self.model = model
        self.genset = genset
        self.n = geo.N
        K = geo.K
        m = geo.lines_per_axis
        axes = sorted({spec.axis for spec in genset.specs})
        per_axis_count = {}
        blocks = {}
        self._variants = {}
        for axis in axes:
            blocks[axis] = np.zeros((m, K, K))
            per_axis_count[axis] = 0
            self._variants[axis] = {}
        for spec in genset.specs:
            if spec.kind != "lines":
                raise ValueError("axis-block form needs line-structured generators")
            axis, vid, tables = spec.payload
            onehots = np.zeros((len(tables), K, K))
            rows = np.arange(K)
            for v, t in enumerate(tables):
                onehots[v, rows, t] = 1.0
            counts = np.zeros((m, len(tables)))
            counts[np.arange(m), vid] = 1.0
            # generator and its inverse (transpose of each onehot)
            blocks[axis] += np.einsum("mv,vab->mab", counts,
                                      onehots + onehots.transpose(0, 2, 1))
            per_axis_count[axis] += 2
            store = self._variants[axis]
            for v, t in enumerate(tables):
                key = t.tobytes()
                if key not in store:
                    store[key] = (t.copy(), np.zeros(m, dtype=bool))
                store[key][1][vid == v] = True
        self.degree = sum(per_axis_count.values())
        for axis in axes:
            blocks[axis] /= self.degree
        self._blocks = blocks
        self._axes = axes

    def matvec(self, v):
        geo = self.model.geometry
        out = np.zeros(self.n, dtype=float)
        for axis in self._axes:
            lp = geo.line_points(axis)
            vl = v[lp]
            out[lp] += np.einsum("mab,mb->ma", self._blocks[axis], vl)
        return out

    def generator_actions(self):
        for i in range(len(self.genset)):
            yield self.genset.materialize(i).table

    def neighbors(self, xs):
        geo = self.model.geometry
        out = [xs]
        for axis in self._axes:
            lp = geo.line_points(axis)
            lid = geo.line_id_array(axis)[xs]
            pos = geo.coord_array(axis)[xs]
            for table, avail in self._variants[axis].values():
                sel = avail[lid]
                if sel.any():
                    out.append(lp[lid[sel], table[pos[sel]]])
        return np.concatenate(out)


def schreier_graph(genset, limit=SCHREIER_LIMIT, dense_threshold=4000):
    """Action graph of a generating set on the cube points.

    Small sets materialize their permutations; larger ones stay in the
    axis-block implicit form.
    """
    N = genset.model.N
    if N > limit:
        raise ValueError(f"{N} points exceed the Schreier limit {limit}")
    if not genset.materializable:
        raise ValueError("shape-only generating set cannot be realized")
    if N <= dense_threshold:
        return ActionGraph(genset.permutations())
    return AxisBlockGraph(genset)


def cayley_graph(gens, limit=CAYLEY_LIMIT):
    """Cayley graph of the generated group, vertices enumerated by BFS.

    Edges join g to g*s by right multiplication.  Refuses to grow past
    `limit` vertices, naming the size reached.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n_pts = gens[0].n
    step = []
    for g in gens:
        step.append(g)
        inv = g.inverse()
        step.append(inv)

    ident = Permutation.identity(n_pts)
    index = {ident.table.tobytes(): 0}
    elements = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for s in step:
                f = e * s
                key = f.table.tobytes()
                if key not in index:
                    index[key] = len(elements)
                    elements.append(f)
                    nxt.append(f)
                    if len(elements) > limit:
                        raise ValueError(
                            f"group closure exceeded the limit {limit} "
                            f"(reached {len(elements)} elements)")
        frontier = nxt

    n = len(elements)
    vertex_perms = []
    for g in gens:
        table = np.empty(n, dtype=np.int64)
        for i, e in enumerate(elements):
            table[i] = index[(e * g).table.tobytes()]
        vertex_perms.append(Permutation(table, _validate=False))
    graph = ActionGraph(vertex_perms)
    graph.elements = elements
    return graph


def write_edge_list(graph, path):
    """Text export: header '# vertices N degree k', then one 'u v' per line."""
    with open(path, "w") as fh:
        fh.write(f"# vertices {graph.n} degree {graph.degree}\n")
        for pairs in graph.edge_pairs():
            for u, v in pairs:
                fh.write(f"{u} {v}\n")


def read_edge_list(path):
    edges = []
    n = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line.split()
                n = int(parts[2])
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
    if n is None:
        n = 1 + max(max(e) for e in edges)
    return EdgeGraph(n, edges)
