"""Permutations of a finite point set, stored as image tables."""

import numpy as np


class Permutation:
    """Bijection on [0, n), immutable after construction.

    The image table maps x to table[x].  Composition follows the usual
    convention (p * q)(x) = p(q(x)).
    """

    __slots__ = ("table", "_parity")

    def __init__(self, table, _validate=True):
        arr = np.asarray(table, dtype=np.int64)
        if _validate:
            if arr.ndim != 1:
                raise ValueError("image table must be one-dimensional")
            seen = np.zeros(arr.shape[0], dtype=bool)
            if arr.shape[0]:
                if arr.min() < 0 or arr.max() >= arr.shape[0]:
                    raise ValueError("image table entries out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("image table is not a bijection")
        arr.setflags(write=False)
        self.table = arr
        self._parity = None

    @property
    def n(self):
        return self.table.shape[0]

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n, dtype=np.int64), _validate=False)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from disjoint cycles given as sequences of points."""
        table = np.arange(n, dtype=np.int64)
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:]):
                table[a] = b
            if len(cyc) > 1:
                table[cyc[-1]] = cyc[0]
        return cls(table, _validate=False)

    @classmethod
    def random(cls, n, rng):
        return cls(rng.permutation(n).astype(np.int64), _validate=False)

    def __call__(self, x):
        return self.table[x]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")
        return Permutation(self.table[other.table], _validate=False)

    def inverse(self):
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.table] = np.arange(self.n, dtype=np.int64)
        return Permutation(inv, _validate=False)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def is_identity(self):
        return bool((self.table == np.arange(self.n)).all())

    def cycles(self, include_fixed=True):
        """Disjoint cycles as lists, each starting at its least point."""
        seen = np.zeros(self.n, dtype=bool)
        table = self.table
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(table[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(table[x])
            if include_fixed or len(cyc) > 1:
                out.append(cyc)
        return out

    def cycle_count(self):
        seen = np.zeros(self.n, dtype=bool)
        table = self.table
        count = 0
        for start in range(self.n):
            if seen[start]:
                continue
            count += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = int(table[x])
        return count

    def cycle_type(self):
        """Multiset of cycle lengths, fixed points included, sorted descending."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    @property
    def parity(self):
        """0 for even, 1 for odd; equals (n - #cycles) mod 2."""
        if self._parity is None:
            self._parity = (self.n - self.cycle_count()) % 2
        return self._parity

    def is_even(self):
        return self.parity == 0

    def support(self):
        """Sorted array of non-fixed points."""
        return np.flatnonzero(self.table != np.arange(self.n))

    def __repr__(self):
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return f"Permutation.identity({self.n})"
        if len(nontrivial) > 4:
            return f"Permutation(n={self.n}, {len(nontrivial)} cycles)"
        desc = " ".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)
        return f"Permutation(n={self.n}, {desc})"


def compose(p, q):
    """(p∘q)(x) = p(q(x)); degrees must match."""
    return p * q


def product(perms, n=None):
    """Left-to-right product: product([a, b, c]) = a * b * c."""
    perms = list(perms)
    if not perms:
        if n is None:
            raise ValueError("empty product needs an explicit degree")
        return Permutation.identity(n)
    acc = perms[0]
    for p in perms[1:]:
        acc = acc * p
    return acc
