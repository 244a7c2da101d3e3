"""Exact group order via a stabilizer chain.

Random products seed the chain quickly; the deterministic Schreier closure
pass that follows is the correctness guarantee, so the returned order is
exact regardless of the randomization.
"""

import numpy as np

from .perms import Permutation

DEFAULT_ORDER_LIMIT = 10**4


def _to_bytes(table):
    # padded to 256 entries so bytes.translate applies directly
    n = len(table)
    return bytes(list(map(int, table)) + list(range(n, 256)))


class _Level:
    __slots__ = ("point", "gens", "transversal", "inv_transversal")

    def __init__(self, point, identity):
        self.point = point
        self.gens = []
        self.transversal = {point: identity}
        self.inv_transversal = {point: identity}


class StabilizerChain:
    """Base and strong generators for a permutation group.

    Strong generator lists are nested: a generator registered at level j is
    also registered at every shallower level (it fixes that level's base
    prefix), which is what the Schreier closure argument requires.
    """

    def __init__(self, n):
        if n > 65535:
            raise ValueError("stabilizer chain supports at most 65535 points")
        self.n = n
        self._wide = n > 256
        if self._wide:
            self.identity = tuple(range(n))
        else:
            self.identity = bytes(range(256))
        self.levels = []

    def _mul(self, p, q):
        # (p*q)[i] = p[q[i]]
        if self._wide:
            return tuple(p[x] for x in q)
        return q.translate(p)

    def _inv(self, p):
        inv = [0] * len(p)
        for i, x in enumerate(p):
            inv[x] = i
        return tuple(inv) if self._wide else bytes(inv)

    def _is_identity(self, p):
        return p == self.identity

    def _first_moved(self, p):
        for i, x in enumerate(p):
            if x != i:
                return i
        return None

    def _extend_orbit(self, level, new_gen=None):
        """Grow a level's orbit/transversal; O(orbit) when nothing is new."""
        if new_gen is not None:
            frontier = []
            for x, ux in list(level.transversal.items()):
                y = new_gen[x]
                if y not in level.transversal:
                    uy = self._mul(new_gen, ux)
                    level.transversal[y] = uy
                    level.inv_transversal[y] = self._inv(uy)
                    frontier.append(y)
        else:
            frontier = list(level.transversal.keys())
        while frontier:
            next_frontier = []
            for x in frontier:
                ux = level.transversal[x]
                for g in level.gens:
                    y = g[x]
                    if y not in level.transversal:
                        uy = self._mul(g, ux)
                        level.transversal[y] = uy
                        level.inv_transversal[y] = self._inv(uy)
                        next_frontier.append(y)
            frontier = next_frontier

    def sift(self, g, start=0):
        """Reduce g through levels; returns (residue, deepest level reached)."""
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            x = g[level.point]
            if x == level.point:
                continue
            if x not in level.transversal:
                return g, i
            g = self._mul(level.inv_transversal[x], g)
        return g, len(self.levels)

    def _add_generator(self, g, upto):
        """Register g at levels 0..upto (it fixes the base prefix of each)."""
        if upto == len(self.levels):
            pt = self._first_moved(g)
            assert pt is not None
            self.levels.append(_Level(pt, self.identity))
        for i in range(upto + 1):
            level = self.levels[i]
            if g not in level.gens:
                level.gens.append(g)
                self._extend_orbit(level, new_gen=g)

    def add_element(self, g):
        """Sift g and absorb any residue; returns True if the chain grew."""
        h, j = self.sift(g)
        if self._is_identity(h):
            return False
        self._add_generator(h, j)
        return True

    def schreier_closure(self):
        """Deterministic verification: every Schreier generator must sift.

        Levels are processed bottom-up; a non-sifting Schreier generator is
        absorbed and processing restarts at the level it reached.  On
        termination the chain is complete and the order exact.
        """
        i = len(self.levels) - 1
        while i >= 0:
            level = self.levels[i]
            restart = False
            for x in sorted(level.transversal.keys()):
                ux = level.transversal[x]
                for s in list(level.gens):
                    y = s[x]
                    schreier = self._mul(level.inv_transversal[y], self._mul(s, ux))
                    if self._is_identity(schreier):
                        continue
                    h, j = self.sift(schreier, start=i + 1)
                    if not self._is_identity(h):
                        self._add_generator(h, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self):
        result = 1
        for level in self.levels:
            result *= len(level.transversal)
        return result


def group_order(gens, limit=DEFAULT_ORDER_LIMIT, seed=0, random_boost=96):
    """Exact order of the group generated by `gens` (list of Permutation).

    Refuses point sets larger than `limit`.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators act on different point counts")
    if n > limit:
        raise ValueError(
            f"point count {n} exceeds the group-order limit {limit}; "
            "raise the limit explicitly if this size is intended"
        )

    chain = StabilizerChain(n)
    if n <= 256:
        raw = [_to_bytes(g.table) for g in gens]
    else:
        raw = [tuple(int(x) for x in g.table) for g in gens]
    for g in raw:
        chain.add_element(g)

    if chain.levels:
        rng = np.random.default_rng(seed)
        word = raw[0]
        for _ in range(random_boost):
            word = chain._mul(word, raw[rng.integers(len(raw))])
            if rng.integers(2):
                word = chain._mul(raw[rng.integers(len(raw))], word)
            chain.add_element(word)

    chain.schreier_closure()
    return chain.order()
