"""GF(2) linear algebra: bit-packed square matrices and the side-field action.

A matrix row is an int whose bit j is the entry in column j.  Vectors are
ints (bit i = coordinate i) and matrices act on them from the left.
"""

import numpy as np

from .perms import Permutation


class MatGF2:
    """Square matrix over GF(2) with bit-packed rows; immutable."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError("row count must equal n")
        mask = (1 << n) - 1
        if any(r & ~mask for r in rows):
            raise ValueError("row has bits outside the matrix width")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n):
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls(n, [0] * n)

    @classmethod
    def unit(cls, n, i, j):
        """Matrix with a single 1 at (i, j)."""
        rows = [0] * n
        rows[i] = 1 << j
        return cls(n, rows)

    @classmethod
    def from_int(cls, n, value):
        """Unpack n*n bits, row-major (row i = bits [i*n, (i+1)*n))."""
        mask = (1 << n) - 1
        return cls(n, [(value >> (i * n)) & mask for i in range(n)])

    def to_int(self):
        value = 0
        for i, r in enumerate(self.rows):
            value |= r << (i * self.n)
        return value

    def __eq__(self, other):
        return isinstance(other, MatGF2) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        return MatGF2(self.n, [a ^ b for a, b in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if not isinstance(other, MatGF2):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("size mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return MatGF2(self.n, out)

    def apply(self, vec):
        """Matrix times column vector (vector = int bitmask)."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & vec).count("1") & 1:
                out |= 1 << i
        return out

    def transpose(self):
        out = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                if (r >> j) & 1:
                    out[j] |= 1 << i
        return MatGF2(self.n, out)

    def rank(self):
        return len(self.row_space_basis())

    def is_invertible(self):
        return self._eliminate()[1] is not None

    def inverse(self):
        inv = self._eliminate()[1]
        if inv is None:
            raise ValueError("matrix is singular")
        return MatGF2(self.n, inv)

    def _eliminate(self):
        """Gauss-Jordan; returns (reduced rows, inverse rows or None)."""
        n = self.n
        a = list(self.rows)
        b = [1 << i for i in range(n)]
        row = 0
        for col in range(n):
            pivot = next((r for r in range(row, n) if (a[r] >> col) & 1), None)
            if pivot is None:
                return a, None
            a[row], a[pivot] = a[pivot], a[row]
            b[row], b[pivot] = b[pivot], b[row]
            for r in range(n):
                if r != row and (a[r] >> col) & 1:
                    a[r] ^= a[row]
                    b[r] ^= b[row]
            row += 1
        return a, b

    def nullspace_basis(self):
        """Basis vectors (ints) of the right kernel."""
        n = self.n
        a = list(self.rows)
        pivots = {}
        row = 0
        for col in range(n):
            pivot = next((r for r in range(row, n) if (a[r] >> col) & 1), None)
            if pivot is None:
                continue
            a[row], a[pivot] = a[pivot], a[row]
            for r in range(n):
                if r != row and (a[r] >> col) & 1:
                    a[r] ^= a[row]
            pivots[col] = row
            row += 1
        basis = []
        for col in range(n):
            if col in pivots:
                continue
            vec = 1 << col
            for pcol, prow in pivots.items():
                if (a[prow] >> col) & 1:
                    vec |= 1 << pcol
            basis.append(vec)
        return basis

    def column_space_basis(self):
        return self.transpose().row_space_basis()

    def row_space_basis(self):
        rows = [r for r in self.rows if r]
        basis = []
        for r in rows:
            cur = r
            for b in basis:
                cur = min(cur, cur ^ b)
            if cur:
                basis.append(cur)
                basis.sort(reverse=True)
        return basis

    def order(self, limit=None):
        """Multiplicative order; requires invertibility."""
        if not self.is_invertible():
            raise ValueError("singular matrix has no multiplicative order")
        ident = MatGF2.identity(self.n)
        acc = self
        k = 1
        while acc != ident:
            acc = acc * self
            k += 1
            if limit is not None and k > limit:
                raise ValueError("order exceeds limit")
        return k

    def power(self, e):
        result = MatGF2.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        lines = ["".join(str((r >> j) & 1) for j in range(self.n)) for r in self.rows]
        return f"MatGF2({self.n}, [{' '.join(lines)}])"


def projector_with_kernel(c):
    """Projector pi with ker(pi) = ker(c); needs a complement of the kernel."""
    n = c.n
    kernel = c.nullspace_basis()
    # extend kernel basis to a full basis; the added vectors span the image side
    basis = list(kernel)
    complement = []
    span = []
    for v in basis:
        cur = v
        for b in span:
            cur = min(cur, cur ^ b)
        if cur:
            span.append(cur)
            span.sort(reverse=True)
    for j in range(n):
        v = 1 << j
        cur = v
        for b in span:
            cur = min(cur, cur ^ b)
        if cur:
            span.append(cur)
            span.sort(reverse=True)
            complement.append(v)
    # change of basis: columns are [complement | kernel]
    cols = complement + kernel
    P = MatGF2(n, [0] * n)
    rows = [0] * n
    for j, v in enumerate(cols):
        for i in range(n):
            if (v >> i) & 1:
                rows[i] |= 1 << j
    P = MatGF2(n, rows)
    D = MatGF2(n, [1 << i if i < len(complement) else 0 for i in range(n)])
    return P * D * P.inverse()


# -- polynomial arithmetic for primitive element search ----------------------


def _poly_mul_mod(a, b, f, n):
    """Carry-less multiply of a, b modulo f (deg f = n), all ints."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if (a >> n) & 1:
            a ^= f
    return result


def _poly_pow_mod(a, e, f, n):
    result = 1
    while e:
        if e & 1:
            result = _poly_mul_mod(result, a, f, n)
        a = _poly_mul_mod(a, a, f, n)
        e >>= 1
    return result


def _prime_factors(k):
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


def primitive_polynomial(n):
    """Lowest primitive polynomial of degree n over GF(2), as an int."""
    K = (1 << n) - 1
    primes = _prime_factors(K)
    # candidates have constant term 1; iterate in increasing numeric order
    for middle in range(0, 1 << (n - 1)):
        f = (1 << n) | (middle << 1) | 1
        if _poly_pow_mod(2, K, f, n) != 1:
            continue
        if all(_poly_pow_mod(2, K // p, f, n) != 1 for p in primes):
            return f
    raise AssertionError(f"no primitive polynomial of degree {n} found")


def companion_matrix(f, n):
    """Companion matrix of a monic degree-n polynomial (acts as mult by x)."""
    rows = [0] * n
    # x * x^(n-1) = f - x^n, i.e. the low n bits of f
    for i in range(n - 1):
        rows[i + 1] |= 1 << i
    for i in range(n):
        if (f >> i) & 1:
            rows[i] |= 1 << (n - 1)
    return MatGF2(n, rows)


def primitive_order_K_element(s):
    """Matrix of size 3s whose multiplicative order is exactly K = 2^(3s)-1.

    Acts as a single K-cycle on the nonzero vectors.
    """
    n = 3 * s
    f = primitive_polynomial(n)
    return companion_matrix(f, n)


class SideFieldAction:
    """Discrete-log labeling of the K nonzero vectors of GF(2)^(3s).

    Label j stands for the vector M^j * e_0 where M is the fixed order-K
    generator, so M itself acts as the shift j -> j+1 mod K.
    """

    def __init__(self, s):
        self.s = s
        self.n = 3 * s
        self.K = (1 << self.n) - 1
        self.generator = primitive_order_K_element(s)
        vecs = []
        v = 1  # e_0
        for _ in range(self.K):
            vecs.append(v)
            v = self.generator.apply(v)
        assert v == 1, "generator does not have order exactly K"
        self.vectors = vecs
        self.dlog = {vec: j for j, vec in enumerate(vecs)}
        assert len(self.dlog) == self.K, "generator orbit does not cover all vectors"

    def matrix_to_permutation(self, mat):
        """Permutation of the K labels induced by an invertible matrix."""
        if mat.n != self.n:
            raise ValueError("matrix size mismatch")
        if not mat.is_invertible():
            raise ValueError("singular matrix does not permute the labels")
        table = np.empty(self.K, dtype=np.int64)
        for j, vec in enumerate(self.vectors):
            table[j] = self.dlog[mat.apply(vec)]
        return Permutation(table, _validate=False)
