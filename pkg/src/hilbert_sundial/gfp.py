"""
Exact arithmetic over the prime field F_p and dense row reduction.

Field elements are plain Python ints in ``[0, p)``; matrices are numpy
``int64`` arrays with entries in the same range.  Products of two residues
fit in a machine word as long as ``p < 2**31``, and inner products are
accumulated in chunks small enough that no intermediate sum overflows.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from .errors import DimensionMismatch, NotPrime, PrimeTooLarge, ZeroInverse

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DEFAULT_PRIME = 32003
MAX_PRIME = 2**31
_INT64_MAX = 2**63 - 1


def check_prime(p) -> int:
    """Return ``p`` as an int after checking primality by trial division."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise NotPrime(f"prime must be an integer, got {p!r}")
    p = int(p)
    if p < 2:
        raise NotPrime(f"{p} is not prime")
    if p >= MAX_PRIME:
        raise PrimeTooLarge(f"{p} does not fit single-word arithmetic (< 2**31)")
    if p % 2 == 0:
        if p != 2:
            raise NotPrime(f"{p} is not prime")
        return p
    for q in range(3, isqrt(p) + 1, 2):
        if p % q == 0:
            raise NotPrime(f"{p} is not prime (divisible by {q})")
    return p


def inv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


def as_matrix(m, p: int) -> np.ndarray:
    """Copy ``m`` into a reduced 2-D int64 array."""
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {a.shape}")
    return a % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for reduced int64 operands."""
    k = a.shape[1]
    if k != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if k == 0:
        return out
    # acc < p plus chunk products of size < (p-1)^2 must stay below 2^63
    chunk = max(1, (_INT64_MAX - p) // max(1, (p - 1) ** 2))
    for start in range(0, k, chunk):
        stop = min(k, start + chunk)
        out += a[:, start:stop] @ b[start:stop]
        out %= p
    return out


def _reduce_block_numpy(block: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m, ncols = block.shape
    pivots: list[int] = []
    r = 0
    start = 0
    while r < m and start < ncols:
        live = block[r:, start:].any(axis=0)
        offset = int(live.argmax())
        if not live[offset]:
            break
        c = start + offset
        i = r + int((block[r:, c] != 0).argmax())
        if i != r:
            block[[r, i]] = block[[i, r]]
        scale = pow(int(block[r, c]), -1, p)
        if scale != 1:
            block[r] = block[r] * scale % p
        col = block[:, c].copy()
        col[r] = 0
        block -= np.outer(col, block[r])
        block %= p
        pivots.append(c)
        r += 1
        start = c + 1
    return block[:r], pivots


def _rref_kernel(a, p, pivots):
    # rows below r are zero left of column c, so updates start at column c
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # inverse by extended Euclid
        x0, x1, u, v = 1, 0, a[r, c], p
        while v != 0:
            q = u // v
            u, v = v, u - q * v
            x0, x1 = x1, x0 - q * x1
        scale = x0 % p
        if scale != 1:
            for j in range(c, n):
                a[r, j] = a[r, j] * scale % p
        for i in range(m):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return r


if numba is not None:
    _rref_kernel_jit = numba.njit(cache=True, nogil=True)(_rref_kernel)
else:  # pragma: no cover
    _rref_kernel_jit = None


def _reduce_block(block: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Bring ``block`` to reduced row echelon form in place.

    Pivots are chosen column by column, taking the first row with a nonzero
    entry.  Returns the nonzero rows and their pivot columns.
    """
    if _rref_kernel_jit is None:
        return _reduce_block_numpy(block, p)
    pivots = np.zeros(min(block.shape), dtype=np.int64)
    r = _rref_kernel_jit(block, np.int64(p), pivots)
    return block[:r], [int(c) for c in pivots[:r]]


class RowEchelon:
    """Row space over F_p kept in reduced row echelon form.

    Rows can be added incrementally; the rank after each addition is
    available immediately, which lets a caller read off the Hilbert function
    of every prefix of a union of schemes from a single elimination.
    """

    def __init__(self, ncols: int, p: int, batch: int = 64):
        self.ncols = int(ncols)
        self.p = int(p)
        self.batch = batch
        self._basis = np.zeros((0, self.ncols), dtype=np.int64)
        self._pivots = np.zeros(0, dtype=np.intp)

    @property
    def rank(self) -> int:
        return int(self._pivots.size)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def reduce(self, rows) -> np.ndarray:
        """Return ``rows`` reduced modulo the current row space."""
        block = as_matrix(rows, self.p)
        if block.shape[1] != self.ncols:
            raise DimensionMismatch(
                f"row length {block.shape[1]} != {self.ncols} columns")
        if self.rank:
            block = (block - matmul_mod(block[:, self._pivots], self._basis, self.p)) % self.p
        return block

    def contains(self, row) -> bool:
        return not self.reduce(row).any()

    def add_rows(self, rows) -> int:
        """Add rows to the space; returns how many were independent."""
        block = as_matrix(rows, self.p)
        if block.shape[1] != self.ncols:
            raise DimensionMismatch(
                f"row length {block.shape[1]} != {self.ncols} columns")
        gained = 0
        for start in range(0, block.shape[0], self.batch):
            if self.full:
                break
            gained += self._add_block(block[start:start + self.batch])
        return gained

    def _add_block(self, block: np.ndarray) -> int:
        p = self.p
        if self.rank:
            block = (block - matmul_mod(block[:, self._pivots], self._basis, p)) % p
        new, piv = _reduce_block(block, p)
        if not piv:
            return 0
        piv_arr = np.asarray(piv, dtype=np.intp)
        if self.rank:
            self._basis = (self._basis - matmul_mod(self._basis[:, piv_arr], new, p)) % p
        self._basis = np.vstack([self._basis, new])
        self._pivots = np.concatenate([self._pivots, piv_arr])
        return len(piv)

    def basis(self) -> tuple[np.ndarray, np.ndarray]:
        """Reduced basis rows sorted by pivot column, and the pivots."""
        order = np.argsort(self._pivots, kind="stable")
        return self._basis[order].copy(), self._pivots[order].copy()


def rank(m, p: int) -> int:
    """Row rank of ``m`` over F_p."""
    a = as_matrix(m, p)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    if rows <= 128:
        return len(_reduce_block(a, p)[1])
    ech = RowEchelon(cols, p)
    ech.add_rows(a)
    return ech.rank


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    a = as_matrix(m, p)
    if a.shape[0] == 0:
        return a, []
    rows, piv = _reduce_block(a, p)
    order = np.argsort(piv, kind="stable")
    return rows[order], [piv[i] for i in order]


def nullspace(m, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : m @ x = 0}`` over F_p."""
    a = as_matrix(m, p)
    ncols = a.shape[1]
    rows, piv = rref(a, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-rows[i, f]) % p
    return out


def inverse(m, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p."""
    a = as_matrix(m, p)
    k = a.shape[0]
    if a.shape != (k, k):
        raise DimensionMismatch(f"need a square matrix, got {a.shape}")
    rows, piv = rref(np.hstack([a, np.eye(k, dtype=np.int64)]), p)
    if piv[:k] != list(range(k)) or len(piv) < k or piv[k - 1] >= k:
        raise ZeroInverse("matrix is singular")
    return rows[:k, k:].copy()
