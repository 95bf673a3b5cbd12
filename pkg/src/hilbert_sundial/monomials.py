"""
Degree-d monomials in n+1 variables and the linear functionals built on them.

A degree-d form is stored as its coefficient vector in the monomial basis;
a geometric condition (vanishing at a point, vanishing of a directional
derivative) is a row vector ``r`` with ``r @ coeffs == 0`` exactly when the
form satisfies the condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .errors import DimensionMismatch, InvalidDimension

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered basis of the degree-``d`` part of ``k[x_0, ..., x_n]``.

    Order is graded lexicographic with ``x_0 > x_1 > ... > x_n``, so the
    first monomial is ``x_0^d`` and the last is ``x_n^d``.
    """

    n: int
    d: int
    exponents: np.ndarray = field(repr=False, compare=False)

    def __len__(self) -> int:
        return self.exponents.shape[0]

    @property
    def size(self) -> int:
        return len(self)

    def index(self, exponent) -> int:
        hits = np.flatnonzero((self.exponents == np.asarray(exponent)).all(axis=1))
        if hits.size == 0:
            raise KeyError(tuple(exponent))
        return int(hits[0])


def exponent_tuples(n: int, d: int):
    """Yield exponent vectors of degree ``d`` in ``n+1`` variables, grlex order."""
    for combo in combinations_with_replacement(range(n + 1), d):
        e = [0] * (n + 1)
        for i in combo:
            e[i] += 1
        yield tuple(e)


_CACHE: dict[tuple[int, int], MonomialBasis] = {}


def basis(n: int, d: int) -> MonomialBasis:
    if n < 1 or d < 0:
        raise InvalidDimension(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    key = (n, d)
    cached = _CACHE.get(key)
    if cached is None:
        exps = np.array(list(exponent_tuples(n, d)), dtype=np.int64).reshape(-1, n + 1)
        assert exps.shape[0] == comb(d + n, n)
        exps.setflags(write=False)
        cached = _CACHE[key] = MonomialBasis(n, d, exps)
    return cached


def _coords(points, width: int, p: int) -> np.ndarray:
    if hasattr(points, "coords"):
        points = [points.coords]
    elif not isinstance(points, np.ndarray):
        points = [getattr(q, "coords", q) for q in points]
    pts = np.array(points, dtype=np.int64)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.shape[1] != width:
        raise DimensionMismatch(f"points need {width} coordinates, got {pts.shape[1]}")
    return pts % p


def _power_table(pts: np.ndarray, d: int, p: int) -> np.ndarray:
    # table[k, i, e] = pts[k, i] ** e mod p
    k, w = pts.shape
    table = np.ones((k, w, d + 1), dtype=np.int64)
    for e in range(1, d + 1):
        table[:, :, e] = table[:, :, e - 1] * pts % p
    return table


def _powers(pts: np.ndarray, k: int, d: int, p: int) -> np.ndarray:
    w = pts.shape[1]
    pw = np.ones((w, d + 1), dtype=np.int64)
    for i in range(w):
        for e in range(1, d + 1):
            pw[i, e] = pw[i, e - 1] * pts[k, i] % p
    return pw


def _eval_kernel(pts, exps, p, d, out):
    for k in range(pts.shape[0]):
        pw = _powers(pts, k, d, p)
        for m in range(exps.shape[0]):
            v = 1
            for i in range(exps.shape[1]):
                v = v * pw[i, exps[m, i]] % p
            out[k, m] = v


def _deriv_kernel(pts, dirs, exps, p, d, out):
    w = exps.shape[1]
    for k in range(pts.shape[0]):
        pw = _powers(pts, k, d, p)
        for m in range(exps.shape[0]):
            total = 0
            for j in range(w):
                ej = exps[m, j]
                if ej == 0 or dirs[k, j] == 0:
                    continue
                v = ej * dirs[k, j] % p
                for i in range(w):
                    e = exps[m, i] - 1 if i == j else exps[m, i]
                    v = v * pw[i, e] % p
                total = (total + v) % p
            out[k, m] = total


if numba is not None:
    _powers = numba.njit(cache=True, nogil=True)(_powers)
    _eval_kernel_jit = numba.njit(cache=True, nogil=True)(_eval_kernel)
    _deriv_kernel_jit = numba.njit(cache=True, nogil=True)(_deriv_kernel)
else:  # pragma: no cover
    _eval_kernel_jit = _deriv_kernel_jit = None


def _evaluation_rows_numpy(b: MonomialBasis, pts: np.ndarray, p: int) -> np.ndarray:
    table = _power_table(pts, b.d, p)
    out = np.ones((pts.shape[0], len(b)), dtype=np.int64)
    for i in range(b.n + 1):
        out = out * table[:, i, b.exponents[:, i]] % p
    return out


def _derivative_rows_numpy(b: MonomialBasis, pts: np.ndarray, dirs: np.ndarray,
                           p: int) -> np.ndarray:
    out = np.zeros((pts.shape[0], len(b)), dtype=np.int64)
    table = _power_table(pts, b.d, p)
    exps = b.exponents
    for j in range(b.n + 1):
        # d/dx_j of x^e is e_j x^(e - u_j)
        lowered = exps.copy()
        lowered[:, j] = np.maximum(lowered[:, j] - 1, 0)
        partial = np.broadcast_to(exps[:, j] % p, (pts.shape[0], len(b))).copy()
        for i in range(b.n + 1):
            partial = partial * table[:, i, lowered[:, i]] % p
        out = (out + dirs[:, j:j + 1] * partial) % p
    return out


def evaluation_rows(b: MonomialBasis, points, p: int) -> np.ndarray:
    """One row per point: every basis monomial evaluated at the point."""
    pts = _coords(points, b.n + 1, p)
    if _eval_kernel_jit is None:
        return _evaluation_rows_numpy(b, pts, p)
    out = np.empty((pts.shape[0], len(b)), dtype=np.int64)
    _eval_kernel_jit(pts, b.exponents, np.int64(p), np.int64(b.d), out)
    return out


def derivative_rows(b: MonomialBasis, points, directions, p: int) -> np.ndarray:
    """Row ``k``: derivative of each monomial along ``directions[k]`` at ``points[k]``."""
    pts = _coords(points, b.n + 1, p)
    dirs = _coords(directions, b.n + 1, p)
    if dirs.shape[0] != pts.shape[0]:
        raise DimensionMismatch("need one direction per point")
    if b.d == 0:
        return np.zeros((pts.shape[0], len(b)), dtype=np.int64)
    if _deriv_kernel_jit is None:
        return _derivative_rows_numpy(b, pts, dirs, p)
    out = np.empty((pts.shape[0], len(b)), dtype=np.int64)
    _deriv_kernel_jit(pts, dirs, b.exponents, np.int64(p), np.int64(b.d), out)
    return out


def evaluation_row(b: MonomialBasis, point, p: int) -> np.ndarray:
    return evaluation_rows(b, _coords(point, b.n + 1, p), p)[0]


def derivative_row(b: MonomialBasis, point, direction, p: int) -> np.ndarray:
    return derivative_rows(
        b, _coords(point, b.n + 1, p), _coords(direction, b.n + 1, p), p)[0]
