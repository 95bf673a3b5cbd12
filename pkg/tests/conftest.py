from __future__ import annotations

import numpy as np
import pytest

P = 32003


def oracle_rank(rows, p: int) -> int:
    """Plain-Python Gaussian elimination over F_p, independent of the package."""
    m = [[int(x) % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def oracle_eval(exps, point, p: int) -> list[int]:
    out = []
    for e in exps:
        v = 1
        for x, k in zip(point, e):
            v = v * pow(int(x), int(k), p) % p
        out.append(v)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
