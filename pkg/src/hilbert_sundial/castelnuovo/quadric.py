"""
Linear systems of bidegree (a, b) on P^1 x P^1, i.e. on the fixed quadric
``x0*x3 - x1*x2 = 0`` through the Segre embedding.

A point ``(u, v)`` corresponds to ``(u0 v0, u0 v1, u1 v0, u1 v1)`` in P^3.
Lines of ruling A have ``u`` fixed, lines of ruling B have ``v`` fixed, so
restricting a degree-d form of P^3 to Q gives a form of bidegree (d, d) and
every A-line in the base locus lowers the first degree by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .. import gfp
from ..errors import DegenerateInput, PrimeTooSmall
from ..geometry import ProjectivePoint
from ..monomials import basis, derivative_row, evaluation_row


def p1(coords, p: int) -> ProjectivePoint:
    """A point of P^1 in canonical form."""
    return ProjectivePoint(tuple(coords), p)


def _transversal(u: ProjectivePoint) -> tuple[int, int]:
    # any vector independent of u's representative (first coordinate is 0 or 1)
    return (0, 1) if u.coords[0] == 1 else (1, 0)


@dataclass(frozen=True)
class SimplePointP1P1:
    u: ProjectivePoint
    v: ProjectivePoint


@dataclass(frozen=True)
class DoublePointP1P1:
    u: ProjectivePoint
    v: ProjectivePoint


@dataclass(frozen=True)
class RulingLineA:
    """The line ``{u} x P^1``."""

    u: ProjectivePoint


@dataclass(frozen=True)
class RulingLineB:
    """The line ``P^1 x {v}``."""

    v: ProjectivePoint


P1P1Component = Union[SimplePointP1P1, DoublePointP1P1, RulingLineA, RulingLineB]


@dataclass(frozen=True)
class BidegreeSystem:
    """Forms of bidegree ``(a, b)`` required to contain ``components``."""

    a: int
    b: int
    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def free_dimension(self) -> int:
        if self.a < 0 or self.b < 0:
            return 0
        return (self.a + 1) * (self.b + 1)


def _factor(deg: int, point: ProjectivePoint, p: int) -> np.ndarray:
    return evaluation_row(basis(1, deg), point.coords, p)


def _factor_derivative(deg: int, point: ProjectivePoint, p: int) -> np.ndarray:
    return derivative_row(basis(1, deg), point.coords, _transversal(point), p)


def _joint(left: np.ndarray, right: np.ndarray, p: int) -> np.ndarray:
    return np.outer(left, right).ravel() % p


def bidegree_rows(c, a: int, b: int, p: int) -> np.ndarray:
    """Conditions imposed by one component on forms of bidegree ``(a, b)``.

    Columns are ``u0^(a-i) u1^i v0^(b-j) v1^j`` in order ``(i, j)``.
    """
    if isinstance(c, SimplePointP1P1):
        return _joint(_factor(a, c.u, p), _factor(b, c.v, p), p).reshape(1, -1)
    if isinstance(c, DoublePointP1P1):
        fu, fv = _factor(a, c.u, p), _factor(b, c.v, p)
        return np.vstack([
            _joint(fu, fv, p),
            _joint(_factor_derivative(a, c.u, p), fv, p),
            _joint(fu, _factor_derivative(b, c.v, p), p),
        ])
    if isinstance(c, RulingLineA):
        fu = _factor(a, c.u, p)
        return np.vstack([_joint(fu, _factor(b, p1((1, j), p), p), p) for j in range(b + 1)])
    if isinstance(c, RulingLineB):
        fv = _factor(b, c.v, p)
        return np.vstack([_joint(_factor(a, p1((1, i), p), p), fv, p) for i in range(a + 1)])
    raise TypeError(f"not a P^1 x P^1 component: {c!r}")


def bidegree_matrix(S: BidegreeSystem, p: int) -> np.ndarray:
    cols = S.free_dimension
    rows = [bidegree_rows(c, S.a, S.b, p) for c in S.components]
    if not rows:
        return np.zeros((0, cols), dtype=np.int64)
    return np.vstack(rows)


def bidegree_dimension(S: BidegreeSystem, p: int) -> int:
    """Dimension of the bidegree-(a, b) forms through every component of ``S``."""
    if S.a < 0 or S.b < 0:
        return 0
    if p < max(S.a, S.b) + 2:
        raise PrimeTooSmall(f"p={p} too small for bidegree ({S.a}, {S.b})")
    if not S.components:
        return S.free_dimension
    return S.free_dimension - gfp.rank(bidegree_matrix(S, p), p)


def random_p1_point(p: int, rng: np.random.Generator) -> ProjectivePoint:
    while True:
        c = rng.integers(0, p, size=2)
        if c.any():
            return p1(c, p)


def random_system(a: int, b: int, p: int, rng: np.random.Generator, *,
                  points: int = 0, double_points: int = 0,
                  lines_a: int = 0, lines_b: int = 0) -> BidegreeSystem:
    """Generic system with the requested numbers of each component."""
    comps: list = []
    comps += [RulingLineA(random_p1_point(p, rng)) for _ in range(lines_a)]
    comps += [RulingLineB(random_p1_point(p, rng)) for _ in range(lines_b)]
    comps += [DoublePointP1P1(random_p1_point(p, rng), random_p1_point(p, rng))
              for _ in range(double_points)]
    comps += [SimplePointP1P1(random_p1_point(p, rng), random_p1_point(p, rng))
              for _ in range(points)]
    if len({c for c in comps if isinstance(c, RulingLineA)}) != lines_a:
        raise DegenerateInput("repeated ruling line")
    return BidegreeSystem(a, b, tuple(comps))


def remove_a_rulings(S: BidegreeSystem) -> BidegreeSystem:
    """Strip the A-ruling lines of ``S`` as fixed components.

    Each A-line ``{u} x P^1`` divides every form of the system, so the forms
    are ``l_u * G`` with ``G`` of bidegree ``(a-1, b)``.  On the removed
    lines, simple points impose nothing on ``G`` and a double point imposes
    only its value (the derivative across the line is ``G`` times a unit).
    """
    removed = {c.u for c in S.components if isinstance(c, RulingLineA)}
    kept: list = []
    for c in S.components:
        if isinstance(c, RulingLineA):
            continue
        if isinstance(c, SimplePointP1P1) and c.u in removed:
            continue
        if isinstance(c, DoublePointP1P1) and c.u in removed:
            kept.append(SimplePointP1P1(c.u, c.v))
            continue
        kept.append(c)
    return BidegreeSystem(S.a - len(removed), S.b, tuple(kept))
