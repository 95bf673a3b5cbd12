"""
Projective linear algebra over F_p and random constructors for the
geometric ingredients: points, linear subspaces, lines, sundials, the
rulings of the fixed quadric ``x0*x3 - x1*x2`` in P^3, and a one-parameter
family degenerating two skew lines to a sundial.

"Generic" means uniformly random over F_p from an explicitly passed
``numpy.random.Generator``; the same seed always rebuilds the same object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gfp
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    DimensionTooSmall,
    EmptyInput,
    NotSkew,
)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^n, stored by its canonical representative.

    The first nonzero coordinate of ``coords`` is 1.
    """

    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        c = tuple(int(x) % self.p for x in self.coords)
        nz = [x for x in c if x]
        if not nz:
            raise DegenerateInput("the zero vector is not a projective point")
        if nz[0] != 1:
            s = gfp.inv(nz[0], self.p)
            c = tuple(x * s % self.p for x in c)
        object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)


@dataclass(frozen=True)
class LinearSubspace:
    """Projective linear subspace, stored as the RREF basis of its cone."""

    rows: tuple[tuple[int, ...], ...]
    p: int

    @classmethod
    def from_rows(cls, rows, p: int) -> "LinearSubspace":
        a = gfp.as_matrix(rows, p)
        if a.size == 0:
            raise EmptyInput("a subspace needs at least one spanning vector")
        red, piv = gfp.rref(a, p)
        if not piv:
            raise DegenerateInput("spanning vectors are all zero")
        return cls(tuple(tuple(int(x) for x in r) for r in red), p)

    @classmethod
    def whole(cls, n: int, p: int) -> "LinearSubspace":
        return cls.from_rows(np.eye(n + 1, dtype=np.int64), p)

    @property
    def ambient_n(self) -> int:
        return len(self.rows[0]) - 1

    @property
    def dim(self) -> int:
        """Projective dimension."""
        return len(self.rows) - 1

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def points(self) -> list[ProjectivePoint]:
        return [ProjectivePoint(r, self.p) for r in self.rows]

    def contains(self, other) -> bool:
        """Whether a point, line or subspace lies in this subspace."""
        vecs = _vectors(other)
        if vecs.shape[1] != self.ambient_n + 1:
            raise DimensionMismatch("ambient dimensions differ")
        return gfp.rank(np.vstack([self.matrix(), vecs]), self.p) == len(self.rows)

    def meet_hyperplane(self, coeffs) -> "LinearSubspace":
        """Intersection with the hyperplane ``sum c_i x_i = 0``."""
        c = np.array(coeffs, dtype=np.int64) % self.p
        m = self.matrix()
        values = (m @ c) % self.p
        if not values.any():
            return self
        kernel = gfp.nullspace(values.reshape(1, -1), self.p)
        if kernel.shape[0] == 0:
            raise DegenerateInput("subspace misses the hyperplane")
        return LinearSubspace.from_rows(gfp.matmul_mod(kernel, m, self.p), self.p)


@dataclass(frozen=True)
class Line:
    """A line, kept as two distinct spanning points."""

    a: ProjectivePoint
    b: ProjectivePoint

    def __post_init__(self):
        if self.a.p != self.b.p or self.a.n != self.b.n:
            raise DimensionMismatch("spanning points live in different spaces")
        if gfp.rank([self.a.coords, self.b.coords], self.a.p) != 2:
            raise DegenerateInput("a line needs two distinct points")

    @property
    def p(self) -> int:
        return self.a.p

    @property
    def n(self) -> int:
        return self.a.n

    def subspace(self) -> LinearSubspace:
        return LinearSubspace.from_rows([self.a.coords, self.b.coords], self.p)

    def sample_points(self, count: int) -> np.ndarray:
        """``count`` distinct points ``a + j*b`` for ``j = 0 .. count-1``."""
        if count > self.p:
            raise DegenerateInput(f"F_{self.p} has fewer than {count} parameters")
        j = np.arange(count, dtype=np.int64).reshape(-1, 1)
        return (self.a.vector() + j * self.b.vector()) % self.p

    def contains(self, point: ProjectivePoint) -> bool:
        return gfp.rank([self.a.coords, self.b.coords, point.coords], self.p) == 2

    def point_at(self, s: int, t: int) -> ProjectivePoint:
        return ProjectivePoint(tuple(s * self.a.vector() + t * self.b.vector()), self.p)


@dataclass(frozen=True)
class SundialData:
    """Two lines through ``vertex`` plus the 3-space carrying the embedded point."""

    first: Line
    second: Line
    vertex: ProjectivePoint
    space: LinearSubspace

    def __post_init__(self):
        p = self.vertex.p
        if not (self.first.contains(self.vertex) and self.second.contains(self.vertex)):
            raise DegenerateInput("the vertex must lie on both lines")
        plane = span([self.first.a, self.first.b, self.second.a, self.second.b])
        if plane.dim != 2:
            raise DegenerateInput("the two lines must be distinct and meet")
        if self.space.dim != 3 or self.space.p != p:
            raise DegenerateInput("the embedded point needs a 3-space")
        if not self.space.contains(plane):
            raise DegenerateInput("the 3-space must contain both lines")

    @property
    def n(self) -> int:
        return self.vertex.n

    def plane(self) -> LinearSubspace:
        return span([self.first.a, self.first.b, self.second.a, self.second.b])


def _vectors(obj) -> np.ndarray:
    if isinstance(obj, ProjectivePoint):
        return obj.vector().reshape(1, -1)
    if isinstance(obj, Line):
        return np.array([obj.a.coords, obj.b.coords], dtype=np.int64)
    if isinstance(obj, LinearSubspace):
        return obj.matrix()
    return np.atleast_2d(np.array(obj, dtype=np.int64))


def span(points: Sequence) -> LinearSubspace:
    """Smallest subspace containing all inputs (points, lines or subspaces)."""
    if len(points) == 0:
        raise EmptyInput("cannot span an empty list")
    vecs = [_vectors(x) for x in points]
    width = {v.shape[1] for v in vecs}
    if len(width) != 1:
        raise DimensionMismatch("inputs live in different ambient spaces")
    p = {getattr(x, "p", None) for x in points} - {None}
    if len(p) != 1:
        raise DimensionMismatch("inputs use different primes")
    return LinearSubspace.from_rows(np.vstack(vecs), p.pop())


def random_vector(rng: np.random.Generator, width: int, p: int) -> np.ndarray:
    while True:
        v = rng.integers(0, p, size=width, dtype=np.int64)
        if v.any():
            return v


def sample_point(space: LinearSubspace, rng: np.random.Generator) -> ProjectivePoint:
    m = space.matrix()
    coeffs = random_vector(rng, m.shape[0], space.p)
    return ProjectivePoint(tuple(gfp.matmul_mod(coeffs.reshape(1, -1), m, space.p)[0]),
                           space.p)


def random_point(n: int, p: int, rng: np.random.Generator) -> ProjectivePoint:
    return ProjectivePoint(tuple(random_vector(rng, n + 1, p)), p)


def random_points_in(space: LinearSubspace, count: int, rng) -> list[ProjectivePoint]:
    """``count`` random points of ``space`` with independent cone vectors."""
    if count > space.dim + 1:
        raise DegenerateInput(f"a {space.dim}-space has no {count} independent points")
    while True:
        pts = [sample_point(space, rng) for _ in range(count)]
        if gfp.rank([q.coords for q in pts], space.p) == count:
            return pts


def line_through(a: ProjectivePoint, b: ProjectivePoint) -> Line:
    return Line(a, b)


def random_line_in(space: LinearSubspace, rng) -> Line:
    return Line(*random_points_in(space, 2, rng))


def random_line(n: int, p: int, rng) -> Line:
    return random_line_in(LinearSubspace.whole(n, p), rng)


def random_line_through(point: ProjectivePoint, space: LinearSubspace, rng) -> Line:
    """Random line through ``point`` inside ``space``."""
    while True:
        other = sample_point(space, rng)
        if gfp.rank([point.coords, other.coords], point.p) == 2:
            return Line(point, other)


def random_space_containing(base: LinearSubspace, dim: int, within: LinearSubspace, rng
                            ) -> LinearSubspace:
    """Random ``dim``-space inside ``within`` that contains ``base``."""
    if not (base.dim <= dim <= within.dim):
        raise DegenerateInput(f"no {dim}-space between a {base.dim}- and a {within.dim}-space")
    while True:
        extra = [sample_point(within, rng) for _ in range(dim - base.dim)]
        out = span([base, *extra])
        if out.dim == dim:
            return out


def make_sundial(vertex: ProjectivePoint, first_dir: ProjectivePoint,
                 second_dir: ProjectivePoint, space: LinearSubspace) -> SundialData:
    return SundialData(Line(vertex, first_dir), Line(vertex, second_dir), vertex, space)


def make_generic_sundial(n: int, p: int, rng: np.random.Generator,
                         within: LinearSubspace | None = None) -> SundialData:
    """Generic sundial in P^n (or inside ``within``, which must be >= 3-dimensional)."""
    if n < 3:
        raise DimensionTooSmall(f"sundials live in P^n with n >= 3, got n={n}")
    ambient = within if within is not None else LinearSubspace.whole(n, p)
    if ambient.dim < 3:
        raise DimensionTooSmall("the ambient space of a sundial must be at least 3-dimensional")
    vertex, a, b, c = random_points_in(ambient, 4, rng)
    space = span([vertex, a, b, c])
    return make_sundial(vertex, a, b, space)


def make_sundial_on_lines(first: Line, second: Line, space: LinearSubspace) -> SundialData:
    """Sundial from two given meeting lines and a 3-space containing them."""
    meet = intersect_lines(first, second)
    return SundialData(first, second, meet, space)


def intersect_lines(first: Line, second: Line) -> ProjectivePoint:
    """The common point of two distinct coplanar lines."""
    p = first.p
    m = np.array([first.a.coords, first.b.coords, second.a.coords, second.b.coords],
                 dtype=np.int64).T
    kernel = gfp.nullspace(m, p)
    if kernel.shape[0] != 1:
        raise DegenerateInput("lines do not meet in a single point")
    s, t = int(kernel[0, 0]), int(kernel[0, 1])
    return first.point_at(s, t)


# --- the quadric x0*x3 - x1*x2 = 0 in P^3 and its two rulings ---------------

def quadric_value(point, p: int) -> int:
    x = getattr(point, "coords", point)
    return (int(x[0]) * int(x[3]) - int(x[1]) * int(x[2])) % p


def segre_point(u: Sequence[int], v: Sequence[int], p: int) -> ProjectivePoint:
    """Image of ``((u0:u1), (v0:v1))`` under P^1 x P^1 -> Q."""
    u0, u1 = (int(x) for x in u)
    v0, v1 = (int(x) for x in v)
    return ProjectivePoint((u0 * v0, u0 * v1, u1 * v0, u1 * v1), p)


def segre_coordinates(point: ProjectivePoint) -> tuple[tuple[int, int], tuple[int, int]]:
    """Recover ``(u, v)`` for a point of Q, both normalized as P^1 points."""
    x0, x1, x2, x3 = point.coords
    p = point.p
    if quadric_value(point, p):
        raise DegenerateInput("point is not on the quadric")
    u = (x0, x2) if (x0 or x2) else (x1, x3)
    v = (x0, x1) if (x0 or x1) else (x2, x3)
    return _normalize_p1(u, p), _normalize_p1(v, p)


def _normalize_p1(c, p: int) -> tuple[int, int]:
    return ProjectivePoint(tuple(c), p).coords  # type: ignore[return-value]


def ruling_line(family: str, param: Sequence[int], p: int) -> Line:
    """Line of ruling ``"A"`` (u fixed) or ``"B"`` (v fixed) on the fixed quadric."""
    if family == "A":
        return Line(segre_point(param, (1, 0), p), segre_point(param, (0, 1), p))
    if family == "B":
        return Line(segre_point((1, 0), param, p), segre_point((0, 1), param, p))
    raise ValueError(f"unknown ruling {family!r}")


def ruling_through(family: str, point: ProjectivePoint) -> Line:
    u, v = segre_coordinates(point)
    return ruling_line(family, u if family == "A" else v, point.p)


def random_p1(p: int, rng) -> tuple[int, int]:
    return _normalize_p1(tuple(random_vector(rng, 2, p)), p)


def random_quadric_point(p: int, rng) -> ProjectivePoint:
    return segre_point(random_p1(p, rng), random_p1(p, rng), p)


def line_on_quadric(line: Line) -> bool:
    p = line.p
    return all(quadric_value(q, p) == 0 for q in line.sample_points(3))


def ruling_family(line: Line) -> str:
    """Which ruling a line lying on Q belongs to."""
    if not line_on_quadric(line):
        raise DegenerateInput("line does not lie on the quadric")
    ua, va = segre_coordinates(line.a)
    ub, vb = segre_coordinates(line.b)
    return "A" if ua == ub else "B"


# --- degeneration of two skew lines -----------------------------------------

def degeneration_fiber(first: Line, second: Line, lam: int):
    """Fibre at ``lam`` of a flat family degenerating two skew lines.

    The moving line is ``L_lam = <P + lam*(A - P), B>`` where ``first = <A, B>``
    and ``P = second.a``.  For ``lam = 1`` it is ``first``; for ``lam != 0``
    the fibre is two lines in ``<first, second>``; for ``lam = 0`` it is the
    sundial ``L_0 + second + 2P|<first, second>``, returned as its three
    pieces.
    """
    from .schemes import DoublePointRestricted, LineComponent, Scheme

    p = first.p
    ambient = span([first, second])
    if ambient.dim != 3:
        raise NotSkew(f"lines span a {ambient.dim}-space, not a 3-space")
    lam = int(lam) % p
    anchor = second.a.vector()
    moving = (anchor + lam * (first.a.vector() - anchor)) % p
    moved = Line(ProjectivePoint(tuple(moving), p), first.b)
    if lam == 0:
        return Scheme(first.n, (LineComponent(moved), LineComponent(second),
                                DoublePointRestricted(second.a, ambient)), p)
    return Scheme(first.n, (LineComponent(moved), LineComponent(second)), p)
