"""
Residual and trace of a scheme with respect to a hyperplane or the fixed
quadric, read component by component from a finite table of positions.

Positions outside the table raise ``UnrecognizedPosition`` instead of
guessing.  Traces on a hyperplane are returned in P^{n-1} through the
coordinate frame of :class:`Hyperplane`; traces on the quadric are
:class:`BidegreeSystem` components on P^1 x P^1.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb
from typing import Union

import numpy as np

from .. import gfp
from ..errors import DegenerateInput, DimensionMismatch, InvalidDimension, UnrecognizedPosition
from ..geometry import (
    Line,
    LinearSubspace,
    ProjectivePoint,
    SundialData,
    line_on_quadric,
    quadric_value,
    ruling_family,
    segre_coordinates,
)
from ..schemes import (
    DegenerateConic,
    DoublePointRestricted,
    LineComponent,
    Scheme,
    SimplePoint,
    Sundial,
    ideal_dimension,
)
from .quadric import (
    BidegreeSystem,
    DoublePointP1P1,
    RulingLineA,
    RulingLineB,
    SimplePointP1P1,
    bidegree_dimension,
    p1,
)


# --- hypersurfaces -----------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """``sum c_i x_i = 0`` in P^n.

    Points of H are written in P^{n-1} by dropping coordinate ``drop``, the
    last index with a nonzero coefficient; for ``x_n = 0`` this is the last
    coordinate.
    """

    coefficients: tuple[int, ...]
    p: int

    def __post_init__(self):
        c = tuple(int(x) % self.p for x in self.coefficients)
        if not any(c):
            raise DegenerateInput("hyperplane coefficients must not all vanish")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def coordinate(cls, n: int, p: int, index: int | None = None) -> "Hyperplane":
        """``x_index = 0`` (``x_n = 0`` by default)."""
        index = n if index is None else index
        return cls(tuple(1 if i == index else 0 for i in range(n + 1)), p)

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    @property
    def degree(self) -> int:
        return 1

    @property
    def drop(self) -> int:
        return max(i for i, c in enumerate(self.coefficients) if c)

    def value(self, point: ProjectivePoint) -> int:
        return sum(a * b for a, b in zip(self.coefficients, point.coords)) % self.p

    def contains(self, obj) -> bool:
        if isinstance(obj, ProjectivePoint):
            return self.value(obj) == 0
        if isinstance(obj, Line):
            return self.contains(obj.a) and self.contains(obj.b)
        if isinstance(obj, LinearSubspace):
            return all(self.contains(q) for q in obj.points())
        raise TypeError(obj)

    def subspace(self) -> LinearSubspace:
        kernel = gfp.nullspace(np.array([self.coefficients], dtype=np.int64), self.p)
        return LinearSubspace.from_rows(kernel, self.p)

    def meet(self, line: Line) -> ProjectivePoint:
        """The point where a line not contained in H crosses it."""
        va, vb = self.value(line.a), self.value(line.b)
        if va == 0 and vb == 0:
            raise DegenerateInput("line lies in the hyperplane")
        return line.point_at(vb, -va % self.p)

    # coordinates on H
    def project(self, point: ProjectivePoint) -> ProjectivePoint:
        if not self.contains(point):
            raise DegenerateInput("point is not on the hyperplane")
        k = self.drop
        return ProjectivePoint(point.coords[:k] + point.coords[k + 1:], self.p)

    def project_line(self, line: Line) -> Line:
        return Line(self.project(line.a), self.project(line.b))

    def project_space(self, space: LinearSubspace) -> LinearSubspace:
        k = self.drop
        m = np.delete(space.matrix(), k, axis=1)
        return LinearSubspace.from_rows(m, self.p)

    def lift(self, point: ProjectivePoint) -> ProjectivePoint:
        """Inverse of :meth:`project`."""
        k, c, p = self.drop, self.coefficients, self.p
        rest = list(point.coords)
        others = c[:k] + c[k + 1:]
        xk = -sum(a * b for a, b in zip(others, rest)) * gfp.inv(c[k], p) % p
        return ProjectivePoint(tuple(rest[:k] + [xk] + rest[k:]), p)


@dataclass(frozen=True)
class FixedQuadric:
    """``x0 x3 - x1 x2 = 0`` in P^3."""

    p: int

    @property
    def n(self) -> int:
        return 3

    @property
    def degree(self) -> int:
        return 2

    def contains(self, obj) -> bool:
        if isinstance(obj, ProjectivePoint):
            return quadric_value(obj, self.p) == 0
        if isinstance(obj, Line):
            return line_on_quadric(obj)
        raise TypeError(obj)

    def meet(self, line: Line) -> list[ProjectivePoint]:
        """The two rational points where a line crosses Q transversally."""
        return quadric_line_points(line)

    def to_p1p1(self, point: ProjectivePoint) -> tuple[ProjectivePoint, ProjectivePoint]:
        u, v = segre_coordinates(point)
        return p1(u, self.p), p1(v, self.p)

    def ruling(self, line: Line):
        u, v = self.to_p1p1(line.a)
        return RulingLineA(u) if ruling_family(line) == "A" else RulingLineB(v)


Hypersurface = Union[Hyperplane, FixedQuadric]


def _sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return r if r * r % p == a else None
    from sympy.ntheory import sqrt_mod

    return sqrt_mod(a, p)


def quadric_line_points(line: Line) -> list[ProjectivePoint]:
    """Points of ``line`` on Q when it meets Q in two distinct rational points.

    Raises ``UnrecognizedPosition`` if the line lies on Q, is tangent to it,
    or meets it in a conjugate pair of points outside F_p.
    """
    p = line.p
    if p == 2:
        raise UnrecognizedPosition("quadric intersections need an odd prime")
    A, B = line.a.coords, line.b.coords
    alpha = quadric_value(A, p)
    gamma = quadric_value(B, p)
    beta = (A[0] * B[3] + A[3] * B[0] - A[1] * B[2] - A[2] * B[1]) % p
    if alpha == beta == gamma == 0:
        raise UnrecognizedPosition("line lies on the quadric")
    disc = (beta * beta - 4 * alpha * gamma) % p
    if disc == 0:
        raise UnrecognizedPosition("line is tangent to the quadric")
    if alpha == 0:
        # t * (beta s + gamma t) = 0
        return [line.a, line.point_at(gamma, -beta % p)]
    root = _sqrt_mod(disc, p)
    if root is None:
        raise UnrecognizedPosition("line meets the quadric outside F_p")
    den = gfp.inv(2 * alpha, p)
    return [line.point_at((-beta + sign * root) * den % p, 1) for sign in (1, -1)]


def _other_point(line: Line, known: ProjectivePoint) -> ProjectivePoint:
    pts = quadric_line_points(line)
    rest = [q for q in pts if q != known]
    if len(rest) != 1:
        raise UnrecognizedPosition("expected the known point among the intersections")
    return rest[0]


# --- hyperplane rules --------------------------------------------------------

def _hyperplane_residual(c, H: Hyperplane) -> list:
    if isinstance(c, SimplePoint):
        return [] if H.contains(c.point) else [c]
    if isinstance(c, LineComponent):
        return [] if H.contains(c.line) else [c]
    if isinstance(c, DoublePointRestricted):
        if not H.contains(c.point):
            return [c]
        return [] if H.contains(c.space) else [SimplePoint(c.point)]
    if isinstance(c, DegenerateConic):
        inside = (H.contains(c.first), H.contains(c.second))
        if all(inside):
            return []
        if not H.contains(c.vertex):
            return [c]
        if any(inside):
            return [LineComponent(c.second if inside[0] else c.first)]
        raise UnrecognizedPosition("conic with only its vertex on the hyperplane")
    if isinstance(c, Sundial):
        s = c.data
        if not H.contains(s.vertex):
            return [c]
        if H.contains(s.space):
            return []
        inside = (H.contains(s.first), H.contains(s.second))
        if all(inside):
            return [SimplePoint(s.vertex)]
        if any(inside):
            return [LineComponent(s.second if inside[0] else s.first)]
        raise UnrecognizedPosition("sundial with only its vertex on the hyperplane")
    raise TypeError(f"not a scheme component: {c!r}")


def _hyperplane_trace(c, H: Hyperplane) -> list:
    pt, ln, sp = H.project, H.project_line, H.project_space
    if isinstance(c, SimplePoint):
        return [SimplePoint(pt(c.point))] if H.contains(c.point) else []
    if isinstance(c, LineComponent):
        if H.contains(c.line):
            return [LineComponent(ln(c.line))]
        return [SimplePoint(pt(H.meet(c.line)))]
    if isinstance(c, DoublePointRestricted):
        if not H.contains(c.point):
            return []
        cut = c.space.meet_hyperplane(H.coefficients)
        if cut.dim == 0:
            return [SimplePoint(pt(c.point))]
        return [DoublePointRestricted(pt(c.point), sp(cut))]
    if isinstance(c, DegenerateConic):
        inside = (H.contains(c.first), H.contains(c.second))
        if all(inside):
            return [DegenerateConic(ln(c.first), ln(c.second), pt(c.vertex))]
        if not H.contains(c.vertex):
            return [SimplePoint(pt(H.meet(c.first))), SimplePoint(pt(H.meet(c.second)))]
        if any(inside):
            return [LineComponent(ln(c.first if inside[0] else c.second))]
        raise UnrecognizedPosition("conic with only its vertex on the hyperplane")
    if isinstance(c, Sundial):
        s = c.data
        if not H.contains(s.vertex):
            return [SimplePoint(pt(H.meet(s.first))), SimplePoint(pt(H.meet(s.second)))]
        if H.contains(s.space):
            if H.n - 1 < 3:
                raise UnrecognizedPosition("a sundial cannot sit in a hyperplane of P^3")
            return [Sundial(SundialData(ln(s.first), ln(s.second), pt(s.vertex),
                                        sp(s.space)))]
        inside = (H.contains(s.first), H.contains(s.second))
        if all(inside):
            return [DegenerateConic(ln(s.first), ln(s.second), pt(s.vertex))]
        if any(inside):
            cut = s.space.meet_hyperplane(H.coefficients)
            return [LineComponent(ln(s.first if inside[0] else s.second)),
                    DoublePointRestricted(pt(s.vertex), sp(cut))]
        raise UnrecognizedPosition("sundial with only its vertex on the hyperplane")
    raise TypeError(f"not a scheme component: {c!r}")


# --- quadric rules -----------------------------------------------------------

def _quadric_residual(c, Q: FixedQuadric) -> list:
    if isinstance(c, SimplePoint):
        return [] if Q.contains(c.point) else [c]
    if isinstance(c, LineComponent):
        return [] if Q.contains(c.line) else [c]
    if isinstance(c, DoublePointRestricted):
        if not Q.contains(c.point):
            return [c]
        if c.space.dim != 3:
            raise UnrecognizedPosition("restricted double point on the quadric")
        return [SimplePoint(c.point)]
    if isinstance(c, DegenerateConic):
        on = (Q.contains(c.first), Q.contains(c.second))
        if all(on):
            return []
        if any(on):
            return [LineComponent(c.second if on[0] else c.first)]
        return [c]
    if isinstance(c, Sundial):
        s = c.data
        if s.space.dim != 3:
            raise UnrecognizedPosition("quadric rules need the sundial's 3-space to be P^3")
        if not Q.contains(s.vertex):
            return [c]
        on = (Q.contains(s.first), Q.contains(s.second))
        if all(on):
            return [SimplePoint(s.vertex)]
        if any(on):
            return [LineComponent(s.second if on[0] else s.first)]
        return [DegenerateConic(s.first, s.second, s.vertex)]
    raise TypeError(f"not a scheme component: {c!r}")


def _quadric_trace(c, Q: FixedQuadric) -> list:
    def simple(q):
        return SimplePointP1P1(*Q.to_p1p1(q))

    def double(q):
        return DoublePointP1P1(*Q.to_p1p1(q))

    if isinstance(c, SimplePoint):
        return [simple(c.point)] if Q.contains(c.point) else []
    if isinstance(c, LineComponent):
        if Q.contains(c.line):
            return [Q.ruling(c.line)]
        return [simple(q) for q in Q.meet(c.line)]
    if isinstance(c, DoublePointRestricted):
        if not Q.contains(c.point):
            return []
        if c.space.dim != 3:
            raise UnrecognizedPosition("restricted double point on the quadric")
        return [double(c.point)]
    if isinstance(c, (DegenerateConic, Sundial)):
        if isinstance(c, Sundial):
            first, second, vertex = c.data.first, c.data.second, c.data.vertex
            embedded = True
            if c.data.space.dim != 3:
                raise UnrecognizedPosition("quadric rules need the sundial's 3-space to be P^3")
        else:
            first, second, vertex = c.first, c.second, c.vertex
            embedded = False
        if not Q.contains(vertex):
            return [simple(q) for line in (first, second) for q in Q.meet(line)]
        on = (Q.contains(first), Q.contains(second))
        out: list = [Q.ruling(line) for line, flag in zip((first, second), on) if flag]
        if embedded:
            out.append(double(vertex))
        elif not any(on):
            raise UnrecognizedPosition("conic with only its vertex on the quadric")
        out += [simple(_other_point(line, vertex))
                for line, flag in zip((first, second), on) if not flag]
        return out
    raise TypeError(f"not a scheme component: {c!r}")


# --- public operations -------------------------------------------------------

def _check_ambient(X: Scheme, Y) -> None:
    if X.n != Y.n:
        raise DimensionMismatch(f"scheme in P^{X.n}, hypersurface in P^{Y.n}")
    if X.p != Y.p:
        raise DimensionMismatch(f"scheme over F_{X.p}, hypersurface over F_{Y.p}")


def residual(X: Scheme, Y: Hypersurface) -> Scheme:
    """``Res_Y X`` by the component rule table."""
    _check_ambient(X, Y)
    rule = _hyperplane_residual if isinstance(Y, Hyperplane) else _quadric_residual
    return Scheme(X.n, tuple(r for c in X.components for r in rule(c, Y)), X.p)


def trace(X: Scheme, Y: Hypersurface):
    """``Tr_Y X``: a Scheme in P^{n-1} for a hyperplane, a component tuple on P^1 x P^1 for Q."""
    _check_ambient(X, Y)
    if isinstance(Y, Hyperplane):
        if X.n < 2:
            raise InvalidDimension("hyperplane traces need n >= 2")
        comps = tuple(r for c in X.components for r in _hyperplane_trace(c, Y))
        return Scheme(X.n - 1, comps, X.p)
    return tuple(r for c in X.components for r in _quadric_trace(c, Y))


def trace_dimension(X: Scheme, Y: Hypersurface, d: int) -> int:
    """``dim (I_{Tr_Y X, Y})_d``."""
    if isinstance(Y, Hyperplane):
        return ideal_dimension(trace(X, Y), d)
    return bidegree_dimension(BidegreeSystem(d, d, trace(X, Y)), X.p)


@dataclass(frozen=True)
class CastelnuovoReport:
    d: int
    degree: int
    dim_X_d: int
    dim_res: int
    dim_trace: int

    @property
    def inequality_holds(self) -> bool:
        return self.dim_X_d <= self.dim_res + self.dim_trace

    def as_dict(self) -> dict:
        return {**asdict(self), "inequality_holds": self.inequality_holds}


def check_inequality(X: Scheme, Y: Hypersurface, d: int, p: int | None = None
                     ) -> CastelnuovoReport:
    """Compute the three dimensions in Castelnuovo's inequality for ``X`` and ``Y``."""
    if p is not None and p != X.p:
        raise DimensionMismatch(f"scheme coordinates are over F_{X.p}, not F_{p}")
    delta = Y.degree
    if d < delta:
        raise InvalidDimension(f"need d >= {delta}, got d={d}")
    res = residual(X, Y)
    return CastelnuovoReport(
        d=d,
        degree=delta,
        dim_X_d=ideal_dimension(X, d),
        dim_res=ideal_dimension(res, d - delta),
        dim_trace=trace_dimension(X, Y, d),
    )


def forms_on(Y: Hypersurface, d: int) -> int:
    """Dimension of degree-d forms restricted to ``Y``."""
    if isinstance(Y, Hyperplane):
        return comb(d + Y.n - 1, Y.n - 1)
    return (d + 1) ** 2
