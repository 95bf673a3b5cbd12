"""
Schemes as finite unions of linear building blocks, and the linear
conditions they impose on degree-d forms.

``HF(X, d)`` is the rank of the stacked condition matrix and
``dim (I_X)_d`` is the number of monomials minus that rank.  Lines are
encoded by ``d+1`` point evaluations, so the prime must satisfy
``p >= d + 2``.  Conditions shared between components are not deduplicated;
the rank absorbs the redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Union

import numpy as np

from . import gfp
from .errors import DegenerateInput, DimensionMismatch, PrimeTooSmall
from .geometry import Line, LinearSubspace, ProjectivePoint, SundialData, span
from .monomials import MonomialBasis, basis, derivative_rows, evaluation_rows


@dataclass(frozen=True)
class SimplePoint:
    point: ProjectivePoint

    @property
    def n(self) -> int:
        return self.point.n

    @property
    def p(self) -> int:
        return self.point.p


@dataclass(frozen=True)
class DoublePointRestricted:
    """First-order neighbourhood of ``point`` inside the subspace ``space``."""

    point: ProjectivePoint
    space: LinearSubspace

    def __post_init__(self):
        if not self.space.contains(self.point):
            raise DegenerateInput("double point support must lie in its subspace")

    @property
    def n(self) -> int:
        return self.point.n

    @property
    def p(self) -> int:
        return self.point.p

    def directions(self) -> list[np.ndarray]:
        """``space.dim`` vectors completing the point to a basis of the space's cone."""
        return _complement_directions(self.point, self.space)


@dataclass(frozen=True)
class LineComponent:
    line: Line

    @property
    def n(self) -> int:
        return self.line.n

    @property
    def p(self) -> int:
        return self.line.p


@dataclass(frozen=True)
class DegenerateConic:
    """Two distinct lines meeting in ``vertex``."""

    first: Line
    second: Line
    vertex: ProjectivePoint

    def __post_init__(self):
        if not (self.first.contains(self.vertex) and self.second.contains(self.vertex)):
            raise DegenerateInput("the vertex must lie on both lines")
        if span([self.first, self.second]).dim != 2:
            raise DegenerateInput("conic lines must be distinct and meet")

    @property
    def n(self) -> int:
        return self.vertex.n

    @property
    def p(self) -> int:
        return self.vertex.p


@dataclass(frozen=True)
class Sundial:
    data: SundialData

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def p(self) -> int:
        return self.data.vertex.p

    def pieces(self) -> tuple[LineComponent, LineComponent, DoublePointRestricted]:
        d = self.data
        return (LineComponent(d.first), LineComponent(d.second),
                DoublePointRestricted(d.vertex, d.space))


SchemeComponent = Union[SimplePoint, DoublePointRestricted, LineComponent,
                        DegenerateConic, Sundial]

COMPONENT_TYPES = (SimplePoint, DoublePointRestricted, LineComponent,
                   DegenerateConic, Sundial)


@dataclass(frozen=True)
class Scheme:
    """A finite union of components in P^n over F_p."""

    n: int
    components: tuple = ()
    p: int = gfp.DEFAULT_PRIME

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        for c in comps:
            if not isinstance(c, COMPONENT_TYPES):
                raise TypeError(f"not a scheme component: {c!r}")
            if c.n != self.n:
                raise DimensionMismatch(f"component in P^{c.n} added to a scheme in P^{self.n}")
            if c.p != self.p:
                raise DimensionMismatch(f"component over F_{c.p} added to a scheme over F_{self.p}")

    def __add__(self, other) -> "Scheme":
        extra = other.components if isinstance(other, Scheme) else tuple(other)
        return Scheme(self.n, self.components + tuple(extra), self.p)

    def __len__(self) -> int:
        return len(self.components)

    def count(self, kind: type) -> int:
        return sum(isinstance(c, kind) for c in self.components)


@dataclass(frozen=True)
class ConditionMatrix:
    """Stacked conditions; ``tags[i]`` is the index of the component behind row ``i``."""

    matrix: np.ndarray = field(repr=False)
    tags: np.ndarray = field(repr=False)
    basis: MonomialBasis
    p: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def rank(self) -> int:
        return gfp.rank(self.matrix, self.p)


def _complement_directions(point: ProjectivePoint, space: LinearSubspace) -> list[np.ndarray]:
    # space.rows is an RREF basis, so the point's coefficient on row i is its
    # entry in that row's pivot column; drop one row with a nonzero coefficient
    rows = space.matrix()
    pivots = [int(np.flatnonzero(r)[0]) for r in rows]
    coeffs = [point.coords[c] for c in pivots]
    drop = next(i for i, a in enumerate(coeffs) if a)
    return [rows[i] for i in range(len(rows)) if i != drop]


def _check_prime_for_degree(p: int, d: int) -> None:
    if p < d + 2:
        raise PrimeTooSmall(f"p={p} is too small for degree {d}: need p >= d + 2")


def _component_parts(c, d: int) -> tuple[list, list, list]:
    """Evaluation points, derivative points and derivative directions of one component."""
    if isinstance(c, SimplePoint):
        return [c.point.vector()], [], []
    if isinstance(c, LineComponent):
        return list(c.line.sample_points(d + 1)), [], []
    if isinstance(c, DegenerateConic):
        return (list(c.first.sample_points(d + 1)) + list(c.second.sample_points(d + 1)),
                [], [])
    if isinstance(c, DoublePointRestricted):
        point, space = c.point, c.space
    elif isinstance(c, Sundial):
        s = c.data
        point, space = s.vertex, s.space
    else:
        raise TypeError(f"not a scheme component: {c!r}")
    dirs = _complement_directions(point, space)
    ev = [point.vector()]
    if isinstance(c, Sundial):
        ev = list(s.first.sample_points(d + 1)) + list(s.second.sample_points(d + 1)) + ev
    return ev, [point.vector()] * len(dirs), dirs


def component_rows(c, b: MonomialBasis, p: int | None = None) -> np.ndarray:
    """Condition rows one component imposes on degree ``b.d`` forms."""
    p = c.p if p is None else p
    if c.n != b.n:
        raise DimensionMismatch(f"component in P^{c.n}, basis for P^{b.n}")
    _check_prime_for_degree(p, b.d)
    ev, dp, dd = _component_parts(c, b.d)
    blocks = [evaluation_rows(b, np.array(ev), p)]
    if dp:
        blocks.append(derivative_rows(b, np.array(dp), np.array(dd), p))
    return np.vstack(blocks)


def condition_matrix(X: Scheme, d: int) -> ConditionMatrix:
    b = basis(X.n, d)
    _check_prime_for_degree(X.p, d)
    ev, ev_tag, dp, dd, dp_tag = [], [], [], [], []
    for i, c in enumerate(X.components):
        e, q, v = _component_parts(c, d)
        ev += e
        ev_tag += [i] * len(e)
        dp += q
        dd += v
        dp_tag += [i] * len(q)
    blocks, tags = [], []
    if ev:
        blocks.append(evaluation_rows(b, np.array(ev), X.p))
        tags += ev_tag
    if dp:
        blocks.append(derivative_rows(b, np.array(dp), np.array(dd), X.p))
        tags += dp_tag
    if blocks:
        m = np.vstack(blocks)
        order = np.argsort(np.asarray(tags), kind="stable")
        m, tag_arr = m[order], np.asarray(tags)[order]
    else:
        m = np.zeros((0, len(b)), dtype=np.int64)
        tag_arr = np.zeros(0, dtype=np.int64)
    return ConditionMatrix(m, tag_arr, b, X.p)


def hilbert_function(X: Scheme, d: int) -> int:
    """``HF(X, d)``: the rank of the condition matrix."""
    if not X.components:
        _check_prime_for_degree(X.p, d)
        return 0
    return condition_matrix(X, d).rank()


def ideal_dimension(X: Scheme, d: int, p: int | None = None) -> int:
    """``dim (I_X)_d`` over F_p."""
    if p is not None and p != X.p:
        raise DimensionMismatch(f"scheme coordinates are over F_{X.p}, not F_{p}")
    return comb(d + X.n, X.n) - hilbert_function(X, d)


def prefix_ideal_dimensions(X: Scheme, d: int) -> list[int]:
    """``dim (I_{X_k})_d`` for every prefix ``X_k`` (first ``k`` components), k = 0..len(X).

    Uses one incremental elimination for all prefixes.
    """
    cm = condition_matrix(X, d)
    total = len(cm.basis)
    ech = gfp.RowEchelon(total, X.p)
    out = [total]
    bounds = np.searchsorted(cm.tags, np.arange(len(X.components) + 1))
    for k in range(len(X.components)):
        if not ech.full:
            ech.add_rows(cm.matrix[bounds[k]:bounds[k + 1]])
        out.append(total - ech.rank)
    return out


def transform_component(c, g: np.ndarray):
    """Image of a component under the projective transformation ``x -> g x``."""
    p = c.p

    def pt(q: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(tuple(gfp.matmul_mod(g, q.vector().reshape(-1, 1), p)[:, 0]), p)

    def ln(line: Line) -> Line:
        return Line(pt(line.a), pt(line.b))

    def sp(s: LinearSubspace) -> LinearSubspace:
        return LinearSubspace.from_rows(gfp.matmul_mod(s.matrix(), g.T % p, p), p)

    if isinstance(c, SimplePoint):
        return SimplePoint(pt(c.point))
    if isinstance(c, DoublePointRestricted):
        return DoublePointRestricted(pt(c.point), sp(c.space))
    if isinstance(c, LineComponent):
        return LineComponent(ln(c.line))
    if isinstance(c, DegenerateConic):
        return DegenerateConic(ln(c.first), ln(c.second), pt(c.vertex))
    if isinstance(c, Sundial):
        s = c.data
        return Sundial(SundialData(ln(s.first), ln(s.second), pt(s.vertex), sp(s.space)))
    raise TypeError(c)


def transform(X: Scheme, g) -> Scheme:
    g = gfp.as_matrix(g, X.p)
    if g.shape != (X.n + 1, X.n + 1) or gfp.rank(g, X.p) != X.n + 1:
        raise DegenerateInput("need an invertible (n+1)x(n+1) matrix")
    return Scheme(X.n, tuple(transform_component(c, g) for c in X.components), X.p)


def scheme_of(n: int, p: int, components: Iterable) -> Scheme:
    return Scheme(n, tuple(components), p)
