"""
Random schemes in recognized positions relative to a hypersurface, for
checking Castelnuovo's inequality on instances the rule table covers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import gfp
from ..errors import DegenerateInput, InvalidDimension
from ..geometry import random_p1, random_point, random_quadric_point, ruling_line
from ..schemes import LineComponent, Scheme, SimplePoint, Sundial, transform
from .replay import HyperplaneKit, QuadricKit
from .rules import FixedQuadric, Hyperplane


@dataclass(frozen=True)
class Instance:
    X: Scheme
    Y: object
    d: int

    @property
    def sundials(self) -> int:
        return self.X.count(Sundial)

    @property
    def lines(self) -> int:
        return self.X.count(LineComponent)


def random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.integers(0, p, size=(n + 1, n + 1), dtype=np.int64)
        if gfp.rank(g, p) == n + 1:
            return g


def random_hyperplane_instance(n: int, d: int, p: int, rng: np.random.Generator,
                               max_components: int = 6) -> Instance:
    """Sundials, lines and points in mixed positions relative to a random hyperplane.

    The scheme is built against ``x_n = 0`` and then moved by a random
    projective transformation ``g``; the hyperplane moves to ``c g^{-1}``.
    """
    if n < 3 or d < 1:
        raise InvalidDimension(f"need n >= 3 and d >= 1, got n={n}, d={d}")
    kit = HyperplaneKit(n, p, rng)
    makers = [kit.conic_in_h, kit.one_line_in_h, kit.generic_sundial,
              lambda: kit.line(in_h=True), lambda: kit.line(in_h=False),
              kit.point_in_h, lambda: SimplePoint(_off(kit))]
    if n >= 4:
        makers.append(kit.sundial_in_h)
    count = int(rng.integers(1, max_components + 1))
    comps = []
    while len(comps) < count:
        try:
            comps.append(makers[int(rng.integers(0, len(makers)))]())
        except DegenerateInput:
            continue
    X = Scheme(n, tuple(comps), p)
    g = random_invertible(n, p, rng)
    c = np.array(kit.H.coefficients, dtype=np.int64).reshape(1, -1)
    H = Hyperplane(tuple(int(x) for x in gfp.matmul_mod(c, gfp.inverse(g, p), p)[0]), p)
    return Instance(transform(X, g), H, d)


def _off(kit: HyperplaneKit):
    while True:
        q = random_point(kit.n, kit.p, kit.rng)
        if not kit.H.contains(q):
            return q


def random_quadric_instance(d: int, p: int, rng: np.random.Generator,
                            max_components: int = 6) -> Instance:
    """Sundials, lines and points in the positions the quadric rule table covers."""
    if d < 2:
        raise InvalidDimension(f"quadric instances need d >= 2, got d={d}")
    kit = QuadricKit(p, rng)
    makers = [kit.generic_sundial, kit.ruling_sundial, kit.vertex_on_q_sundial,
              lambda: LineComponent(kit.line()),
              lambda: LineComponent(ruling_line("A", random_p1(p, rng), p)),
              lambda: LineComponent(ruling_line("B", random_p1(p, rng), p)),
              lambda: SimplePoint(random_quadric_point(p, rng)),
              lambda: SimplePoint(kit.off_point())]
    count = int(rng.integers(1, max_components + 1))
    comps = []
    while len(comps) < count:
        try:
            comps.append(makers[int(rng.integers(0, len(makers)))]())
        except DegenerateInput:
            continue
    return Instance(Scheme(3, tuple(comps), p), FixedQuadric(p), d)
