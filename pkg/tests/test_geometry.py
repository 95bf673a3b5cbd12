from __future__ import annotations

import numpy as np
import pytest

from hilbert_sundial import gfp
from hilbert_sundial.errors import DegenerateInput, DimensionTooSmall, NotSkew
from hilbert_sundial.geometry import (
    Line,
    LinearSubspace,
    ProjectivePoint,
    SundialData,
    degeneration_fiber,
    intersect_lines,
    make_generic_sundial,
    quadric_value,
    random_line,
    random_point,
    random_quadric_point,
    ruling_line,
    ruling_family,
    ruling_through,
    segre_coordinates,
    segre_point,
    span,
)
from hilbert_sundial.schemes import DoublePointRestricted, LineComponent, ideal_dimension

from conftest import P


def test_point_normalization():
    q = ProjectivePoint((0, 5, 10), 7)
    assert q.coords == (0, 1, 2)
    assert ProjectivePoint((2, 4, 6), 7) == ProjectivePoint((1, 2, 3), 7)
    with pytest.raises(DegenerateInput):
        ProjectivePoint((0, 0, 0), 7)


def test_span_idempotent(rng):
    pts = [random_point(5, P, rng) for _ in range(3)]
    s = span(pts)
    assert s.dim == 2
    assert span(s.points()) == s
    assert all(s.contains(q) for q in pts)


def test_line_requires_distinct_points():
    a = ProjectivePoint((1, 0, 0, 0), P)
    with pytest.raises(DegenerateInput):
        Line(a, ProjectivePoint((2, 0, 0, 0), P))


@pytest.mark.parametrize("seed", range(100))
def test_generic_sundial_invariants(seed):
    rng = np.random.default_rng(seed)
    n = 3 + seed % 3
    s = make_generic_sundial(n, P, rng)
    assert s.first.contains(s.vertex) and s.second.contains(s.vertex)
    assert s.space.dim == 3
    assert s.space.contains(s.plane())
    assert s.plane().dim == 2


def test_sundial_in_p3_spans_everything(rng):
    s = make_generic_sundial(3, P, rng)
    assert s.space == LinearSubspace.whole(3, P)


def test_sundial_needs_n_at_least_3(rng):
    with pytest.raises(DimensionTooSmall):
        make_generic_sundial(2, P, rng)


def test_sundial_data_validation(rng):
    s = make_generic_sundial(4, P, rng)
    with pytest.raises(DegenerateInput):
        SundialData(s.first, s.first, s.vertex, s.space)
    other = random_point(4, P, rng)
    with pytest.raises(DegenerateInput):
        SundialData(s.first, s.second, other, s.space)


def test_rulings_lie_on_quadric(rng):
    for fam in "AB":
        line = ruling_line(fam, (3, 7), P)
        assert all(quadric_value(q, P) == 0 for q in line.sample_points(6))
        assert ruling_family(line) == fam


def test_same_ruling_disjoint_opposite_meet():
    a1 = ruling_line("A", (1, 2), P)
    a2 = ruling_line("A", (1, 5), P)
    b1 = ruling_line("B", (4, 1), P)
    assert span([a1, a2]).dim == 3
    meet = intersect_lines(a1, b1)
    assert segre_coordinates(meet) == ((1, 2), (1, gfp.inv(4, P)))


def test_segre_roundtrip(rng):
    for _ in range(20):
        q = random_quadric_point(P, rng)
        u, v = segre_coordinates(q)
        assert segre_point(u, v, P) == q
        assert ruling_through("A", q).contains(q)
        assert ruling_through("B", q).contains(q)


def test_segre_coordinates_on_chart_boundary():
    q = segre_point((0, 1), (0, 1), P)
    assert q.coords == (0, 0, 0, 1)
    assert segre_coordinates(q) == ((0, 1), (0, 1))


def test_degeneration_fiber_structure(rng):
    first, second = random_line(3, P, rng), random_line(3, P, rng)
    special = degeneration_fiber(first, second, 0)
    kinds = [type(c) for c in special.components]
    assert kinds == [LineComponent, LineComponent, DoublePointRestricted]
    dp = special.components[2]
    assert special.components[0].line.contains(dp.point)
    assert special.components[1].line.contains(dp.point)
    general = degeneration_fiber(first, second, int(rng.integers(1, P)))
    assert len(general.components) == 2
    assert degeneration_fiber(first, second, 1).components[0].line.subspace() == first.subspace()


def test_degeneration_fiber_dimensions(rng):
    first, second = random_line(3, P, rng), random_line(3, P, rng)
    assert ideal_dimension(degeneration_fiber(first, second, 5), 3) == 12
    assert ideal_dimension(degeneration_fiber(first, second, 0), 3) == 12


def test_degeneration_requires_skew(rng):
    s = make_generic_sundial(4, P, rng)
    with pytest.raises(NotSkew):
        degeneration_fiber(s.first, s.second, 0)
