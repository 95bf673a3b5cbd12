from __future__ import annotations

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, oracle_rank
from hilbert_sundial.castelnuovo.instances import random_invertible
from hilbert_sundial.cli import random_scheme
from hilbert_sundial.errors import DegenerateInput, DimensionMismatch, PrimeTooSmall
from hilbert_sundial.geometry import (
    Line,
    LinearSubspace,
    ProjectivePoint,
    intersect_lines,
    make_generic_sundial,
    random_line,
    random_line_through,
    random_point,
    span,
)
from hilbert_sundial.io import dump_scheme, load_scheme, scheme_from_dict, scheme_to_dict
from hilbert_sundial.monomials import basis
from hilbert_sundial.schemes import (
    DegenerateConic,
    DoublePointRestricted,
    LineComponent,
    Scheme,
    SimplePoint,
    Sundial,
    component_rows,
    condition_matrix,
    hilbert_function,
    ideal_dimension,
    prefix_ideal_dimensions,
    transform,
)
from suites import adding_points_suite, sundial_rank_suite


def _conic(n, rng):
    first = random_line(n, P, rng)
    second = random_line_through(first.a, LinearSubspace.whole(n, P), rng)
    return DegenerateConic(first, second, first.a)


def _sundial(n, rng):
    return Sundial(make_generic_sundial(n, P, rng))


# --- worked examples ---------------------------------------------------------

def test_line_rows_and_dimension(rng):
    c = LineComponent(random_line(3, P, rng))
    assert component_rows(c, basis(3, 2)).shape == (3, 10)
    assert ideal_dimension(Scheme(3, (c,), P), 2) == 7


def test_restricted_double_point_rows(rng):
    s = make_generic_sundial(3, P, rng)
    c = DoublePointRestricted(s.vertex, s.space)
    assert component_rows(c, basis(3, 2)).shape == (4, 10)


def test_sundial_rows_and_rank(rng):
    c = _sundial(3, rng)
    rows = component_rows(c, basis(3, 2))
    assert rows.shape == (10, 10)
    assert oracle_rank(rows.tolist(), P) == 6
    assert ideal_dimension(Scheme(3, (c,), P), 2) == 4


def test_three_sundials_and_a_line_fill_quartics(rng):
    X = Scheme(3, tuple(_sundial(3, rng) for _ in range(3)) + (LineComponent(random_line(3, P, rng)),), P)
    assert ideal_dimension(X, 4) == 0


def test_empty_scheme():
    for n, d in [(3, 1), (4, 5), (5, 0)]:
        assert ideal_dimension(Scheme(n, (), P), d) == comb(d + n, n)
        assert prefix_ideal_dimensions(Scheme(n, (), P), d) == [comb(d + n, n)]


# --- errors ------------------------------------------------------------------

def test_prime_too_small(rng):
    p = 7
    X = random_scheme(3, 0, 1, p, rng)
    assert ideal_dimension(X, 5) == comb(8, 3) - 6
    with pytest.raises(PrimeTooSmall):
        ideal_dimension(X, 6)
    with pytest.raises(PrimeTooSmall):
        ideal_dimension(Scheme(3, (), p), 6)


def test_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        Scheme(4, (LineComponent(random_line(3, P, rng)),), P)
    with pytest.raises(DimensionMismatch):
        Scheme(3, (LineComponent(random_line(3, 101, rng)),), P)
    with pytest.raises(DimensionMismatch):
        ideal_dimension(Scheme(3, (), P), 2, p=101)
    with pytest.raises(DimensionMismatch):
        component_rows(LineComponent(random_line(3, P, rng)), basis(4, 2))


def test_construction_errors(rng):
    s = make_generic_sundial(3, P, rng)
    off = random_point(4, P, rng)
    plane = span([s.first, s.second])
    with pytest.raises(DegenerateInput):
        DoublePointRestricted(random_point(3, P, rng), plane)
    with pytest.raises(DegenerateInput):
        DegenerateConic(s.first, s.first, s.vertex)
    with pytest.raises(TypeError):
        Scheme(4, (off,), P)


# --- structural properties ---------------------------------------------------

def test_condition_matrix_tags(rng):
    X = random_scheme(4, 2, 2, P, rng)
    cm = condition_matrix(X, 3)
    assert cm.shape[1] == comb(7, 4)
    counts = np.bincount(cm.tags, minlength=len(X))
    assert counts.tolist() == [2 * 4 + 4, 2 * 4 + 4, 4, 4]
    assert np.all(np.diff(cm.tags) >= 0)


def test_prefix_dimensions_agree_with_direct(rng):
    X = random_scheme(4, 3, 2, P, rng)
    for d in (2, 3):
        pre = prefix_ideal_dimensions(X, d)
        direct = [ideal_dimension(Scheme(4, X.components[:k], P), d) for k in range(len(X) + 1)]
        assert pre == direct


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 5), d=st.integers(1, 5),
       s=st.integers(0, 3), l=st.integers(0, 3))
def test_monotonicity(seed, n, d, s, l):
    rng = np.random.default_rng(seed)
    X = random_scheme(n, s, l, P, rng)
    dims = prefix_ideal_dimensions(X, d)
    assert all(a >= b for a, b in zip(dims, dims[1:]))
    bigger = X + [SimplePoint(random_point(n, P, rng)), _conic(n, rng)]
    assert ideal_dimension(bigger, d) <= dims[-1]


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 4), d=st.integers(1, 6))
def test_rank_independent_of_line_samples(seed, n, d):
    rng = np.random.default_rng(seed)
    X = random_scheme(n, 2, 1, P, rng)
    base = hilbert_function(X, d)
    # the same lines and spaces, spanned by different pairs of points
    moved = []
    for c in X.components:
        if isinstance(c, LineComponent):
            a, b = c.line.a.vector(), c.line.b.vector()
            moved.append(LineComponent(Line(ProjectivePoint(tuple((a + 3 * b) % P), P),
                                            ProjectivePoint(tuple((2 * a + b) % P), P))))
        else:
            moved.append(c)
    assert hilbert_function(Scheme(n, tuple(moved), P), d) == base


@pytest.mark.parametrize("n", [3, 4, 5])
def test_conic_rank(n, rng):
    for d in range(1, 8):
        c = _conic(n, rng)
        assert hilbert_function(Scheme(n, (c,), P), d) == min(comb(d + n, n), 2 * d + 1)


def test_sundial_rank_suite():
    checked, bad = sundial_rank_suite(seeds=range(3))
    assert checked == 3 * 3 * 8
    assert bad == []


def test_adding_points_suite():
    checked, bad = adding_points_suite(count=10, seed=1)
    assert checked == 10 and bad == []


# --- degeneration comparisons -------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 5), d=st.integers(1, 6))
def test_sundial_is_a_specialization(seed, n, d):
    rng = np.random.default_rng(seed)
    sund = ideal_dimension(Scheme(n, (_sundial(n, rng),), P), d)
    skew = ideal_dimension(Scheme(n, (LineComponent(random_line(n, P, rng)),
                                      LineComponent(random_line(n, P, rng))), P), d)
    conic_pt = ideal_dimension(Scheme(n, (_conic(n, rng), SimplePoint(random_point(n, P, rng))), P), d)
    assert sund >= skew
    assert sund >= conic_pt


# --- transformations and serialization ---------------------------------------

@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 4), d=st.integers(1, 4))
def test_projective_invariance(seed, n, d):
    rng = np.random.default_rng(seed)
    X = random_scheme(n, 1, 1, P, rng) + [_conic(n, rng), SimplePoint(random_point(n, P, rng))]
    g = random_invertible(n, P, rng)
    assert ideal_dimension(transform(X, g), d) == ideal_dimension(X, d)


def test_transform_rejects_singular(rng):
    X = random_scheme(3, 1, 0, P, rng)
    with pytest.raises(DegenerateInput):
        transform(X, np.zeros((4, 4), dtype=np.int64))


def test_io_roundtrip(tmp_path, rng):
    s = make_generic_sundial(3, P, rng)
    X = random_scheme(3, 2, 1, P, rng) + [
        SimplePoint(random_point(3, P, rng)),
        DoublePointRestricted(s.vertex, s.space),
        DegenerateConic(s.first, s.second, intersect_lines(s.first, s.second)),
    ]
    assert scheme_from_dict(scheme_to_dict(X)) == X
    path = tmp_path / "x.json"
    dump_scheme(X, path)
    Y = load_scheme(path)
    assert Y == X
    assert ideal_dimension(Y, 3) == ideal_dimension(X, 3)


def test_io_rejects_unknown_type():
    with pytest.raises(DegenerateInput):
        scheme_from_dict({"n": 3, "prime": P, "components": [{"type": "plane"}]})
