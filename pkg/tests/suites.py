"""Property suites shared by the unit tests and the acceptance report.

Each suite returns ``(checked, violations)``, with violations described as
dicts so a failing run says exactly which instance broke.
"""

from __future__ import annotations

from math import comb

import numpy as np

from hilbert_sundial.castelnuovo import (
    BidegreeSystem,
    RulingLineA,
    bidegree_dimension,
    check_inequality,
)
from hilbert_sundial.castelnuovo.quadric import random_p1_point, random_system
from hilbert_sundial.cli import castelnuovo_instances, family_trial, random_scheme
from hilbert_sundial.geometry import (
    make_generic_sundial,
    random_line,
    sample_point,
)
from hilbert_sundial.castelnuovo.rules import Hyperplane
from hilbert_sundial.schemes import (
    Scheme,
    SimplePoint,
    Sundial,
    hilbert_function,
    ideal_dimension,
)

P = 32003


def sundial_rank_suite(seeds=range(20), ns=(3, 4, 5), ds=range(1, 9)):
    bad, checked = [], 0
    for n in ns:
        for d in ds:
            want = min(comb(d + n, n), 2 * (d + 1))
            for seed in seeds:
                rng = np.random.default_rng([seed, n, d])
                X = Scheme(n, (Sundial(make_generic_sundial(n, P, rng)),), P)
                got = hilbert_function(X, d)
                checked += 1
                if got != want:
                    bad.append({"n": n, "d": d, "seed": seed, "hf": got, "want": want})
    return checked, bad


def castelnuovo_suite(count=100, seed=0):
    bad, checked = [], 0
    for i, inst in castelnuovo_instances(count, seed, P):
        rep = check_inequality(inst.X, inst.Y, inst.d)
        checked += 1
        if not rep.inequality_holds:
            bad.append({"instance": i, **rep.as_dict()})
    return checked, bad


def degeneration_suite(ns=(3, 4), ds=range(1, 7), trials=5, seed=0):
    """Semicontinuity on every trial; equality of the two fibres within ``trials``."""
    bad, checked = [], 0
    for n in ns:
        for d in ds:
            equal = False
            for trial in range(trials):
                rng = np.random.default_rng([seed, n, d, trial])
                special, general = family_trial(n, d, P, rng)
                checked += 1
                if special < general:
                    bad.append({"n": n, "d": d, "trial": trial, "special": special,
                                "general": general, "kind": "semicontinuity"})
                if special == general == max(comb(d + n, n) - 2 * (d + 1), 0):
                    equal = True
                    break
            if not equal:
                bad.append({"n": n, "d": d, "kind": "equality"})
    return checked, bad


def fixed_component_suite(count=50, seed=0):
    bad = []
    rng = np.random.default_rng(seed)
    for i in range(count):
        a = int(rng.integers(1, 7))
        b = int(rng.integers(0, 9))
        k = int(rng.integers(1, a + 1))
        rest = random_system(a - k, b, P, rng, points=int(rng.integers(0, (a + 1) * (b + 1))),
                             double_points=int(rng.integers(0, 4)))
        lines = tuple(RulingLineA(random_p1_point(P, rng)) for _ in range(k))
        if len(set(lines)) != k:
            continue
        full = bidegree_dimension(BidegreeSystem(a, b, lines + rest.components), P)
        reduced = bidegree_dimension(BidegreeSystem(a - k, b, rest.components), P)
        if full != reduced:
            bad.append({"a": a, "b": b, "k": k, "full": full, "reduced": reduced})
    return count, bad


def _adding_points_line(rng):
    """X in P^3 with X + L imposing everything; s points of L should do the same."""
    n = 3
    for _ in range(50):
        d = int(rng.integers(2, 6))
        s_count = int(rng.integers(0, 4))
        t = comb(d + n, n) // (d + 1)
        l_count = max(t - 2 * s_count, 0)
        X = random_scheme(n, s_count, l_count, P, rng)
        s = ideal_dimension(X, d)
        L = random_line(n, P, rng)
        from hilbert_sundial.schemes import LineComponent
        if s == 0 or ideal_dimension(X + [LineComponent(L)], d) != 0:
            continue
        pts = [SimplePoint(sample_point(L.subspace(), rng)) for _ in range(s)]
        return {"Y": "line", "d": d, "s": s, "after": ideal_dimension(X + pts, d)}
    raise RuntimeError("no suitable instance")


def _adding_points_hyperplane(rng):
    """X with dim (I_X)_{d-1} = 0, so X + H imposes everything in degree d."""
    n = int(rng.integers(3, 5))
    H = Hyperplane.coordinate(n, P)
    inside = H.subspace()
    for _ in range(50):
        d = int(rng.integers(2, 6))
        t1 = comb(d - 1 + n, n) // d
        s_count = int(rng.integers(0, t1 // 2 + 1))
        X = random_scheme(n, s_count, t1 + 1 - 2 * s_count, P, rng)
        if ideal_dimension(X, d - 1) != 0:
            continue
        s = ideal_dimension(X, d)
        if s == 0:
            continue
        pts = [SimplePoint(sample_point(inside, rng)) for _ in range(s)]
        return {"Y": "hyperplane", "n": n, "d": d, "s": s, "after": ideal_dimension(X + pts, d)}
    raise RuntimeError("no suitable instance")


def adding_points_suite(count=25, seed=0):
    bad = []
    rng = np.random.default_rng(seed)
    for i in range(count):
        rec = (_adding_points_line if i % 2 else _adding_points_hyperplane)(rng)
        if rec["after"] != 0:
            bad.append(rec)
    return count, bad
