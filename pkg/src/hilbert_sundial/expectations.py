"""
Counting behind the sundial/line Hilbert function: expected dimensions,
the Euclidean-division bookkeeping ``t, r, s`` (and its primed version one
degree lower), the critical schemes ``W`` and ``T``, and exhaustive checks of
the two auxiliary inequalities used by the induction in P^n, n >= 4.

Python integers are unbounded, so none of this arithmetic can overflow.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .errors import InvalidDimension, OutOfStatedRange
from .geometry import make_generic_sundial, random_line, random_point
from .schemes import (
    DegenerateConic,
    DoublePointRestricted,
    LineComponent,
    Scheme,
    SimplePoint,
    Sundial,
)


@dataclass(frozen=True)
class CountingData:
    """``binom(d+n, n) = t(d+1) + r``, ``s = t // 2``; primed values for ``d-1``."""

    n: int
    d: int
    t: int
    r: int
    s: int
    t_p: int
    r_p: int
    s_p: int

    def as_dict(self) -> dict:
        return asdict(self)


def compute_trs(n: int, d: int) -> tuple[int, int, int]:
    if n < 1 or d < 0:
        raise InvalidDimension(f"need n >= 1, d >= 0; got n={n}, d={d}")
    t, r = divmod(comb(d + n, n), d + 1)
    return t, r, t // 2


def counting_data(n: int, d: int) -> CountingData:
    if d < 1:
        raise InvalidDimension(f"primed counts need d >= 1, got d={d}")
    t, r, s = compute_trs(n, d)
    t_p, r_p, s_p = compute_trs(n, d - 1)
    return CountingData(n, d, t, r, s, t_p, r_p, s_p)


def _check_nd(n: int, d: int) -> None:
    if n < 3 or d < 1:
        raise InvalidDimension(f"need n >= 3 and d >= 1, got n={n}, d={d}")


def expected_hilbert_function(n: int, d: int, s: int, l: int) -> int:
    """``min(binom(d+n, n), (2s + l)(d+1))``."""
    _check_nd(n, d)
    if s < 0 or l < 0:
        raise InvalidDimension("component counts must be non-negative")
    return min(comb(d + n, n), (2 * s + l) * (d + 1))


def expected_ideal_dim(n: int, d: int, s: int, l: int) -> int:
    """Expected ``dim (I_X)_d`` for ``s`` generic sundials and ``l`` generic lines."""
    return comb(d + n, n) - expected_hilbert_function(n, d, s, l)


def component_hf(c, d: int) -> int:
    """Hilbert function in degree ``d`` of a single component on its own."""
    if isinstance(c, SimplePoint):
        return 1
    if isinstance(c, LineComponent):
        return d + 1
    if isinstance(c, DegenerateConic):
        return 2 * d + 1 if d >= 1 else 1
    if isinstance(c, Sundial):
        return 2 * (d + 1) if d >= 1 else 1
    if isinstance(c, DoublePointRestricted):
        return c.space.dim + 1 if d >= 1 else 1
    raise TypeError(f"not a scheme component: {c!r}")


def expected_value(X: Scheme, d: int) -> int:
    """``max(binom(d+n, n) - sum HF(X_i, d), 0)``: what a generic union should give."""
    return max(comb(d + X.n, X.n) - sum(component_hf(c, d) for c in X.components), 0)


@dataclass(frozen=True)
class CriticalCounts:
    """Component counts of ``W`` and (when ``r > 0``) ``T``."""

    w_sundials: int
    w_lines: int
    w_points: int
    t_sundials: int | None
    t_lines: int | None


def critical_counts(n: int, d: int) -> CriticalCounts:
    t, r, s = compute_trs(n, d)
    odd = t % 2
    if r > 0:
        t_sund, t_lines = (s + 1, 0) if odd else (s, 1)
    else:
        t_sund = t_lines = None
    return CriticalCounts(s, odd, r, t_sund, t_lines)


def build_W_T(n: int, d: int, p: int, rng: np.random.Generator
              ) -> tuple[Scheme, Scheme | None]:
    """Generic ``W`` (``s`` sundials, ``M`` if ``t`` odd, ``r`` points) and ``T``.

    ``T`` is ``s`` sundials plus ``M`` for ``t`` even, ``s+1`` sundials for
    ``t`` odd, and is only built when ``r > 0``.  Both share their first ``s``
    sundials; ``W``'s line ``M`` is reused in ``T``.
    """
    _check_nd(n, d)
    counts = critical_counts(n, d)
    sundials = [Sundial(make_generic_sundial(n, p, rng)) for _ in range(counts.w_sundials)]
    line = LineComponent(random_line(n, p, rng))
    points = [SimplePoint(random_point(n, p, rng)) for _ in range(counts.w_points)]
    W = Scheme(n, tuple(sundials) + ((line,) if counts.w_lines else ()) + tuple(points), p)
    T = None
    if counts.t_sundials is not None:
        if counts.t_lines:
            T = Scheme(n, tuple(sundials) + (line,), p)
        else:
            extra = Sundial(make_generic_sundial(n, p, rng))
            T = Scheme(n, tuple(sundials) + (extra,), p)
    return W, T


# --- the two appendix inequalities ------------------------------------------

def proof_case(t: int, t_p: int) -> str:
    """Case letter of the hyperplane induction: a (both odd), b (t' even), c (t even, t' odd)."""
    if t_p % 2 == 0:
        return "b"
    return "a" if t % 2 else "c"


@dataclass(frozen=True)
class AppendixA1Report:
    n: int
    d: int
    counts: CountingData
    case: str
    a_value: int
    b_value: int
    c_value: int

    @property
    def a_holds(self) -> bool:
        return self.a_value >= 0

    @property
    def b_holds(self) -> bool:
        return self.b_value >= 0

    @property
    def c_holds(self) -> bool:
        return self.c_value >= 0

    @property
    def all_hold(self) -> bool:
        return self.a_holds and self.b_holds and self.c_holds

    def as_dict(self) -> dict:
        c = self.counts
        return {"n": self.n, "d": self.d, "t": c.t, "r": c.r, "s": c.s,
                "t_p": c.t_p, "r_p": c.r_p, "s_p": c.s_p, "case": self.case,
                "a_value": self.a_value, "a_holds": self.a_holds,
                "b_value": self.b_value, "b_holds": self.b_holds,
                "c_value": self.c_value, "c_holds": self.c_holds}


def verify_appendix_a1(n: int, d: int) -> AppendixA1Report:
    """Evaluate the three inequalities on ``s, s', r, r', t'`` for one ``(n, d)``.

    For ``t`` even and ``t'`` odd the tighter forms ``s - s' - r' - 1 >= 0``
    and ``r + t' - 1 - d >= r'`` apply; otherwise ``s - s' - r' >= 0`` and
    ``r + t' >= r'``.  Part (c), ``2s' >= r'``, has no case split.
    """
    if n < 4 or d < 2:
        raise OutOfStatedRange(f"stated for n >= 4 and d >= 2, got n={n}, d={d}")
    c = counting_data(n, d)
    case = proof_case(c.t, c.t_p)
    tight = case == "c"
    a_value = c.s - c.s_p - c.r_p - (1 if tight else 0)
    b_value = c.r + c.t_p - c.r_p - ((1 + d) if tight else 0)
    c_value = 2 * c.s_p - c.r_p
    return AppendixA1Report(n, d, c, case, a_value, b_value, c_value)


def appendix_a2_value(n: int, d: int) -> int:
    """``binom(d-2+n, n) - t'(d-1)``; the inequality asks for this to be <= 0."""
    if n < 4 or d <= 5:
        raise OutOfStatedRange(f"stated for n >= 4 and d > 5, got n={n}, d={d}")
    t_p = compute_trs(n, d - 1)[0]
    return comb(d - 2 + n, n) - t_p * (d - 1)


def verify_appendix_a2(n: int, d: int) -> bool:
    return appendix_a2_value(n, d) <= 0
