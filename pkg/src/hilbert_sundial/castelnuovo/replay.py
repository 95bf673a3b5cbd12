"""
Numeric replays of the specialization arguments.

Each replay builds the specialized schemes, applies the residual/trace rule
table and computes every dimension the argument needs, recording them as
claims.  All claims are checked by exact rank; nothing is inferred from the
inequalities themselves.  A trial whose random choices turn out
non-generic (some claim off, or a position outside the rule table) is
redrawn, up to ``trials`` times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from ..errors import (
    DegenerateInput,
    InvalidDimension,
    OutOfStatedRange,
    PrimeTooSmall,
    UnrecognizedPosition,
)
from ..expectations import build_W_T, counting_data, proof_case
from ..geometry import (
    Line,
    LinearSubspace,
    SundialData,
    make_generic_sundial,
    make_sundial_on_lines,
    quadric_value,
    random_line,
    random_line_in,
    random_line_through,
    random_p1,
    random_point,
    random_quadric_point,
    random_space_containing,
    ruling_line,
    ruling_through,
    sample_point,
    span,
)
from ..gfp import DEFAULT_PRIME, check_prime
from ..parallel import ordered_map
from ..schemes import DegenerateConic, LineComponent, Scheme, SimplePoint, Sundial, ideal_dimension
from .quadric import BidegreeSystem, RulingLineA, bidegree_dimension, remove_a_rulings
from .rules import FixedQuadric, Hyperplane, residual, trace

DEFAULT_TRIALS = 5


@dataclass(frozen=True)
class Claim:
    """One dimension asserted by the argument, with the value computed for it."""

    name: str
    degree: str
    claimed: int
    computed: int

    @property
    def match(self) -> bool:
        return self.claimed == self.computed

    def as_dict(self) -> dict:
        return {"name": self.name, "degree": self.degree, "claimed": self.claimed,
                "computed": self.computed, "match": self.match}


@dataclass
class ReplayReport:
    kind: str
    params: dict
    claims: list[Claim] = field(default_factory=list)
    trial: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Claim]:
        return [c for c in self.claims if not c.match]

    @property
    def ok(self) -> bool:
        return bool(self.claims) and not self.mismatches

    def as_dict(self) -> dict:
        return {"kind": self.kind, **self.params, "trial": self.trial, "ok": self.ok,
                "mismatches": len(self.mismatches), "notes": list(self.notes),
                "claims": [c.as_dict() for c in self.claims]}


_Job = tuple[str, str, int, Callable[[], int]]


def _evaluate(jobs: list[_Job]) -> list[Claim]:
    values = ordered_map(lambda job: job[3](), jobs)
    return [Claim(name, deg, claimed, int(v)) for (name, deg, claimed, _), v in zip(jobs, values)]


def _retry(kind: str, params: dict, trials: int, build: Callable[[np.random.Generator], tuple],
           rng: np.random.Generator) -> ReplayReport:
    if trials < 1:
        raise InvalidDimension("trials must be >= 1")
    report = ReplayReport(kind, params)
    for k in range(trials):
        try:
            jobs, notes = build(rng)
        except (UnrecognizedPosition, DegenerateInput) as exc:
            report.notes.append(f"trial {k}: redrawn ({exc})")
            continue
        report = ReplayReport(kind, params, _evaluate(jobs), k, report.notes + notes)
        if report.ok:
            break
    return report


# --- P^3 constructions on the fixed quadric ----------------------------------

class QuadricKit:
    """Random configurations in P^3 whose intersections with Q are rational."""

    def __init__(self, p: int, rng: np.random.Generator):
        self.p, self.rng = p, rng
        self.whole = LinearSubspace.whole(3, p)
        self.Q = FixedQuadric(p)

    def off_point(self):
        while True:
            q = random_point(3, self.p, self.rng)
            if quadric_value(q, self.p):
                return q

    def transverse_through(self, point) -> Line:
        """Line through ``point`` and a random point of Q, meeting Q in two rational points."""
        while True:
            other = random_quadric_point(self.p, self.rng)
            if other == point:
                continue
            line = Line(point, other)
            try:
                self.Q.meet(line)
            except UnrecognizedPosition:
                continue
            return line

    def line(self) -> Line:
        return self.transverse_through(random_quadric_point(self.p, self.rng))

    def _sundial(self, first: Line, second: Line) -> Sundial:
        if span([first, second]).dim != 2:
            raise DegenerateInput("coincident sundial lines")
        return Sundial(make_sundial_on_lines(first, second, self.whole))

    def generic_sundial(self) -> Sundial:
        vertex = self.off_point()
        return self._sundial(self.transverse_through(vertex), self.transverse_through(vertex))

    def ruling_sundial(self) -> Sundial:
        """First line an A-ruling of Q, second line transverse through a point of it."""
        u = random_p1(self.p, self.rng)
        first = ruling_line("A", u, self.p)
        vertex = first.point_at(int(self.rng.integers(0, self.p)), 1)
        return self._sundial(first, self.transverse_through(vertex))

    def vertex_on_q_sundial(self) -> Sundial:
        vertex = random_quadric_point(self.p, self.rng)
        return self._sundial(self.transverse_through(vertex), self.transverse_through(vertex))


def _dim(X: Scheme, d: int) -> Callable[[], int]:
    return lambda: ideal_dimension(X, d)


def _bidim(a: int, b: int, comps, p: int, reduce: bool = False) -> Callable[[], int]:
    def run() -> int:
        S = BidegreeSystem(a, b, comps)
        return bidegree_dimension(remove_a_rulings(S) if reduce else S, p)
    return run


def _quadric_jobs(label: str, X: Scheme, d: int, Q: FixedQuadric) -> list[_Job]:
    """Direct, residual and trace claims (all zero) for one specialized scheme."""
    comps = trace(X, Q)
    k = sum(isinstance(c, RulingLineA) for c in comps)
    return [
        (f"dim I_{label}", f"{d}", 0, _dim(X, d)),
        (f"dim I_Res_Q {label}", f"{d - 2}", 0, _dim(residual(X, Q), d - 2)),
        (f"dim I_Tr_Q {label}", f"({d},{d})", 0, _bidim(d, d, comps, X.p)),
        (f"dim I_Tr_Q {label}, {k} A-lines removed", f"({d - k},{d})", 0,
         _bidim(d, d, comps, X.p, reduce=True)),
    ]


def _p3_generic_jobs(d: int, p: int, rng) -> list[_Job]:
    W, T = build_W_T(3, d, p, rng)
    jobs: list[_Job] = [("dim I_W", f"{d}", 0, _dim(W, d))]
    if T is not None:
        jobs.append(("dim I_T", f"{d}", 0, _dim(T, d)))
    return jobs


def _specialized(kit: QuadricKit, s: int, special: int, *, vertex_on_q: int = 0,
                 line: str | None = None, points_on_q: int = 0, points: int = 0) -> Scheme:
    """``special`` ruling sundials, ``vertex_on_q`` sundials with vertex on Q,
    generic sundials up to ``s``, then the line (``"ruling"`` or ``"generic"``) and points."""
    comps: list = [kit.ruling_sundial() for _ in range(special)]
    comps += [kit.vertex_on_q_sundial() for _ in range(vertex_on_q)]
    comps += [kit.generic_sundial() for _ in range(s - special - vertex_on_q)]
    if line == "ruling":
        comps.append(LineComponent(ruling_line("A", random_p1(kit.p, kit.rng), kit.p)))
    elif line == "generic":
        comps.append(LineComponent(kit.line()))
    comps += [SimplePoint(random_quadric_point(kit.p, kit.rng)) for _ in range(points_on_q)]
    comps += [SimplePoint(kit.off_point()) for _ in range(points)]
    return Scheme(3, tuple(comps), kit.p)


def _case1(h: int, p: int, rng) -> tuple[list[_Job], list[str]]:
    d = 3 * h
    c = counting_data(3, d)
    kit = QuadricKit(p, rng)
    k = 2 * h + 1
    notes: list[str] = []
    odd = c.t % 2 == 1
    if c.s >= k:
        W = _specialized(kit, c.s, k, line="generic" if odd else None)
    elif c.s + 1 == k and odd:
        # too few sundials: the line M supplies the last ruling line
        W = _specialized(kit, c.s, c.s, line="ruling")
        notes.append(f"s={c.s} < 2h+1={k}: the line M is specialized to the last A-ruling")
    else:
        raise OutOfStatedRange(f"cannot place {k} ruling lines with s={c.s}")
    return _p3_generic_jobs(d, p, rng) + _quadric_jobs("W~", W, d, kit.Q), notes


def _case2(h: int, p: int, rng) -> tuple[list[_Job], list[str]]:
    d = 3 * h + 2
    c = counting_data(3, d)
    kit = QuadricKit(p, rng)
    odd = c.t % 2 == 1
    W = _specialized(kit, c.s, 2 * h + 2, line="generic" if odd else None, points_on_q=c.r)
    jobs = _p3_generic_jobs(d, p, rng) + _quadric_jobs("W~", W, d, kit.Q)
    if c.r > 0:
        sundials = c.s + 1 if odd else c.s
        T = _specialized(kit, sundials, 2 * h + 3, line=None if odd else "generic")
        jobs += _quadric_jobs("T~", T, d, kit.Q)
    return jobs, []


def _double_specialize(res: Scheme, h: int, kit: QuadricKit) -> Scheme:
    """Move ``L_{1,2}`` and the first lines of the conics ``C_{2h+2..4h+1}`` onto A-rulings."""
    comps = list(res.components)
    first_line = comps[0]
    if not isinstance(first_line, LineComponent):
        raise DegenerateInput("unexpected residual layout")
    comps[0] = LineComponent(ruling_line("A", random_p1(kit.p, kit.rng), kit.p))
    for i in range(2 * h + 1, 4 * h + 1):
        conic = comps[i]
        if not isinstance(conic, DegenerateConic):
            raise DegenerateInput("unexpected residual layout")
        first = ruling_through("A", conic.vertex)
        comps[i] = DegenerateConic(first, conic.second, conic.vertex)
    return Scheme(3, tuple(comps), res.p)


def _case3(h: int, p: int, rng) -> tuple[list[_Job], list[str]]:
    d = 3 * h + 1
    c = counting_data(3, d)
    kit = QuadricKit(p, rng)
    if h == 2:
        return _p3_generic_jobs(d, p, rng), [
            "d=7: W = 7 sundials + M computed directly; the ad hoc specialization is not replayed"]
    odd = c.t % 2 == 1
    W = _specialized(kit, c.s, 2 * h + 1, vertex_on_q=2 * h, line="generic" if odd else None)
    jobs = _p3_generic_jobs(d, p, rng) + _quadric_jobs("W~", W, d, kit.Q)
    res = residual(W, kit.Q)
    WW = _double_specialize(res, h, kit)
    jobs += _quadric_jobs("W~~", WW, d - 2, kit.Q)
    return jobs, []


_P3_CASES = {1: (_case1, 1), 2: (_case2, 1), 3: (_case3, 2)}


def replay_p3_case(h: int, case_id: int, p: int = DEFAULT_PRIME,
                   rng: np.random.Generator | None = None,
                   trials: int = DEFAULT_TRIALS) -> ReplayReport:
    """Replay Case ``case_id`` (d = 3h, 3h+2, 3h+1) of the P^3 argument on the fixed quadric."""
    if case_id not in _P3_CASES:
        raise InvalidDimension(f"case must be 1, 2 or 3, got {case_id}")
    builder, h_min = _P3_CASES[case_id]
    if h < h_min:
        raise OutOfStatedRange(f"case {case_id} needs h >= {h_min}, got h={h}")
    p = check_prime(p)
    rng = np.random.default_rng() if rng is None else rng
    d = {1: 3 * h, 2: 3 * h + 2, 3: 3 * h + 1}[case_id]
    params = {"n": 3, "h": h, "case": case_id, "d": d, "prime": p}
    return _retry("p3", params, trials, lambda g: builder(h, p, g), rng)


# --- P^n hyperplane specializations -------------------------------------------

class HyperplaneKit:
    def __init__(self, n: int, p: int, rng: np.random.Generator):
        self.n, self.p, self.rng = n, p, rng
        self.H = Hyperplane.coordinate(n, p)
        self.inside = self.H.subspace()
        self.whole = LinearSubspace.whole(n, p)

    def _space(self, first: Line, second: Line) -> LinearSubspace:
        plane = span([first, second])
        if plane.dim != 2:
            raise DegenerateInput("coincident sundial lines")
        return random_space_containing(plane, 3, self.whole, self.rng)

    def conic_in_h(self) -> Sundial:
        """Both lines in H, the 3-space not."""
        vertex = sample_point(self.inside, self.rng)
        first = random_line_through(vertex, self.inside, self.rng)
        second = random_line_through(vertex, self.inside, self.rng)
        space = self._space(first, second)
        if self.H.contains(space):
            raise DegenerateInput("3-space fell into H")
        return Sundial(SundialData(first, second, vertex, space))

    def sundial_in_h(self) -> Sundial:
        return Sundial(make_generic_sundial(self.n, self.p, self.rng, within=self.inside))

    def one_line_in_h(self) -> Sundial:
        vertex = sample_point(self.inside, self.rng)
        first = random_line_through(vertex, self.inside, self.rng)
        second = random_line_through(vertex, self.whole, self.rng)
        if self.H.contains(second):
            raise DegenerateInput("second line fell into H")
        return Sundial(SundialData(first, second, vertex, self._space(first, second)))

    def generic_sundial(self) -> Sundial:
        s = Sundial(make_generic_sundial(self.n, self.p, self.rng))
        if self.H.contains(s.data.vertex):
            raise DegenerateInput("generic vertex fell into H")
        return s

    def line(self, in_h: bool = False) -> LineComponent:
        if in_h:
            return LineComponent(random_line_in(self.inside, self.rng))
        line = random_line(self.n, self.p, self.rng)
        if self.H.contains(line):
            raise DegenerateInput("generic line fell into H")
        return LineComponent(line)

    def point_in_h(self) -> SimplePoint:
        return SimplePoint(sample_point(self.inside, self.rng))


def _layout(case: str, c, which: str) -> dict:
    """Counts of each sundial position and the fate of M, per case and scheme."""
    s, s_p, r_p = c.s, c.s_p, c.r_p
    odd = c.t % 2 == 1
    base = {"conic": r_p, "in_h": s - s_p - r_p, "one_line": 0, "generic": s_p,
            "line": None, "points": 0}
    if which == "W":
        base["points"] = c.r
        if case == "a":
            base["line"] = "generic"
        elif case == "b":
            base["line"] = "in_h" if odd else None
        else:
            base["in_h"] -= 1
            base["one_line"] = 1
    else:
        if case == "a":
            base["one_line"] = 1
        elif case == "b":
            if odd:
                base["in_h"] += 1
            else:
                base["line"] = "in_h"
        else:
            base["line"] = "generic"
    return base


def _build_layout(kit: HyperplaneKit, lay: dict) -> tuple[Scheme, int | None]:
    """Scheme with the given layout; also the index of the one-line sundial, if any."""
    comps: list = [kit.conic_in_h() for _ in range(lay["conic"])]
    comps += [kit.sundial_in_h() for _ in range(lay["in_h"])]
    one_line = None
    if lay["one_line"]:
        one_line = len(comps)
        comps.append(kit.one_line_in_h())
    comps += [kit.generic_sundial() for _ in range(lay["generic"])]
    if lay["line"] is not None:
        comps.append(kit.line(in_h=lay["line"] == "in_h"))
    comps += [kit.point_in_h() for _ in range(lay["points"])]
    return Scheme(kit.n, tuple(comps), kit.p), one_line


def _specialize_onto_line(tr: Scheme, vertex, count: int, rng) -> Scheme:
    """Move ``count`` simple points of ``tr`` onto a random line through ``vertex``."""
    bar = random_line_through(vertex, LinearSubspace.whole(tr.n, tr.p), rng).subspace()
    comps = list(tr.components)
    idx = [i for i, x in enumerate(comps) if isinstance(x, SimplePoint)]
    if len(idx) < count:
        raise DegenerateInput(f"only {len(idx)} generic points in the trace, need {count}")
    for i in idx[:count]:
        comps[i] = SimplePoint(sample_point(bar, rng))
    return Scheme(tr.n, tuple(comps), tr.p)


def _pn_jobs(n: int, d: int, p: int, rng) -> tuple[list[_Job], list[str]]:
    c = counting_data(n, d)
    case = proof_case(c.t, c.t_p)
    kit = HyperplaneKit(n, p, rng)
    H = kit.H
    W, T = build_W_T(n, d, p, rng)
    jobs: list[_Job] = [("dim I_W", f"{d}", 0, _dim(W, d))]
    if T is not None:
        jobs.append(("dim I_T", f"{d}", 0, _dim(T, d)))
    for which in ("W", "T"):
        if which == "T" and c.r == 0:
            continue
        X, one_line = _build_layout(kit, _layout(case, c, which))
        label = which + "~"
        res = residual(X, H)
        tr = trace(X, H)
        jobs += [
            (f"dim I_{label}", f"{d}", 0, _dim(X, d)),
            (f"dim I_Res_H {label}", f"{d - 1}", 0, _dim(res, d - 1)),
            (f"dim I_Tr_H {label}", f"{d}", 0, _dim(tr, d)),
        ]
        if d > 5:
            bare = Scheme(n, tuple(x for x in res.components if not isinstance(x, SimplePoint)), p)
            jobs += [
                (f"dim I_(Res_H {label} - R's)", f"{d - 1}", c.r_p, _dim(bare, d - 1)),
                (f"dim I_(Res_H {label} - R's)", f"{d - 2}", 0, _dim(bare, d - 2)),
            ]
        if case == "c" and which == "W":
            vertex = H.project(X.components[one_line].data.vertex)
            special = _specialize_onto_line(tr, vertex, d, rng)
            jobs.append((f"dim I_Tr_H {label}, {d} points on L-bar", f"{d}", 0,
                         _dim(special, d)))
    return jobs, [f"case {case}", f"H = {{x_{n} = 0}}, trace frame drops x_{H.drop}"]


def replay_pn_case(n: int, d: int, p: int = DEFAULT_PRIME,
                   rng: np.random.Generator | None = None,
                   trials: int = DEFAULT_TRIALS) -> ReplayReport:
    """Replay the hyperplane step of the induction in P^n for degree ``d``."""
    if n < 4 or d < 2:
        raise OutOfStatedRange(f"stated for n >= 4 and d >= 2, got n={n}, d={d}")
    p = check_prime(p)
    if p < d + 2:
        raise PrimeTooSmall(f"p={p} too small for degree {d}")
    rng = np.random.default_rng() if rng is None else rng
    c = counting_data(n, d)
    params = {"n": n, "d": d, "prime": p, "case": proof_case(c.t, c.t_p),
              **{k: v for k, v in c.as_dict().items() if k not in ("n", "d")}}
    return _retry("pn", params, trials, lambda g: _pn_jobs(n, d, p, g), rng)


def expected_zero_formulas(h: int, case_id: int) -> dict:
    """The closed-form counts the P^3 argument evaluates to zero (for the report)."""
    if case_id == 1:
        t = counting_data(3, 3 * h).t
        return {"residual": comb(3 * h + 1, 3) - (3 * h - 1) * (2 * h + 1 + t - 4 * h - 2),
                "trace": h * (3 * h + 1) - 2 * (2 * h + 1 + t - 4 * h - 2)}
    if case_id == 2:
        t = counting_data(3, 3 * h + 2).t
        return {"residual": comb(3 * h + 3, 3) - (3 * h + 1) * (t - 2 * h - 2),
                "trace_W": (h + 1) * (3 * h + 3) - (3 * h * h + 6 * h + 3),
                "trace_T": max(h * (3 * h + 3) - (3 * h * h + 5 * h + 2), 0)}
    if case_id == 3:
        t = counting_data(3, 3 * h + 1).t
        return {"trace": (h + 1) * (3 * h + 2) - (3 * h * h - h + 2) - 6 * h,
                "residual2": comb(3 * h, 3) - (3 * h - 2) * (t - 4 * h - 2),
                "trace2": (h - 1) * 3 * h - 2 * (t - 5 * h - 2)}
    raise InvalidDimension(f"case must be 1, 2 or 3, got {case_id}")
