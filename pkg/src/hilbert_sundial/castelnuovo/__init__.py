"""Residual/trace engine, bigraded systems on the quadric and proof replays."""

from .quadric import (
    BidegreeSystem,
    DoublePointP1P1,
    RulingLineA,
    RulingLineB,
    SimplePointP1P1,
    bidegree_dimension,
    remove_a_rulings,
)
from .replay import Claim, ReplayReport, replay_p3_case, replay_pn_case
from .rules import (
    CastelnuovoReport,
    FixedQuadric,
    Hyperplane,
    check_inequality,
    quadric_line_points,
    residual,
    trace,
    trace_dimension,
)

__all__ = [
    "BidegreeSystem", "CastelnuovoReport", "Claim", "DoublePointP1P1", "FixedQuadric",
    "Hyperplane", "ReplayReport", "RulingLineA", "RulingLineB", "SimplePointP1P1",
    "bidegree_dimension", "check_inequality", "quadric_line_points", "remove_a_rulings",
    "replay_p3_case", "replay_pn_case", "residual", "trace", "trace_dimension",
]
