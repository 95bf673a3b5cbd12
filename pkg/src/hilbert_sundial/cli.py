"""
Command-line front end.

    hilbert-sundial verify --n 3 --d 4 --sundials 3 --lines 1 --seed 42
    hilbert-sundial sweep --n 3..5 --d 1..6
    hilbert-sundial appendix --n 4..12 --d 2..50
    hilbert-sundial replay --p3 2 1 | --pn 4 8
    hilbert-sundial castelnuovo --random 100
    hilbert-sundial family --n 3 --d 3

Exit codes: 0 success, 1 mismatch or failed check, 2 invalid configuration.
Output is one JSON object per line (``--format jsonl``) or tab-separated
rows with a header (``--format tsv``).  Random instances are drawn from
``SeedSequence([seed, n, d, s, trial])``, so a given configuration always
produces the same stream; ``--no-timing`` zeroes ``elapsed_ms`` to make it
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, TextIO

import numpy as np

from . import gfp
from .castelnuovo import check_inequality, replay_p3_case, replay_pn_case
from .castelnuovo.instances import random_hyperplane_instance
from .errors import HilbertSundialError
from .expectations import (
    appendix_a2_value,
    compute_trs,
    expected_ideal_dim,
    expected_value,
    verify_appendix_a1,
)
from .geometry import degeneration_fiber, make_generic_sundial, random_line, span
from .io import load_scheme
from .parallel import ordered_map
from .schemes import (
    LineComponent,
    Scheme,
    Sundial,
    ideal_dimension,
    prefix_ideal_dimensions,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2

REPORT_FIELDS = ("cmd", "n", "d", "s", "l", "prime", "seed", "trial",
                 "computed_dim", "expected_dim", "match", "elapsed_ms")


class ConfigError(HilbertSundialError):
    pass


@dataclass
class RunConfig:
    command: str
    n: list[int] = field(default_factory=list)
    d: list[int] = field(default_factory=list)
    sundials: int = 0
    lines: int = 0
    prime: int = gfp.DEFAULT_PRIME
    seed: int = 0
    trials: int = 5
    fmt: str = "jsonl"
    scheme_path: str | None = None
    timing: bool = True

    def validate(self, n_min: int = 3, d_min: int = 1) -> None:
        try:
            gfp.check_prime(self.prime)
        except HilbertSundialError as exc:
            raise ConfigError(str(exc)) from exc
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.sundials < 0 or self.lines < 0:
            raise ConfigError("component counts must be non-negative")
        if self.n and min(self.n) < n_min:
            raise ConfigError(f"need n >= {n_min}, got n={min(self.n)}")
        if self.d and min(self.d) < d_min:
            raise ConfigError(f"need d >= {d_min}, got d={min(self.d)}")
        if self.d and self.prime < max(self.d) + 2:
            raise ConfigError(f"prime {self.prime} too small for d={max(self.d)}: need p >= d + 2")


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"4..12"`` (inclusive) or ``"3,5,7"``."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def instance_rng(seed: int, n: int, d: int, s: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, n, d, s, trial]))


def random_scheme(n: int, s: int, l: int, p: int, rng: np.random.Generator) -> Scheme:
    """``s`` generic sundials followed by ``l`` generic lines."""
    comps = [Sundial(make_generic_sundial(n, p, rng)) for _ in range(s)]
    comps += [LineComponent(random_line(n, p, rng)) for _ in range(l)]
    return Scheme(n, tuple(comps), p)


# --- writers -----------------------------------------------------------------

class Writer:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt, self.out = fmt, out
        self._header: tuple[str, ...] | None = None

    def write(self, record: dict) -> None:
        if self.fmt == "jsonl":
            self.out.write(json.dumps(record) + "\n")
            return
        keys = tuple(record)
        if self._header is None:
            self._header = keys
            self.out.write("\t".join(keys) + "\n")
        self.out.write("\t".join(_tsv_cell(record.get(k)) for k in self._header) + "\n")


def _tsv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


class Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = round((time.perf_counter() - self._t0) * 1000, 3) if self.enabled else 0
        return False


def _report(cfg: RunConfig, n: int, d: int, s: int, l: int, trial: int,
            computed: int, expected: int, ms: float) -> dict:
    return {"cmd": cfg.command, "n": n, "d": d, "s": s, "l": l, "prime": cfg.prime,
            "seed": cfg.seed, "trial": trial, "computed_dim": int(computed),
            "expected_dim": int(expected), "match": int(computed) == int(expected),
            "elapsed_ms": ms}


# --- commands ----------------------------------------------------------------

def run_verify(cfg: RunConfig, writer: Writer) -> int:
    if cfg.scheme_path:
        return _verify_file(cfg, writer)
    cfg.validate()
    n, d = cfg.n[0], cfg.d[0]
    expected = expected_ideal_dim(n, d, cfg.sundials, cfg.lines)
    for trial in range(cfg.trials):
        with Timer(cfg.timing) as tm:
            X = random_scheme(n, cfg.sundials, cfg.lines, cfg.prime,
                              instance_rng(cfg.seed, n, d, cfg.sundials, trial))
            computed = ideal_dimension(X, d)
        rec = _report(cfg, n, d, cfg.sundials, cfg.lines, trial, computed, expected, tm.ms)
        writer.write(rec)
        if rec["match"]:
            return EXIT_OK
    return EXIT_MISMATCH


def _verify_file(cfg: RunConfig, writer: Writer) -> int:
    try:
        X = load_scheme(cfg.scheme_path)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"cannot read scheme file: {exc}") from exc
    cfg.prime = X.p
    cfg.n = [X.n]
    cfg.validate()
    d = cfg.d[0]
    with Timer(cfg.timing) as tm:
        computed = ideal_dimension(X, d)
    rec = _report(cfg, X.n, d, X.count(Sundial), X.count(LineComponent), 0,
                  computed, expected_value(X, d), tm.ms)
    writer.write(rec)
    return EXIT_OK if rec["match"] else EXIT_MISMATCH


def sweep_grid(ns: Iterable[int], ds: Iterable[int], extra: int = 1) -> list[tuple[int, int, int]]:
    """Every ``(n, d, s)``; the lines for each run over ``0 <= l <= t + extra - 2s``."""
    out = []
    for n in ns:
        for d in ds:
            t = compute_trs(n, d)[0]
            out.extend((n, d, s) for s in range((t + extra) // 2 + 1))
    return out


def sweep_group(cfg: RunConfig, n: int, d: int, s: int, extra: int = 1) -> list[dict]:
    """All ``l`` for one ``(n, d, s)``: one elimination per trial, read off per prefix.

    Lines are appended one at a time, so the prefix with ``l`` lines is the
    same instance ``verify`` builds for ``(s, l)`` with this seed.  A value
    ``l`` is redrawn in later trials only while it mismatches.
    """
    t = compute_trs(n, d)[0]
    l_max = t + extra - 2 * s
    pending = set(range(l_max + 1))
    rows: dict[int, dict] = {}
    for trial in range(cfg.trials):
        with Timer(cfg.timing) as tm:
            X = random_scheme(n, s, l_max, cfg.prime, instance_rng(cfg.seed, n, d, s, trial))
            dims = prefix_ideal_dimensions(X, d)
        for l in sorted(pending):
            rec = _report(cfg, n, d, s, l, trial, dims[s + l],
                          expected_ideal_dim(n, d, s, l), tm.ms)
            rows[l] = rec
            if rec["match"]:
                pending.discard(l)
        if not pending:
            break
    return [rows[l] for l in range(l_max + 1)]


def run_sweep(cfg: RunConfig, writer: Writer, extra: int = 1) -> int:
    cfg.validate()
    grid = sweep_grid(cfg.n, cfg.d, extra)
    ok = True
    for group in ordered_map(lambda key: sweep_group(cfg, *key, extra=extra), grid):
        for rec in group:
            ok &= rec["match"]
            writer.write(rec)
    return EXIT_OK if ok else EXIT_MISMATCH


def run_appendix(cfg: RunConfig, writer: Writer) -> int:
    if min(cfg.n) < 4 or min(cfg.d) < 2:
        raise ConfigError("the appendix inequalities are stated for n >= 4 and d >= 2")
    ok = True
    for n in cfg.n:
        for d in cfg.d:
            rep = verify_appendix_a1(n, d)
            # the table's slack column is part (a)
            rec = {"cmd": "appendix", **rep.as_dict(), "slack": rep.a_value,
                   "a1_holds": rep.all_hold}
            if d > 5:
                a2 = appendix_a2_value(n, d)
                rec.update(a2_value=a2, a2_holds=a2 <= 0)
            else:
                rec.update(a2_value=None, a2_holds=None)
            ok &= rec["a1_holds"] and rec["a2_holds"] is not False
            writer.write(rec)
    return EXIT_OK if ok else EXIT_MISMATCH


def run_replay(cfg: RunConfig, writer: Writer, p3: list[int] | None,
               pn: list[int] | None) -> int:
    cfg.validate(n_min=0, d_min=0)
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed] + (p3 or pn)))
    with Timer(cfg.timing) as tm:
        if p3 is not None:
            h, case = p3
            report = replay_p3_case(h, case, cfg.prime, rng, cfg.trials)
        else:
            n, d = pn
            report = replay_pn_case(n, d, cfg.prime, rng, cfg.trials)
    rec = {"cmd": "replay", **report.as_dict(), "seed": cfg.seed, "elapsed_ms": tm.ms}
    if writer.fmt == "tsv":
        for claim in rec.pop("claims"):
            writer.write({**{k: v for k, v in rec.items() if k != "notes"}, **claim})
    else:
        writer.write(rec)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def castelnuovo_instances(count: int, seed: int, p: int, ns=(3, 4), d_max: int = 5):
    for i in range(count):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        n = int(rng.choice(ns))
        d = int(rng.integers(1, d_max + 1))
        yield i, random_hyperplane_instance(n, d, p, rng)


def run_castelnuovo(cfg: RunConfig, writer: Writer, count: int) -> int:
    cfg.validate(n_min=0, d_min=0)
    if count < 1:
        raise ConfigError("--random needs a positive count")
    if cfg.prime < 7:
        raise ConfigError("prime too small for d <= 5")

    def one(item):
        i, inst = item
        with Timer(cfg.timing) as tm:
            rep = check_inequality(inst.X, inst.Y, inst.d)
        return {"cmd": "castelnuovo", "n": inst.X.n, "d": inst.d, "s": inst.sundials,
                "l": inst.lines, "prime": cfg.prime, "seed": cfg.seed, "trial": i,
                "hyperplane": list(inst.Y.coefficients), **rep.as_dict(),
                "elapsed_ms": tm.ms}

    ok = True
    for rec in ordered_map(one, list(castelnuovo_instances(count, cfg.seed, cfg.prime))):
        ok &= rec["inequality_holds"]
        writer.write(rec)
    return EXIT_OK if ok else EXIT_MISMATCH


def family_trial(n: int, d: int, p: int, rng: np.random.Generator) -> tuple[int, int]:
    """Ideal dimensions of the special and a general fibre of the sundial family."""
    while True:
        first, second = random_line(n, p, rng), random_line(n, p, rng)
        if span([first, second]).dim == 3:
            break
    lam = int(rng.integers(1, p))
    special = ideal_dimension(degeneration_fiber(first, second, 0), d)
    general = ideal_dimension(degeneration_fiber(first, second, lam), d)
    return special, general


def run_family(cfg: RunConfig, writer: Writer) -> int:
    cfg.validate()
    status = EXIT_OK
    for n in cfg.n:
        for d in cfg.d:
            expected = max(comb(d + n, n) - 2 * (d + 1), 0)
            for trial in range(cfg.trials):
                with Timer(cfg.timing) as tm:
                    special, general = family_trial(n, d, cfg.prime,
                                                    instance_rng(cfg.seed, n, d, 1, trial))
                rec = _report(cfg, n, d, 1, 0, trial, special, general, tm.ms)
                rec.update(general_dim=general, generic_expected=expected,
                           semicontinuous=special >= general)
                writer.write(rec)
                if not rec["semicontinuous"]:
                    status = EXIT_MISMATCH
                    break
                if rec["match"]:
                    break
            else:
                status = EXIT_MISMATCH
    return status


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=gfp.DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    common.add_argument("--no-timing", action="store_true",
                        help="report elapsed_ms as 0 for byte-identical output")

    parser = argparse.ArgumentParser(prog="hilbert-sundial", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="one (n, d, s, l) instance")
    v.add_argument("--n", type=int)
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--sundials", "--s", type=int, default=0)
    v.add_argument("--lines", "--l", type=int, default=0)
    v.add_argument("--scheme", help="scheme-description JSON file instead of random components")

    s = sub.add_parser("sweep", parents=[common], help="grid over n, d and all (s, l)")
    s.add_argument("--n", type=parse_range, default=parse_range("3..5"))
    s.add_argument("--d", type=parse_range, default=parse_range("1..6"))
    s.add_argument("--extra", type=int, default=1,
                   help="sweep 2s + l up to t + extra (default 1)")

    a = sub.add_parser("appendix", parents=[common], help="the two counting inequalities")
    a.add_argument("--n", type=parse_range, default=parse_range("4..12"))
    a.add_argument("--d", type=parse_range, default=parse_range("2..50"))

    r = sub.add_parser("replay", parents=[common], help="replay a specialization argument")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--p3", nargs=2, type=int, metavar=("H", "CASE"))
    g.add_argument("--pn", nargs=2, type=int, metavar=("N", "D"))

    c = sub.add_parser("castelnuovo", parents=[common], help="inequality on random instances")
    c.add_argument("--random", type=int, default=100, metavar="N")

    f = sub.add_parser("family", parents=[common], help="degeneration of two skew lines")
    f.add_argument("--n", type=parse_range, default=parse_range("3"))
    f.add_argument("--d", type=parse_range, default=parse_range("3"))
    return parser


def _as_list(x) -> list[int]:
    if x is None:
        return []
    return list(x) if isinstance(x, list) else [x]


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=_as_list(getattr(args, "n", None)),
        d=_as_list(getattr(args, "d", None)),
        sundials=getattr(args, "sundials", 0),
        lines=getattr(args, "lines", 0),
        prime=args.prime,
        seed=args.seed,
        trials=args.trials,
        fmt=args.format,
        scheme_path=getattr(args, "scheme", None),
        timing=not args.no_timing,
    )


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout if out is None else out
    cfg = config_from_args(args)
    writer = Writer(cfg.fmt, out)
    try:
        if args.command == "verify":
            if args.n is None and not args.scheme:
                raise ConfigError("verify needs --n or --scheme")
            return run_verify(cfg, writer)
        if args.command == "sweep":
            return run_sweep(cfg, writer, args.extra)
        if args.command == "appendix":
            return run_appendix(cfg, writer)
        if args.command == "replay":
            return run_replay(cfg, writer, args.p3, args.pn)
        if args.command == "castelnuovo":
            return run_castelnuovo(cfg, writer, args.random)
        if args.command == "family":
            return run_family(cfg, writer)
    except HilbertSundialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    parser.error(f"unknown command {args.command}")  # pragma: no cover
    return EXIT_INVALID


def iter_jsonl(text: str) -> Iterator[dict]:
    for line in text.splitlines():
        if line.strip():
            yield json.loads(line)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
