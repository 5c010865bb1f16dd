"""Command-line front end.

Every subcommand writes CSV (header first, summary row last) to stdout or
``--out``.  Exit status: 0 all checks passed, 1 a check failed, 2 usage or
parameter error.  ``--config FILE`` supplies ``key = value`` defaults that
explicit flags override.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Sequence

from . import seeding
from .alignment import (build_design, extension_length, verify_alignment,
                        verify_decodability)
from .bounds import build_outer_region, formula, solve_max_sum
from .converse import corrupt_genie, genie_replay, simulate_four_node
from .errors import (DimensionError, DofLabError, EmptyMessagesError, InvalidFocusError, KindError,
                     ParameterError)
from .network import Kind, RandomLinearEncoder, extend_channel, sample_instance
from .ratesim import (DEFAULT_FIT_MIN_DB, RateQuery, dof_slope, feedback_demo, map_trials)
from .transforms import cooperation_collapse, dual_simulate, fd_equivalence

SLOPE_TOL = 0.05
NO_FEEDBACK_CEILING = 2.1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

HEADERS = {
    "bounds": ("quantity", "exact", "decimal", "pass"),
    "align": ("seed", "check", "value", "pass"),
    "slope": ("snr_db", "trial", "receiver", "rate_bits_per_use"),
    "feedback-demo": ("snr_db", "trial", "receiver", "rate_bits_per_use"),
    "replay": ("seed", "N", "max_deviation", "pass"),
    "equiv-check": ("k", "seed", "N", "max_deviation", "pass"),
}

class UsageError(Exception):
    pass

def _flag(value: bool) -> str:
    return "true" if value else "false"

def _num(value) -> str:
    return repr(float(value))

def _trial_seed(seed: int, trial: int) -> int:
    return seeding.derive_seed(seed, seeding.TRIAL, trial, 0)

# --------------------------------------------------------------------------
# Subcommands: each returns (rows, passed)
# --------------------------------------------------------------------------

def cmd_bounds(a):
    if a.topology == "x":
        if a.sources is None or a.destinations is None:
            raise ParameterError("--topology x needs --sources and --destinations")
        region = build_outer_region(a.sources, a.destinations, relays=a.relays)
        closed = formula("x_dof", a.sources, a.destinations)
        extra = []
    else:
        if a.k is None:
            raise ParameterError("--topology full_duplex needs --k")
        region = build_outer_region(a.k, kind="full_duplex")
        closed = formula("fd_upper", a.k)
        extra = [(name, formula(name, a.k)) for name in ("fd_lower", "half_duplex", "ic_dof")]
    sol = solve_max_sum(region)
    ok = sol.value == closed
    rows = [("max_sum_dof", str(sol.value), _num(sol.value), "")]
    rows.append(("closed_form", str(closed), _num(closed), ""))
    rows += [(name, str(v), _num(v), "") for name, v in extra]
    rows.append(("inequalities", str(len(region.inequalities)), str(len(region.inequalities)), ""))
    rows.append(("variables", str(len(region.variables)), str(len(region.variables)), ""))
    rows.append(("summary", str(sol.value), _num(sol.value), _flag(ok)))
    return rows, ok

def _align_trial(a, trial):
    tseed = _trial_seed(a.seed, trial)
    inst = sample_instance(Kind.FULL_DUPLEX, K=a.k, seed=tseed, reciprocal=a.reciprocal,
                           magnitude_min=a.magnitude_min, magnitude_max=a.magnitude_max)
    ch = extend_channel(inst, extension_length(a.k, a.n))
    design = build_design(ch, a.k, a.n, seeding.derive_seed(tseed, seeding.BEAMFORM))
    al = verify_alignment(design, ch)
    dec = verify_decodability(design, ch)
    return tseed, al.max_residual, bool(al) and bool(dec)

def cmd_align(a):
    results = map_trials(lambda t: _align_trial(a, t), a.trials)
    rows = [(str(s), "alignment_and_rank", _num(r), _flag(ok)) for s, r, ok in results]
    ok = all(r[2] for r in results)
    rows.append(("summary", "max_residual", _num(max(r[1] for r in results)), _flag(ok)))
    return rows, ok

def _query(a):
    return RateQuery.from_range(a.snr_min, a.snr_max, a.step, trials=a.trials, seed=a.seed)

def _rate_rows(report, labels):
    rows = []
    for t in range(report.rates.shape[0]):
        for p, snr in enumerate(report.snr_db):
            for r, label in enumerate(labels):
                rows.append((_num(snr), str(t), str(label), _num(report.rates[t, p, r])))
    return rows

def cmd_slope(a):
    report = dof_slope(a.k, a.n, _query(a), reciprocal=a.reciprocal, magnitude_min=a.magnitude_min,
                       magnitude_max=a.magnitude_max, fit_min_db=a.fit_min_db)
    ok = report.within(SLOPE_TOL)
    rows = _rate_rows(report, report.labels)
    rows.append(("summary", _num(report.slope), _num(report.fit_residual), _flag(ok)))
    return rows, ok

def cmd_feedback(a):
    report = feedback_demo(_query(a), feedback=a.feedback, fit_min_db=a.fit_min_db)
    dests = [d for d, _ in report.labels]
    rows = _rate_rows(report, dests)
    if a.feedback:
        per_ok = {d: abs(s - 1.0) <= SLOPE_TOL for (d, _), s in report.per_stream_slopes.items()}
        ok = report.within(SLOPE_TOL) and all(per_ok.values())
    else:
        per_ok = {d: True for d, _ in report.per_stream_slopes}
        ok = report.slope < NO_FEEDBACK_CEILING
    for (d, _), s in report.per_stream_slopes.items():
        rows.append(("message", str(d), _num(s), _flag(per_ok[d])))
    rows.append(("summary", _num(report.slope), _num(report.fit_residual), _flag(ok)))
    return rows, ok

def _replay_instance(a, tseed):
    if a.network == "four_node_x":
        return sample_instance(Kind.FOUR_NODE_X, seed=tseed, reciprocal=a.reciprocal,
                               magnitude_min=a.magnitude_min, magnitude_max=a.magnitude_max)
    if a.network == "fd_collapse":
        inst = sample_instance(Kind.FULL_DUPLEX, K=a.k, seed=tseed, magnitude_min=a.magnitude_min,
                               magnitude_max=a.magnitude_max)
        return cooperation_collapse(fd_equivalence(inst), 1, a.k)
    inst = sample_instance(Kind.SRD, S=a.k, R=1, D=a.k, seed=tseed, magnitude_min=a.magnitude_min,
                           magnitude_max=a.magnitude_max)
    return cooperation_collapse(inst, 1, 2 * a.k + 1)

def _replay_trial(a, trial):
    tseed = _trial_seed(a.seed, trial)
    enc = RandomLinearEncoder(tseed, a.steps)
    gt = simulate_four_node(_replay_instance(a, tseed), enc, a.steps, noise_seed=tseed, payload_seed=tseed)
    if a.corrupt_step:
        gt = corrupt_genie(gt, a.corrupt_step)
    rep = genie_replay(gt, enc)
    return tseed, rep.max_deviation, rep.passed

def cmd_replay(a):
    if a.corrupt_step and not 1 <= a.corrupt_step <= a.steps:
        raise ParameterError(f"--corrupt-step must lie in 1..{a.steps}")
    results = map_trials(lambda t: _replay_trial(a, t), a.trials)
    rows = [(str(s), str(a.steps), _num(d), _flag(ok)) for s, d, ok in results]
    ok = all(r[2] for r in results)
    rows.append(("summary", str(a.steps), _num(max(r[1] for r in results)), _flag(ok)))
    return rows, ok

def cmd_equiv(a):
    ks = a.k_values or [2, 3, 4]
    rows, ok = [], True
    for k in ks:
        def run(t, k=k):
            tseed = _trial_seed(a.seed, t)
            inst = sample_instance(Kind.FULL_DUPLEX, K=k, seed=tseed, reciprocal=a.reciprocal,
                                   magnitude_min=a.magnitude_min, magnitude_max=a.magnitude_max)
            same, dx, dy = dual_simulate(inst, RandomLinearEncoder(tseed, a.steps), a.steps,
                                         noise_seed=tseed, payload_seed=tseed)
            return tseed, max(dx, dy), same
        for s, d, same in map_trials(run, a.trials):
            rows.append((str(k), str(s), str(a.steps), _num(d), _flag(same)))
            ok = ok and same
    rows.append(("summary", "", str(a.steps), "", _flag(ok)))
    return rows, ok

# --------------------------------------------------------------------------
# Parser and configuration
# --------------------------------------------------------------------------

def _common(p, *, seed=True, gains=True):
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--config", help="flat key = value file of defaults")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if gains:
        p.add_argument("--magnitude-min", type=float, default=0.5)
        p.add_argument("--magnitude-max", type=float, default=2.0)

def _sweep(p):
    p.add_argument("--snr-min", type=float, default=40.0)
    p.add_argument("--snr-max", type=float, default=70.0)
    p.add_argument("--step", type=float, default=10.0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--fit-min-db", type=float, default=DEFAULT_FIT_MIN_DB)

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="doflab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="exact outer-bound LP and closed forms")
    _common(p, seed=False, gains=False)
    p.add_argument("--topology", choices=["x", "full_duplex"], default="x")
    p.add_argument("--sources", type=int)
    p.add_argument("--destinations", type=int)
    p.add_argument("--relays", type=int, default=0)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("align", help="alignment and rank checks over random channels")
    _common(p)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--reciprocal", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("slope", help="ZF rate sweep and pre-log fit")
    _common(p)
    _sweep(p)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--reciprocal", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("feedback-demo", help="three-node feedback example")
    _common(p, gains=False)
    _sweep(p)
    p.add_argument("--feedback", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_feedback)

    p = sub.add_parser("replay", help="genie replay on four-node X networks")
    _common(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--steps", type=int, default=20, help="block length N")
    p.add_argument("--network", choices=["four_node_x", "fd_collapse", "srd_collapse"], default="four_node_x")
    p.add_argument("--k", type=int, default=3, help="size of the network that is collapsed")
    p.add_argument("--corrupt-step", type=int, default=0, help="shift the genie signal at this step")
    p.add_argument("--reciprocal", action=argparse.BooleanOptionalAction, default=False)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("equiv-check", help="full-duplex vs equivalent-network dual simulation")
    _common(p)
    p.add_argument("--k", dest="k_values", type=int, action="append", help="repeatable; default 2 3 4")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--steps", type=int, default=20, help="block length N")
    p.add_argument("--reciprocal", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_equiv)
    return parser

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}

def load_config(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment.

    Raises
    ------
    UsageError
        On a line without ``=`` or with an empty key, naming the line number.
    """
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key or not value.strip():
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        out[key] = value.strip()
    return out

def _apply_config(subparser: argparse.ArgumentParser, config: dict[str, str]) -> None:
    actions = {a.dest: a for a in subparser._actions if a.dest not in ("help", "config", "out", "func")}
    unknown = sorted(set(config) - set(actions))
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(unknown)}; allowed: {', '.join(sorted(actions))}")
    defaults = {}
    for key, value in config.items():
        action = actions[key]
        if isinstance(action, argparse.BooleanOptionalAction):
            low = value.lower()
            if low not in _TRUE | _FALSE:
                raise UsageError(f"config key {key}: expected a boolean, got {value!r}")
            defaults[key] = low in _TRUE
        elif action.dest == "k_values":
            defaults[key] = [int(v) for v in value.replace(",", " ").split()]
        else:
            try:
                defaults[key] = action.type(value) if action.type else value
            except ValueError:
                raise UsageError(f"config key {key}: invalid value {value!r}") from None
            if action.choices and defaults[key] not in action.choices:
                raise UsageError(f"config key {key}: {value!r} not in {list(action.choices)}")
    subparser.set_defaults(**defaults)

def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        _apply_config(sub, load_config(args.config))
        args = parser.parse_args(argv)
    return args

def _write(rows, header, out) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return text

def run(argv: Sequence[str] | None = None) -> int:
    """Execute one subcommand; returns the exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except UsageError as exc:
        print(f"doflab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows, ok = args.func(args)
    except (ParameterError, KindError, InvalidFocusError, DimensionError, EmptyMessagesError) as exc:
        print(f"doflab: parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DofLabError as exc:
        print(f"doflab: check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(rows, HEADERS[args.command], args.out)
    return EXIT_OK if ok else EXIT_FAIL

def main() -> None:
    sys.exit(run())
