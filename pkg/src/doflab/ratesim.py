"""Zero-forcing rates over symbol extensions and pre-log slope estimation."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import seeding
from .alignment import (BeamformingDesign, build_design, extension_length, achieved_dof,
                        joint_matrix, rank, verify_decodability)
from .errors import InstabilityError, ParameterError, RankError
from .network import ExtendedChannel, Kind, NetworkInstance, extend_channel, sample_instance
from .transforms import null_messages

LOG2_10 = math.log2(10.0)
DEFAULT_FIT_MIN_DB = 50.0


def db_to_linear(db) -> np.ndarray:
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def thread_count() -> int:
    """Worker cap from ``DOFLAB_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("DOFLAB_THREADS", "1")))
    except ValueError:
        return 1


def map_trials(fn: Callable[[int], object], trials: int) -> list:
    """``[fn(0), ..., fn(trials-1)]``, possibly on worker threads, always in trial order."""
    workers = min(thread_count(), trials)
    if workers <= 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials)))


@dataclass(frozen=True)
class RateQuery:
    """SNR grid (dB), channel realizations per point and the root seed.

    ``rho = 10 ** (dB / 10)`` is the total transmit power per channel use
    with unit noise variance; ``power_policy`` is always ``"equal"``
    (equal power per stream).
    """

    snr_db: tuple[float, ...]
    trials: int = 10
    seed: int = 0
    power_policy: str = "equal"

    def __post_init__(self):
        grid = tuple(float(v) for v in self.snr_db)
        object.__setattr__(self, "snr_db", grid)
        if len(grid) < 2:
            raise ParameterError("SNR grid needs at least two points")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ParameterError("SNR grid must be strictly increasing")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if self.power_policy != "equal":
            raise ParameterError(f"unsupported power policy {self.power_policy!r}")

    @classmethod
    def from_range(cls, snr_min: float, snr_max: float, step: float, **kw) -> "RateQuery":
        if step <= 0:
            raise ParameterError("step must be positive")
        count = int(math.floor((snr_max - snr_min) / step + 1e-9)) + 1
        return cls(tuple(snr_min + step * i for i in range(count)), **kw)

    @property
    def rho(self) -> np.ndarray:
        return db_to_linear(self.snr_db)


@dataclass
class SimulationReport:
    """Outcome of an SNR sweep.

    ``rates`` has shape ``(trials, grid points, receivers)``; ``sum_rate`` is
    the trial average of the per-point sums.  ``slope`` is the least-squares
    slope of ``sum_rate`` against ``log2(rho)`` over ``window``.
    """

    snr_db: tuple[float, ...]
    rates: np.ndarray
    sum_rate: np.ndarray
    slope: float
    intercept: float
    fit_residual: float
    window: tuple[int, ...]
    expected: float | None = None
    failures: int = 0
    stream_sinr_db: dict = field(default_factory=dict)
    per_stream_slopes: dict = field(default_factory=dict)
    labels: tuple = ()

    def within(self, rel_tol: float) -> bool:
        if self.expected is None:
            raise ValueError("report has no expected slope")
        return abs(self.slope - self.expected) <= rel_tol * abs(self.expected)


def fit_slope(snr_db: Sequence[float], rates: Sequence[float],
              min_db: float | None = DEFAULT_FIT_MIN_DB) -> tuple[float, float, float, tuple[int, ...]]:
    """Least-squares fit ``rate = slope * log2(rho) + intercept``.

    Uses grid points at or above ``min_db``; if fewer than two qualify (or
    ``min_db`` is None) the top half of the grid is used instead.  Returns
    ``(slope, intercept, rms residual, window indices)``.
    """
    snr = np.asarray(snr_db, dtype=float)
    y = np.asarray(rates, dtype=float)
    window = np.flatnonzero(snr >= min_db) if min_db is not None else np.array([], dtype=int)
    if window.size < 2:
        window = np.arange(len(snr) // 2, len(snr))
        if window.size < 2:
            window = np.arange(max(0, len(snr) - 2), len(snr))
    x = snr[window] * LOG2_10 / 10.0
    slope, intercept = np.polyfit(x, y[window], 1)
    resid = y[window] - (slope * x + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid ** 2))), tuple(int(i) for i in window)


# --------------------------------------------------------------------------
# Zero forcing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZFRates:
    rho: float
    per_receiver: np.ndarray
    sum_rate: float
    sinr: np.ndarray


def zf_stream_gains(design: BeamformingDesign, channel: ExtendedChannel) -> np.ndarray:
    """Post-ZF SNR per unit stream power, ``1/||g_m||**2``, shape ``(K, streams)``.

    ``g_m`` are the desired-stream rows of the inverse of the joint system at
    each receiver.  Desired columns carry the channel but unit-norm
    beamformers, so ``g_m`` applied to the received vector returns the
    stream symbol plus filtered noise of variance ``||g_m||**2``.
    """
    K = design.K
    ndes = (K - 1) * design.streams_per_message
    out = np.empty((K, ndes))
    for k in range(1, K + 1):
        a = joint_matrix(design, channel, k)
        if rank(a) < design.mu:
            raise RankError(f"joint system at receiver {k} is singular")
        g = np.linalg.inv(a)[:ndes]
        out[k - 1] = 1.0 / np.sum(np.abs(g) ** 2, axis=1)
    return out


def zf_rates_from_gains(design: BeamformingDesign, gains: np.ndarray, rho: float) -> ZFRates:
    sinr = design.stream_power(rho) * gains
    per_rx = np.sum(np.log2(1.0 + sinr), axis=1) / design.mu
    return ZFRates(float(rho), per_rx, float(per_rx.sum()), sinr)


def zf_sum_rate(design: BeamformingDesign, channel: ExtendedChannel, rho: float) -> ZFRates:
    """Per-receiver and sum rates (bits per channel use) with exact ZF filters."""
    if rho < 0:
        raise ParameterError("rho must be nonnegative")
    return zf_rates_from_gains(design, zf_stream_gains(design, channel), rho)


# --------------------------------------------------------------------------
# Slope of the alignment scheme
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialDraw:
    instance: NetworkInstance
    channel: ExtendedChannel
    design: BeamformingDesign
    failures: int


def draw_trial(K: int, n: int, seed: int, trial: int, *, reciprocal: bool = True,
               magnitude_min: float = 0.5, magnitude_max: float = 2.0, max_attempts: int = 20) -> TrialDraw:
    """Channel and design for one trial, resampling while decodability fails."""
    mu = extension_length(K, n)
    for attempt in range(max_attempts):
        tseed = seeding.derive_seed(seed, seeding.TRIAL, trial, attempt)
        inst = sample_instance(Kind.FULL_DUPLEX, K=K, seed=tseed, reciprocal=reciprocal,
                               magnitude_min=magnitude_min, magnitude_max=magnitude_max)
        ch = extend_channel(inst, mu)
        design = build_design(ch, K, n, seeding.derive_seed(tseed, seeding.BEAMFORM))
        if verify_decodability(design, ch):
            return TrialDraw(inst, ch, design, attempt)
    raise InstabilityError(f"trial {trial}: no decodable design in {max_attempts} attempts")


def dof_slope(K: int, n: int, query: RateQuery, *, reciprocal: bool = True,
              magnitude_min: float = 0.5, magnitude_max: float = 2.0,
              fit_min_db: float | None = DEFAULT_FIT_MIN_DB, max_failure_rate: float = 0.1) -> SimulationReport:
    """Measure the pre-log of the alignment scheme by ZF rate simulation.

    Raises
    ------
    InstabilityError
        If decodability failures exceed ``max_failure_rate`` of the trials.
    """
    rho = query.rho

    def run(t):
        draw = draw_trial(K, n, query.seed, t, reciprocal=reciprocal,
                          magnitude_min=magnitude_min, magnitude_max=magnitude_max)
        gains = zf_stream_gains(draw.design, draw.channel)
        rates = np.array([zf_rates_from_gains(draw.design, gains, r).per_receiver for r in rho])
        return rates, gains, draw.failures

    results = map_trials(run, query.trials)
    failures = sum(r[2] for r in results)
    if failures > max_failure_rate * query.trials:
        raise InstabilityError(f"{failures} decodability failures over {query.trials} trials")
    rates = np.stack([r[0] for r in results])
    sum_rate = rates.sum(axis=2).mean(axis=0)
    slope, icept, resid, window = fit_slope(query.snr_db, sum_rate, fit_min_db)
    per_stream = rho[-1] / float(achieved_dof(K, n))
    top = per_stream * np.concatenate([r[1].ravel() for r in results])
    sinr = {
        "snr_db": query.snr_db[-1],
        "min": float(10 * np.log10(top.min())),
        "median": float(10 * np.log10(np.median(top))),
    }
    return SimulationReport(
        query.snr_db, rates, sum_rate, slope, icept, resid, window,
        expected=float(achieved_dof(K, n)), failures=failures, stream_sinr_db=sinr,
        labels=tuple(range(1, K + 1)),
    )


# --------------------------------------------------------------------------
# Feedback example
# --------------------------------------------------------------------------

FEEDBACK_MESSAGES = ((1, 3), (2, 1), (3, 2))
FEEDBACK_EDGES = frozenset({(2, 1), (3, 2), (1, 3)})


def feedback_instance(seed: int, *, feedback: bool = True, reciprocal: bool = True,
                      magnitude_min: float = 0.5, magnitude_max: float = 2.0) -> NetworkInstance:
    """Three full-duplex nodes, messages ``W[1,3], W[2,1], W[3,2]``.

    With ``feedback`` each destination ``d`` observes the received signal of
    the node that ``d`` itself transmits to (edges 2->1, 3->2, 1->3).
    """
    inst = sample_instance(Kind.FULL_DUPLEX, K=3, seed=seed, reciprocal=reciprocal,
                           magnitude_min=magnitude_min, magnitude_max=magnitude_max)
    inst = null_messages(inst, lambda d, s: (d, s) in FEEDBACK_MESSAGES)
    return inst.replace(feedback_edges=FEEDBACK_EDGES if feedback else frozenset())


def _helper(instance: NetworkInstance, dest: int) -> int | None:
    fed = [a for a, b in instance.feedback_edges if b == dest]
    return fed[0] if fed else None


def feedback_effective_gains(instance: NetworkInstance, times: Sequence[int]) -> np.ndarray:
    """Per message and time: (desired gain power, interference gain power).

    With a feedback helper ``h`` for destination ``d``, ``d`` removes its own
    contribution ``H[h, d] X_d`` from ``Y_h`` and is left with
    ``H[h, s] X_s + Z_h``: no interference.  Without a helper ``d`` decodes
    from its own ``Y_d`` and treats the third node as noise.
    Returns an array of shape ``(len(times), messages, 2)``.
    """
    msgs = list(instance.messages)
    out = np.zeros((len(times), len(msgs), 2))
    for ti, t in enumerate(times):
        H = instance.gain_matrix(t)
        for mi, m in enumerate(msgs):
            d, s = m.dest, m.src
            h = _helper(instance, d)
            if h is not None:
                out[ti, mi, 0] = abs(H[h - 1, s - 1]) ** 2
            else:
                other = ({1, 2, 3} - {d, s}).pop()
                out[ti, mi] = abs(H[d - 1, s - 1]) ** 2, abs(H[d - 1, other - 1]) ** 2
    return out


def feedback_demo(query: RateQuery, *, feedback: bool = True, samples: int = 64,
                  fit_min_db: float | None = DEFAULT_FIT_MIN_DB) -> SimulationReport:
    """Per-message and total pre-logs of the three-node feedback example.

    Each transmitter spends ``rho/3``.  A message's rate at one SNR is the
    mean over ``samples`` time slots of ``log2(1 + SINR)``; the one-slot
    feedback delay is ignored.
    """
    rho = query.rho
    p = rho / 3.0

    def run(t):
        inst = feedback_instance(seeding.derive_seed(query.seed, seeding.TRIAL, t, 0), feedback=feedback)
        g = feedback_effective_gains(inst, range(1, samples + 1))
        sig = g[None, :, :, 0] * p[:, None, None]
        intf = g[None, :, :, 1] * p[:, None, None]
        return np.log2(1.0 + sig / (1.0 + intf)).mean(axis=1)

    rates = np.stack(map_trials(run, query.trials))
    mean = rates.mean(axis=0)
    sum_rate = mean.sum(axis=1)
    slope, icept, resid, window = fit_slope(query.snr_db, sum_rate, fit_min_db)
    per = {}
    for mi, pair in enumerate(FEEDBACK_MESSAGES):
        per[pair] = fit_slope(query.snr_db, mean[:, mi], fit_min_db)[0]
    return SimulationReport(
        query.snr_db, rates, sum_rate, slope, icept, resid, window,
        expected=3.0 if feedback else None, per_stream_slopes=per, labels=FEEDBACK_MESSAGES,
    )


def feedback_cancellation_residual(seed: int, N: int = 32) -> float:
    """Fraction of the canceled self-signal left after subtraction, noise-free.

    Runs the feedback instance with random unit symbols and no noise.  For
    each message, ``r = Y_h - H[h, d] X_d`` should equal ``H[h, s] X_s``
    exactly; the leftover ``e = r - H[h, s] X_s`` is projected onto the
    canceled signal ``c = H[h, d] X_d`` and ``|<c, e>| / ||c||**2`` is
    returned (worst message).
    """
    from .network import RandomLinearEncoder, forward_simulate

    inst = feedback_instance(seed)
    tr = forward_simulate(inst, RandomLinearEncoder(seed, N, feedback=False), N, noise_seed=None)
    worst = 0.0
    for m in inst.messages:
        d, s = m.dest, m.src
        h = _helper(inst, d)
        H = np.array([inst.gain_matrix(t) for t in range(1, N + 1)])
        canceled = H[:, h - 1, d - 1] * tr.x(d)[:, 0]
        r = tr.y(h)[:, 0] - canceled
        e = r - H[:, h - 1, s - 1] * tr.x(s)[:, 0]
        worst = max(worst, abs(np.vdot(canceled, e)) / np.vdot(canceled, canceled).real)
    return float(worst)
