"""Interference-alignment beamformers for the K-user full-duplex network.

Every message intended for receiver ``k`` is sent along the same beamformer
``V_k``, whatever its transmitter.  The beamformer is built from a random seed
vector ``w_k`` and the ``Gamma = (K-1)(K-2)`` cross-link maps ``H[i, j]``
with ``i, j`` distinct and both different from ``k``.  Columns are monomials
``w_k * prod_m T_m ** alpha_m`` of those diagonal maps.  Since diagonal maps
commute, ``H[i, j] V_k`` only bumps one exponent by one, and every bumped
column is a column of the larger family ``I_k``.  Interference meant for
``k`` therefore stays inside ``span(I_k)`` at every receiver.

Identical maps (``H[i, j] == H[j, i]`` under reciprocity) are merged into one
exponent coordinate.  A coordinate standing for ``c`` identical maps uses the
exponent range ``1..n**c``.  This keeps ``n**Gamma`` distinct columns in
``V_k`` where the naive per-pair indexing would produce repeats.  ``I_k`` is
the box ``1..n**c + 1`` per coordinate, padded with further monomials up to
``(n+1)**Gamma`` columns so the dimension budget of the extension is met
exactly.  With independent channels no maps merge and the construction is
the plain one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import seeding
from .errors import DimensionError, KindError, ParameterError
from .network import ExtendedChannel

RANK_RTOL = 1e-9
ALIGN_TOL = 1e-10


def gamma(K: int) -> int:
    return (K - 1) * (K - 2)


def extension_length(K: int, n: int) -> int:
    """``mu_n = (K-1)((n+1)**Gamma + n**Gamma)``."""
    if K < 2 or n < 1:
        raise ParameterError("need K >= 2 and n >= 1")
    g = gamma(K)
    return (K - 1) * ((n + 1) ** g + n ** g)


def achieved_dof(K: int, n: int) -> Fraction:
    """DoF of the scheme over a ``mu_n`` extension: ``K(K-1) n**Gamma / mu_n``."""
    return Fraction(K * (K - 1) * n ** gamma(K), extension_length(K, n))


def cross_pairs(K: int, k: int) -> list[tuple[int, int]]:
    """Links ``(i, j)`` that carry interference meant for ``k``, sorted."""
    return [(i, j) for i in range(1, K + 1) for j in range(1, K + 1) if len({i, j, k}) == 3]


def rank(matrix: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Numerical rank: singular values above ``rtol`` times the largest."""
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0


def monomial_columns(w: np.ndarray, maps: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    """Columns ``w * prod_m maps[m] ** exponents[c, m]``, shape ``(mu, len(exponents))``.

    The single routine behind both ``V_k`` and ``I_k``, so aligned columns are
    produced by identical arithmetic.
    """
    cols = np.repeat(w[:, None], len(exponents), axis=1).astype(complex)
    for m in range(maps.shape[0]):
        cols = cols * maps[m][:, None] ** exponents[:, m][None, :]
    return cols


def _pad_exponents(box: list[tuple[int, ...]], ranges: list[int], target: int) -> list[tuple[int, ...]]:
    out = list(box)
    if len(out) >= target or not ranges:
        return out[:target] if ranges else out
    seen = set(out)
    extra = 1
    while len(out) < target:
        for alpha in itertools.product(*(range(1, r + 2 + extra) for r in ranges)):
            if alpha not in seen:
                seen.add(alpha)
                out.append(alpha)
                if len(out) == target:
                    break
        extra += 1
    return out


def _unit_columns(a: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(a, axis=0)
    return a / np.where(norms > 0, norms, 1.0)


@dataclass(frozen=True, eq=False)
class BeamformingDesign:
    """State of one alignment construction.

    Per-receiver sequences are indexed by ``k - 1``.

    Attributes
    ----------
    generators : tuple
        For each ``k``, the groups of cross pairs sharing one exponent
        coordinate (singletons unless maps coincide).
    exponent_index : dict
        ``(i, j, k) -> coordinate`` of the map ``H[i, j]`` in the family of ``k``.
    v_exponents, i_exponents : tuple of ndarray
        Exponent vectors of the columns of ``V_k`` and ``I_k``.
    V_raw, I_raw : tuple of ndarray
        Columns before normalization (exact monomials, used for alignment).
    V, I : tuple of ndarray
        Unit-norm columns (used for ranks and transmission).
    """

    K: int
    n: int
    gamma: int
    mu: int
    seed: int
    w: np.ndarray
    generators: tuple
    exponent_index: dict
    v_exponents: tuple
    i_exponents: tuple
    V_raw: tuple
    I_raw: tuple
    V: tuple
    I: tuple

    @property
    def streams_per_message(self) -> int:
        return self.n ** self.gamma

    @property
    def total_streams(self) -> int:
        return self.K * (self.K - 1) * self.streams_per_message

    def stream_power(self, rho: float) -> float:
        """Equal power per stream so that the extension spends ``rho`` per channel use."""
        return rho * self.mu / self.total_streams

    def with_seed_vectors(self, w: np.ndarray, channel: ExtendedChannel) -> "BeamformingDesign":
        """Rebuild the column families from given seed vectors (for degenerate-design tests)."""
        return _assemble(channel, self.K, self.n, self.seed, np.asarray(w, dtype=complex))


def _groups(channel: ExtendedChannel, K: int, k: int, merge: bool):
    groups: list[list[tuple[int, int]]] = []
    for pair in cross_pairs(K, k):
        diag = channel.link(*pair)
        for g in groups:
            if merge and np.array_equal(channel.link(*g[0]), diag):
                g.append(pair)
                break
        else:
            groups.append([pair])
    return groups


def _assemble(channel: ExtendedChannel, K: int, n: int, seed: int, w: np.ndarray,
              merge: bool = True) -> BeamformingDesign:
    g_count = gamma(K)
    mu = extension_length(K, n)
    generators, index, vexp, iexp, vraw, iraw = [], {}, [], [], [], []
    for k in range(1, K + 1):
        groups = _groups(channel, K, k, merge)
        ranges = [n ** len(g) for g in groups]
        for m, g in enumerate(groups):
            for i, j in g:
                index[(i, j, k)] = m
        v_alpha = list(itertools.product(*(range(1, r + 1) for r in ranges)))
        box = list(itertools.product(*(range(1, r + 2) for r in ranges)))
        i_alpha = _pad_exponents(box, ranges, (n + 1) ** g_count)
        maps = np.array([channel.link(*g[0]) for g in groups]).reshape(len(groups), mu)
        va = np.array(v_alpha, dtype=int).reshape(len(v_alpha), len(groups))
        ia = np.array(i_alpha, dtype=int).reshape(len(i_alpha), len(groups))
        generators.append(tuple(tuple(g) for g in groups))
        vexp.append(va)
        iexp.append(ia)
        vraw.append(monomial_columns(w[k - 1], maps, va))
        iraw.append(monomial_columns(w[k - 1], maps, ia))
    return BeamformingDesign(
        K, n, g_count, mu, seed, w, tuple(generators), index, tuple(vexp), tuple(iexp),
        tuple(vraw), tuple(iraw), tuple(_unit_columns(v) for v in vraw), tuple(_unit_columns(i) for i in iraw),
    )


def seed_vectors(K: int, mu: int, seed: int) -> np.ndarray:
    """I.i.d. seed vectors: magnitude uniform on [0.5, 1.5], phase uniform."""
    w = np.empty((K, mu), dtype=complex)
    for k in range(1, K + 1):
        gen = seeding.rng(seed, seeding.BEAMFORM, k)
        w[k - 1] = gen.uniform(0.5, 1.5, mu) * np.exp(1j * gen.uniform(0.0, 2.0 * np.pi, mu))
    return w


def build_design(channel: ExtendedChannel, K: int, n: int, seed: int, *, merge_identical: bool = True) -> BeamformingDesign:
    """Construct ``V_k`` and ``I_k`` for every receiver ``k``.

    ``merge_identical=False`` indexes one exponent per cross pair even when
    maps coincide.  Under reciprocity that produces repeated columns and
    fails the rank checks for ``n >= 2``; it is kept for demonstrating that.
    """
    if K < 2:
        raise ParameterError("need K >= 2")
    mu = extension_length(K, n)
    if channel.node_count != K:
        raise DimensionError(f"channel has {channel.node_count} nodes, expected {K}")
    if channel.mu != mu:
        raise DimensionError(f"extension length {channel.mu} != mu_n = {mu}")
    if any(np.any(channel.link(k, k) != 0) for k in range(1, K + 1)):
        raise KindError("full-duplex extension must have zero self-links")
    return _assemble(channel, K, n, seed, seed_vectors(K, mu, seed), merge_identical)


@dataclass(frozen=True)
class AlignmentReport:
    max_residual: float
    passed: bool
    triples_checked: int
    residuals: dict

    def __bool__(self) -> bool:
        return self.passed


def verify_alignment(design: BeamformingDesign, channel: ExtendedChannel, tol: float = ALIGN_TOL) -> AlignmentReport:
    """Check ``H[i, j] V_k`` lands on columns of ``I_k`` for every distinct triple.

    The column of ``H[i, j] V_k`` with exponent ``alpha`` is compared with the
    column of ``I_k`` whose exponent is ``alpha + e_m``, ``m`` the coordinate of
    ``H[i, j]``.  Residuals are relative, computed before normalization.
    """
    residuals = {}
    for k in range(1, design.K + 1):
        lookup = {tuple(a): c for c, a in enumerate(design.i_exponents[k - 1])}
        for i, j in cross_pairs(design.K, k):
            m = design.exponent_index[(i, j, k)]
            moved = channel.link(i, j)[:, None] * design.V_raw[k - 1]
            bumped = design.v_exponents[k - 1].copy()
            bumped[:, m] += 1
            target = design.I_raw[k - 1][:, [lookup[tuple(a)] for a in bumped]]
            err = np.linalg.norm(moved - target, axis=0) / np.linalg.norm(target, axis=0)
            residuals[(i, j, k)] = float(err.max())
    worst = max(residuals.values(), default=0.0)
    return AlignmentReport(worst, worst <= tol, len(residuals), residuals)


def desired_columns(design: BeamformingDesign, channel: ExtendedChannel, k: int) -> np.ndarray:
    """``D_k = [H[k, i] V_k for i != k]``."""
    return np.hstack([channel.link(k, i)[:, None] * design.V[k - 1]
                      for i in range(1, design.K + 1) if i != k])


def interference_basis(design: BeamformingDesign, k: int) -> np.ndarray:
    return np.hstack([design.I[j - 1] for j in range(1, design.K + 1) if j != k])


def joint_matrix(design: BeamformingDesign, channel: ExtendedChannel, k: int) -> np.ndarray:
    """The ``mu x mu`` system ``[D_k | interference basis]`` at receiver ``k``."""
    return np.hstack([desired_columns(design, channel, k), interference_basis(design, k)])


@dataclass(frozen=True)
class DecodabilityReport:
    rank_I: tuple
    interference_rank: tuple
    joint_rank: tuple
    expected_rank_I: int
    expected_interference_rank: int
    mu: int
    condition: tuple
    passed: bool

    @property
    def checks(self) -> dict:
        return {
            "rank_I": all(r == self.expected_rank_I for r in self.rank_I),
            "interference_rank": all(r == self.expected_interference_rank for r in self.interference_rank),
            "joint_rank": all(r == self.mu for r in self.joint_rank),
        }

    def __bool__(self) -> bool:
        return self.passed


def verify_decodability(design: BeamformingDesign, channel: ExtendedChannel, rtol: float = RANK_RTOL) -> DecodabilityReport:
    """Rank checks: ``I_k``, the interference span and the joint system at each receiver."""
    K, n, g = design.K, design.n, design.gamma
    rank_i = tuple(rank(design.I[k - 1], rtol) for k in range(1, K + 1))
    inter, joint, cond = [], [], []
    for k in range(1, K + 1):
        inter.append(rank(interference_basis(design, k), rtol))
        a = joint_matrix(design, channel, k)
        s = np.linalg.svd(a, compute_uv=False)
        joint.append(int(np.sum(s > rtol * s[0])))
        cond.append(float(s[0] / s[-1]) if s[-1] > 0 else float("inf"))
    exp_i = (n + 1) ** g
    exp_int = (K - 1) * exp_i
    ok = (all(r == exp_i for r in rank_i) and all(r == exp_int for r in inter)
          and all(r == design.mu for r in joint))
    return DecodabilityReport(rank_i, tuple(inter), tuple(joint), exp_i, exp_int, design.mu, tuple(cond), ok)
