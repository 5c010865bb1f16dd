"""Genie replay on the four-node X network.

Node 1's contribution at every receiver, plus noise, is bundled into the
genie signals ``U_i(n) = H[i,1](n) X_1(n) + Z_i(n)``.  Given ``W[4,2]`` and
the ``U`` histories, the transmit symbols of nodes 2, 3, 4 and all received
signals can be rebuilt step by step.  Adding ``W[3,1]`` and ``W[4,1]`` also
rebuilds ``X_1``.  :func:`genie_replay` performs that reconstruction with
the same encoder family and measures how far it lands from the true
transcript.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .errors import KindError, ParameterError
from .network import Encoder, EncoderView, Kind, NetworkInstance, Transcript, forward_simulate

REPLAY_TOL = 1e-9
SILENT_AT_START = (3, 4)


@dataclass(frozen=True, eq=False)
class GenieTranscript:
    """A four-node transcript plus the genie signals ``U`` (``(N, antennas)``)."""

    transcript: Transcript
    U: np.ndarray

    @property
    def instance(self) -> NetworkInstance:
        return self.transcript.instance

    @property
    def N(self) -> int:
        return self.transcript.N

    @property
    def payloads(self) -> Mapping[tuple[int, int], np.ndarray]:
        return self.transcript.payloads

    def recompute_u(self) -> np.ndarray:
        return genie_signals(self.instance, self.transcript.X, self.transcript.Z)

    def with_u(self, U: np.ndarray) -> "GenieTranscript":
        return replace(self, U=U)


def _rx_mask(instance: NetworkInstance) -> np.ndarray:
    mask = np.zeros(instance.antenna_total, dtype=bool)
    for node in instance.nodes():
        mask[instance.antennas(node)] = instance.receives[node - 1]
    return mask


def _tx_antennas(instance: NetworkInstance, nodes) -> list[int]:
    ants = range(instance.antenna_total)
    return [a for node in nodes if instance.transmits[node - 1] for a in ants[instance.antennas(node)]]


def genie_signals(instance: NetworkInstance, X: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """``U_i(n) = H[i,1](n) X_1(n) + Z_i(n)`` at every receiving antenna."""
    rx = _rx_mask(instance)
    src = _tx_antennas(instance, [1])
    U = np.zeros_like(X)
    for n in range(1, X.shape[0] + 1):
        H = instance.gain_matrix(n)
        acc = np.zeros(instance.antenna_total, dtype=complex)
        for b in src:
            acc = acc + H[:, b] * X[n - 1, b]
        U[n - 1] = np.where(rx, acc + Z[n - 1], 0.0)
    U.setflags(write=False)
    return U


def simulate_four_node(instance: NetworkInstance, encoder: Encoder, N: int, *, noise_seed: int | None = 0,
                       payload_seed: int = 0, power: float = np.inf) -> GenieTranscript:
    """Forward-simulate a four-node X network and record the genie signals.

    Nodes 3 and 4 have nothing to send before they have received anything,
    so their first symbols are fixed to zero.
    """
    if instance.kind is not Kind.FOUR_NODE_X:
        raise KindError(f"simulate_four_node needs a four_node_x instance, got {instance.kind.value}")
    tr = forward_simulate(instance, encoder, N, noise_seed, power, payload_seed=payload_seed,
                          silent_first_slot=SILENT_AT_START)
    return GenieTranscript(tr, genie_signals(instance, tr.X, tr.Z))


def _encode(instance, encoder, node, n, payloads, Yhat):
    def histories(other, upto):
        return Yhat[:upto, instance.antennas(other)].copy()

    view = EncoderView(node, n, instance.antenna_counts[node - 1], payloads,
                       instance.observable(node), histories)
    return np.asarray(encoder(node, n, view), dtype=complex).reshape(-1)


def replay_without_source(instance: NetworkInstance, encoder: Encoder, U: np.ndarray,
                          w42: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rebuild ``X_2, X_3, X_4`` and every ``Y`` from ``W[4,2]`` and ``U`` alone.

    Only ``W[4,2]`` is passed in, so the reconstruction cannot depend on the
    messages of node 1.  Returns ``(Xhat, Yhat)`` with node 1's columns of
    ``Xhat`` left at zero.
    """
    N, A = U.shape
    outgoing = {2: instance.messages.outgoing(2), 3: instance.messages.outgoing(3), 4: instance.messages.outgoing(4)}
    if [m.pair for m in outgoing[2]] not in ([(4, 2)], []) or outgoing[3] or outgoing[4]:
        raise ParameterError("replay expects node 2 to carry only W[4,2] and nodes 3, 4 none")
    own = {2: [w42] if outgoing[2] else [], 3: [], 4: []}
    rx = _rx_mask(instance)
    others = _tx_antennas(instance, [2, 3, 4])
    Xhat = np.zeros((N, A), dtype=complex)
    Yhat = np.zeros((N, A), dtype=complex)
    for n in range(1, N + 1):
        for node in (2, 3, 4):
            if not instance.transmits[node - 1] or (n == 1 and node in SILENT_AT_START):
                continue
            Xhat[n - 1, instance.antennas(node)] = _encode(instance, encoder, node, n, own[node], Yhat)
        H = instance.gain_matrix(n)
        acc = U[n - 1].copy()
        for b in others:
            acc = acc + H[:, b] * Xhat[n - 1, b]
        Yhat[n - 1] = np.where(rx, acc, 0.0)
    return Xhat, Yhat


def replay_source(instance: NetworkInstance, encoder: Encoder, payloads: Mapping, Yhat: np.ndarray) -> np.ndarray:
    """Rebuild ``X_1`` from node 1's messages and the reconstructed ``Y``."""
    N = Yhat.shape[0]
    msgs = [payloads[m.pair] for m in instance.messages.outgoing(1)]
    x1 = np.zeros((N, instance.antenna_counts[0]), dtype=complex)
    for n in range(1, N + 1):
        x1[n - 1] = _encode(instance, encoder, 1, n, msgs, Yhat)
    return x1


@dataclass(frozen=True)
class ReplayReport:
    max_y_deviation: float
    max_x_deviation: float
    max_x1_deviation: float
    step_deviation: np.ndarray
    passed: bool

    @property
    def max_deviation(self) -> float:
        return max(self.max_y_deviation, self.max_x_deviation, self.max_x1_deviation)

    def __bool__(self) -> bool:
        return self.passed


def genie_replay(gt: GenieTranscript, encoder: Encoder, tol: float = REPLAY_TOL) -> ReplayReport:
    """Reconstruct the transcript from the genie's side information.

    ``step_deviation[n-1]`` is the largest deviation at time ``n`` over all
    reconstructed received and transmitted symbols.
    """
    inst = gt.instance
    w42 = gt.payloads.get((4, 2), np.zeros(0, dtype=complex))
    Xhat, Yhat = replay_without_source(inst, encoder, gt.U, w42)
    x1 = replay_source(inst, encoder, gt.payloads, Yhat)
    tr = gt.transcript
    rest = _tx_antennas(inst, [2, 3, 4])
    ydev = np.abs(Yhat - tr.Y).max(axis=1)
    xdev = np.abs(Xhat[:, rest] - tr.X[:, rest]).max(axis=1) if rest else np.zeros(gt.N)
    x1dev = np.abs(x1 - tr.x(1)).max(axis=1)
    step = np.maximum(np.maximum(ydev, xdev), x1dev)
    worst = float(step.max())
    return ReplayReport(float(ydev.max()), float(xdev.max()), float(x1dev.max()), step, worst <= tol)


def corrupt_genie(gt: GenieTranscript, step: int, antenna: int = 0, delta: complex = 1.0) -> GenieTranscript:
    """Copy of ``gt`` with ``U`` at 1-based time ``step`` shifted by ``delta``."""
    if not 1 <= step <= gt.N:
        raise ParameterError(f"step must lie in 1..{gt.N}")
    U = gt.U.copy()
    U[step - 1, antenna] += delta
    U.setflags(write=False)
    return gt.with_u(U)
