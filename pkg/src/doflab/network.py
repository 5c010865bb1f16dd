"""Network topologies, message sets, the channel process and symbol extension.

Conventions
-----------
* Nodes carry 1-based labels, matching the usual ``W[i, j]`` notation where
  ``W[i, j]`` is the message *to* node ``i`` *from* node ``j``.  Arrays are
  indexed from 0 at the antenna level.
* A node may have several antennas (only the collapsed four-node networks do).
  Antennas of node ``k`` occupy a contiguous slice of every antenna-level
  array, in node order.
* Gains are produced lazily for each 1-based time index ``t`` by a
  counter-based generator, so any extension block can be rebuilt from the seed
  alone.
* Derived instances (see :mod:`doflab.transforms`) never copy gains.  They keep
  the original :class:`LinkGainProcess` and a *layout*: for every antenna the
  base antenna index used on the receive side (``rows``) and on the transmit
  side (``cols``), plus a boolean mask of links that exist.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import seeding
from .errors import CausalityError, KindError, ParameterError, PowerError, SizeError


class Kind(str, Enum):
    INTERFERENCE = "interference"
    X_NETWORK = "x_network"
    SRD = "srd"
    FULL_DUPLEX = "full_duplex"
    FD_EQUIVALENT = "fd_equivalent"
    PARALLEL_RELAY = "parallel_relay"
    FOUR_NODE_X = "four_node_x"


# --------------------------------------------------------------------------
# Messages
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Message:
    """Message to node ``dest`` from node ``src``.

    ``parts`` are payload keys.  A plain message has a single key; a message
    formed by grouping several original messages carries all of their keys,
    in grouping order, so its payload is the concatenation of theirs.
    """

    dest: int
    src: int
    parts: tuple[int, ...]

    @property
    def pair(self) -> tuple[int, int]:
        return (self.dest, self.src)


@dataclass(frozen=True)
class MessageSet:
    entries: tuple[Message, ...]

    def __post_init__(self):
        seen = set()
        for m in self.entries:
            if m.src == m.dest:
                raise ParameterError(f"message W[{m.dest},{m.src}] has source equal to destination")
            if m.pair in seen:
                raise ParameterError(f"duplicate message W[{m.dest},{m.src}]")
            seen.add(m.pair)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "MessageSet":
        """Build a message set, keying each payload by its position."""
        return cls(tuple(Message(d, s, (idx,)) for idx, (d, s) in enumerate(pairs)))

    def __iter__(self) -> Iterator[Message]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs()

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(m.pair for m in self.entries)

    def get(self, dest: int, src: int) -> Message:
        for m in self.entries:
            if m.pair == (dest, src):
                return m
        raise KeyError((dest, src))

    def outgoing(self, node: int) -> tuple[Message, ...]:
        return tuple(m for m in self.entries if m.src == node)

    def incoming(self, node: int) -> tuple[Message, ...]:
        return tuple(m for m in self.entries if m.dest == node)


# --------------------------------------------------------------------------
# Gains
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkGainProcess:
    """Time-varying complex gains between ``size`` base antennas.

    The gain from base antenna ``b`` to base antenna ``a`` at time ``t`` is
    entry ``[a, b]`` of :meth:`at`.  Magnitudes are uniform on
    ``[magnitude_min, magnitude_max]`` and phases uniform on ``[0, 2*pi)``,
    independently across links and time.  With ``reciprocal`` set, entry
    ``[a, b]`` equals ``[b, a]``.  Pairs listed in ``absent`` are exactly zero.
    """

    seed: int
    size: int
    magnitude_min: float = 0.5
    magnitude_max: float = 2.0
    reciprocal: bool = False
    absent: frozenset = frozenset()

    def __post_init__(self):
        if not (self.magnitude_min > 0):
            raise ParameterError(f"magnitude_min must be > 0, got {self.magnitude_min}")
        if self.magnitude_max < self.magnitude_min:
            raise ParameterError("magnitude_max must be >= magnitude_min")
        if self.size < 1:
            raise SizeError("a gain process needs at least one antenna")
        if self.reciprocal:
            for a, b in self.absent:
                if (b, a) not in self.absent:
                    raise ParameterError("absent links of a reciprocal process must be symmetric")

    def at(self, t: int) -> np.ndarray:
        """Gain matrix at 1-based time ``t`` (read-only)."""
        return _gain_matrix(self, int(t))

    def block(self, t0: int, count: int) -> np.ndarray:
        """Gains at times ``t0 .. t0+count-1`` stacked on axis 0."""
        return np.stack([self.at(t) for t in range(t0, t0 + count)])


@functools.lru_cache(maxsize=8192)
def _gain_matrix(proc: LinkGainProcess, t: int) -> np.ndarray:
    if t < 1:
        raise ParameterError(f"time indices start at 1, got {t}")
    gen = seeding.rng(proc.seed, seeding.GAINS, t)
    n = proc.size
    mag = gen.uniform(proc.magnitude_min, proc.magnitude_max, (n, n))
    phase = gen.uniform(0.0, 2.0 * np.pi, (n, n))
    h = mag * np.exp(1j * phase)
    if proc.reciprocal:
        upper = np.triu(h, 1)
        h = upper + upper.T + np.diag(np.diag(h))
    for a, b in proc.absent:
        h[a, b] = 0.0
    h.setflags(write=False)
    return h


# --------------------------------------------------------------------------
# Instances
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NetworkInstance:
    """One concrete network: topology, roles, messages and channel process.

    Attributes
    ----------
    kind : Kind
    antenna_counts : tuple of int
        Antennas per node, node order.
    messages : MessageSet
    gains : LinkGainProcess
        The base process.  Antenna-level gains come from :meth:`gain_matrix`.
    reciprocal : bool
    rows, cols : tuple of int
        Base antenna used by each antenna when receiving / transmitting.
    mask : ndarray of bool
        ``mask[a, b]`` is False where the link from antenna ``b`` to antenna
        ``a`` does not exist in this instance.
    transmits, receives : tuple of bool
        Per node; half-duplex roles switch one of them off.
    feedback_edges : frozenset of (int, int)
        ``(a, b)`` means node ``b`` observes node ``a``'s received signal.
    genie_annotations : frozenset of (int, (int, int))
        ``(node, (dest, src))``: node knows message ``W[dest, src]`` a priori.
    roles : tuple of str
    sizes : mapping
        Size parameters the instance was built from, e.g. ``{"K": 3}``.
    """

    kind: Kind
    antenna_counts: tuple[int, ...]
    messages: MessageSet
    gains: LinkGainProcess
    reciprocal: bool
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    mask: np.ndarray
    transmits: tuple[bool, ...]
    receives: tuple[bool, ...]
    feedback_edges: frozenset = frozenset()
    genie_annotations: frozenset = frozenset()
    roles: tuple[str, ...] = ()
    sizes: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        n_ant = sum(self.antenna_counts)
        if any(c < 1 for c in self.antenna_counts):
            raise SizeError("every node needs at least one antenna")
        if len(self.rows) != n_ant or len(self.cols) != n_ant or self.mask.shape != (n_ant, n_ant):
            raise SizeError("layout does not match antenna counts")
        for m in self.messages:
            if not (1 <= m.src <= self.node_count and 1 <= m.dest <= self.node_count):
                raise SizeError(f"message W[{m.dest},{m.src}] references a missing node")
        self.mask.setflags(write=False)

    @property
    def node_count(self) -> int:
        return len(self.antenna_counts)

    @property
    def antenna_total(self) -> int:
        return sum(self.antenna_counts)

    def nodes(self) -> range:
        return range(1, self.node_count + 1)

    def antennas(self, node: int) -> slice:
        """Antenna slice of a 1-based node."""
        start = sum(self.antenna_counts[: node - 1])
        return slice(start, start + self.antenna_counts[node - 1])

    def gain_matrix(self, t: int) -> np.ndarray:
        """Antenna-level gains at time ``t``; entry ``[a, b]`` is b -> a."""
        base = self.gains.at(t)
        h = base[np.ix_(self.rows, self.cols)]
        return np.where(self.mask, h, 0.0)

    def link(self, i: int, j: int, t: int) -> np.ndarray:
        """Gain block ``H[i, j](t)`` from node ``j`` to node ``i``."""
        return self.gain_matrix(t)[self.antennas(i), self.antennas(j)]

    def observable(self, node: int) -> tuple[int, ...]:
        """Nodes whose received signals ``node`` may read, own signal first."""
        own = (node,) if self.receives[node - 1] else ()
        fed = sorted(a for a, b in self.feedback_edges if b == node and a != node)
        return own + tuple(fed)

    def known_messages(self, node: int) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(p for k, p in self.genie_annotations if k == node))

    def replace(self, **changes) -> "NetworkInstance":
        import dataclasses

        return dataclasses.replace(self, **changes)


def _layout(n_ant: int):
    idx = tuple(range(n_ant))
    return idx, idx, np.ones((n_ant, n_ant), dtype=bool)


def _all_pairs(dests: Sequence[int], srcs: Sequence[int]) -> list[tuple[int, int]]:
    return [(d, s) for d in dests for s in srcs if d != s]


def _require(cond: bool, msg: str):
    if not cond:
        raise SizeError(msg)


def sample_instance(
    kind: Kind | str,
    *,
    seed: int = 0,
    reciprocal: bool | None = None,
    magnitude_min: float = 0.5,
    magnitude_max: float = 2.0,
    **sizes: int,
) -> NetworkInstance:
    """Build a network instance of the requested kind.

    Size parameters by kind: ``interference(K)``, ``x_network(S, D)``,
    ``srd(S, R, D)``, ``full_duplex(K)``, ``fd_equivalent(K)``,
    ``parallel_relay(K, R)`` and ``four_node_x(M2=1, M3=1)``.

    ``reciprocal`` defaults to True for the full-duplex kinds and False
    otherwise.  Passing ``reciprocal=False`` for a full-duplex network gives
    the relaxed model in which ``H[i, j]`` and ``H[j, i]`` are independent.
    """
    kind = Kind(kind)
    if not (magnitude_min > 0):
        raise ParameterError(f"magnitude_min must be > 0, got {magnitude_min}")
    if reciprocal is None:
        reciprocal = kind in (Kind.FULL_DUPLEX, Kind.FD_EQUIVALENT)

    def proc(size, absent=frozenset()):
        return LinkGainProcess(seed, size, magnitude_min, magnitude_max, reciprocal, frozenset(absent))

    def need(*names):
        missing = [n for n in names if n not in sizes]
        if missing:
            raise SizeError(f"{kind.value} needs size parameters {', '.join(missing)}")
        return [int(sizes[n]) for n in names]

    if kind is Kind.FD_EQUIVALENT:
        from .transforms import fd_equivalence

        (k,) = need("K")
        base = sample_instance(
            Kind.FULL_DUPLEX, seed=seed, reciprocal=reciprocal,
            magnitude_min=magnitude_min, magnitude_max=magnitude_max, K=k,
        )
        return fd_equivalence(base)

    if kind in (Kind.INTERFERENCE, Kind.X_NETWORK):
        if kind is Kind.INTERFERENCE:
            (k,) = need("K")
            _require(k >= 1, "interference channel needs K >= 1")
            s = d = k
            pairs = [(k + i, i) for i in range(1, k + 1)]
            params = {"K": k}
        else:
            s, d = need("S", "D")
            _require(s >= 1 and d >= 1, "X network needs S, D >= 1")
            pairs = _all_pairs(range(s + 1, s + d + 1), range(1, s + 1))
            params = {"S": s, "D": d}
        n = s + d
        rows, cols, mask = _layout(n)
        return NetworkInstance(
            kind, (1,) * n, MessageSet.from_pairs(pairs), proc(n), reciprocal, rows, cols, mask,
            transmits=(True,) * s + (False,) * d, receives=(False,) * s + (True,) * d,
            roles=("source",) * s + ("destination",) * d, sizes=params,
        )

    if kind is Kind.SRD:
        s, r, d = need("S", "R", "D")
        _require(s >= 1 and d >= 1 and r >= 0, "srd needs S, D >= 1 and R >= 0")
        n = s + r + d
        dests = range(s + r + 1, n + 1)
        pairs = _all_pairs(dests, range(1, s + 1))
        feedback = frozenset((a, b) for a in range(1, n + 1) for b in range(1, s + r + 1) if a != b)
        rows, cols, mask = _layout(n)
        return NetworkInstance(
            kind, (1,) * n, MessageSet.from_pairs(pairs), proc(n), reciprocal, rows, cols, mask,
            transmits=(True,) * n, receives=(True,) * n, feedback_edges=feedback,
            roles=("source",) * s + ("relay",) * r + ("destination",) * d,
            sizes={"S": s, "R": r, "D": d},
        )

    if kind is Kind.FULL_DUPLEX:
        (k,) = need("K")
        _require(k >= 2, "full-duplex network needs K >= 2")
        pairs = _all_pairs(range(1, k + 1), range(1, k + 1))
        rows, cols, mask = _layout(k)
        np.fill_diagonal(mask, False)
        absent = {(a, a) for a in range(k)}
        return NetworkInstance(
            kind, (1,) * k, MessageSet.from_pairs(pairs), proc(k, absent), reciprocal, rows, cols, mask,
            transmits=(True,) * k, receives=(True,) * k, roles=("node",) * k, sizes={"K": k},
        )

    if kind is Kind.PARALLEL_RELAY:
        k, r = need("K", "R")
        _require(k >= 1 and r >= 1, "parallel relay network needs K, R >= 1")
        n = 2 * k + r
        pairs = [(k + r + i, i) for i in range(1, k + 1)]
        absent = {(k + r + a, b) for a in range(k) for b in range(k)}
        rows, cols, mask = _layout(n)
        for a, b in absent:
            mask[a, b] = False
        return NetworkInstance(
            kind, (1,) * n, MessageSet.from_pairs(pairs), proc(n, absent), reciprocal, rows, cols, mask,
            transmits=(True,) * (k + r) + (False,) * k, receives=(False,) * k + (True,) * (r + k),
            roles=("source",) * k + ("relay",) * r + ("destination",) * k, sizes={"K": k, "R": r},
        )

    if kind is Kind.FOUR_NODE_X:
        m2, m3 = int(sizes.get("M2", 1)), int(sizes.get("M3", 1))
        _require(m2 >= 1 and m3 >= 1, "four-node X network needs M2, M3 >= 1")
        counts = (1, m2, m3, 1)
        n = sum(counts)
        rows, cols, mask = _layout(n)
        feedback = frozenset((a, b) for a in range(1, 5) for b in (1, 2) if a != b)
        return NetworkInstance(
            kind, counts, MessageSet.from_pairs([(3, 1), (4, 1), (4, 2)]), proc(n), reciprocal,
            rows, cols, mask, transmits=(True,) * 4, receives=(True,) * 4, feedback_edges=feedback,
            roles=("source", "source", "destination", "destination"), sizes={"M2": m2, "M3": m3},
        )

    raise KindError(f"unsupported kind {kind!r}")  # pragma: no cover


# --------------------------------------------------------------------------
# Symbol extension
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExtendedChannel:
    """A ``mu``-symbol extension of a single-antenna network.

    ``diagonals[a, b]`` holds the ``mu`` consecutive gains of the link
    ``b -> a`` (0-based nodes) at times ``mu*block_index + 1 .. mu*(block_index+1)``.
    Each per-link map is ``diag(diagonals[a, b])``; any two commute.
    """

    mu: int
    block_index: int
    diagonals: np.ndarray

    @property
    def node_count(self) -> int:
        return self.diagonals.shape[0]

    def link(self, i: int, j: int) -> np.ndarray:
        """Diagonal of the map from node ``j`` to node ``i`` (1-based)."""
        return self.diagonals[i - 1, j - 1]

    def matrix(self, i: int, j: int) -> np.ndarray:
        return np.diag(self.link(i, j))

    def with_link(self, i: int, j: int, diagonal: np.ndarray) -> "ExtendedChannel":
        """Copy with one link's diagonal replaced (used to perturb a channel)."""
        d = self.diagonals.copy()
        d[i - 1, j - 1] = diagonal
        return ExtendedChannel(self.mu, self.block_index, d)


def extend_channel(instance: NetworkInstance, mu: int, block_index: int = 0) -> ExtendedChannel:
    if mu < 1:
        raise ParameterError(f"extension length must be >= 1, got {mu}")
    if block_index < 0:
        raise ParameterError(f"block index must be >= 0, got {block_index}")
    if any(c != 1 for c in instance.antenna_counts):
        raise KindError("symbol extension is defined for single-antenna networks")
    t0 = mu * block_index + 1
    gains = np.stack([instance.gain_matrix(t) for t in range(t0, t0 + mu)], axis=-1)
    gains.setflags(write=False)
    return ExtendedChannel(mu, block_index, gains)


# --------------------------------------------------------------------------
# Forward simulation
# --------------------------------------------------------------------------


class EncoderView:
    """What an encoder at ``node`` may see when producing its time-``n`` symbol.

    ``messages`` holds the payloads of the node's own outgoing messages in
    message-set order.  Received histories are reachable only through
    :meth:`history`, which enforces the instance's observation structure.
    """

    def __init__(self, node: int, n: int, antennas: int, messages, observable, histories):
        self.node = node
        self.n = n
        self.antennas = antennas
        self.messages = tuple(messages)
        self.observable = tuple(observable)
        self._histories = histories

    def history(self, node: int) -> np.ndarray:
        """Received signal of ``node`` over times ``1..n-1``, shape ``(n-1, M)``."""
        if node not in self.observable:
            raise CausalityError(f"node {self.node} may not observe node {node}'s received signal")
        return self._histories(node, self.n - 1)

    def local(self) -> np.ndarray:
        """History of the first observable signal (the node's own, if it receives)."""
        if not self.observable:
            raise CausalityError(f"node {self.node} observes no received signal")
        return self.history(self.observable[0])


Encoder = Callable[[int, int, EncoderView], np.ndarray]


@dataclass(frozen=True, eq=False)
class Transcript:
    """All transmitted, received and noise symbols of one block.

    Arrays are ``(N, antennas)``; row ``n-1`` is time ``n``.
    """

    instance: NetworkInstance
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    payloads: Mapping[tuple[int, int], np.ndarray]

    @property
    def N(self) -> int:
        return self.X.shape[0]

    def x(self, node: int) -> np.ndarray:
        return self.X[:, self.instance.antennas(node)]

    def y(self, node: int) -> np.ndarray:
        return self.Y[:, self.instance.antennas(node)]

    def z(self, node: int) -> np.ndarray:
        return self.Z[:, self.instance.antennas(node)]


def message_payload(message: Message, payload_seed: int, length: int) -> np.ndarray:
    """Payload of a (possibly grouped) message: one random block per part."""
    blocks = [seeding.complex_normal(seeding.rng(payload_seed, seeding.PAYLOAD, key), length) for key in message.parts]
    return np.concatenate(blocks) if blocks else np.zeros(0, dtype=complex)


def noise_matrix(instance: NetworkInstance, noise_seed: int | None, N: int) -> np.ndarray:
    """Noise at every antenna, keyed by the base antenna it receives on."""
    z = np.zeros((N, instance.antenna_total), dtype=complex)
    if noise_seed is None:
        return z
    recv = np.zeros(instance.antenna_total, dtype=bool)
    for node in instance.nodes():
        recv[instance.antennas(node)] = instance.receives[node - 1]
    rows = np.asarray(instance.rows)
    for n in range(1, N + 1):
        draw = seeding.complex_normal(seeding.rng(noise_seed, seeding.NOISE, n), instance.gains.size)
        z[n - 1, recv] = draw[rows[recv]]
    return z


def forward_simulate(
    instance: NetworkInstance,
    encoder: Encoder,
    N: int,
    noise_seed: int | None = 0,
    power: float = math.inf,
    *,
    payload_seed: int = 0,
    payload_length: int = 4,
    silent_first_slot: Iterable[int] = (),
    message_filter: Callable[[int], Sequence[Message]] | None = None,
) -> Transcript:
    """Run ``N`` channel uses of ``instance`` driven by ``encoder``.

    ``encoder(node, n, view)`` returns the node's ``M``-antenna symbol for
    time ``n``.  The received signal is accumulated link by link in transmit
    antenna order and the noise added last, so two instances that route the
    same gains through different layouts produce bit-identical outputs.
    ``noise_seed=None`` runs noise-free.

    Raises
    ------
    PowerError
        If a channel use spends more than ``power`` in total.
    CausalityError
        If the encoder reads a history it may not observe.
    """
    if N < 1:
        raise ParameterError("block length N must be >= 1")
    A = instance.antenna_total
    X = np.zeros((N, A), dtype=complex)
    Y = np.zeros((N, A), dtype=complex)
    Z = noise_matrix(instance, noise_seed, N)
    payloads = {m.pair: message_payload(m, payload_seed, payload_length) for m in instance.messages}
    silent = frozenset(silent_first_slot)

    tx_ant = [a for node in instance.nodes() if instance.transmits[node - 1]
              for a in range(A)[instance.antennas(node)]]
    rx_mask = np.zeros(A, dtype=bool)
    for node in instance.nodes():
        rx_mask[instance.antennas(node)] = instance.receives[node - 1]

    def histories(node, upto):
        out = Y[:upto, instance.antennas(node)]
        return out.copy()

    for n in range(1, N + 1):
        for node in instance.nodes():
            if not instance.transmits[node - 1] or (n == 1 and node in silent):
                continue
            own = message_filter(node) if message_filter else instance.messages.outgoing(node)
            view = EncoderView(
                node, n, instance.antenna_counts[node - 1],
                [payloads[m.pair] for m in own], instance.observable(node), histories,
            )
            sym = np.asarray(encoder(node, n, view), dtype=complex).reshape(-1)
            if sym.shape != (instance.antenna_counts[node - 1],):
                raise ParameterError(f"encoder for node {node} returned shape {sym.shape}")
            X[n - 1, instance.antennas(node)] = sym
        used = float(np.sum(np.abs(X[n - 1]) ** 2))
        if used > power:
            raise PowerError(f"channel use {n} spent {used:.6g} > {power:.6g}")
        H = instance.gain_matrix(n)
        acc = np.zeros(A, dtype=complex)
        for b in tx_ant:
            acc = acc + H[:, b] * X[n - 1, b]
        Y[n - 1] = np.where(rx_mask, acc + Z[n - 1], 0.0)
    for arr in (X, Y, Z):
        arr.setflags(write=False)
    return Transcript(instance, X, Y, Z, payloads)


class RandomLinearEncoder:
    """Random causal linear encoder family.

    The symbol of ``node`` at time ``n`` is a random linear mix of its message
    payloads plus, unless ``feedback`` is False, a random linear mix of every
    observable history with coefficients scaled by ``feedback_scale``
    (default ``1/(4N)``) to keep signals bounded.  Coefficients depend only on
    ``(seed, node, n, slot)``, so the same family evaluated twice on the same
    inputs returns bit-identical symbols.
    """

    def __init__(self, seed: int, N: int, *, feedback: bool = True, feedback_scale: float | None = None):
        self.seed = seed
        self.N = N
        self.feedback = feedback
        self.feedback_scale = 1.0 / (4 * N) if feedback_scale is None else feedback_scale

    def __call__(self, node: int, n: int, view: EncoderView) -> np.ndarray:
        x = np.zeros(view.antennas, dtype=complex)
        for slot, payload in enumerate(view.messages):
            if payload.size == 0:
                continue
            coef = seeding.complex_normal(
                seeding.rng(self.seed, seeding.ENCODER, 0, node, n, slot), (view.antennas, payload.size)
            )
            x = x + coef @ payload / np.sqrt(payload.size)
        if self.feedback:
            for pos, other in enumerate(view.observable):
                past = view.history(other).reshape(-1)
                if past.size == 0:
                    continue
                coef = seeding.complex_normal(
                    seeding.rng(self.seed, seeding.ENCODER, 1, node, n, pos), (view.antennas, past.size)
                )
                x = x + self.feedback_scale * (coef @ past)
        return x


def zero_encoder(node: int, n: int, view: EncoderView) -> np.ndarray:
    return np.zeros(view.antennas, dtype=complex)
