"""Instance-to-instance reductions used by the converse arguments.

All transforms are structural: they re-index the antennas of an instance and
regroup its messages, but always read gains from the original
:class:`~doflab.network.LinkGainProcess`.  Gains of a derived instance are
therefore equal, bit for bit, to the original gains they stand for.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import EmptyMessagesError, InvalidFocusError, KindError, SizeError
from .network import Kind, Message, MessageSet, NetworkInstance


def fd_equivalence(instance: NetworkInstance) -> NetworkInstance:
    """Split a K-node full-duplex network into K sources and K destinations.

    Source ``i`` (label ``i``) transmits what node ``i`` transmitted;
    destination ``K+i`` receives what node ``i`` received, with the same gains
    and the same noise.  The original message ``W[j, i]`` becomes
    ``W[K+j, i]``.  Destination ``K+j`` is told every message sourced at
    node ``j`` (genie annotation) and feeds its received signal back to
    source ``j``.
    """
    if instance.kind is not Kind.FULL_DUPLEX:
        raise KindError(f"fd_equivalence needs a full_duplex instance, got {instance.kind.value}")
    k = instance.node_count
    rows = tuple(instance.rows) * 2
    cols = tuple(instance.cols) * 2
    mask = np.zeros((2 * k, 2 * k), dtype=bool)
    mask[k:, :k] = instance.mask
    messages = MessageSet(tuple(Message(k + m.dest, m.src, m.parts) for m in instance.messages))
    genie = frozenset(
        (k + j, (k + m.dest, m.src)) for j in range(1, k + 1) for m in instance.messages if m.src == j
    )
    feedback = frozenset((k + i, i) for i in range(1, k + 1))
    return NetworkInstance(
        Kind.FD_EQUIVALENT, (1,) * (2 * k), messages, instance.gains, instance.reciprocal,
        rows, cols, mask,
        transmits=(True,) * k + (False,) * k, receives=(False,) * k + (True,) * k,
        feedback_edges=feedback, genie_annotations=genie,
        roles=("source",) * k + ("destination",) * k, sizes={"K": k},
    )


def _grouped(instance: NetworkInstance, dests, srcs) -> tuple[int, ...]:
    parts: list[int] = []
    for d in dests:
        for s in srcs:
            if (d, s) in instance.messages:
                parts.extend(instance.messages.get(d, s).parts)
    return tuple(parts)


def _collapse(instance, groups, messages, transmits, receives, feedback, genie=frozenset()):
    order = [a for g in groups for node in g for a in range(instance.antenna_total)[instance.antennas(node)]]
    counts = tuple(sum(instance.antenna_counts[n - 1] for n in g) for g in groups)
    entries = tuple(Message(d, s, parts) for (d, s), parts in messages if parts)
    if not entries:
        raise EmptyMessagesError("collapse leaves no messages")
    return NetworkInstance(
        Kind.FOUR_NODE_X, counts, MessageSet(entries), instance.gains, instance.reciprocal,
        tuple(instance.rows[a] for a in order), tuple(instance.cols[a] for a in order),
        instance.mask[np.ix_(order, order)].copy(),
        transmits=transmits, receives=receives, feedback_edges=feedback, genie_annotations=genie,
        roles=("source", "source", "destination", "destination"),
        sizes={"M2": counts[1], "M3": counts[2]},
    )


def collapse_groups(instance: NetworkInstance, p: int, q: int) -> tuple[list[int], ...]:
    """Original node labels stacked into the four collapsed nodes, in order."""
    if instance.kind is Kind.SRD:
        s, r, d = instance.sizes["S"], instance.sizes["R"], instance.sizes["D"]
        if not 1 <= p <= s:
            raise InvalidFocusError(f"focus source {p} is not a source (1..{s})")
        if not s + r < q <= s + r + d:
            raise InvalidFocusError(f"focus destination {q} is not a destination ({s + r + 1}..{s + r + d})")
        if s + r < 2 or d < 2:
            raise SizeError("collapse needs S + R >= 2 and D >= 2 so every group has an antenna")
        return (
            [p],
            [j for j in range(1, s + 1) if j != p] + list(range(s + 1, s + r + 1)),
            [i for i in range(s + r + 1, s + r + d + 1) if i != q],
            [q],
        )
    if instance.kind is Kind.FD_EQUIVALENT:
        k = instance.sizes["K"]
        if not (1 <= p <= k and 1 <= q <= k):
            raise InvalidFocusError(f"focus nodes must lie in 1..{k}")
        if p == q:
            raise InvalidFocusError("p == q leaves no direct gain from node 1 to node 4")
        return (
            [p],
            [j for j in range(1, k + 1) if j != p],
            [k + i for i in range(1, k + 1) if i != q],
            [k + q],
        )
    raise KindError(f"cooperation_collapse needs an srd or fd_equivalent instance, got {instance.kind.value}")


def cooperation_collapse(instance: NetworkInstance, p: int, q: int) -> NetworkInstance:
    """Let all nodes except source ``p`` and destination ``q`` cooperate.

    For an ``srd`` instance ``p`` is a source label and ``q`` a destination
    label.  For an ``fd_equivalent`` instance both are original full-duplex
    node indices (``q`` is destination ``K+q``) and must differ.

    The result is a four-node X network: node 1 is source ``p``; node 2
    stacks the other sources and then the relays; node 3 stacks the other
    destinations; node 4 is destination ``q``.  Its messages are
    ``W[3,1]`` (``p`` to the node-3 destinations, grouped), ``W[4,1]`` and
    ``W[4,2]`` (the other sources to ``q``, grouped).
    """
    g1, g2, g3, g4 = groups = collapse_groups(instance, p, q)
    messages = [
        ((3, 1), _grouped(instance, g3, g1)),
        ((4, 1), _grouped(instance, g4, g1)),
        ((4, 2), _grouped(instance, g4, g2)),
    ]
    if instance.kind is Kind.SRD:
        return _collapse(
            instance, groups, messages, (True,) * 4, (True,) * 4,
            frozenset((a, b) for a in range(1, 5) for b in (1, 2) if a != b),
        )
    return _collapse(
        instance, groups, messages, (True, True, False, False), (False, False, True, True),
        frozenset((a, b) for a in (3, 4) for b in (1, 2)),
        genie=frozenset({(3, (4, 2))}),
    )


def null_messages(instance: NetworkInstance, keep: Callable[[int, int], bool]) -> NetworkInstance:
    """Drop every message ``W[dest, src]`` for which ``keep(dest, src)`` is false.

    Gains, layout and roles are untouched; genie annotations about dropped
    messages are removed.
    """
    kept = tuple(m for m in instance.messages if keep(m.dest, m.src))
    if not kept:
        raise EmptyMessagesError("nulling removed every message")
    pairs = {m.pair for m in kept}
    genie = frozenset(g for g in instance.genie_annotations if g[1] in pairs)
    return instance.replace(messages=MessageSet(kept), genie_annotations=genie)


def dual_simulate(instance: NetworkInstance, encoder, N: int, *, noise_seed: int | None = 0,
                  payload_seed: int = 0) -> tuple[bool, float, float]:
    """Run a full-duplex instance and its equivalent image side by side.

    Node ``i`` is compared with source ``i`` for transmitted symbols and
    with destination ``K+i`` for received symbols.  Returns
    ``(bit_identical, max |dX|, max |dY|)``.
    """
    from .network import forward_simulate

    image = fd_equivalence(instance)
    k = instance.node_count
    a = forward_simulate(instance, encoder, N, noise_seed, payload_seed=payload_seed)
    b = forward_simulate(image, encoder, N, noise_seed, payload_seed=payload_seed)
    xa = np.hstack([a.x(i) for i in range(1, k + 1)])
    xb = np.hstack([b.x(i) for i in range(1, k + 1)])
    ya = np.hstack([a.y(i) for i in range(1, k + 1)])
    yb = np.hstack([b.y(k + i) for i in range(1, k + 1)])
    same = np.array_equal(xa, xb) and np.array_equal(ya, yb)
    return same, float(np.abs(xa - xb).max()), float(np.abs(ya - yb).max())
