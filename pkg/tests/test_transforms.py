import numpy as np
import pytest

from doflab.errors import EmptyMessagesError, InvalidFocusError, KindError, SizeError
from doflab.network import Kind, RandomLinearEncoder, sample_instance
from doflab.transforms import (collapse_groups, cooperation_collapse, dual_simulate, fd_equivalence,
                               null_messages)


def test_fd_equivalence_k2():
    eq = fd_equivalence(sample_instance("full_duplex", K=2, seed=0))
    assert eq.node_count == 4
    assert set(eq.messages.pairs()) == {(4, 1), (3, 2)}
    assert eq.known_messages(3) == ((4, 1),)
    assert eq.known_messages(4) == ((3, 2),)
    assert eq.feedback_edges == {(3, 1), (4, 2)}


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_fd_equivalence_gains(k):
    fd = sample_instance("full_duplex", K=k, seed=k)
    eq = fd_equivalence(fd)
    for t in (1, 7):
        h, he = fd.gain_matrix(t), eq.gain_matrix(t)
        assert np.array_equal(he[k:, :k], h)
        assert np.all(he[:k, :] == 0) and np.all(he[:, k:] == 0)
    assert eq.transmits == (True,) * k + (False,) * k
    assert eq.receives == (False,) * k + (True,) * k


def test_fd_equivalence_requires_full_duplex():
    with pytest.raises(KindError):
        fd_equivalence(sample_instance("x_network", S=2, D=2))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_dual_simulation_bit_identical(k):
    for s in range(3):
        same, dx, dy = dual_simulate(sample_instance("full_duplex", K=k, seed=s), RandomLinearEncoder(s, 20), 20,
                                     noise_seed=s, payload_seed=s)
        assert same and dx == 0.0 and dy == 0.0


def test_collapse_fd_k4():
    eq = fd_equivalence(sample_instance("full_duplex", K=4, seed=9))
    c = cooperation_collapse(eq, 1, 4)
    assert c.kind is Kind.FOUR_NODE_X
    assert c.antenna_counts == (1, 3, 3, 1)
    assert collapse_groups(eq, 1, 4) == ([1], [2, 3, 4], [5, 6, 7], [8])
    base = eq.gain_matrix(2)
    h = c.gain_matrix(2)
    # rows 1..3 of node 3 are destinations 5,6,7; node 2 columns are sources 2,3,4
    block = h[4:7, 1:4]
    assert np.array_equal(block, base[np.ix_([4, 5, 6], [1, 2, 3])])
    # zero exactly where a destination sits at the same original node as a source
    assert [tuple(z) for z in np.argwhere(block == 0)] == [(1, 0), (2, 1)]
    assert h[7, 3] == 0 and h[7, 0] != 0
    assert c.known_messages(3) == ((4, 2),)


def test_collapse_fd_message_grouping():
    eq = fd_equivalence(sample_instance("full_duplex", K=3, seed=1))
    c = cooperation_collapse(eq, 1, 3)
    parts = {m.pair: len(m.parts) for m in c.messages}
    assert parts == {(3, 1): 1, (4, 1): 1, (4, 2): 1}


def test_collapse_srd():
    inst = sample_instance("srd", S=2, R=1, D=3, seed=0)
    c = cooperation_collapse(inst, 1, 4)
    assert c.antenna_counts == (1, 2, 2, 1)
    assert {m.pair: len(m.parts) for m in c.messages} == {(3, 1): 2, (4, 1): 1, (4, 2): 1}


def test_collapse_errors():
    eq = fd_equivalence(sample_instance("full_duplex", K=3, seed=1))
    with pytest.raises(InvalidFocusError):
        cooperation_collapse(eq, 2, 2)
    with pytest.raises(InvalidFocusError):
        cooperation_collapse(eq, 0, 2)
    with pytest.raises(SizeError):
        cooperation_collapse(sample_instance("srd", S=1, R=0, D=2), 1, 2)
    with pytest.raises(InvalidFocusError):
        cooperation_collapse(sample_instance("srd", S=2, R=0, D=2), 3, 4)
    with pytest.raises(KindError):
        cooperation_collapse(sample_instance("full_duplex", K=3), 1, 2)


def test_null_messages():
    eq = fd_equivalence(sample_instance("full_duplex", K=3, seed=1))
    kept = null_messages(eq, lambda d, s: s == 1)
    assert set(kept.messages.pairs()) == {(5, 1), (6, 1)}
    assert all(p in kept.messages for _, p in kept.genie_annotations)
    assert np.array_equal(kept.gain_matrix(3), eq.gain_matrix(3))
    with pytest.raises(EmptyMessagesError):
        null_messages(eq, lambda d, s: False)
