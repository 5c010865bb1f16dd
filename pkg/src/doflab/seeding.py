"""Counter-based seed derivation.

Every random quantity in doflab is drawn from a generator keyed by
``(root seed, purpose, *counters)``.  Keys are fed to
:class:`numpy.random.SeedSequence`, so a value depends only on its own key and
never on how many other values were drawn before it.  Rerunning a single
trial therefore reproduces exactly what the full run produced for it.
"""

from __future__ import annotations

import numpy as np

# Purpose tags.  Values are part of the reproducibility contract: never reuse.
GAINS = 1
NOISE = 2
PAYLOAD = 3
BEAMFORM = 4
ENCODER = 5
TRIAL = 6

_MASK64 = (1 << 64) - 1


def _key(seed: int, purpose: int, counters) -> list[int]:
    if seed < 0:
        raise ValueError(f"seeds must be nonnegative, got {seed}")
    # SeedSequence takes 32-bit words; split the 64-bit seed explicitly.
    seed &= _MASK64
    return [seed & 0xFFFFFFFF, seed >> 32, purpose, *(int(c) for c in counters)]


def rng(seed: int, purpose: int, *counters: int) -> np.random.Generator:
    """Return a fresh generator for the given key."""
    return np.random.default_rng(np.random.SeedSequence(_key(seed, purpose, counters)))


def derive_seed(seed: int, purpose: int, *counters: int) -> int:
    """Derive a 64-bit child seed, e.g. the seed of trial ``t``."""
    words = np.random.SeedSequence(_key(seed, purpose, counters)).generate_state(2, np.uint32)
    return int(words[0]) | (int(words[1]) << 32)


def complex_normal(gen: np.random.Generator, shape) -> np.ndarray:
    """Circularly symmetric complex Gaussian samples with unit variance."""
    z = gen.standard_normal(tuple(np.atleast_1d(shape)) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)
