"""Deterministic seed derivation shared by every stochastic component."""

import hashlib

import numpy as np

_MASK63 = (1 << 63) - 1


def derive_seed(*keys) -> int:
    """Map a tuple of ints/strings to a stable 63-bit seed.

    Stable across processes and platforms (unlike hash()), so every derived
    stream is reproducible from the one top-level seed.
    """
    text = "/".join(str(k) for k in keys)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") & _MASK63


def generator(*keys) -> np.random.Generator:
    """Independent RNG stream keyed by (seed, labels...)."""
    return np.random.default_rng(derive_seed(*keys))
