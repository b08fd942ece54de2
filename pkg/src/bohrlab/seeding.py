"""Deterministic seed derivation for parallel-safe reproducibility.

Every stochastic routine in the package takes an explicit 64-bit root seed.
Sub-tasks (restarts, corpus members, grid points) derive their own seed by
hashing (root seed, task path), so results do not depend on scheduling or
worker count.  Generators are counter-based (Philox).
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def derive_seed(root_seed: int, *path) -> int:
    """Derive a 64-bit seed from a root seed and a task path.

    Path components may be strings, ints or floats; they are rendered into
    a canonical byte string and hashed with SHA-256.
    """
    h = hashlib.sha256()
    h.update(str(int(root_seed) & MASK64).encode())
    for part in path:
        h.update(b"/")
        if isinstance(part, float):
            part = repr(part)
        h.update(str(part).encode())
    return int.from_bytes(h.digest()[:8], "little")


def generator(root_seed: int, *path) -> np.random.Generator:
    """A Philox generator keyed by ``derive_seed(root_seed, *path)``."""
    return np.random.Generator(np.random.Philox(key=derive_seed(root_seed, *path)))
