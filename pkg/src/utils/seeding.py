"""
Deterministic sub-seed derivation.

Every random stream in coopgraph is keyed by a tuple such as
(master seed, experiment name, point index, replicate index). The tuple is
hashed with BLAKE2b into an unsigned 64-bit integer, so results never depend
on the order in which jobs are scheduled.
"""
import hashlib
import logging
from typing import Union

import numpy as np

logger = logging.getLogger(__name__)

SeedPart = Union[int, str, float]

MAX_SEED = 2 ** 64


def derive_seed(*parts: SeedPart) -> int:
    """Hash the given parts into a 64-bit seed"""
    digest = hashlib.blake2b(digest_size=8)
    for part in parts:
        digest.update(type(part).__name__.encode('ascii'))
        digest.update(b'\x1f')
        digest.update(repr(part).encode('utf-8'))
        digest.update(b'\x1e')
    return int.from_bytes(digest.digest(), 'little')


def make_rng(*parts: SeedPart) -> np.random.Generator:
    """numpy Generator seeded from a single seed or a derivation tuple"""
    if len(parts) == 1 and isinstance(parts[0], int):
        return np.random.default_rng(parts[0] % MAX_SEED)
    return np.random.default_rng(derive_seed(*parts))
