from .seeding import derive_seed, make_rng, MAX_SEED

__all__ = ['derive_seed', 'make_rng', 'MAX_SEED']
