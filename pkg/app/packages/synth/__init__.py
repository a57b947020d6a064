"""Seeded synthetic instances following the Bernoulli-Gaussian model."""

from .generator import corrupt_pattern, gen_coeffs, gen_dictionary, gen_training_set
from .seeding import derive_seed, stream

__all__ = [
    "corrupt_pattern",
    "derive_seed",
    "gen_coeffs",
    "gen_dictionary",
    "gen_training_set",
    "stream",
]
