"""Simultaneous computation of e^A, e^B and the coupling block of
exp([[A, E], [0, B]]) by scaling and squaring with diagonal Pade
approximants, plus a Schur-Frechet baseline and arbitrary-precision
reference implementations."""

from ._core import (
    ExpmError,
    derive_thresholds,
    expm,
    expm_block_tri,
    expm_oracle,
    kl_frechet,
    lexp_oracle,
    phi_combination,
)

__all__ = [
    "ExpmError",
    "derive_thresholds",
    "expm",
    "expm_block_tri",
    "expm_oracle",
    "kl_frechet",
    "lexp_oracle",
    "phi_combination",
]
