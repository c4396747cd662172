"""Pseudocodeword-based decoding of hexagonal color codes on the torus."""

from .decoder import DecodeOutcome, Decoder, Stage, Status, decode, is_logical_success
from .lattice import Color, TorusLattice, build

__all__ = [
    "Color",
    "DecodeOutcome",
    "Decoder",
    "Stage",
    "Status",
    "TorusLattice",
    "build",
    "decode",
    "is_logical_success",
]
