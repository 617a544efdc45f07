"""Multiplicity bounds for decompositions I = J + (F) of homogeneous ideals."""

from .groebner import (
    Ideal,
    ResourceError,
    budget,
    ideal,
    ideal_colon,
    ideal_colon_ideal,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    load_ideal,
    make_ring,
    normal_form,
    parse_ideal,
)
from .invariants import hilbert_series, profile
from .ring import Polynomial, PolyRing

__version__ = "0.1.0"

__all__ = [
    "Ideal", "Polynomial", "PolyRing", "ResourceError", "budget", "hilbert_series", "ideal",
    "ideal_colon", "ideal_colon_ideal", "ideal_equal", "ideal_intersect", "ideal_member",
    "load_ideal", "make_ring", "normal_form", "parse_ideal", "profile",
]
