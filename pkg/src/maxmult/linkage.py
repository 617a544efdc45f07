"""Links by complete intersections and unmixed parts."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import (
    Ideal,
    ideal_colon_ideal,
    ideal_contains,
    ideal_equal,
)
from .invariants import hilbert_series, profile
from .reduction import DEFAULT_SEED, _GOLDEN, _U64, _random_coeffs, _rng
from .ring import Polynomial

MAX_CI_ATTEMPTS = 8


class LinkageError(ValueError):
    pass


def _mult(I: Ideal) -> int:
    # e(R/R) = 0, which keeps e(I) + e(G:I) = e(G) meaningful when G = I
    return hilbert_series(I).multiplicity()


def is_complete_intersection(G: Ideal) -> bool:
    """Homogeneous ``G`` whose generator count equals its height."""
    if G.is_zero() or not G.is_homogeneous():
        return False
    if hilbert_series(G).multiplicity() == 0:
        return False
    return len(G.generators) == profile(G).height


@dataclass(frozen=True)
class LinkRecord:
    G: Ideal
    I: Ideal
    L: Ideal
    unmixed: Ideal
    e_G: int
    e_I_un: int
    e_L: int

    @property
    def identity_holds(self) -> bool:
        return self.e_I_un + self.e_L == self.e_G

    def as_dict(self) -> dict:
        return {"G": [str(f) for f in self.G.generators],
                "I": [str(f) for f in self.I.generators],
                "L": [str(f) for f in self.L.generators],
                "unmixedPart": [str(f) for f in self.unmixed.generators],
                "e_G": self.e_G, "e_I_un": self.e_I_un, "e_L": self.e_L,
                "identityHolds": self.identity_holds}


def _random_form(ring, degree, rng):
    """Product of ``degree`` random linear forms."""
    out = ring.one()
    for _ in range(degree):
        cs = _random_coeffs(rng, ring.n, ring.p)
        out = out * ring.from_terms((int(c), tuple(int(i == j) for i in range(ring.n)))
                                    for j, c in enumerate(cs))
    return out


def find_ci_inside(I: Ideal, seed: int = DEFAULT_SEED) -> Ideal:
    """A complete intersection ``G ⊆ I`` with ``ht G = ht I``.

    The i-th element of ``G`` is a random combination of the generators of
    ``I`` in the i-th smallest generator degree.  Later attempts also bring in
    lower-degree generators multiplied up by random forms.
    """
    if not I.is_homogeneous():
        raise LinkageError("need a homogeneous ideal")
    g = profile(I).height
    ring = I.ring
    if g == 0:
        return Ideal(ring, [])
    gens = sorted(I.generators, key=lambda f: f.degree())
    if len(gens) == g and is_complete_intersection(Ideal(ring, gens)):
        return Ideal(ring, gens)
    targets = [f.degree() for f in gens[:g]]
    for attempt in range(MAX_CI_ATTEMPTS):
        rng = _rng((seed + attempt * _GOLDEN) & _U64)
        elements = []
        for D in targets:
            elt = ring.zero()
            for f in gens:
                df = f.degree()
                if df == D:
                    elt = elt + f.scale(int(_random_coeffs(rng, 1, ring.p)[0]))
                elif df < D and attempt > 0:
                    elt = elt + f * _random_form(ring, D - df, rng)
            elements.append(elt)
        if any(not e for e in elements):
            continue
        G = Ideal(ring, elements)
        if profile(G).height == g:
            return G
    raise LinkageError(f"no complete intersection of height {g} found inside {I}")


def link(G: Ideal, I: Ideal) -> LinkRecord:
    """``L = G : I`` together with the multiplicity bookkeeping of the link."""
    if G.ring != I.ring:
        raise LinkageError("G and I live in different rings")
    if not is_complete_intersection(G):
        raise LinkageError(f"G = {G} is not a complete intersection")
    if not ideal_contains(I, G):
        raise LinkageError("G is not contained in I")
    hG = profile(G).height
    if profile(I).height != hG:
        raise LinkageError("G and I have different heights")
    L = ideal_colon_ideal(G, I)
    un = ideal_colon_ideal(G, L)
    return LinkRecord(G, I, L, un, _mult(G), _mult(un), _mult(L))


def unmixed_part(I: Ideal, G: Ideal | None = None, seed: int = DEFAULT_SEED) -> Ideal:
    """Intersection of the minimal-height primary components, as ``G : (G : I)``."""
    pr = profile(I)
    if pr.dim == 0:
        return Ideal(I.ring, I.gb())
    if G is None:
        G = find_ci_inside(I, seed)
    elif not (is_complete_intersection(G) and ideal_contains(I, G)
              and profile(G).height == pr.height):
        raise LinkageError("supplied G is not a full-height complete intersection inside I")
    if G.is_zero():
        return Ideal(I.ring, [])
    return ideal_colon_ideal(G, ideal_colon_ideal(G, I))


def is_unmixed(I: Ideal, G: Ideal | None = None, seed: int = DEFAULT_SEED) -> bool:
    return ideal_equal(I, unmixed_part(I, G, seed))


def linear_forms_of(I: Ideal) -> list[Polynomial]:
    """Basis of the degree-one part of a homogeneous ideal, largest lead first."""
    lin = [f for f in I.gb() if f.degree() == 1]
    return sorted(lin, key=lambda f: f.lead_monomial, reverse=True)
