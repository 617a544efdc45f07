"""Seeded generators of random admissible inputs for the property and acceptance checks."""

from __future__ import annotations

import random

from .groebner import Ideal, ideal_colon_ideal, ideal_intersect, ideal_member
from .invariants import hilbert_series, profile
from .ring import DEFAULT_CHARACTERISTIC, PolyRing, Polynomial

VARS = "xyzw"


def small_ring(n: int, characteristic: int = DEFAULT_CHARACTERISTIC) -> PolyRing:
    return PolyRing(list(VARS[:n]), characteristic)


def _monomial(ring, exps) -> Polynomial:
    return ring.from_terms([(1, tuple(exps))])


def random_monomial(rng: random.Random, ring: PolyRing, degree: int, support=None) -> Polynomial:
    support = list(range(ring.n)) if support is None else list(support)
    exps = [0] * ring.n
    for _ in range(degree):
        exps[rng.choice(support)] += 1
    return _monomial(ring, exps)


def random_form(rng: random.Random, ring: PolyRing, degree: int, density: float = 1.0) -> Polynomial:
    """Homogeneous form of the given degree with random coefficients (never zero)."""
    while True:
        terms = {}
        for _ in range(max(1, round(density * (degree + 1) * ring.n))):
            m = random_monomial(rng, ring, degree)
            terms[m.terms[0][1]] = rng.randrange(1, ring.p)
        f = ring.from_terms((c, e) for e, c in terms.items())
        if f:
            return f


def random_linear_form(rng: random.Random, ring: PolyRing) -> Polynomial:
    return ring.from_terms((rng.randrange(1, ring.p), tuple(int(i == j) for i in range(ring.n)))
                           for j in range(ring.n))


def _blocks(rng: random.Random, n: int, g: int) -> list[list[int]]:
    """g disjoint nonempty blocks of variable indices from range(n)."""
    used = rng.sample(range(n), rng.randint(g, n))
    blocks = [[v] for v in used[:g]]
    for v in used[g:]:
        rng.choice(blocks).append(v)
    return blocks


def monomial_ci(rng: random.Random, ring: PolyRing, degrees) -> tuple[Ideal, list[list[int]]]:
    """Monomials of the given degrees with pairwise disjoint supports."""
    blocks = _blocks(rng, ring.n, len(degrees))
    gens = []
    for d, block in zip(degrees, blocks):
        while True:
            m = random_monomial(rng, ring, d, block)
            if len(m.variables_used()) <= d:
                break
        gens.append(m)
    # keep only variables that actually occur, so zero-divisor choices stay valid
    blocks = [[i for i in range(ring.n) if g.terms[0][1][i]] for g in gens]
    return Ideal(ring, gens), blocks


def monomial_ci_sample(rng: random.Random) -> tuple[Ideal, list[int]]:
    """Monomial complete intersection with g in [1,4], degrees in [2,5]."""
    g = rng.randint(1, 4)
    n = min(4, g + rng.randint(0, 2))
    ring = small_ring(max(n, g))
    degrees = [rng.randint(2, 5) for _ in range(g)]
    G, _ = monomial_ci(rng, ring, degrees)
    return G, degrees


# -- admissible (J, F) pairs -----------------------------------------------------------


def _admissible(J: Ideal, F: Polynomial) -> bool:
    if not F or ideal_member(F, J):
        return False
    I = J + F
    if hilbert_series(I).multiplicity() == 0:
        return False
    return profile(I).height == profile(J).height


def bound_pair(rng: random.Random, kind: str | None = None) -> tuple[Ideal, Polynomial, str]:
    """Random complete intersection J and form F with ht(J + (F)) = ht J.

    Kinds: ``monomial`` (monomial CI, F a monomial through one of its blocks),
    ``dense`` (generic forms of full height in at most 3 variables, any F),
    ``product`` (J = (u_i v_i), F = u_1 w).
    """
    kind = kind or rng.choice(["monomial", "dense", "product"])
    for _ in range(50):
        if kind == "monomial":
            n = rng.randint(2, 4)
            g = rng.randint(1, n)
            ring = small_ring(n)
            J, blocks = monomial_ci(rng, ring, [rng.randint(1, 4) for _ in range(g)])
            v = rng.choice(rng.choice(blocks))
            d = rng.randint(1, 4)
            F = random_monomial(rng, ring, d - 1) * ring.var(v)
        elif kind == "dense":
            n = rng.randint(2, 3)
            ring = small_ring(n)
            J = Ideal(ring, [random_form(rng, ring, rng.randint(1, 3)) for _ in range(n)])
            F = random_form(rng, ring, rng.randint(1, 4), density=rng.choice([0.3, 1.0]))
        elif kind == "product":
            n = rng.randint(2, 4)
            g = rng.randint(1, min(n, 3))
            ring = small_ring(n)
            us = [random_form(rng, ring, rng.randint(1, 2), 0.5) for _ in range(g)]
            vs = [random_form(rng, ring, rng.randint(1, 2), 0.5) for _ in range(g)]
            J = Ideal(ring, [u * v for u, v in zip(us, vs)])
            F = us[0] * random_form(rng, ring, rng.randint(0, 4 - us[0].degree()), 0.5) \
                if us[0].degree() < 4 else us[0]
        else:
            raise ValueError(f"unknown kind {kind!r}")
        if F.degree() > 4 or hilbert_series(J).multiplicity() == 0:
            continue
        if profile(J).height != len(J.generators):
            continue
        if _admissible(J, F):
            return J, F, kind
    raise RuntimeError(f"could not generate an admissible {kind} pair")


# -- linkage pairs --------------------------------------------------------------------


def random_ci(rng: random.Random, ring: PolyRing, g: int) -> Ideal:
    """Complete intersection of g products of random linear forms (degrees 2 or 3)."""
    while True:
        gens = []
        for _ in range(g):
            f = ring.one()
            for _ in range(rng.randint(2, 3)):
                f = f * random_linear_form(rng, ring)
            gens.append(f)
        G = Ideal(ring, gens)
        if profile(G).height == g:
            return G


def link_pair(rng: random.Random) -> tuple[Ideal, Ideal]:
    """CI G and an ideal I ⊇ G of the same height, sometimes with embedded components."""
    while True:
        n = rng.randint(3, 4)
        ring = small_ring(n)
        g = rng.randint(1, 2)
        G = random_ci(rng, ring, g)
        # G : K is unmixed of height g whenever it is proper
        K = Ideal(ring, [random_linear_form(rng, ring) if rng.random() < 0.5
                         else random_monomial(rng, ring, rng.randint(1, 2))
                         for _ in range(rng.randint(1, 2))])
        I = ideal_colon_ideal(G, K)
        if I.is_unit():
            continue
        if rng.random() < 0.5:
            # add a component of larger height through G
            M = G + Ideal(ring, [random_linear_form(rng, ring) for _ in range(g + 1)])
            if not M.is_unit():
                I = ideal_intersect(I, M)
        if profile(I).height == g:
            return G, I


# -- quasi-Gorenstein inputs ------------------------------------------------------------


def qg_pair(rng: random.Random) -> tuple[Ideal, Polynomial]:
    """Monomial complete intersection G and a monomial zero-divisor h outside G."""
    while True:
        n = rng.randint(2, 4)
        g = rng.randint(1, n)
        ring = small_ring(n)
        G, blocks = monomial_ci(rng, ring, [rng.randint(1, 4) for _ in range(g)])
        v = rng.choice(rng.choice(blocks))
        h = random_monomial(rng, ring, rng.randint(0, 2)) * ring.var(v)
        if not ideal_member(h, G):
            return G, h


# -- m-primary ideals ---------------------------------------------------------------------


def mprimary_ideal(rng: random.Random) -> Ideal:
    """Minimally generated homogeneous ideal primary to the maximal ideal, in <= 3 variables."""
    while True:
        n = rng.randint(1, 3)
        ring = small_ring(n)
        if rng.random() < 0.6:
            gens = [ring.var(i) ** rng.randint(1, 4) for i in range(n)]
            gens += [random_monomial(rng, ring, rng.randint(2, 4)) for _ in range(rng.randint(0, 3))]
        else:
            gens = [random_form(rng, ring, rng.randint(1, 3), 0.6) for _ in range(n)]
            gens += [random_form(rng, ring, rng.randint(2, 3), 0.4) for _ in range(rng.randint(0, 2))]
        I = Ideal(ring, gens)
        if I.is_unit() or profile(I).dim != 0:
            continue
        return I.minimalized()
