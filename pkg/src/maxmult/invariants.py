"""Hilbert series, dimension, height and multiplicity of R/I."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import Ideal
from .ring import PolyRing


class NotHomogeneous(ValueError):
    pass


class UnitIdeal(ValueError):
    pass


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)**dimension`` with ``numerator(1) != 0``."""

    numerator: tuple[int, ...]
    dimension: int

    def __post_init__(self):
        if any(self.numerator) and sum(self.numerator) == 0:
            raise ValueError("numerator vanishes at t = 1; series not reduced")

    def multiplicity(self) -> int:
        return sum(self.numerator)

    def coefficient(self, i: int) -> int:
        """Value of the Hilbert function in degree ``i``."""
        if i < 0:
            return 0
        d = self.dimension
        total = 0
        for j, h in enumerate(self.numerator):
            if j > i:
                break
            total += h * _binom(i - j + d - 1, d - 1) if d > 0 else (h if j == i else 0)
        return total

    def hilbert_function(self, upto: int) -> list[int]:
        return [self.coefficient(i) for i in range(upto + 1)]

    def __str__(self):
        num = " + ".join(f"{c}*t^{i}" for i, c in enumerate(self.numerator) if c) or "0"
        return f"({num}) / (1-t)^{self.dimension}"


def _binom(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    from math import comb
    return comb(a, b)


@dataclass(frozen=True)
class IdealProfile:
    dim: int
    height: int
    multiplicity: int
    is_homogeneous: bool
    nvars: int

    def as_dict(self) -> dict:
        return {"dim": self.dim, "height": self.height, "multiplicity": self.multiplicity,
                "isHomogeneous": self.is_homogeneous}


# -- monomial ideals --------------------------------------------------------------


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> list[tuple[int, ...]]:
    """Minimal generators of a monomial ideal given by exponent tuples."""
    out: list[tuple[int, ...]] = []
    for m in sorted(set(gens), key=sum):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def initial_ideal(I: Ideal) -> list[tuple[int, ...]]:
    """Minimal generators of the lead-term ideal, as exponent tuples."""
    return minimalize(f.lead_exponents() for f in I.gb())


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _shift(a, k):
    return [0] * k + list(a)


def _one_minus_t_power(d):
    out = [0] * (d + 1)
    out[0] = 1
    out[d] -= 1
    return out


def _pivot_numerator(gens: list[tuple[int, ...]]) -> list[int]:
    """K(t) with HS(R/M) = K(t) / (1 - t)^n, by recursive pivot splitting.

    Uses ``HS(R/M) = HS(R/(M + p)) + t^deg(p) HS(R/(M : p))`` for a pure
    power pivot ``p``, stopping when the generators have pairwise disjoint
    supports.
    """
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    if max(counts) <= 1:
        out = [1]
        for g in gens:
            out = _poly_mul(out, _one_minus_t_power(sum(g)))
        return out
    var = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var])
    k = exps[(len(exps) - 1) // 2]
    pivot = tuple(k if i == var else 0 for i in range(n))
    plus = minimalize([g for g in gens if not _divides(pivot, g)] + [pivot])
    colon = minimalize(tuple(e - k if i == var else e for i, e in enumerate(g)) if g[var] >= k
                       else tuple(0 if i == var else e for i, e in enumerate(g)) for g in gens)
    return _poly_add(_pivot_numerator(plus), _shift(_pivot_numerator(colon), k))


def monomial_hilbert_series(gens, nvars: int) -> HilbertSeries:
    num = _pivot_numerator(minimalize(gens))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if not any(num):
        return HilbertSeries((0,), nvars)  # unit ideal
    d = nvars
    # divide by (1 - t) while the numerator vanishes at 1
    while d > 0 and sum(num) == 0:
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        d -= 1
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return HilbertSeries(tuple(num), d)


def _require_standard(ring: PolyRing):
    if any(w != 1 for w in ring.weights):
        raise ValueError("Hilbert series are only computed for standard grading")


def hilbert_series(I: Ideal) -> HilbertSeries:
    if not I.is_homogeneous():
        raise NotHomogeneous(f"ideal {I} is not homogeneous")
    _require_standard(I.ring)
    cached = I.cache.get("hilbert")
    if cached is None:
        if I.is_zero():
            cached = HilbertSeries((1,), I.ring.n)
        else:
            cached = monomial_hilbert_series(initial_ideal(I), I.ring.n)
        I.cache["hilbert"] = cached
    return cached


def profile(I: Ideal) -> IdealProfile:
    """dim, height and multiplicity of R/I."""
    hs = hilbert_series(I)
    if hs.multiplicity() == 0:
        raise UnitIdeal("the unit ideal has no profile")
    n = I.ring.n
    return IdealProfile(hs.dimension, n - hs.dimension, hs.multiplicity(), True, n)


def multiplicity(I: Ideal) -> int:
    return profile(I).multiplicity


def dimension(I: Ideal) -> int:
    return profile(I).dim


def height(I: Ideal) -> int:
    return profile(I).height
