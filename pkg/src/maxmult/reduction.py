"""General artinian reductions, socles, the s-invariant, and depth.

"General" linear forms are realised as uniformly random coefficients in F_p,
drawn from a generator seeded explicitly by the caller.  Each check runs on
several replica seeds and merges the results with a fixed policy: minimum for
reduction lengths, maximum for depth, and unanimity for socle data.  A
replica that disagrees with unanimity is an error, never averaged away.

Reducing ``R/I`` modulo ``d`` random linear forms is done by substitution:
keep the first ``n - d`` variables and send each of the last ``d`` to a random
combination of the kept ones.  The kernel of that map is spanned by the
forms ``x_{m+l} - sum_j a_lj x_j``, a generic point of an open chart of the
Grassmannian, so nothing is lost against a fully dense choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .groebner import Ideal, normal_form
from .invariants import hilbert_series, initial_ideal, profile
from .ring import Polynomial, PolyRing, substitute

DEFAULT_SEED = 1729
DEFAULT_REPLICAS = 3
MAX_RETRIES = 5
_GOLDEN = 0x9E3779B97F4A7C15
_U64 = (1 << 64) - 1


class NotArtinian(RuntimeError):
    """The chosen linear forms were not general enough; retry with another seed."""


class NotCohenMacaulay(ValueError):
    pass


class SeedDisagreement(RuntimeError):
    """Replica seeds produced different answers for a generic quantity."""


class SeedInstability(RuntimeError):
    """A replica produced a value that genericity forbids."""


def replica_seeds(seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> list[int]:
    if replicas < 1:
        raise ValueError("need at least one replica")
    return [(seed + i * _GOLDEN) & _U64 for i in range(replicas)]


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & _U64)


def _random_coeffs(rng: np.random.Generator, shape, p: int) -> np.ndarray:
    return rng.integers(0, p, size=shape, dtype=np.int64)


# -- artinian reductions -------------------------------------------------------------


@dataclass
class ArtinianAlgebra:
    """``R/(I + (L_1..L_d))`` presented on the kept variables."""

    source: Ideal
    ideal: Ideal
    forms: list[Polynomial]
    basis: list[list[tuple[int, ...]]]
    seed: int
    _index: list[dict] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._index = [{b: k for k, b in enumerate(level)} for level in self.basis]

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def hilbert_function(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.basis)

    @property
    def length(self) -> int:
        return sum(self.hilbert_function)

    def standard_monomials(self) -> list[tuple[int, ...]]:
        return [b for level in self.basis for b in level]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.ideal)

    def coordinates(self, f: Polynomial, degree: int) -> np.ndarray:
        """Coordinates of a homogeneous ``f`` of the given degree in the monomial basis."""
        vec = np.zeros(len(self.basis[degree]) if degree < len(self.basis) else 0, dtype=np.int64)
        if degree >= len(self.basis):
            return vec
        idx = self._index[degree]
        for c, e in self.normal_form(f).terms:
            vec[idx[e]] = c
        return vec

    def element(self, degree: int, vector) -> Polynomial:
        ring = self.ring
        return ring.from_terms((int(c), b) for c, b in zip(vector, self.basis[degree]) if c)

    def multiplication_matrix(self, degree: int) -> np.ndarray:
        """Matrix of ``A_degree -> (A_{degree+1})^m``, ``a -> (x_1 a, ..., x_m a)``."""
        ring = self.ring
        src = self.basis[degree]
        dst = self.basis[degree + 1] if degree + 1 < len(self.basis) else []
        nd = len(dst)
        mat = np.zeros((ring.n * nd, len(src)), dtype=np.int64)
        if not nd:
            return mat
        idx = self._index[degree + 1]
        for col, b in enumerate(src):
            for j in range(ring.n):
                e = list(b)
                e[j] += 1
                e = tuple(e)
                k = idx.get(e)
                if k is not None:
                    mat[j * nd + k, col] = 1
                    continue
                for c, t in self.normal_form(ring.monomial(e)).terms:
                    mat[j * nd + idx[t], col] = c
        return mat


def _standard_monomials(I: Ideal) -> list[list[tuple[int, ...]]]:
    lead = initial_ideal(I)
    n = I.ring.n
    if any(sum(g) == 0 for g in lead):
        return []

    def standard(e):
        return not any(all(a <= b for a, b in zip(g, e)) for g in lead)

    levels = [[(0,) * n]]
    while True:
        nxt = set()
        for b in levels[-1]:
            for j in range(n):
                e = b[:j] + (b[j] + 1,) + b[j + 1:]
                if e not in nxt and standard(e):
                    nxt.add(e)
        if not nxt:
            break
        levels.append(sorted(nxt, key=I.ring.pack, reverse=True))
    return levels


def _reduce_once(I: Ideal, seed: int) -> ArtinianAlgebra:
    ring = I.ring
    d = profile(I).dim
    n = ring.n
    if d == 0:
        return ArtinianAlgebra(I, I, [], _standard_monomials(I), seed)
    m = n - d
    p = ring.p
    rng = _rng(seed)
    coeffs = _random_coeffs(rng, (d, max(m, 1)), p)
    kept = ring.variables[:max(m, 1)]
    target = PolyRing(kept, p)
    images = [target.var(v) for v in kept[:m]]
    for l in range(d):
        images.append(target.from_terms(
            (int(coeffs[l, j]), tuple(int(i == j) for i in range(len(kept)))) for j in range(m)))
    forms = []
    for l in range(d):
        form = ring.var(ring.variables[m + l])
        for j in range(m):
            form = form - ring.var(ring.variables[j]).scale(int(coeffs[l, j]))
        forms.append(form)
    gens = [substitute(g, images, target) for g in I.generators]
    if m == 0:
        gens.append(target.var(kept[0]))
    reduced = Ideal(target, [g for g in gens if g])
    if hilbert_series(reduced).dimension != 0:
        raise NotArtinian(f"seed {seed} gave a non-artinian reduction")
    return ArtinianAlgebra(I, reduced, forms, _standard_monomials(reduced), seed)


def artinian_reduction(I: Ideal, seed: int = DEFAULT_SEED) -> ArtinianAlgebra:
    """General artinian reduction of ``R/I`` drawn from ``seed``.

    A degenerate draw raises :class:`NotArtinian`; callers that want a result
    regardless should use :func:`reduce_with_retry`.
    """
    if not I.is_homogeneous():
        raise ValueError("artinian reductions need a homogeneous ideal")
    key = ("artinian", seed)
    A = I.cache.get(key)
    if A is None:
        A = _reduce_once(I, seed)
        I.cache[key] = A
    return A


def reduce_with_retry(I: Ideal, seed: int) -> ArtinianAlgebra:
    s = seed
    for _ in range(MAX_RETRIES):
        try:
            return artinian_reduction(I, s)
        except NotArtinian:
            s = (s * 6364136223846793005 + 1442695040888963407) & _U64
    raise NotArtinian(f"no artinian reduction after {MAX_RETRIES} draws from seed {seed}")


# -- socle -------------------------------------------------------------------------


@dataclass(frozen=True)
class SocleProfile:
    per_degree: dict
    min_degree: int
    total_dim: int
    witness: Polynomial

    def as_dict(self) -> dict:
        return {"perDegreeDims": {str(k): v for k, v in sorted(self.per_degree.items())},
                "minDegree": self.min_degree, "totalDim": self.total_dim,
                "witness": str(self.witness)}


def socle_profile(A: ArtinianAlgebra) -> SocleProfile:
    """Per-degree dimensions of ``0 :_A m_A`` by exact linear algebra."""
    p = A.ring.p
    per = {}
    witness = None
    min_degree = None
    for deg, level in enumerate(A.basis):
        if not level:
            continue
        mat = A.multiplication_matrix(deg)
        if mat.shape[0] == 0:
            ker = np.eye(len(level), dtype=np.int64)
        else:
            ker = _kernels.nullspace(mat, p)
        if len(ker):
            per[deg] = len(ker)
            if witness is None:
                witness = A.element(deg, ker[0])
                min_degree = deg
    if witness is None:
        raise ValueError("the zero ring has no socle")
    return SocleProfile(per, min_degree, sum(per.values()), witness)


def witness_is_valid(A: ArtinianAlgebra, w: Polynomial) -> bool:
    """``w`` is a nonzero socle element of ``A``."""
    if not A.normal_form(w):
        return False
    return all(not A.normal_form(x * w) for x in A.ring.gens())


# -- Cohen-Macaulay test, s-invariant, socle type ---------------------------------------


@dataclass(frozen=True)
class SerreCheck:
    multiplicity: int
    lengths: tuple[int, ...]
    seeds: tuple[int, ...]

    @property
    def is_cm(self) -> bool:
        return min(self.lengths) == self.multiplicity


def serre_check(I: Ideal, seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> SerreCheck:
    """Compare e(R/I) with the lengths of general artinian reductions."""
    e = profile(I).multiplicity
    seeds = replica_seeds(seed, replicas)
    lengths = tuple(reduce_with_retry(I, s).length for s in seeds)
    if min(lengths) < e:
        raise SeedInstability(f"artinian reduction length {min(lengths)} below multiplicity {e}")
    return SerreCheck(e, lengths, tuple(seeds))


def is_cohen_macaulay(I: Ideal, seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> bool:
    return serre_check(I, seed, replicas).is_cm


@dataclass(frozen=True)
class SInvariant:
    value: int
    witness: Polynomial
    seeds_tried: int
    seeds: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"value": self.value, "witness": str(self.witness),
                "seedsTried": self.seeds_tried, "seeds": list(self.seeds)}


def _socles(J: Ideal, seed: int, replicas: int):
    if not is_cohen_macaulay(J, seed, replicas):
        raise NotCohenMacaulay(f"R/J is not Cohen-Macaulay for J = {J}")
    seeds = replica_seeds(seed, replicas)
    out = []
    for s in seeds:
        A = reduce_with_retry(J, s)
        out.append((A, socle_profile(A)))
    return seeds, out


def s_invariant(J: Ideal, seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> SInvariant:
    """Least degree of a nonzero socle element of a general artinian reduction."""
    seeds, socles = _socles(J, seed, replicas)
    values = [sp.min_degree for _, sp in socles]
    if len(set(values)) != 1:
        raise SeedDisagreement(f"s-invariant differs across seeds: {values}")
    return SInvariant(values[0], socles[0][1].witness, len(seeds), tuple(seeds))


def socle_type(J: Ideal, seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> str:
    """``gorenstein``, ``level`` or ``neither``."""
    _, socles = _socles(J, seed, replicas)
    shapes = {tuple(sorted(sp.per_degree.items())) for _, sp in socles}
    if len(shapes) != 1:
        raise SeedDisagreement(f"socle shape differs across seeds: {sorted(shapes)}")
    sp = socles[0][1]
    if sp.total_dim == 1:
        return "gorenstein"
    if len(sp.per_degree) == 1:
        return "level"
    return "neither"


# -- depth --------------------------------------------------------------------------


def _unitriangular_change(I: Ideal, seed: int) -> Ideal:
    """Image of ``I`` under ``x_i -> x_i + sum_{j<i} a_ij x_j`` with random ``a``."""
    ring = I.ring
    n = ring.n
    coeffs = _random_coeffs(_rng(seed), (n, n), ring.p)
    images = []
    for i in range(n):
        terms = [(1, tuple(int(k == i) for k in range(n)))]
        terms += [(int(coeffs[i, j]), tuple(int(k == j) for k in range(n))) for j in range(i)]
        images.append(ring.from_terms(terms))
    return Ideal(ring, [substitute(g, images, ring) for g in I.generators])


def colon_by_last_variable(I: Ideal) -> Ideal:
    """``I : x_n`` read off a grevlex basis (divide every element divisible by ``x_n``).

    Valid for homogeneous ``I`` in a grevlex ring where ``x_n`` is the last variable.
    """
    ring = I.ring
    if ring.order.kind != "grevlex":
        raise ValueError("needs a grevlex ring")
    last = ring.pack([0] * (ring.n - 1) + [1])
    out = []
    for f in I.gb():
        if ring.divides(last, f.lead_monomial):
            f = Polynomial(ring, tuple((m - last, c) for m, c in f._terms))
        out.append(f)
    return Ideal(ring, out)


def _depth_once(I: Ideal, seed: int) -> int:
    ring = I.ring
    J = _unitriangular_change(I, seed)
    current = list(J.gb())
    depth = 0
    for var in reversed(range(ring.n)):
        x = ring.pack([int(k == var) for k in range(ring.n)])
        # (J + prior) : x == J + prior  iff  no leading term is divisible by x
        if any(ring.divides(x, f.lead_monomial) for f in current):
            break
        depth += 1
        current = [Polynomial(ring, tuple((m, c) for m, c in f._terms if not ring.divides(x, m)))
                   for f in current]
    return depth


def depth_of(I: Ideal, seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> int:
    """depth(R/I): length of a maximal regular sequence of general linear forms."""
    if not I.is_homogeneous():
        raise ValueError("depth is computed for homogeneous ideals only")
    d = profile(I).dim
    if I.is_zero():
        return I.ring.n
    values = [_depth_once(I, s) for s in replica_seeds(seed, replicas)]
    depth = max(values)
    if depth > d:
        raise SeedInstability(f"depth {depth} exceeds dimension {d}")
    return depth


def projective_dimension(I: Ideal, seed: int = DEFAULT_SEED, replicas: int = DEFAULT_REPLICAS) -> int:
    """``n - depth(R/I)`` (Auslander-Buchsbaum)."""
    return I.ring.n - depth_of(I, seed, replicas)
