"""Named ideals with known invariants, used by the acceptance suite and the CLI."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .groebner import Ideal, format_ideal
from .ring import DEFAULT_CHARACTERISTIC, PolyRing

PUBLISHED = "published"


@dataclass
class CorpusEntry:
    """An ideal plus the values we expect from it.

    ``expected`` keys: multiplicity, height, dim, pd, depth, cm, s, maximal.
    ``sources`` says where each expected value comes from.
    """

    name: str
    ideal: Ideal
    expected: dict
    sources: dict
    long_running: bool = False
    extras: dict = field(default_factory=dict)

    def emit(self) -> str:
        return format_ideal(self.ideal)


FOUR_QUADRICS = {
    1: (["a*x", "b*y", "c*z", "x^2+y^2+z^2"], 1, 4),
    2: (["a*x", "b*y", "x*y+x*z+y*z", "x^2+y^2+z^2"], 2, 4),
    3: (["a*x+b*y+c*z", "x^2", "y^2", "z^2"], 3, 6),
    4: (["a*x", "x^2", "y^2", "z^2"], 4, 4),
    5: (["a*x+b*y+c*z", "b*x+c*y+a*z", "c*x+a*y+b*z", "b*x+c*y-b*z-c*z"], 5, 4),
    6: (["x^2", "y^2", "z^2", "x*y"], 6, 3),
}


def four_quadrics(i: int, characteristic: int = DEFAULT_CHARACTERISTIC) -> CorpusEntry:
    """Height-three ideals of four quadrics in k[a,b,c,x,y,z] with e = i."""
    if i not in FOUR_QUADRICS:
        raise ValueError(f"four-quadrics index must be in 1..6, got {i}")
    gens, e, pd = FOUR_QUADRICS[i]
    ring = PolyRing(["a", "b", "c", "x", "y", "z"], characteristic)
    expected = {"multiplicity": e, "pd": pd, "depth": 6 - pd, "height": 3, "dim": 3,
                "cm": pd == 3}
    sources = {"multiplicity": PUBLISHED, "pd": PUBLISHED, "depth": "6 - pd",
               "height": PUBLISHED, "dim": "6 - height", "cm": "pd = height"}
    return CorpusEntry(f"four-quadrics-{i}", Ideal(ring, gens), expected, sources)


def hankel_minors(ring: PolyRing, d: int, r: int, N: int):
    """Distinct 2-minors of the r x (N-r+2) matrix with entries ``x_{i+j+1}^d``."""
    cols = N - r + 2
    x = ring.gens()
    A = [[x[i + j] ** d for j in range(cols)] for i in range(r)]
    out, seen = [], set()
    for a in range(r):
        for b in range(a + 1, r):
            for i in range(cols):
                for j in range(i + 1, cols):
                    m = A[a][i] * A[b][j] - A[a][j] * A[b][i]
                    key = m.monic()
                    if m and key not in seen:
                        seen.add(key)
                        out.append(m)
    return out


def catalecticant(d: int, r: int, N: int, variables=None,
                  characteristic: int = DEFAULT_CHARACTERISTIC) -> CorpusEntry:
    """2-minors of a Hankel matrix of d-th powers in x_1..x_{N+1}.

    For d = 1 this is the rational normal curve of degree N.  Substituting
    ``x_i -> x_i^d`` is flat, so height and Cohen-Macaulayness carry over and
    the multiplicity becomes ``N * d^(N-1)``.
    """
    if d < 1 or r < 2 or N < 3 or r > N:
        raise ValueError(f"need d >= 1, 2 <= r <= N, N >= 3; got d={d}, r={r}, N={N}")
    names = list(variables) if variables else [f"x{i}" for i in range(1, N + 2)]
    if len(names) != N + 1:
        raise ValueError(f"need {N + 1} variable names")
    ring = PolyRing(names, characteristic)
    I = Ideal(ring, hankel_minors(ring, d, r, N))
    x = ring.gens()
    F = x[0] ** d * x[N] ** d - x[r - 1] ** d * x[N - r + 1] ** d
    expected = {"multiplicity": N * d ** (N - 1), "height": N - 1, "dim": 2, "depth": 2,
                "pd": N - 1, "cm": True, "maximal": True}
    sources = {"multiplicity": "degree of the rational normal curve times flat base change",
               "height": PUBLISHED, "dim": "N + 1 - height", "depth": "cm",
               "pd": "N + 1 - depth", "cm": "determinantal, flat base change",
               "maximal": PUBLISHED}
    extras = {"Cprime": Ideal(ring, x[1:N]), "F": F}
    return CorpusEntry(f"catalecticant-{d}-{r}-{N}", I, expected, sources, extras=extras)


def aci_family(t: int, characteristic: int = DEFAULT_CHARACTERISTIC) -> CorpusEntry:
    """Height-three almost complete intersection in 24 variables (degrees 2t+2, 2t+2, 3t+3, 2t+2)."""
    if t < 1:
        raise ValueError("t must be at least 1")
    names = [f"{v}{i}" for v in "xyz" for i in range(1, 9)]
    ring = PolyRing(names, characteristic)

    def binomial(v, k):
        P = ring.parse
        return P(f"{v}{k}^{t}*{v}{k + 1}") - P(f"{v}{k + 2}^{t}*{v}{k + 3}")

    f1, g1, h1 = (binomial(v, 1) for v in "xyz")
    f2, g2, h2 = (binomial(v, 5) for v in "xyz")
    I = Ideal(ring, [f1 * f2, g1 * g2, f1 * g1 * h1, h1 * h2])
    expected = {"degrees": [2 * t + 2] * 4, "height": 3, "dim": 21, "cm": True,
                "s": 5 * t + 2, "maximal": True}
    sources = {k: PUBLISHED for k in expected}
    sources["dim"] = "24 - height"
    P = ring.parse
    extras = {"Cprime": Ideal(ring, [P("x2"), P("x4"), g1]), "F": h1 * h2,
              "J": Ideal(ring, [f1 * f2, g1 * g2, f1 * g1 * h1])}
    return CorpusEntry(f"aci-{t}", I, expected, sources, long_running=True, extras=extras)


CATALECTICANT_GRID = [(d, r, N) for d in (1, 2) for r in (2, 3) for N in (3, 4, 5) if r <= N - 1]


def entries(include_long_running: bool = False,
            characteristic: int = DEFAULT_CHARACTERISTIC) -> list[CorpusEntry]:
    out = [four_quadrics(i, characteristic) for i in range(1, 7)]
    out += [catalecticant(d, r, N, characteristic=characteristic) for d, r, N in CATALECTICANT_GRID]
    if include_long_running:
        out.append(aci_family(1, characteristic))
    return sorted(out, key=lambda e: e.name)


def names(include_long_running: bool = False) -> list[str]:
    return [e.name for e in entries(include_long_running)]


_NAME = re.compile(r"^(four-quadrics|catalecticant|aci)((?:-\d+)+)$")


def get(name: str, characteristic: int = DEFAULT_CHARACTERISTIC) -> CorpusEntry:
    """Look up an entry by name, e.g. ``catalecticant-2-3-5`` or ``aci-1``."""
    m = _NAME.match(name)
    if not m:
        raise KeyError(f"unknown corpus entry {name!r}")
    args = [int(a) for a in m.group(2).split("-")[1:]]
    family = m.group(1)
    try:
        if family == "four-quadrics" and len(args) == 1:
            return four_quadrics(args[0], characteristic)
        if family == "catalecticant" and len(args) == 3:
            return catalecticant(*args, characteristic=characteristic)
        if family == "aci" and len(args) == 1:
            return aci_family(args[0], characteristic)
    except ValueError as exc:
        raise KeyError(str(exc)) from None
    raise KeyError(f"unknown corpus entry {name!r}")
