"""Buchberger's algorithm and the ideal operations built on it.

The engine works directly on packed monomials (see :mod:`maxmult.ring`).
Pairs are selected by sugar degree, useless pairs are dropped with the
Gebauer-Moeller installation of Buchberger's product and chain criteria, and
the result is always the reduced, monic basis sorted by leading monomial.

Colon and intersection both go through one elimination primitive:
``I ∩ K = (t*I + (1-t)*K) ∩ R`` with ``t`` of weight zero, so the auxiliary
ideal stays homogeneous whenever ``I`` and ``K`` are.
"""

from __future__ import annotations

import contextlib
import contextvars
import hashlib
import heapq
import threading
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

from .ring import (
    DEFAULT_CHARACTERISTIC,
    MonomialOrder,
    ParseError,
    Polynomial,
    PolyRing,
    RingError,
    format_polynomial,
    is_prime,
)


class ResourceError(RuntimeError):
    """A Groebner computation exceeded its pair or degree budget."""


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 10**6
    max_degree: int = 60


_budget: contextvars.ContextVar[Budget] = contextvars.ContextVar("maxmult_budget", default=Budget())


def current_budget() -> Budget:
    return _budget.get()


@contextlib.contextmanager
def budget(max_pairs: int | None = None, max_degree: int | None = None):
    """Temporarily change the resource budget of every GB computation."""
    old = _budget.get()
    new = Budget(old.max_pairs if max_pairs is None else max_pairs,
                 old.max_degree if max_degree is None else max_degree)
    token = _budget.set(new)
    try:
        yield new
    finally:
        _budget.reset(token)


class GBListener(Protocol):
    """Observer for Buchberger runs.  Must not mutate anything it is given."""

    def on_pair(self, processed: int, pending: int) -> None: ...

    def on_basis(self, size: int) -> None: ...


# -- low level engine ---------------------------------------------------------------
#
# A "raw" polynomial is a tuple of (packed monomial, coefficient) pairs in
# decreasing order.  Basis elements are kept monic.


def _raw_monic(terms, p):
    c = terms[0][1]
    if c == 1:
        return tuple(terms)
    inv = pow(c, -1, p)
    return tuple((m, k * inv % p) for m, k in terms)


def _reduce(terms, leads, polys, ring, full=True):
    """Normal form of ``terms`` modulo the monic polynomials ``polys``.

    ``leads[i]`` is the leading monomial of ``polys[i]``.  With ``full=False``
    only the leading term is reduced (top reduction).
    """
    p = ring.p
    g = ring.guard
    acc = dict(terms)
    heap = [-m for m in acc]
    heapq.heapify(heap)
    pop = heapq.heappop
    push = heapq.heappush
    out = []
    nl = len(leads)
    while heap:
        m = -pop(heap)
        c = acc.pop(m, 0)
        if not c:
            continue
        r = -1
        for i in range(nl):
            lm = leads[i]
            if ((m | g) - lm) & g == g:
                r = i
                break
        if r < 0:
            out.append((m, c))
            if not full:
                while heap:
                    m2 = -pop(heap)
                    c2 = acc.pop(m2, 0)
                    if c2:
                        out.append((m2, c2))
                break
            continue
        q = m - leads[r]
        poly = polys[r]
        for j in range(1, len(poly)):
            mg, cg = poly[j]
            n = mg + q
            v = acc.get(n)
            if v is None:
                acc[n] = (-c * cg) % p
                push(heap, -n)
            else:
                v = (v - c * cg) % p
                if v:
                    acc[n] = v
                else:
                    del acc[n]
    return tuple(out)


def _spoly(f, g, lcm, ring):
    p = ring.p
    qf = lcm - f[0][0]
    qg = lcm - g[0][0]
    acc = {}
    for m, c in f[1:]:
        acc[m + qf] = c
    for m, c in g[1:]:
        n = m + qg
        v = (acc.get(n, 0) - c) % p
        if v:
            acc[n] = v
        else:
            acc.pop(n, None)
    return tuple(sorted(acc.items(), reverse=True))


def _sugar_of(terms):
    return max(m & 0xFFFF for m, _ in terms)


def _interreduce(polys, ring):
    """Reduced Groebner basis from an arbitrary Groebner basis."""
    polys = sorted(polys, key=lambda f: f[0][0])
    minimal = []
    for f in polys:
        lm = f[0][0]
        if not any(ring.divides(h[0][0], lm) for h in minimal):
            minimal.append(f)
    out = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        head = f[0]
        tail = _reduce(f[1:], [h[0][0] for h in others], others, ring) if len(f) > 1 else ()
        out.append((head,) + tail)
    out.sort(key=lambda f: f[0][0])
    return out


def buchberger(gens: Sequence[Polynomial], listener: GBListener | None = None,
               limits: Budget | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [f for f in gens if f]
    if not gens:
        return []
    ring = gens[0].ring
    p = ring.p
    limits = limits or current_budget()
    divides = ring.divides

    def lcm(a, b):
        return ring.mono_lcm(a, b)

    store = []       # all polynomials ever added (raw, monic)
    sugar = []
    basis = []       # indices into store that are currently in G
    pairs = []       # heap of (sugar, lcm, seq, i, j)
    seq = 0
    processed = 0

    # cheap start: inter-reduced, monic input
    raw_in = []
    for f in gens:
        raw_in.append(_raw_monic(f._terms, p))
    raw_in.sort(key=lambda f: (_sugar_of(f), f[0][0]))

    def update(h_idx):
        nonlocal pairs, basis, seq
        h = store[h_idx]
        lh = h[0][0]
        sh = sugar[h_idx]
        cand = []
        for gi in basis:
            lg = store[gi][0][0]
            cand.append((gi, lcm(lh, lg)))
        keep = []
        for k, (gi, l1) in enumerate(cand):
            lg = store[gi][0][0]
            if l1 == lh + lg:
                keep.append((gi, l1, True))
                continue
            dominated = False
            for k2, (gj, l2) in enumerate(cand):
                if k2 != k and divides(l2, l1) and (l2 != l1 or k2 < k):
                    dominated = True
                    break
            if not dominated:
                keep.append((gi, l1, False))
        # chain criterion on the old pairs
        kept_pairs = []
        for entry in pairs:
            _, l, _, i, j = entry
            if divides(lh, l) and lcm(store[i][0][0], lh) != l and lcm(store[j][0][0], lh) != l:
                continue
            kept_pairs.append(entry)
        for gi, l, coprime in keep:
            if coprime:
                continue
            lg = store[gi][0][0]
            s = max(sh + ((l - lh) & 0xFFFF), sugar[gi] + ((l - lg) & 0xFFFF))
            seq += 1
            kept_pairs.append((s, l, seq, gi, h_idx))
        heapq.heapify(kept_pairs)
        pairs = kept_pairs
        basis = [gi for gi in basis if not divides(lh, store[gi][0][0])]
        basis.append(h_idx)
        if listener is not None:
            listener.on_basis(len(basis))

    def leads_and_polys():
        return [store[i][0][0] for i in basis], [store[i] for i in basis]

    for f in raw_in:
        leads, polys = leads_and_polys()
        h = _reduce(f, leads, polys, ring) if polys else f
        if not h:
            continue
        h = _raw_monic(h, p)
        store.append(h)
        sugar.append(_sugar_of(f))
        update(len(store) - 1)

    while pairs:
        s, l, _, i, j = heapq.heappop(pairs)
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceError(f"pair budget {limits.max_pairs} exceeded")
        if s > limits.max_degree:
            raise ResourceError(f"degree budget {limits.max_degree} exceeded (sugar {s})")
        if listener is not None:
            listener.on_pair(processed, len(pairs))
        sp = _spoly(store[i], store[j], l, ring)
        if not sp:
            continue
        leads, polys = leads_and_polys()
        h = _reduce(sp, leads, polys, ring)
        if not h:
            continue
        h = _raw_monic(h, p)
        store.append(h)
        sugar.append(s)
        update(len(store) - 1)

    reduced = _interreduce([store[i] for i in basis], ring)
    return [Polynomial(ring, f) for f in reduced]


# -- ideals ---------------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal with a lazily computed reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial | str] = ()):
        gens = []
        for f in generators:
            if isinstance(f, str):
                f = ring.parse(f)
            if f.ring != ring:
                raise RingError("generator lives in a different ring")
            if f:
                gens.append(f)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: tuple[Polynomial, ...] | None = None
        self._lock = threading.Lock()
        self.cache: dict = {}

    # identity is by generator list; use ideal_equal for mathematical equality
    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def __str__(self):
        return "(" + ", ".join(map(str, self.generators)) + ")"

    def __len__(self):
        return len(self.generators)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, self.generators + (other,))
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingError("ideals live in different rings")
            return Ideal(self.ring, self.generators + other.generators)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])
        return NotImplemented

    # -- Groebner basis, compute once -----------------------------------------

    def gb(self, listener: GBListener | None = None) -> tuple[Polynomial, ...]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(buchberger(self.generators, listener))
        return self._gb

    def has_gb(self) -> bool:
        return self._gb is not None

    def _raw_gb(self):
        gb = self.gb()
        return [f.lead_monomial for f in gb], [f._terms for f in gb]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.generators)

    def is_monomial(self) -> bool:
        return all(f.is_monomial() for f in self.generators)

    def key(self) -> str:
        """Stable digest of the ring and the canonical generator text."""
        h = hashlib.sha256(format_ideal(self).encode())
        return h.hexdigest()[:16]

    def minimalized(self) -> "Ideal":
        """Drop generators that lie in the ideal of the remaining ones."""
        gens = list(self.generators)
        i = len(gens) - 1
        while i >= 0 and len(gens) > 1:
            rest = gens[:i] + gens[i + 1:]
            if ideal_member(gens[i], Ideal(self.ring, rest)):
                gens = rest
            i -= 1
        return Ideal(self.ring, gens)


def groebner_basis(I: Ideal, listener: GBListener | None = None) -> Ideal:
    """Ideal generated by the reduced Groebner basis of ``I`` (cached)."""
    gb = I.gb(listener)
    out = Ideal(I.ring, gb)
    out._gb = gb
    return out


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    if f.ring != I.ring:
        raise RingError("polynomial and ideal live in different rings")
    if not f:
        return f
    leads, polys = I._raw_gb()
    if not polys:
        return f
    return Polynomial(f.ring, _reduce(f._terms, leads, polys, f.ring))


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return not normal_form(f, I)


def ideal_contains(I: Ideal, K: Ideal) -> bool:
    """``K ⊆ I``."""
    return all(ideal_member(f, I) for f in K.generators)


def ideal_equal(I: Ideal, K: Ideal) -> bool:
    if I.ring != K.ring:
        raise RingError("ideals live in different rings")
    return I.gb() == K.gb()


def unit_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, [ring.one()])


def maximal_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


# -- elimination primitive ------------------------------------------------------------

_T = "_t"


def _elimination_ring(ring: PolyRing) -> PolyRing:
    return ring.extended([_T], MonomialOrder.elimination(1), (0,) + ring.weights)


def ideal_intersect(I: Ideal, K: Ideal) -> Ideal:
    """``I ∩ K`` by eliminating ``t`` from ``t*I + (1-t)*K``."""
    if I.ring != K.ring:
        raise RingError("ideals live in different rings")
    ring = I.ring
    if I.is_zero() or K.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return Ideal(ring, K.gb())
    if K.is_unit():
        return Ideal(ring, I.gb())
    big = _elimination_ring(ring)
    t = big.var(_T)
    one_minus_t = big.one() - t
    gens = [t * big.convert(f) for f in I.gb()]
    gens += [one_minus_t * big.convert(g) for g in K.gb()]
    tmask = big.pack([1] + [0] * ring.n)
    out = []
    for f in buchberger(gens):
        if not big.divides(tmask, f.lead_monomial):
            out.append(ring.convert(f))
    J = Ideal(ring, out)
    J._gb = tuple(sorted((f.monic() for f in out), key=lambda f: f.lead_monomial))
    return J


def divide_exact(f: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient ``f / d``; raises if ``d`` does not divide ``f``."""
    ring = f.ring
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    p = ring.p
    inv = pow(d.lead_coeff, -1, p)
    ld = d.lead_monomial
    rem = dict(f._terms)
    quot = {}
    while rem:
        m = max(rem)
        c = rem[m]
        if not ring.divides(ld, m):
            raise ArithmeticError(f"{d} does not divide {f}")
        q = m - ld
        qc = c * inv % p
        quot[q] = qc
        for md, cd in d._terms:
            n = md + q
            v = (rem.get(n, 0) - qc * cd) % p
            if v:
                rem[n] = v
            else:
                rem.pop(n, None)
    return Polynomial.from_dict(ring, quot)


def ideal_colon(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f`` computed as ``(I ∩ (f)) / f``."""
    if not f:
        raise ZeroDivisionError("colon by the zero polynomial")
    if f.ring != I.ring:
        raise RingError("polynomial and ideal live in different rings")
    if ideal_member(f, I):
        return unit_ideal(I.ring)
    inter = ideal_intersect(I, Ideal(I.ring, [f]))
    gens = [divide_exact(g, f).monic() for g in inter.generators]
    out = Ideal(I.ring, gens)
    # dividing a reduced GB of I ∩ (f) by f gives a reduced GB of I : f
    out._gb = tuple(sorted(gens, key=lambda g: g.lead_monomial))
    return out


def ideal_colon_ideal(I: Ideal, K: Ideal) -> Ideal:
    """``I : K``, the intersection of ``I : g`` over generators ``g`` of ``K``."""
    if I.ring != K.ring:
        raise RingError("ideals live in different rings")
    result = None
    for g in K.generators:
        if ideal_member(g, I):
            continue
        c = ideal_colon(I, g)
        result = c if result is None else ideal_intersect(result, c)
    if result is None:
        return unit_ideal(I.ring)
    return result


# -- ideal files --------------------------------------------------------------------


def parse_ring_header(line: str, characteristic: int | None = None) -> PolyRing:
    """``ring p; x,y,z``.  ``characteristic`` overrides the declared one."""
    body = line.split("#", 1)[0].strip()
    if not body.startswith("ring"):
        raise ParseError("first line must be 'ring <p>; <variables>'")
    body = body[4:].strip()
    if ";" not in body:
        raise ParseError("ring header needs ';' between characteristic and variables")
    ptext, vtext = body.split(";", 1)
    ptext = ptext.strip()
    try:
        p = int(ptext)
    except ValueError:
        raise ParseError(f"characteristic {ptext!r} is not an integer") from None
    if not is_prime(p):
        raise ParseError(f"characteristic {p} is not prime")
    if characteristic is not None:
        p = characteristic
    names = [v.strip() for v in vtext.split(",") if v.strip()]
    try:
        return PolyRing(names, p)
    except RingError as exc:
        raise ParseError(str(exc)) from None


def parse_ideal(text: str, characteristic: int | None = None) -> Ideal:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty ideal file")
    ring = parse_ring_header(lines[0], characteristic)
    return Ideal(ring, [ring.parse(ln) for ln in lines[1:]])


def format_ideal(I: Ideal) -> str:
    ring = I.ring
    head = f"ring {ring.p}; {','.join(ring.variables)}"
    return "\n".join([head] + [format_polynomial(f) for f in I.generators]) + "\n"


def load_ideal(path, characteristic: int | None = None) -> Ideal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read(), characteristic)


def make_ring(variables: str | Sequence[str], characteristic: int = DEFAULT_CHARACTERISTIC) -> PolyRing:
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.replace(" ", ",").split(",") if v.strip()]
    return PolyRing(variables, characteristic)


def ideal(ring: PolyRing, *gens: str | Polynomial) -> Ideal:
    return Ideal(ring, gens)
