"""Exact polynomial arithmetic over a prime field.

Monomials are packed into a single Python integer.  The packed word holds,
from the most significant end, one 16-bit field per row of the order's weight
matrix, one 16-bit field per exponent, and a final field with the (weighted)
total degree.  With that layout

* comparing two monomials in the ring's order is integer comparison,
* multiplying two monomials is integer addition,
* divisibility is a single subtract-and-mask against the guard bits.

The top bit of every field is a guard bit; an exponent (or any derived field)
reaching ``2**15`` is reported as an overflow instead of corrupting its
neighbour.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

DEFAULT_CHARACTERISTIC = 32003

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


class RingError(ValueError):
    """Operands live in different rings, or a ring is malformed."""


class ParseError(ValueError):
    """Raised for text that does not follow the polynomial grammar."""


class ExponentOverflow(ArithmeticError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a nonnegative integer weight matrix.

    ``kind`` is one of ``grevlex``, ``lex`` or ``elimination``; the latter
    first compares the total degree in the leading ``block`` variables and
    breaks ties by grevlex on all variables.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elimination"):
            raise RingError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elimination" and self.block < 1:
            raise RingError("elimination order needs a block of at least one variable")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def elimination(cls, block: int) -> "MonomialOrder":
        return cls("elimination", block)

    def rows(self, n: int) -> list[list[int]]:
        # grevlex == lex comparison of the prefix sums (e1+..+en, e1+..+e(n-1), ..., e1)
        grevlex = [[1] * (n - k) + [0] * k for k in range(n)]
        if self.kind == "grevlex":
            return grevlex
        if self.kind == "lex":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        if self.block > n:
            raise RingError("elimination block larger than the number of variables")
        return [[1] * self.block + [0] * (n - self.block)] + grevlex

    def __str__(self):
        return f"elimination({self.block})" if self.kind == "elimination" else self.kind


class PolyRing:
    """``F_p[x_1, ..., x_n]`` with a fixed monomial order.

    Variables are ordered by declaration: the first name is the largest.
    ``weights`` assigns a degree to each variable (all ones by default); it is
    used for sugar degrees and for homogeneity tests.
    """

    def __init__(
        self,
        variables: Sequence[str],
        characteristic: int = DEFAULT_CHARACTERISTIC,
        order: MonomialOrder | str | None = None,
        weights: Sequence[int] | None = None,
    ):
        variables = tuple(str(v).strip() for v in variables)
        if not variables:
            raise RingError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise RingError(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise RingError(f"invalid variable name {v!r}")
        if not isinstance(characteristic, int) or not is_prime(characteristic):
            raise RingError(f"characteristic {characteristic!r} is not a prime")
        if characteristic >= 1 << 31:
            raise RingError("characteristic must be below 2**31")
        if order is None:
            order = MonomialOrder.grevlex()
        elif isinstance(order, str):
            order = MonomialOrder(order)
        n = len(variables)
        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * n
        if len(weights) != n or any(w < 0 for w in weights):
            raise RingError("weights must be one nonnegative integer per variable")

        self.variables = variables
        self.p = characteristic
        self.order = order
        self.weights = weights
        self.n = n
        self.index = {v: i for i, v in enumerate(variables)}

        rows = order.rows(n)
        self._nrows = len(rows)
        nfields = len(rows) + n + 1
        shift = [FIELD_BITS * (nfields - 1 - j) for j in range(nfields)]
        self._exp_shifts = tuple(shift[len(rows) + i] for i in range(n))
        units = []
        for i in range(n):
            u = sum(rows[k][i] << shift[k] for k in range(len(rows)))
            u += 1 << self._exp_shifts[i]
            u += weights[i]
            units.append(u)
        self._units = tuple(units)
        self.guard = sum(1 << (FIELD_BITS * j + FIELD_BITS - 1) for j in range(nfields))
        self._key = (self.p, self.variables, self.order, self.weights)

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PolyRing(GF({self.p})[{','.join(self.variables)}], {self.order})"

    def with_order(self, order: MonomialOrder | str, weights: Sequence[int] | None = None) -> "PolyRing":
        return PolyRing(self.variables, self.p, order, weights)

    def subring(self, variables: Sequence[str]) -> "PolyRing":
        """Same field and order kind on a subset (or relabelling) of variables."""
        return PolyRing(variables, self.p, self.order if self.order.kind != "elimination" else None)

    def extended(self, new_vars: Sequence[str], order: MonomialOrder | None = None,
                 weights: Sequence[int] | None = None) -> "PolyRing":
        """Ring with ``new_vars`` prepended (they become the largest variables)."""
        return PolyRing(tuple(new_vars) + self.variables, self.p, order, weights)

    # -- monomials ----------------------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise RingError(f"expected {self.n} exponents, got {len(exps)}")
        m = 0
        for e, u in zip(exps, self._units):
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
            if e:
                m += e * u
        if m & self.guard:
            raise ExponentOverflow("monomial degree exceeds the packed field width")
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & FIELD_MASK for s in self._exp_shifts)

    def mono_mul(self, a: int, b: int) -> int:
        m = a + b
        if m & self.guard:
            raise ExponentOverflow("exponent overflow in monomial product")
        return m

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def mono_lcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    @staticmethod
    def mono_degree(m: int) -> int:
        """Weighted total degree (the low field of the packed word)."""
        return m & FIELD_MASK

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Three-way comparison of exponent vectors: -1, 0 or 1."""
        ma, mb = self.pack(a), self.pack(b)
        return (ma > mb) - (ma < mb)

    # -- polynomials --------------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return Polynomial(self, ((0, 1),))

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, ((0, c),) if c else ())

    def var(self, name: str | int) -> "Polynomial":
        """The variable with the given name, or at the given position."""
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise RingError(f"variable index {name} out of range")
            i = name
        else:
            try:
                i = self.index[name]
            except KeyError:
                raise RingError(f"unknown variable {name!r}") from None
        return Polynomial(self, ((self._units[i], 1),))

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        coeff %= self.p
        return Polynomial(self, ((self.pack(exps), coeff),) if coeff else ())

    def from_terms(self, terms: Iterable[tuple[int, Sequence[int]]]) -> "Polynomial":
        """Build from ``(coefficient, exponents)`` pairs; duplicates are summed."""
        acc: dict[int, int] = {}
        p = self.p
        for c, e in terms:
            m = self.pack(e)
            acc[m] = (acc.get(m, 0) + c) % p
        return Polynomial.from_dict(self, acc)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Map ``f`` into this ring, matching variables by name."""
        if f.ring == self:
            return f
        if f.ring.p != self.p:
            raise RingError("cannot convert between different characteristics")
        src = f.ring
        pos = []
        for v in src.variables:
            pos.append(self.index.get(v))
        acc = {}
        for m, c in f._terms:
            e = src.unpack(m)
            out = [0] * self.n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RingError(f"variable {src.variables[i]!r} not in target ring")
                    out[pos[i]] = k
            acc[self.pack(out)] = c
        return Polynomial.from_dict(self, acc)


class Polynomial:
    """Immutable sparse polynomial; terms are kept in decreasing monomial order."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self._terms = terms
        self._hash = None

    @classmethod
    def from_dict(cls, ring: PolyRing, d: Mapping[int, int]) -> "Polynomial":
        return cls(ring, tuple(sorted(((m, c) for m, c in d.items() if c), reverse=True)))

    # -- inspection ---------------------------------------------------------------

    @property
    def terms(self) -> list[tuple[int, tuple[int, ...]]]:
        """``(coefficient, exponents)`` pairs, leading term first."""
        return [(c, self.ring.unpack(m)) for m, c in self._terms]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def lead_monomial(self) -> int:
        return self._terms[0][0]

    @property
    def lead_coeff(self) -> int:
        return self._terms[0][1]

    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.unpack(self._terms[0][0])

    def degree(self) -> int:
        """Largest weighted total degree of a term (-1 for zero)."""
        if not self._terms:
            return -1
        return max(m & FIELD_MASK for m, _ in self._terms)

    def is_homogeneous(self) -> bool:
        if not self._terms:
            return True
        d = self._terms[0][0] & FIELD_MASK
        return all(m & FIELD_MASK == d for m, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def variables_used(self) -> set[int]:
        used = set()
        for m, _ in self._terms:
            for i, e in enumerate(self.ring.unpack(m)):
                if e:
                    used.add(i)
        return used

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        c = self._terms[0][1]
        if c == 1:
            return self
        p = self.ring.p
        inv = pow(c, -1, p)
        return Polynomial(self.ring, tuple((m, k * inv % p) for m, k in self._terms))

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise RingError("operands belong to different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        acc = dict(self._terms)
        for m, c in other._terms:
            acc[m] = (acc.get(m, 0) + c) % p
        return Polynomial.from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, tuple((m, p - c) for m, c in self._terms))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        p = ring.p
        g = ring.guard
        acc: dict[int, int] = {}
        get = acc.get
        for ma, ca in self._terms:
            for mb, cb in other._terms:
                m = ma + mb
                acc[m] = (get(m, 0) + ca * cb) % p
        for m in acc:
            if m & g:
                raise ExponentOverflow("exponent overflow in polynomial product")

        return Polynomial.from_dict(ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, tuple((m, k * c % p) for m, k in self._terms))

    def mul_monomial(self, m: int, c: int = 1) -> "Polynomial":
        ring = self.ring
        p = ring.p
        out = tuple((ring.mono_mul(t, m), k * c % p) for t, k in self._terms)
        return Polynomial(ring, out)

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self._terms))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# -- substitution ---------------------------------------------------------------


def substitute(f: Polynomial, images: Sequence[Polynomial], target: PolyRing) -> Polynomial:
    """Apply the ring map ``x_i -> images[i]`` (images live in ``target``)."""
    if len(images) != f.ring.n:
        raise RingError("need one image per variable")
    powers: list[list[Polynomial]] = [[target.one()] for _ in images]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * images[i])
        return cache[k]

    p = target.p
    acc: dict[int, int] = {}
    for m, c in f._terms:
        term = target.const(c)
        for i, e in enumerate(f.ring.unpack(m)):
            if e:
                term = term * power(i, e)
        for tm, tc in term._terms:
            acc[tm] = (acc.get(tm, 0) + tc) % p
    return Polynomial.from_dict(target, acc)


# -- text format ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-])|(\S))")


def _symmetric(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_monomial(ring: PolyRing, exps: Sequence[int]) -> str:
    parts = []
    for v, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: decreasing order, coefficients in the symmetric range."""
    if not f._terms:
        return "0"
    ring = f.ring
    out = []
    for k, (m, c) in enumerate(f._terms):
        c = _symmetric(c, ring.p)
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(ring, ring.unpack(m))
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``term (+/- term)*`` with ``term = [coeff][*]var[^exp](*var[^exp])*``."""
    tokens = []
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        if mt.group(6) is not None:
            raise ParseError(f"unexpected character {mt.group(6)!r} in {text!r}")
        for kind, g in zip(("num", "var", "pow", "mul", "sign"), mt.groups()[:5]):
            if g is not None:
                tokens.append((kind, g))
                break
        pos = mt.end()

    p = ring.p
    acc: dict[int, int] = {}
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected + or - between terms in {text!r}")
        first = False
        coeff = 1
        exps = [0] * ring.n
        seen_factor = False
        if i < len(tokens) and tokens[i][0] == "num":
            coeff = int(tokens[i][1])
            seen_factor = True
            i += 1
            if i < len(tokens) and tokens[i][0] == "mul":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "var":
                    raise ParseError(f"expected a variable after '*' in {text!r}")
        while i < len(tokens) and tokens[i][0] == "var":
            name = tokens[i][1]
            if name not in ring.index:
                raise ParseError(f"unknown variable {name!r}")
            i += 1
            e = 1
            if i < len(tokens) and tokens[i][0] == "pow":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "num":
                    raise ParseError(f"malformed exponent after {name!r}")
                e = int(tokens[i][1])
                i += 1
            exps[ring.index[name]] += e
            seen_factor = True
            if i < len(tokens) and tokens[i][0] == "mul":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "var":
                    raise ParseError(f"expected a variable after '*' in {text!r}")
            else:
                break
        if not seen_factor:
            raise ParseError(f"missing term in {text!r}")
        if any(e > MAX_EXPONENT for e in exps):
            raise ParseError(f"exponent exceeds {MAX_EXPONENT}")
        m = ring.pack(exps)
        acc[m] = (acc.get(m, 0) + sign * coeff) % p
    return Polynomial.from_dict(ring, acc)
