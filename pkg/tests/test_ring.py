from collections import defaultdict

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxmult.ring import (
    ExponentOverflow,
    MAX_EXPONENT,
    MonomialOrder,
    ParseError,
    PolyRing,
    RingError,
    format_polynomial,
    is_prime,
    substitute,
)

from conftest import polynomials

R = PolyRing(["x", "y", "z"])


def naive_mul(f, g):
    """Schoolbook product on (coeff, exponents) lists; shares nothing with the packed code."""
    p = f.ring.p
    acc = defaultdict(int)
    for ca, ea in f.terms:
        for cb, eb in g.terms:
            e = tuple(a + b for a, b in zip(ea, eb))
            acc[e] = (acc[e] + ca * cb) % p
    return {e: c for e, c in acc.items() if c}


def as_dict(f):
    return {e: c for c, e in f.terms}


def test_cancellation():
    x, y, _ = R.gens()
    assert (x + y) + (x - y) == x.scale(2)


def test_difference_of_squares():
    x, y, _ = R.gens()
    assert (x + y) * (x - y) == R.parse("x^2 - y^2")


def test_frobenius_in_char_two():
    S = PolyRing(["x", "y"], 2)
    x, y = S.gens()
    assert (x + y) * (x + y) == S.parse("x^2 + y^2")


def test_grevlex_compare():
    assert R.compare((2, 1, 0), (1, 2, 0)) > 0
    assert R.compare((2, 1, 0), (2, 1, 0)) == 0


def test_lex_ignores_degree():
    S = PolyRing(["x", "y"], order="lex")
    assert S.compare((0, 1), (5, 0)) < 0


def test_grevlex_last_variable_rule():
    # x*z < y^2 in grevlex, x*z > y^2 in lex
    assert R.compare((1, 0, 1), (0, 2, 0)) < 0
    assert R.with_order("lex").compare((1, 0, 1), (0, 2, 0)) > 0


def test_elimination_order_ranks_block_first():
    S = PolyRing(["t", "x", "y"], order=MonomialOrder.elimination(1))
    assert S.compare((1, 0, 0), (0, 5, 5)) > 0
    assert S.compare((0, 2, 0), (0, 1, 1)) > 0


def test_round_trip():
    text = "x^2*y - 3*z^3"
    assert format_polynomial(R.parse(text)) == text


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        R.parse("w + 1")


def test_malformed_exponent():
    with pytest.raises(ParseError):
        R.parse("x^")
    with pytest.raises(ParseError):
        R.parse("x^-2")


def test_zero_formats_as_zero():
    assert str(R.parse("x - x")) == "0"
    assert R.parse("x - x").is_zero()


def test_coefficients_reduce_mod_p():
    assert R.parse("32004*x") == R.parse("x")
    assert str(R.parse("32002*x")) == "-x"


def test_non_prime_characteristic():
    with pytest.raises(RingError):
        PolyRing(["x"], 32004)


def test_duplicate_variables():
    with pytest.raises(RingError):
        PolyRing(["x", "x"])


def test_exponent_overflow():
    x = R.var("x")
    big = x ** MAX_EXPONENT
    with pytest.raises(ExponentOverflow):
        big * x


def test_is_prime():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(32003)


def test_substitute():
    S = PolyRing(["u", "v"])
    f = R.parse("x*y + z^2")
    u, v = S.gens()
    assert substitute(f, [u, v, u + v], S) == S.parse("u^2 + 3*u*v + v^2")


def test_var_by_index():
    assert R.var(2) == R.var("z")
    with pytest.raises(RingError):
        R.var(3)


def test_homogeneity_and_degree():
    assert R.parse("x^2 + y*z").is_homogeneous()
    assert not R.parse("x^2 + y").is_homogeneous()
    assert R.parse("x^2 + y").degree() == 2


@settings(max_examples=1000)
@given(polynomials(R), polynomials(R), polynomials(R))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(polynomials(R), polynomials(R))
def test_product_matches_schoolbook(a, b):
    assert as_dict(a * b) == naive_mul(a, b)


@given(polynomials(R), polynomials(R))
def test_lead_term_multiplicative(a, b):
    if a and b:
        assert (a * b).lead_exponents() == tuple(
            u + v for u, v in zip(a.lead_exponents(), b.lead_exponents()))


@given(polynomials(R))
def test_terms_strictly_decreasing(a):
    exps = [e for _, e in a.terms]
    assert all(R.compare(u, v) > 0 for u, v in zip(exps, exps[1:]))
    assert all(c for c, _ in a.terms)


@given(polynomials(R))
def test_parse_format_identity(a):
    assert R.parse(format_polynomial(a)) == a


@given(polynomials(PolyRing(["x", "y"], order="lex")))
def test_parse_format_identity_lex(a):
    assert a.ring.parse(str(a)) == a


@given(st.lists(st.integers(0, 20), min_size=3, max_size=3))
def test_pack_unpack(exps):
    assert R.unpack(R.pack(exps)) == tuple(exps)
