import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxmult import _kernels
from maxmult._kernels import nullspace, rank, rref

import oracles

PRIMES = [2, 3, 7, 32003, 2147483647]

BACKENDS = ["numpy"] + (["numba"] if _kernels.numba is not None else [])


@st.composite
def matrices(draw, max_dim=8):
    p = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(1, max_dim))
    # sparse-ish entries make rank deficiency common
    entry = st.one_of(st.just(0), st.just(1), st.integers(0, p - 1))
    data = draw(st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return np.array(data, dtype=np.int64).reshape(rows, cols), p


def oracle_rank(a, p):
    return len(oracles._row_reduce([{j: int(v) for j, v in enumerate(row)} for row in a], p))


def test_rref_small():
    red, piv = rref([[2, 4], [1, 3]], 7, backend="numpy")
    assert red.tolist() == [[1, 0], [0, 1]]
    assert piv.tolist() == [0, 1]


def test_unknown_backend():
    with pytest.raises(ValueError):
        rref([[1]], 7, backend="fortran")
    with pytest.raises(ValueError):
        rref([1, 2], 7)


@pytest.mark.parametrize("backend", BACKENDS)
def test_nullspace_of_empty_matrix(backend):
    assert nullspace(np.zeros((0, 3), dtype=np.int64), 7, backend).tolist() == np.eye(3).tolist()
    assert rank(np.zeros((0, 3), dtype=np.int64), 7, backend) == 0


@settings(max_examples=300)
@given(matrices())
def test_backends_agree(ap):
    a, p = ap
    if "numba" not in BACKENDS:
        return
    r1, p1 = rref(a, p, "numpy")
    r2, p2 = rref(a, p, "numba")
    assert np.array_equal(r1, r2)
    assert np.array_equal(p1, p2)


@settings(max_examples=200)
@given(matrices())
def test_rank_matches_oracle(ap):
    a, p = ap
    for backend in BACKENDS:
        assert rank(a, p, backend) == oracle_rank(a, p)


@settings(max_examples=200)
@given(matrices())
def test_rref_shape(ap):
    a, p = ap
    for backend in BACKENDS:
        red, piv = rref(a, p, backend)
        for i, c in enumerate(piv):
            assert red[i, c] == 1
            assert all(red[k, c] == 0 for k in range(red.shape[0]) if k != i)
        assert not red[len(piv):].any()


@settings(max_examples=200)
@given(matrices())
def test_nullspace_is_kernel(ap):
    a, p = ap
    for backend in BACKENDS:
        ns = nullspace(a, p, backend)
        assert ns.shape == (a.shape[1] - rank(a, p, backend), a.shape[1])
        if ns.size and a.size:
            # object dtype avoids int64 overflow for p near 2^31
            prod = a.astype(object) @ ns.astype(object).T
            assert all(int(v) % p == 0 for v in prod.flat)
        if ns.size:
            assert rank(ns, p, backend) == ns.shape[0]


def test_disable_flag_selects_numpy():
    env = dict(os.environ, MAXMULT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from maxmult import _kernels; print(_kernels.USE_NUMBA)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_numpy_fallback_gives_same_answers():
    code = ("from maxmult import corpus\n"
            "from maxmult.reduction import s_invariant, depth_of\n"
            "e = corpus.catalecticant(2, 2, 3)\n"
            "print(s_invariant(e.ideal).value, depth_of(e.ideal))\n")
    outs = set()
    for flag in ("0", "1"):
        env = dict(os.environ, MAXMULT_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        outs.add(res.stdout)
    assert len(outs) == 1
