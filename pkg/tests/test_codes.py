from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetguess.codes import (
    AlistError,
    ParityCheckCode,
    check_expansion,
    enumerate_codewords,
    gf2_nullspace_basis,
    gf2_rank,
    hamming_code,
    has_unique_neighbor,
    is_codeword,
    load_alist,
    neighborhood,
    random_codeword,
    random_regular_code,
    save_alist,
    tanner_code,
)

from conftest import single_check

TOY_ALIST = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n"


def brute_codewords(code):
    H = code.to_matrix()
    return sorted(
        w for w in itertools.product((0, 1), repeat=code.n) if not (H @ np.array(w) % 2).any()
    )


# ---------------------------------------------------------------- alist


def test_load_toy_alist():
    code = load_alist(TOY_ALIST)
    assert (code.n, code.m) == (3, 2)
    assert code.check_neighborhoods[0] == (0, 1)
    assert code.check_neighborhoods[1] == (1, 2)
    assert code.bit_neighborhoods == ((0,), (0, 1), (1,))


def test_alist_round_trip_is_canonical():
    code = load_alist(TOY_ALIST)
    assert save_alist(code) == TOY_ALIST
    assert save_alist(load_alist(save_alist(code))) == TOY_ALIST


def test_hamming_alist():
    text = save_alist(hamming_code())
    code = load_alist(text)
    assert (code.n, code.m) == (7, 3)
    assert code.check_degrees == [4, 4, 4]
    assert code.check_neighborhoods == hamming_code().check_neighborhoods


def test_alist_rejects_empty_check():
    code = ParityCheckCode.from_checks(3, [[0, 1], []])
    with pytest.raises(ValueError):
        save_alist(code)


@pytest.mark.parametrize(
    "text, line",
    [
        ("3\n", 1),
        ("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 4\n", 9),
        ("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 0\n", 9),
        ("3 2\n2 2\n1 2\n2 2\n", 3),
        ("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n7\n", 10),
        ("3 2\n2 2\n1 2 1\n2 2\n2 0\n1 2\n2 0\n1 2\n2 3\n", 5),
    ],
)
def test_alist_errors_name_the_line(text, line):
    with pytest.raises(AlistError) as err:
        load_alist(text)
    assert err.value.line == line


def test_alist_blank_lines_keep_numbering():
    text = "3 2\n\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 x\n"
    with pytest.raises(AlistError) as err:
        load_alist(text)
    assert err.value.line == 10


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(2, 12), st.integers(0, 2**32))
def test_alist_round_trip_random_matrices(m, n, seed):
    rng = np.random.default_rng(seed)
    H = (rng.random((m, n)) < 0.4).astype(int)
    H[np.arange(m), rng.integers(0, n, m)] = 1
    code = ParityCheckCode.from_matrix(H)
    again = load_alist(save_alist(code))
    assert again.check_neighborhoods == code.check_neighborhoods
    assert again.bit_neighborhoods == code.bit_neighborhoods


# ---------------------------------------------------------- constructors


def test_code_invariants_rejected():
    with pytest.raises(ValueError):
        ParityCheckCode.from_checks(3, [[0, 0, 1]])
    with pytest.raises(ValueError):
        ParityCheckCode.from_checks(3, [[0, 5]])
    with pytest.raises(ValueError):
        ParityCheckCode.from_checks(4, [[0, 1], [2, 3]], dv=2, dc=2)


def test_random_regular_200_3_4():
    code = random_regular_code(200, 3, 4, 1)
    assert code.m == 150
    assert set(code.bit_degrees) == {3} and set(code.check_degrees) == {4}


def test_random_regular_matching():
    code = random_regular_code(4, 1, 2, 99)
    assert code.m == 2
    assert sorted(i for nb in code.check_neighborhoods for i in nb) == [0, 1, 2, 3]


def test_random_regular_is_deterministic():
    a = random_regular_code(60, 3, 6, 17)
    b = random_regular_code(60, 3, 6, 17)
    assert a.edges() == b.edges()
    assert a.edges() != random_regular_code(60, 3, 6, 18).edges()


def test_random_regular_divisibility():
    with pytest.raises(ValueError):
        random_regular_code(10, 3, 4, 0)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(12, 3, 4), (20, 3, 5), (24, 3, 6), (10, 2, 4), (9, 2, 3)]), st.integers(0, 2**40))
def test_random_regular_properties(params, seed):
    n, dv, dc = params
    code = random_regular_code(n, dv, dc, seed)
    assert set(code.bit_degrees) == {dv} and set(code.check_degrees) == {dc}
    edges = {(a, i) for a, nb in enumerate(code.check_neighborhoods) for i in nb}
    assert edges == {(a, i) for i, nb in enumerate(code.bit_neighborhoods) for a in nb}
    k = code.n - gf2_rank(code)
    assert k >= n - code.m


def test_tanner_code():
    code = tanner_code()
    assert (code.n, code.m) == (155, 93)
    assert set(code.bit_degrees) == {3} and set(code.check_degrees) == {5}
    assert gf2_rank(code) == 91
    assert code.n - gf2_rank(code) == 64
    assert is_codeword(code, (0,) * 155)


def test_tanner_blocks_are_circulant_permutations():
    H = tanner_code().to_matrix()
    for i in range(3):
        for j in range(5):
            block = H[31 * i : 31 * i + 31, 31 * j : 31 * j + 31]
            shift = (5**i * 2**j) % 31
            expected = np.roll(np.eye(31, dtype=int), shift, axis=1)
            assert (block == expected).all()


# ------------------------------------------------------------ GF(2)


def test_nullspace_identity_is_empty():
    code = ParityCheckCode.from_matrix(np.eye(3, dtype=int))
    assert gf2_nullspace_basis(code) == []
    assert enumerate_codewords(code) == [(0, 0, 0)]


def test_single_check_codewords():
    code = single_check(3)
    assert len(gf2_nullspace_basis(code)) == 2
    assert enumerate_codewords(code) == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert enumerate_codewords(code) == brute_codewords(code)


def test_hamming_codewords():
    code = hamming_code()
    words = enumerate_codewords(code)
    assert len(gf2_nullspace_basis(code)) == 4
    assert words == brute_codewords(code)
    assert len(words) == 16
    assert min(sum(w) for w in words if any(w)) == 3


def test_is_codeword_basics():
    code = hamming_code()
    assert is_codeword(code, (0,) * 7)
    assert not is_codeword(code, (1, 0, 0, 0, 0, 0, 0))
    for w in gf2_nullspace_basis(code):
        assert is_codeword(code, w)
    with pytest.raises(ValueError):
        is_codeword(code, (0,) * 6)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5), st.integers(3, 10), st.integers(0, 2**32))
def test_codewords_match_brute_force(m, n, seed):
    rng = np.random.default_rng(seed)
    H = (rng.random((m, n)) < 0.5).astype(int)
    code = ParityCheckCode.from_matrix(H)
    words = enumerate_codewords(code)
    assert words == brute_codewords(code)
    assert len(gf2_nullspace_basis(code)) == n - gf2_rank(code)
    rw = random_codeword(code, rng)
    assert is_codeword(code, rw)


def test_enumerate_codewords_budget():
    with pytest.raises(Exception):
        enumerate_codewords(tanner_code())


# ------------------------------------------------------------ expansion


def brute_expansion(code, alpha, delta):
    kmax = int(alpha * code.n)
    for size in range(1, kmax + 1):
        for S in itertools.combinations(range(code.n), size):
            nb = {a for i in S for a in code.bit_neighborhoods[i]}
            if len(nb) < delta * code.dv * size:
                return False
    return True


def test_expansion_single_check_violated():
    cert = check_expansion(single_check(3), Fraction(1), Fraction(9, 10))
    assert cert.status == "violated" and not cert.certified
    assert len(cert.witness) == 2
    assert len(neighborhood(single_check(3), cert.witness)) < Fraction(9, 10) * 2


def test_expansion_matching_certified():
    code = ParityCheckCode.from_checks(4, [[0, 1], [2, 3]])
    cert = check_expansion(code, Fraction(1, 4), Fraction(1))
    assert cert.certified and cert.witness is None


def test_expansion_matches_brute_force_on_n16():
    code = random_regular_code(16, 3, 4, 3)
    alpha, delta = Fraction(1, 4), Fraction(51, 100)
    cert = check_expansion(code, alpha, delta)
    assert cert.certified == brute_expansion(code, alpha, delta)
    assert cert.subsets_checked <= sum(
        len(list(itertools.combinations(range(16), s))) for s in range(1, 5)
    )


def test_expansion_budget_is_never_a_pass():
    cert = check_expansion(tanner_code(), Fraction(1, 10), Fraction(1, 2), budget=1000)
    assert cert.status == "budget_exceeded" and not cert.certified


@pytest.mark.parametrize("seed", range(6))
def test_unique_neighbor_on_certified_codes(seed):
    code = random_regular_code(16, 3, 4, seed)
    for alpha, delta in [(Fraction(1, 8), Fraction(2, 3)), (Fraction(3, 16), Fraction(3, 5))]:
        cert = check_expansion(code, alpha, delta)
        assert cert.certified == brute_expansion(code, alpha, delta)
        if cert.certified:
            for size in range(1, cert.max_subset_size + 1):
                for S in itertools.combinations(range(code.n), size):
                    assert has_unique_neighbor(code, S)
