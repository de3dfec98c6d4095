import json
import math

import numpy as np
import pytest

from subsetsums import codes
from subsetsums.counting import LimitExceeded, count_dp
from subsetsums.group import abelian_groups_upto, make_group


def test_codebook_examples(z4):
    assert codes.build_codebook(z4, 2, 0).bitstrings() == ["0101"]
    assert codes.build_codebook(z4, 2, 1).bitstrings() == ["0011", "1100"]
    G = make_group([2, 3])
    for a in range(6):
        assert codes.build_codebook(G, 1, a).bitstrings() == ["".join("1" if i == a else "0" for i in range(6))]


def test_min_distance_examples(z4):
    assert codes.min_pairwise_hamming(codes.build_codebook(z4, 2, 1)) == 4
    assert codes.min_pairwise_hamming(codes.build_codebook(z4, 2, 0)) is None
    assert codes.min_pairwise_hamming(codes.build_codebook(make_group([5]), 5, 1)) is None


def test_codebook_sorted_and_unique():
    book = codes.build_codebook(make_group([10]), 4, 3)
    words = book.bitstrings()
    assert words == sorted(words)
    assert len(set(words)) == len(words)


@pytest.mark.parametrize("G", abelian_groups_upto(14, nmin=4), ids=str)
def test_codebook_properties(G):
    T = count_dp(G, G.n)
    for h in range(2, G.n - 1):
        for book in codes.build_all_codebooks(G, h):
            assert len(book) == T[h][book.a]
            assert (book.words.sum(axis=1) == h).all()
            d = codes.min_pairwise_hamming(book)
            if len(book) >= 2:
                assert d >= 4
                assert d % 2 == 0


def test_all_codebooks_match_single():
    G = make_group([3, 3])
    books = codes.build_all_codebooks(G, 4)
    for a in range(9):
        assert books[a].bitstrings() == codes.build_codebook(G, 4, a).bitstrings()


def test_distance_intersection_identity():
    rng = np.random.default_rng(11)
    book = codes.build_codebook(make_group([12]), 5, 7)
    W = book.words
    for _ in range(200):
        i, j = rng.integers(0, len(W), 2)
        inter = int((W[i] & W[j]).sum())
        assert codes.hamming(W[i], W[j]) == 2 * (5 - inter)


def test_sampled_distance_is_deterministic():
    book = codes.build_codebook(make_group([16]), 8, 0)
    m = len(book)
    assert m * (m - 1) // 2 > 1000
    d1 = codes.min_pairwise_hamming(book, pair_threshold=1000, sample_pairs=5000, seed=7)
    d2 = codes.min_pairwise_hamming(book, pair_threshold=1000, sample_pairs=5000, seed=7)
    exhaustive = codes.min_pairwise_hamming(book)
    assert d1 == d2 >= exhaustive >= 4


def test_exhaustive_distance_matches_naive():
    book = codes.build_codebook(make_group([2, 4]), 4, 2)
    W = book.words
    naive = min(codes.hamming(W[i], W[j]) for i in range(len(W)) for j in range(i + 1, len(W)))
    assert codes.min_pairwise_hamming(book) == naive


def test_codebook_limit():
    with pytest.raises(LimitExceeded):
        codes.build_codebook(make_group([30]), 15, 0)


def test_codebook_file_formats(z4):
    book = codes.build_codebook(z4, 2, 1)
    assert book.to_text() == "n=4 h=2 a=1 group=4\n0011\n1100\n"
    assert book.to_text(4).splitlines()[0] == "n=4 h=2 a=1 group=4 min_distance=4"
    assert codes.build_codebook(z4, 2, 0).to_text(None).splitlines()[0].endswith("min_distance=inf")
    doc = json.loads(book.to_json(4))
    assert doc["words"] == ["0011", "1100"] and doc["min_distance"] == 4


def test_empty_family_file():
    # no 2-subset of Z_2 x Z_2 sums to the identity
    book = codes.build_codebook(make_group([2, 2]), 2, 0)
    assert len(book) == 0
    assert book.to_text(None) == "n=4 h=2 a=0 group=2,2 min_distance=inf\n"


def test_code_size_examples():
    r = codes.check_code_size_bounds(make_group([10]), count_dp(make_group([10]), 6))
    assert r.h_star == 6 and r.pigeonhole_floor == 21
    assert float(r.upper_bound) == 50.4
    assert 21 <= r.max_count <= 50 and r.floor_holds and r.upper_holds
    G = make_group([2, 2, 2])
    r = codes.check_code_size_bounds(G, count_dp(G, 5))
    assert r.pigeonhole_floor == 7 and float(r.upper_bound) == 17.5
    assert 7 <= r.max_count <= 17


@pytest.mark.parametrize("G", abelian_groups_upto(24, nmin=8), ids=str)
def test_code_size_sweep(G):
    n = G.n
    r = codes.check_code_size_bounds(G, count_dp(G, n // 2 + 1))
    hs = n // 2 + 1
    assert -(-math.comb(n, hs) // n) <= r.max_count
    assert r.max_count * n <= 2 * math.comb(n, n // 2)
