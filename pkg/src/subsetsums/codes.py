"""Families F_a(h) as constant-weight binary codes.

Bit i of a codeword is the canonical element index i.  Two distinct
h-subsets with the same sum cannot share h-1 elements (the last element
would be forced), so every family is a code of minimum distance >= 4.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .counting import DEFAULT_ENUM_LIMIT, CountTable, LimitExceeded
from .group import ElementLike, GroupSpec, as_index, spec_string

DEFAULT_PAIR_THRESHOLD = 10**6
DEFAULT_SAMPLE_PAIRS = 10**5
DEFAULT_SEED = 0


@dataclass(frozen=True, eq=False)
class Codebook:
    group: GroupSpec
    h: int
    a: int
    words: np.ndarray  # (m, n) uint8, rows sorted lexicographically

    def __len__(self) -> int:
        return len(self.words)

    def bitstrings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in w) for w in self.words]

    def header(self) -> str:
        return f"n={self.group.n} h={self.h} a={self.a} group={spec_string(self.group)}"

    def to_text(self, distance: int | None | str = "") -> str:
        head = self.header()
        if distance != "":
            head += f" min_distance={'inf' if distance is None else distance}"
        return "\n".join([head, *self.bitstrings()]) + "\n"

    def to_json(self, distance: int | None | str = "") -> str:
        doc = {
            "group": spec_string(self.group),
            "n": self.group.n,
            "h": self.h,
            "a_index": self.a,
            "words": self.bitstrings(),
        }
        if distance != "":
            doc["min_distance"] = "inf" if distance is None else distance
        return json.dumps(doc, indent=1) + "\n"


def _sorted_words(G: GroupSpec, subsets: np.ndarray) -> np.ndarray:
    m = len(subsets)
    words = np.zeros((m, G.n), dtype=np.uint8)
    if m:
        words[np.repeat(np.arange(m), subsets.shape[1]), subsets.ravel()] = 1
        # lexsort uses the last key as primary: column 0 must come last
        words = words[np.lexsort(words.T[::-1])]
    return words


def _enumerate(G: GroupSpec, h: int, enum_limit: int, chunk: int = 1 << 16):
    """Yield (subsets, sums) chunks over all h-subsets in lexicographic order."""
    if math.comb(G.n, h) > enum_limit:
        raise LimitExceeded(f"C({G.n},{h}) subsets exceed the enumeration limit {enum_limit}")
    it = itertools.combinations(range(G.n), h)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        subsets = np.array(block, dtype=np.int64).reshape(len(block), h)
        sums = G.encode(G.digits[subsets].sum(axis=1))
        yield subsets, sums


def build_codebook(G: GroupSpec, h: int, a: ElementLike,
                   enum_limit: int = DEFAULT_ENUM_LIMIT) -> Codebook:
    a = as_index(G, a)
    if not 0 <= h <= G.n:
        raise ValueError(f"h={h} outside [0, {G.n}]")
    parts = [s[sums == a] for s, sums in _enumerate(G, h, enum_limit)]
    subsets = np.concatenate(parts) if parts else np.zeros((0, h), dtype=np.int64)
    return Codebook(G, h, a, _sorted_words(G, subsets))


def build_all_codebooks(G: GroupSpec, h: int, enum_limit: int = DEFAULT_ENUM_LIMIT
                        ) -> list[Codebook]:
    """Codebooks for every a, from a single enumeration pass."""
    chunks = list(_enumerate(G, h, enum_limit))
    if chunks:
        subsets = np.concatenate([c[0] for c in chunks])
        sums = np.concatenate([c[1] for c in chunks])
    else:
        subsets, sums = np.zeros((0, h), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return [Codebook(G, h, a, _sorted_words(G, subsets[sums == a])) for a in range(G.n)]


def hamming(u: np.ndarray, v: np.ndarray) -> int:
    return int(np.count_nonzero(u != v))


def min_pairwise_hamming(book: Codebook, pair_threshold: int = DEFAULT_PAIR_THRESHOLD,
                         sample_pairs: int = DEFAULT_SAMPLE_PAIRS, seed: int = DEFAULT_SEED
                         ) -> int | None:
    """Minimum distance over unordered pairs, or None when there are fewer than 2 words.

    Exhaustive when the number of pairs is at most ``pair_threshold``;
    otherwise ``sample_pairs`` random pairs are drawn with a fixed seed.
    """
    W = book.words.astype(np.int64)
    m = len(W)
    if m < 2:
        return None
    weights = W.sum(axis=1)
    if m * (m - 1) // 2 <= pair_threshold:
        best = None
        step = 1024
        for start in range(0, m, step):
            blk = W[start:start + step]
            # |u xor v| = |u| + |v| - 2 <u, v>
            d = weights[start:start + step, None] + weights[None, :] - 2 * (blk @ W.T)
            rows, cols = np.triu_indices(len(blk), 1, m - start)
            if rows.size:
                cur = int(d[rows, cols + start].min())
                best = cur if best is None else min(best, cur)
        return best
    rng = np.random.default_rng(seed)
    i = rng.integers(0, m, sample_pairs)
    j = rng.integers(0, m - 1, sample_pairs)
    j = j + (j >= i)
    d = np.count_nonzero(W[i] != W[j], axis=1)
    return int(d.min())


@dataclass(frozen=True)
class CodeSizeReport:
    group: str
    n: int
    h_star: int
    max_count: int
    pigeonhole_floor: int
    lower_bound: Fraction
    upper_bound: Fraction
    floor_holds: bool
    upper_holds: bool

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "h_star": self.h_star,
            "max_count": str(self.max_count),
            "pigeonhole_floor": str(self.pigeonhole_floor),
            "lower_bound": str(self.lower_bound),
            "upper_bound": str(self.upper_bound),
            "floor_holds": self.floor_holds,
            "upper_holds": self.upper_holds,
        }


def check_code_size_bounds(G: GroupSpec, counts: CountTable) -> CodeSizeReport:
    """Place max_a f_a(h*) with h* = n//2 + 1 between C(n,h*)/n and (2/n) C(n, n//2).

    C(n,h*)/n is also the known lower bound for the best code of this
    length; for a single family it is forced by averaging over the n sums.
    """
    n = G.n
    hs = n // 2 + 1
    top = max(counts.row(hs))
    total = math.comb(n, hs)
    lower = Fraction(total, n)
    upper = Fraction(2 * math.comb(n, n // 2), n)
    return CodeSizeReport(spec_string(G), n, hs, top, -(-total // n), lower, upper,
                          top * n >= total, top <= upper)
