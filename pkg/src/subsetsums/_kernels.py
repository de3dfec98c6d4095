"""Hot loops for subset-sum counting.

Two implementations of each kernel live here: a numba ``@njit`` version and
a pure-numpy version with the same signature.  The module-level names
``dp_residues`` and ``enumerate_sums`` point at the numba kernels unless
numba is missing or the environment variable ``SUBSETSUMS_DISABLE_NUMBA``
is set to a non-empty value other than ``0``.

Exact counts exceed 64 bits quickly (C(64, 32) is already 61 bits), so the
dynamic program runs modulo several primes just below 2**62 and the caller
reconstructs the exact integers by Chinese remaindering.  Sums of two
residues stay below 2**63, so plain int64 addition never overflows.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

_OFFSETS = (57, 87, 117, 143, 153, 167, 171, 195, 203, 273, 287, 317, 443, 483, 495, 575,
            581, 603, 633, 663, 765, 773, 777, 791, 813, 831, 923, 981, 993, 1001, 1007, 1017)
# the largest primes below 2**62, descending
PRIMES = tuple(2**62 - d for d in _OFFSETS)

_flag = os.environ.get("SUBSETSUMS_DISABLE_NUMBA", "")
NUMBA_REQUESTED = _flag in ("", "0")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None


def _dp_residues_py(table, mods, elems, digits, radices, strides):
    """Fold ``prod_{x in elems} (1 + t [x])`` into ``table`` in place.

    ``table`` has shape (P, H + 1, n) and holds residues modulo ``mods[p]``.
    For each element x the layers are updated from the top down, so layer
    h - 1 is still the pre-x state when layer h reads it.
    """
    P, H1, n = table.shape
    k = radices.shape[0]
    perm = np.empty(n, dtype=np.int64)
    seen = 0
    for x in elems:
        for a in range(n):
            s = 0
            for j in range(k):
                r = (digits[a, j] - digits[x, j]) % radices[j]
                s += r * strides[j]
            perm[a] = s
        seen += 1
        top = min(H1 - 1, seen)
        for p in range(P):
            m = mods[p]
            for h in range(top, 0, -1):
                for a in range(n):
                    v = table[p, h, a] + table[p, h - 1, perm[a]]
                    if v >= m:
                        v -= m
                    table[p, h, a] = v
    return table


def _enumerate_sums_py(n, h, digits, radices, strides):
    """Histogram of sums over all h-subsets of range(n), visited in lex order."""
    counts = np.zeros(n, dtype=np.int64)
    k = radices.shape[0]
    if h > n:
        return counts
    if h == 0:
        counts[0] = 1
        return counts
    comb = np.arange(h, dtype=np.int64)
    # partial[i] = digit sum of comb[0..i-1]
    partial = np.zeros((h + 1, k), dtype=np.int64)
    for i in range(h):
        for j in range(k):
            partial[i + 1, j] = (partial[i, j] + digits[comb[i], j]) % radices[j]
    while True:
        s = 0
        for j in range(k):
            s += partial[h, j] * strides[j]
        counts[s] += 1
        i = h - 1
        while i >= 0 and comb[i] == n - h + i:
            i -= 1
        if i < 0:
            break
        comb[i] += 1
        for t in range(i + 1, h):
            comb[t] = comb[t - 1] + 1
        for t in range(i, h):
            for j in range(k):
                partial[t + 1, j] = (partial[t, j] + digits[comb[t], j]) % radices[j]
    return counts


def dp_residues_numpy(table, mods, elems, digits, radices, strides):
    m = mods[:, None, None]
    top_cap = table.shape[1] - 1
    for seen, x in enumerate(elems, start=1):
        perm = ((digits - digits[x]) % radices) @ strides if radices.size else np.zeros(1, np.int64)
        top = min(top_cap, seen)
        v = table[:, 1:top + 1, :] + table[:, 0:top, perm]
        table[:, 1:top + 1, :] = np.where(v >= m, v - m, v)
    return table


def enumerate_sums_numpy(n, h, digits, radices, strides, chunk=1 << 16):
    counts = np.zeros(n, dtype=np.int64)
    if h > n:
        return counts
    if h == 0:
        counts[0] = 1
        return counts
    it = itertools.combinations(range(n), h)
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, chunk)),
                           dtype=np.int64)
        if flat.size == 0:
            break
        combos = flat.reshape(-1, h)
        if radices.size:
            sums = (digits[combos].sum(axis=1) % radices) @ strides
        else:
            sums = np.zeros(len(combos), dtype=np.int64)
        counts += np.bincount(sums, minlength=n)
    return counts


if HAVE_NUMBA:
    dp_residues_numba = numba.njit(cache=True, nogil=True)(_dp_residues_py)
    enumerate_sums_numba = numba.njit(cache=True, nogil=True)(_enumerate_sums_py)
else:  # pragma: no cover
    dp_residues_numba = dp_residues_numpy
    enumerate_sums_numba = enumerate_sums_numpy

USE_NUMBA = HAVE_NUMBA and NUMBA_REQUESTED
BACKEND = "numba" if USE_NUMBA else "numpy"

_BACKENDS = {
    "numba": (dp_residues_numba, enumerate_sums_numba),
    "numpy": (dp_residues_numpy, enumerate_sums_numpy),
}


def kernels(backend: str | None = None):
    """Return ``(dp_residues, enumerate_sums)`` for a backend name (default: active one)."""
    return _BACKENDS[backend or BACKEND]


def moduli_for(bound: int) -> np.ndarray:
    """Enough primes that their product exceeds ``bound``."""
    mods = []
    prod = 1
    for p in PRIMES:
        if prod > bound:
            break
        mods.append(p)
        prod *= p
    if prod <= bound:
        raise OverflowError(f"counts up to {bound.bit_length()} bits exceed the built-in moduli")
    return np.array(mods, dtype=np.int64)


def crt(residues: np.ndarray, mods: np.ndarray) -> np.ndarray:
    """Combine residues of shape (P, ...) into an object array of exact ints."""
    mods_py = [int(m) for m in mods]
    M = 1
    for m in mods_py:
        M *= m
    acc = np.zeros(residues.shape[1:], dtype=object)
    for r, m in zip(residues, mods_py):
        Mi = M // m
        coef = Mi * pow(Mi, -1, m)
        acc = acc + r.astype(object) * coef
    return acc % M
