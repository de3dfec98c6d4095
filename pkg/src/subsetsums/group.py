"""Finite abelian groups as direct products of cyclic groups.

Elements are residue vectors.  The canonical index of an element is its
mixed-radix value with the *last* factor varying fastest, so in
``Z_2 x Z_3`` the element ``(1, 2)`` has index ``1*3 + 2 = 5``.  Every
serialized table, codeword coordinate and CSV row uses this order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence, Union

import numpy as np

DEFAULT_MAX_ORDER = 10**6


class GroupError(ValueError):
    """Invalid group specification or element."""


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]
    n: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", math.prod(self.orders))

    def __str__(self) -> str:
        return spec_string(self)

    def __len__(self) -> int:
        return self.n

    @cached_property
    def strides(self) -> np.ndarray:
        k = len(self.orders)
        s = np.ones(k, dtype=np.int64)
        for i in range(k - 2, -1, -1):
            s[i] = s[i + 1] * self.orders[i + 1]
        return s

    @cached_property
    def radices(self) -> np.ndarray:
        return np.asarray(self.orders, dtype=np.int64).reshape(-1)

    @cached_property
    def digits(self) -> np.ndarray:
        """(n, k) array; row i holds the residues of the element with index i."""
        idx = np.arange(self.n, dtype=np.int64)
        if not self.orders:
            return np.zeros((1, 0), dtype=np.int64)
        return (idx[:, None] // self.strides[None, :]) % self.radices[None, :]

    def encode(self, digits: np.ndarray) -> np.ndarray:
        """Canonical indices of residue rows (reduced modulo the orders first)."""
        if not self.orders:
            return np.zeros(digits.shape[:-1], dtype=np.int64)
        return (digits % self.radices) @ self.strides

    def shift_table(self, x: int, k: int = 1) -> np.ndarray:
        """``table[a] = index(a - k*x)`` for every index ``a``."""
        d = self.digits
        return self.encode(d - k * d[x])

    def multiple_table(self, k: int) -> np.ndarray:
        """``table[x] = index(k*x)``."""
        return self.encode(k * self.digits)

    @property
    def identity(self) -> int:
        return 0


@dataclass(frozen=True)
class Element:
    residues: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.residues)) + ")"


ElementLike = Union[Element, int]


def make_group(orders: Sequence[int], max_order: int = DEFAULT_MAX_ORDER) -> GroupSpec:
    orders = tuple(int(d) for d in orders)
    for d in orders:
        if d <= 1:
            raise GroupError(f"cyclic orders must be >= 2, got {d}")
    n = math.prod(orders)
    if n > max_order:
        raise GroupError(f"group order {n} exceeds the maximum {max_order}")
    return GroupSpec(orders)


def parse_group(text: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupSpec:
    """Parse ``"4"``, ``"2,2,2"`` or ``"6,10"``; an empty string is the trivial group."""
    text = text.strip()
    if not text:
        return make_group([], max_order)
    try:
        orders = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise GroupError(f"malformed group spec {text!r}") from None
    return make_group(orders, max_order)


def spec_string(G: GroupSpec) -> str:
    return ",".join(map(str, G.orders))


def element_from_index(G: GroupSpec, idx: int) -> Element:
    if not 0 <= idx < G.n:
        raise GroupError(f"index {idx} outside [0, {G.n})")
    res = []
    for d in reversed(G.orders):
        idx, r = divmod(idx, d)
        res.append(r)
    return Element(tuple(reversed(res)))


def element_to_index(G: GroupSpec, e: Element) -> int:
    _check(G, e)
    idx = 0
    for r, d in zip(e.residues, G.orders):
        idx = idx * d + r
    return idx


def elements(G: GroupSpec) -> Iterator[Element]:
    for i in range(G.n):
        yield element_from_index(G, i)


def _check(G: GroupSpec, e: Element) -> None:
    if len(e.residues) != len(G.orders):
        raise GroupError(f"element {e} does not belong to a group with orders {G.orders}")
    for r, d in zip(e.residues, G.orders):
        if not 0 <= r < d:
            raise GroupError(f"residue {r} out of range for Z_{d}")


def as_index(G: GroupSpec, a: ElementLike) -> int:
    """Accept an Element or a canonical index."""
    if isinstance(a, Element):
        return element_to_index(G, a)
    a = int(a)
    if not 0 <= a < G.n:
        raise GroupError(f"index {a} outside [0, {G.n})")
    return a


def add(G: GroupSpec, a: Element, b: Element) -> Element:
    _check(G, a)
    _check(G, b)
    return Element(tuple((x + y) % d for x, y, d in zip(a.residues, b.residues, G.orders)))


def neg(G: GroupSpec, a: Element) -> Element:
    _check(G, a)
    return Element(tuple(-x % d for x, d in zip(a.residues, G.orders)))


def scalar_mul(G: GroupSpec, k: int, a: Element) -> Element:
    _check(G, a)
    return Element(tuple(k * x % d for x, d in zip(a.residues, G.orders)))


def total_sum(G: GroupSpec) -> Element:
    # each residue r of Z_d appears n/d times in its coordinate
    return Element(tuple((d * (d - 1) // 2) * (G.n // d) % d for d in G.orders))


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(m: int, largest: int | None = None) -> Iterator[list[int]]:
    """Integer partitions of m, parts non-increasing, in reverse lexicographic order."""
    if largest is None:
        largest = m
    if m == 0:
        yield []
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield [first] + rest


def abelian_groups(n: int) -> list[GroupSpec]:
    """All isomorphism types of abelian groups of order n.

    One group per choice of exponent partition for each prime (primes
    ascending, partitions in reverse lexicographic order), written as the
    list of prime-power cyclic factors.  Order 8 gives Z_8, Z_4 x Z_2, Z_2^3.
    """
    if n < 1:
        raise GroupError("group order must be positive")
    groups: list[list[int]] = [[]]
    for p, e in sorted(_factorize(n).items()):
        groups = [g + [p**part for part in lam] for g in groups for lam in _partitions(e)]
    return [make_group(g) for g in groups]


def abelian_groups_upto(nmax: int, nmin: int = 1) -> list[GroupSpec]:
    return [G for n in range(nmin, nmax + 1) for G in abelian_groups(n)]
