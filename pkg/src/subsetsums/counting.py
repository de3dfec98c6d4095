"""Exact counts f_a(h) = #{h-subsets of G with sum a}.

Three independent routes produce the same table:

* :func:`count_brute_force` enumerates every h-subset,
* :func:`count_dp` extracts coefficients from ``prod_x (1 + t [x])`` in the
  group semiring (the production method),
* :func:`count_via_recurrence` builds rows bottom-up from the alternating
  recurrence in :func:`f_via_lemma`, never touching the DP.

Counts are Python ints throughout; no rounding ever happens.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .group import ElementLike, GroupSpec, as_index, spec_string, total_sum, element_to_index

DEFAULT_ENUM_LIMIT = 2 * 10**6
DEFAULT_DP_LIMIT = 10**9


class LimitExceeded(RuntimeError):
    """A configured work limit would be exceeded."""


class ExactnessError(ArithmeticError):
    """An exact-arithmetic invariant failed; this indicates a bug."""


@dataclass(frozen=True)
class CountTable:
    group: GroupSpec
    hmax: int
    counts: tuple[tuple[int, ...], ...]

    def row(self, h: int) -> tuple[int, ...]:
        if not 0 <= h <= self.hmax:
            raise KeyError(f"row h={h} not in table (hmax={self.hmax})")
        return self.counts[h]

    def f(self, h: int, a: int) -> int:
        return self.row(h)[a]

    def __getitem__(self, h: int) -> tuple[int, ...]:
        return self.row(h)

    def first_difference(self, other: "CountTable") -> tuple[int, int] | None:
        for h in range(min(self.hmax, other.hmax) + 1):
            for a, (u, v) in enumerate(zip(self.counts[h], other.counts[h])):
                if u != v:
                    return h, a
        return None

    def _hs(self, hs) -> list[int]:
        return list(range(self.hmax + 1)) if hs is None else sorted(hs)

    def to_csv(self, hs=None) -> str:
        """Rows sorted by (h, a_index); ``hs`` restricts the emitted rows."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["group", "h", "a_index", "count"])
        g = spec_string(self.group)
        for h in self._hs(hs):
            for a, c in enumerate(self.counts[h]):
                w.writerow([g, h, a, str(c)])
        return buf.getvalue()

    def to_json(self, hs=None) -> str:
        doc = {
            "group": spec_string(self.group),
            "orders": list(self.group.orders),
            "n": self.group.n,
            "hmax": self.hmax,
            "rows": [{"h": h, "counts": [str(c) for c in self.counts[h]]} for h in self._hs(hs)],
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CountTable":
        from .group import parse_group

        doc = json.loads(text)
        G = parse_group(doc["group"])
        hmax = int(doc["hmax"])
        table = [()] * (hmax + 1)
        for r in doc["rows"]:
            table[r["h"]] = tuple(int(c) for c in r["counts"])
        return cls(G, hmax, tuple(table))

    @classmethod
    def from_csv(cls, text: str) -> "CountTable":
        from .group import parse_group

        rows = list(csv.DictReader(io.StringIO(text)))
        G = parse_group(rows[0]["group"])
        hmax = max(int(r["h"]) for r in rows)
        table: list[list[int]] = [[] for _ in range(hmax + 1)]
        for r in rows:
            h, a = int(r["h"]), int(r["a_index"])
            if not table[h]:
                table[h] = [0] * G.n
            table[h][a] = int(r["count"])
        return cls(G, hmax, tuple(map(tuple, table)))


def identity_row(G: GroupSpec) -> tuple[int, ...]:
    return tuple(1 if a == 0 else 0 for a in range(G.n))


def full_row(G: GroupSpec) -> tuple[int, ...]:
    s = element_to_index(G, total_sum(G))
    return tuple(1 if a == s else 0 for a in range(G.n))


def _closed_form(G: GroupSpec, h: int) -> tuple[int, ...] | None:
    if h == 0:
        return identity_row(G)
    if h == G.n:
        return full_row(G)
    return None


def count_brute_force(G: GroupSpec, h: int, enum_limit: int = DEFAULT_ENUM_LIMIT,
                      backend: str | None = None) -> tuple[int, ...]:
    """One row of f by enumerating all h-subsets in lexicographic index order."""
    n = G.n
    if not 0 <= h <= n:
        raise ValueError(f"h={h} outside [0, {n}]")
    closed = _closed_form(G, h)
    if closed is not None:
        return closed
    if math.comb(n, h) > enum_limit:
        raise LimitExceeded(f"C({n},{h}) subsets exceed the enumeration limit {enum_limit}; use count_dp")
    _, enum = _kernels.kernels(backend)
    hist = enum(n, h, G.digits, G.radices, G.strides)
    return tuple(int(c) for c in hist)


def _dp_rows(G: GroupSpec, hmax: int, elems: np.ndarray, backend: str | None) -> np.ndarray:
    """Object array (hmax+1, n): subset-sum counts over the given element indices."""
    n = G.n
    m = len(elems)
    bound = max((math.comb(m, h) for h in range(min(hmax, m) + 1)), default=1)
    mods = _kernels.moduli_for(bound)
    table = np.zeros((len(mods), hmax + 1, n), dtype=np.int64)
    table[:, 0, 0] = 1
    dp, _ = _kernels.kernels(backend)
    dp(table, mods, np.asarray(elems, dtype=np.int64), G.digits, G.radices, G.strides)
    return _kernels.crt(table, mods)


def count_dp(G: GroupSpec, hmax: int, dp_limit: int = DEFAULT_DP_LIMIT,
             backend: str | None = None) -> CountTable:
    n = G.n
    if not 0 <= hmax <= n:
        raise ValueError(f"hmax={hmax} outside [0, {n}]")
    if n * n * hmax > dp_limit:
        raise LimitExceeded(f"n^2*hmax = {n * n * hmax} exceeds the DP limit {dp_limit}")
    rows = _dp_rows(G, hmax, np.arange(n), backend)
    out = []
    for h in range(hmax + 1):
        closed = _closed_form(G, h)
        out.append(closed if closed is not None else tuple(int(c) for c in rows[h]))
    return CountTable(G, hmax, tuple(out))


def g_terminal(G: GroupSpec, h: int, a: ElementLike, x: ElementLike) -> int:
    """1 if h*x = a else 0."""
    if h < 1:
        raise ValueError("h must be >= 1")
    a, x = as_index(G, a), as_index(G, x)
    return int(G.multiple_table(h)[x] == a)


def g_terminal_sum(G: GroupSpec, h: int, a: ElementLike) -> int:
    """Number of x with h*x = a."""
    a = as_index(G, a)
    return int(np.count_nonzero(G.multiple_table(h) == a))


@lru_cache(maxsize=4096)
def _excluded_row(G: GroupSpec, x: int, size: int) -> tuple[int, ...]:
    # sums of size-subsets of G \ {x}
    elems = np.array([y for y in range(G.n) if y != x], dtype=np.int64)
    rows = _dp_rows(G, size, elems, None)
    return tuple(int(c) for c in rows[size])


def g_value(G: GroupSpec, h: int, i: int, a: ElementLike, x: ElementLike) -> int:
    """Number of (h-i)-subsets that contain x and sum to a - i*x.

    Dropping x from such a subset leaves an (h-i-1)-subset of G minus {x}
    summing to a - (i+1)*x, which is what gets counted.
    """
    if not 1 <= i <= h - 1:
        raise ValueError(f"need 1 <= i <= h-1, got i={i}, h={h}")
    a, x = as_index(G, a), as_index(G, x)
    size = h - i - 1
    if size > G.n - 1:
        return 0
    target = int(G.shift_table(x, i + 1)[a])
    return _excluded_row(G, x, size)[target]


def _check_lemma_range(G: GroupSpec, h: int) -> None:
    if not 2 <= h <= G.n - 1:
        raise ValueError(f"need 2 <= h <= n-1, got h={h}, n={G.n}")


def _exact_div(num: int, h: int) -> int:
    q, r = divmod(num, h)
    if r:
        raise ExactnessError(f"{num} is not divisible by {h}")
    return q


def f_via_eq3(G: GroupSpec, h: int, a: ElementLike, lower: CountTable | None = None) -> int:
    """f_a(h) = (C(n, h-1) - sum_x g(h, 1, a, x)) / h.

    Each (h-1)-subset either extends uniquely to a member of F_a(h) or its
    forced completion repeats one of its elements ("bad" sets); every member
    of F_a(h) arises from h of the good ones.
    """
    _check_lemma_range(G, h)
    a = as_index(G, a)
    bad = sum(g_value(G, h, 1, a, x) for x in range(G.n))
    total = math.comb(G.n, h - 1)
    if bad > total:
        raise ExactnessError("bad-set count exceeds C(n, h-1)")
    return _exact_div(total - bad, h)


def f_via_lemma(G: GroupSpec, h: int, a: ElementLike, lower: CountTable) -> int:
    """Evaluate the alternating recurrence for f_a(h) from rows h-2, ..., 1.

    f_a(h) = (C(n,h-1) - sum_{i=2}^{h-1} (-1)^i sum_x f_{a-ix}(h-i)
              + (-1)^(h-1) #{x : h x = a}) / h
    """
    _check_lemma_range(G, h)
    if lower.hmax < h - 2:
        raise ValueError(f"lower table needs rows up to {h - 2}")
    a = as_index(G, a)
    pos = math.comb(G.n, h - 1)
    neg = 0
    for i in range(2, h):
        row = lower.counts[h - i]
        targets = G.encode(G.digits[a] - i * G.digits)  # a - i x for every x
        s = sum(row[b] for b in targets.tolist())
        if i % 2 == 0:
            neg += s
        else:
            pos += s
    term = g_terminal_sum(G, h, a)
    if (h - 1) % 2 == 0:
        pos += term
    else:
        neg += term
    if pos < neg:
        raise ExactnessError(f"negative total in recurrence at h={h}, a={a}")
    return _exact_div(pos - neg, h)


def g_recurrence_holds(G: GroupSpec, h: int, i: int, a: ElementLike, x: ElementLike,
                       lower: CountTable) -> bool:
    """g(h, i) = f_{a-(i+1)x}(h-i-1) - g(h, i+1)."""
    if not 1 <= i <= h - 2:
        raise ValueError(f"need 1 <= i <= h-2, got i={i}, h={h}")
    a, x = as_index(G, a), as_index(G, x)
    target = int(G.shift_table(x, i + 1)[a])
    f = lower.counts[h - i - 1][target]
    return g_value(G, h, i, a, x) == f - g_value(G, h, i + 1, a, x)


def count_via_recurrence(G: GroupSpec, hmax: int) -> CountTable:
    """Table built from the base rows h=0,1 and :func:`f_via_lemma` alone.

    h = n (allowed as the final row) comes from the closed form, since the
    recurrence is only claimed for h <= n-1.
    """
    n = G.n
    if not 0 <= hmax <= n:
        raise ValueError(f"hmax={hmax} outside [0, {n}]")
    rows: list[tuple[int, ...]] = []
    for h in range(hmax + 1):
        closed = _closed_form(G, h)
        if closed is not None:
            rows.append(closed)
        elif h == 1:
            rows.append((1,) * n)
        else:
            partial = CountTable(G, h - 1, tuple(rows))
            rows.append(tuple(f_via_lemma(G, h, a, partial) for a in range(n)))
    return CountTable(G, hmax, tuple(rows))


def count_table(G: GroupSpec, hmax: int, method: str = "dp", enum_limit: int = DEFAULT_ENUM_LIMIT,
                dp_limit: int = DEFAULT_DP_LIMIT) -> CountTable:
    if method == "dp":
        return count_dp(G, hmax, dp_limit)
    if method == "brute":
        rows = tuple(count_brute_force(G, h, enum_limit) for h in range(hmax + 1))
        return CountTable(G, hmax, rows)
    if method == "recurrence":
        return count_via_recurrence(G, hmax)
    raise ValueError(f"unknown method {method!r}")
