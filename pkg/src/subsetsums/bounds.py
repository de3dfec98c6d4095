"""Deviation bounds and the convergence certificate X(h).

The deviation bound involves 2**(3h/4), and X(h) involves sqrt(h!), so both
are compared after raising each side to the fourth power, where every
quantity is an integer or a rational.  Floats appear only in informational
columns and in the log-gamma evaluation of X(h) for large n.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .counting import CountTable
from .group import GroupSpec, spec_string

DEFAULT_EXACT_LIMIT = 200


@dataclass(frozen=True)
class FourthPowerComparison:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class BoundReport:
    group: str
    n: int
    h: int
    parity: str
    deviation: int
    comparison: FourthPowerComparison
    bound_float: float

    @property
    def holds(self) -> bool:
        return self.comparison.holds

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "h": self.h,
            "parity": self.parity,
            "deviation": str(self.deviation),
            "lhs": str(self.comparison.lhs),
            "rhs": str(self.comparison.rhs),
            "bound_float": self.bound_float,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class CertificateValues:
    n: int
    h: int
    ln_x: float
    x: float
    ratio_lower_bound: float


@dataclass(frozen=True)
class RatioBoundReport:
    group: str
    n: int
    h: int
    min: int
    max: int
    ratio: float
    one_minus_x: float
    holds: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["min"], d["max"] = str(self.min), str(self.max)
        return d


def even_product(h: int) -> int:
    """h (h-2) ... 2."""
    if h < 2 or h % 2:
        raise ValueError(f"even_product needs an even h >= 2, got {h}")
    return math.prod(range(h, 0, -2))


def odd_product(h: int) -> int:
    """(h+1) (h-1) ... 2."""
    if h < 1 or h % 2 == 0:
        raise ValueError(f"odd_product needs an odd h, got {h}")
    return math.prod(range(h + 1, 0, -2))


def _bound_parts(h: int) -> tuple[int, int]:
    """(denominator product, exponent of n) of the deviation bound."""
    if h % 2 == 0:
        return even_product(h), h // 2
    return odd_product(h), (h + 1) // 2


def deviation(row) -> int:
    return max(row) - min(row)


def deviation_bound_float(n: int, h: int) -> float:
    P, e = _bound_parts(h)
    log = 0.75 * h * math.log(2) + e * math.log(n) - math.log(P)
    try:
        return math.exp(log)
    except OverflowError:
        return math.inf


def _check_h(G: GroupSpec, h: int, lo: int) -> None:
    hi = G.n // 2 + 1
    if not lo <= h <= hi:
        raise ValueError(f"h={h} outside [{lo}, {hi}] for n={G.n}")


def check_deviation_bound(G: GroupSpec, h: int, counts: CountTable,
                          allow_out_of_range: bool = False) -> BoundReport:
    """(D P)^4 <= 2^(3h) n^(4e), i.e. D <= 2^(3h/4) n^e / P, exactly."""
    if not allow_out_of_range:
        _check_h(G, h, 2)
    elif h < 1:
        raise ValueError("h must be >= 1")
    n = G.n
    D = deviation(counts.row(h))
    P, e = _bound_parts(h)
    cmp = FourthPowerComparison((D * P) ** 4, 2 ** (3 * h) * n ** (4 * e))
    return BoundReport(spec_string(G), n, h, "even" if h % 2 == 0 else "odd", D, cmp,
                       deviation_bound_float(n, h))


def base_case_bounds(G: GroupSpec, counts: CountTable) -> tuple[bool, bool]:
    """2 D_2 <= n and 3 D_3 <= n."""
    n = G.n
    return 2 * deviation(counts.row(2)) <= n, 3 * deviation(counts.row(3)) <= n


def x_of_h_log(n: int, h: int) -> float:
    """ln X(h) with X(h) = 2^(3h/4) n^(h/2+1) (n-h)! sqrt(h!) / n!."""
    if not 0 <= h <= n:
        raise ValueError(f"need 0 <= h <= n, got h={h}, n={n}")
    return (0.75 * h * math.log(2) + (h / 2 + 1) * math.log(n) + math.lgamma(n - h + 1)
            + 0.5 * math.lgamma(h + 1) - math.lgamma(n + 1))


def x_of_h_exact4(n: int, h: int, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Fraction:
    """X(h)^4 = 2^(3h) n^(2h+4) ((n-h)!)^4 (h!)^2 / (n!)^4 as an exact rational."""
    if n > exact_limit:
        raise ValueError(f"n={n} exceeds the exact-path limit {exact_limit}")
    if not 0 <= h <= n:
        raise ValueError(f"need 0 <= h <= n, got h={h}, n={n}")
    f = math.factorial
    return Fraction(2 ** (3 * h) * n ** (2 * h + 4) * f(n - h) ** 4 * f(h) ** 2, f(n) ** 4)


def x_odd_log(n: int, h: int) -> float:
    """ln of the odd-h certificate 2^(3h/4) n^((h+3)/2) (n-h)! sqrt((h+1)!) / n!."""
    return (0.75 * h * math.log(2) + (h + 3) / 2 * math.log(n) + math.lgamma(n - h + 1)
            + 0.5 * math.lgamma(h + 2) - math.lgamma(n + 1))


def x_odd_exact4(n: int, h: int, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Fraction:
    if n > exact_limit:
        raise ValueError(f"n={n} exceeds the exact-path limit {exact_limit}")
    f = math.factorial
    return Fraction(2 ** (3 * h) * n ** (2 * h + 6) * f(n - h) ** 4 * f(h + 1) ** 2, f(n) ** 4)


def certificate_log(n: int, h: int) -> float:
    """ln of the certificate matching h's parity."""
    return x_of_h_log(n, h) if h % 2 == 0 else x_odd_log(n, h)


def certificate_exact4(n: int, h: int, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Fraction:
    return x_of_h_exact4(n, h, exact_limit) if h % 2 == 0 else x_odd_exact4(n, h, exact_limit)


def certificate_values(n: int, h: int) -> CertificateValues:
    ln_x = x_of_h_log(n, h)
    x = math.exp(ln_x) if ln_x < 700 else math.inf
    return CertificateValues(n, h, ln_x, x, 1 - x)


def x_ratio(n: int, h: int) -> float:
    """X(h+1) / X(h) = 2^(3/4) sqrt(n (h+1)) / (n - h)."""
    if not 0 <= h < n:
        raise ValueError(f"need 0 <= h < n, got h={h}, n={n}")
    return 2**0.75 * math.sqrt(n * (h + 1)) / (n - h)


def asymptotic_exponent() -> float:
    return 0.25 - 0.375 * math.log(2)


def _one_minus(ln_x: float) -> float:
    return 1 - math.exp(ln_x) if ln_x < 700 else -math.inf


def ratio_bound_check(G: GroupSpec, h: int, counts: CountTable,
                      exact_limit: int = DEFAULT_EXACT_LIMIT, allow_out_of_range: bool = False
                      ) -> RatioBoundReport:
    """Check min/max >= 1 - X(h) exactly.

    Equivalent to ((max - min) / max)^4 <= X^4 since both sides are
    nonnegative.  Odd h uses the certificate with sqrt((h+1)!) and one extra
    half power of n, which is what the odd-case deviation bound yields.
    """
    if not allow_out_of_range:
        _check_h(G, h, 4)
    row = counts.row(h)
    lo, hi = min(row), max(row)
    if hi <= 0:
        raise ValueError("max count is zero")
    X4 = certificate_exact4(G.n, h, exact_limit)
    holds = (hi - lo) ** 4 * X4.denominator <= X4.numerator * hi**4
    return RatioBoundReport(spec_string(G), G.n, h, lo, hi, lo / hi,
                            _one_minus(certificate_log(G.n, h)), holds)


def reports_to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["group", "n", "h", "deviation", "bound_float", "holds"])
    for r in reports:
        w.writerow([r.group, r.n, r.h, str(r.deviation), repr(r.bound_float), str(r.holds).lower()])
    return buf.getvalue()


def reports_to_json(reports: list[BoundReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
