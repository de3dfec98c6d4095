"""Verification driver: property suites and ratio tables over groups."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from . import bounds, codes
from .counting import (
    DEFAULT_DP_LIMIT,
    DEFAULT_ENUM_LIMIT,
    CountTable,
    LimitExceeded,
    count_brute_force,
    count_dp,
    count_via_recurrence,
    f_via_eq3,
    g_recurrence_holds,
    g_terminal_sum,
)
from .group import GroupSpec, element_to_index, spec_string, total_sum


@dataclass
class VerifyConfig:
    enum_limit: int = DEFAULT_ENUM_LIMIT
    dp_limit: int = DEFAULT_DP_LIMIT
    exact_limit: int = bounds.DEFAULT_EXACT_LIMIT
    recurrence_max_n: int = 24
    eq3_max_n: int = 12
    g_recurrence_max_n: int = 8
    code_max_n: int = 14
    seed: int = 0


@dataclass
class Check:
    name: str
    inputs: dict
    verdict: str  # "pass", "fail" or "skipped"
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "verdict": self.verdict,
                "detail": self.detail}


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, inputs: dict, ok: bool | None, detail: str = "") -> None:
        verdict = "skipped" if ok is None else ("pass" if ok else "fail")
        self.checks.append(Check(name, inputs, verdict, detail))

    @property
    def passed(self) -> bool:
        return all(c.verdict != "fail" for c in self.checks)

    def to_json(self) -> str:
        doc = {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        return json.dumps(doc, indent=1) + "\n"


def _first_mismatch(rows_a, rows_b, hs) -> str:
    for h in hs:
        for a, (u, v) in enumerate(zip(rows_a[h], rows_b[h])):
            if u != v:
                return f"first difference at h={h}, a={a}: {u} != {v}"
    return ""


def verify_group(G: GroupSpec, cfg: VerifyConfig | None = None,
                 report: VerifyReport | None = None) -> VerifyReport:
    cfg = cfg or VerifyConfig()
    report = report if report is not None else VerifyReport()
    n = G.n
    g = spec_string(G)
    inputs = {"group": g}

    try:
        table = count_dp(G, n, cfg.dp_limit)
    except LimitExceeded as exc:
        report.add("count_dp", inputs, False, str(exc))
        return report

    bad = [h for h in range(n + 1) if sum(table[h]) != math.comb(n, h)]
    report.add("sum_identity", inputs, not bad, f"failing h: {bad}" if bad else "")

    S = element_to_index(G, total_sum(G))
    neg_shift = G.encode(G.digits[S] - G.digits)  # S - a
    bad = [(h, a) for h in range(n + 1) for a in range(n)
           if table[h][a] != table[n - h][neg_shift[a]]]
    report.add("duality", inputs, not bad, f"first failure (h, a): {bad[0]}" if bad else "")

    bad = []
    for h in range(n + 1):
        for t in range(n):
            moved = G.encode(G.digits + h * G.digits[t])  # a + h t
            if any(table[h][a] != table[h][moved[a]] for a in range(n)):
                bad.append((h, t))
    report.add("translation", inputs, not bad, f"first failure (h, t): {bad[0]}" if bad else "")

    hs = [h for h in range(n + 1) if math.comb(n, h) <= cfg.enum_limit]
    brute = {h: count_brute_force(G, h, cfg.enum_limit) for h in hs}
    msg = _first_mismatch(brute, table.counts, hs)
    report.add("brute_equals_dp", {**inputs, "h": hs}, not msg, msg)

    if n <= cfg.recurrence_max_n:
        rec = count_via_recurrence(G, n)
        msg = _first_mismatch(rec.counts, table.counts, range(n + 1))
        report.add("recurrence_equals_dp", inputs, not msg, msg)
    else:
        report.add("recurrence_equals_dp", inputs, None, f"n > {cfg.recurrence_max_n}")

    if n <= cfg.eq3_max_n:
        bad = [(h, a) for h in range(2, n) for a in range(n) if f_via_eq3(G, h, a) != table[h][a]]
        report.add("eq3_equals_dp", inputs, not bad, f"first failure (h, a): {bad[0]}" if bad else "")
    else:
        report.add("eq3_equals_dp", inputs, None, f"n > {cfg.eq3_max_n}")

    if n <= cfg.g_recurrence_max_n:
        bad = [(h, i, a, x) for h in range(3, n + 1) for i in range(1, h - 1)
               for a in range(n) for x in range(n)
               if not g_recurrence_holds(G, h, i, a, x, table)]
        report.add("g_recurrence", inputs, not bad, f"first failure (h,i,a,x): {bad[0]}" if bad else "")
    else:
        report.add("g_recurrence", inputs, None, f"n > {cfg.g_recurrence_max_n}")

    ok = all(0 <= g_terminal_sum(G, h, a) <= n for h in range(1, n + 1) for a in range(n))
    report.add("g_terminal_bound", inputs, ok)

    for h in range(2, min(n, n // 2 + 1) + 1):
        r = bounds.check_deviation_bound(G, h, table)
        report.add("deviation_bound", {**inputs, "h": h}, r.holds,
                   f"deviation={r.deviation} bound~{r.bound_float:.6g}")
    if n >= 4:
        b2, b3 = bounds.base_case_bounds(G, table)
        report.add("base_case_h2", inputs, b2)
        report.add("base_case_h3", inputs, b3)

    for h in range(4, n // 2 + 2):
        if n > cfg.exact_limit:
            report.add("ratio_bound", {**inputs, "h": h}, None, "n beyond exact-path limit")
            continue
        r = bounds.ratio_bound_check(G, h, table, cfg.exact_limit)
        report.add("ratio_bound", {**inputs, "h": h}, r.holds,
                   f"ratio={r.ratio:.6f} one_minus_x={r.one_minus_x:.6g}")

    if n <= cfg.code_max_n:
        failures = []
        for h in range(2, n - 1):
            for book in codes.build_all_codebooks(G, h, cfg.enum_limit):
                if len(book) != table[h][book.a]:
                    failures.append(f"size h={h} a={book.a}")
                if len(book) and not (book.words.sum(axis=1) == h).all():
                    failures.append(f"weight h={h} a={book.a}")
                d = codes.min_pairwise_hamming(book, seed=cfg.seed)
                if d is not None and d < 4:
                    failures.append(f"distance {d} h={h} a={book.a}")
        report.add("codebooks", inputs, not failures, "; ".join(failures[:5]))
    else:
        report.add("codebooks", inputs, None, f"n > {cfg.code_max_n}")

    if n >= 2:
        c = codes.check_code_size_bounds(G, table)
        report.add("code_size_bounds", inputs, c.floor_holds and c.upper_holds,
                   f"max={c.max_count} floor={c.pigeonhole_floor} upper={c.upper_bound}")
    return report


@dataclass(frozen=True)
class RatioRow:
    group: str
    n: int
    h: int
    min: int
    max: int
    ratio: float
    one_minus_x: float


def ratio_rows(G: GroupSpec, hs, table: CountTable | None = None,
               dp_limit: int = DEFAULT_DP_LIMIT) -> list[RatioRow]:
    hs = list(hs)
    if table is None or table.hmax < max(hs, default=0):
        table = count_dp(G, max(hs, default=0), dp_limit)
    out = []
    for h in hs:
        row = table[h]
        lo, hi = min(row), max(row)
        ratio = lo / hi if hi else math.nan
        ln_x = bounds.certificate_log(G.n, h) if 0 < h < G.n else math.nan
        omx = 1 - math.exp(ln_x) if ln_x < 700 else -math.inf
        out.append(RatioRow(spec_string(G), G.n, h, lo, hi, ratio, omx))
    return out


RATIO_FIELDS = ["group", "n", "h", "min", "max", "ratio", "one_minus_x"]


def ratio_rows_to_csv(rows: list[RatioRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RATIO_FIELDS)
    for r in rows:
        w.writerow([r.group, r.n, r.h, str(r.min), str(r.max), repr(r.ratio), repr(r.one_minus_x)])
    return buf.getvalue()


def ratio_rows_to_json(rows: list[RatioRow]) -> str:
    docs = [{"group": r.group, "n": r.n, "h": r.h, "min": str(r.min), "max": str(r.max),
             "ratio": r.ratio, "one_minus_x": r.one_minus_x} for r in rows]
    return json.dumps(docs, indent=1) + "\n"
