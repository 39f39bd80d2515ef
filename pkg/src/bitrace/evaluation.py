"""Ranking metrics against a trace matrix, plus the two-sample statistics."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .corpus import TraceMatrix
from .ir import CandidateLink, order_links

EXACT_LIMIT = 16
MAGNITUDES = ((0.15, "negligible"), (0.33, "small"), (0.47, "medium"))


def global_ranking(per_query: Mapping[str, Sequence[CandidateLink]]) -> list[CandidateLink]:
    return order_links(l for links in per_query.values() for l in links)


def _relevance(ranked: Iterable[CandidateLink | tuple[str, str]], rtm: TraceMatrix) -> list[bool]:
    out = []
    for item in ranked:
        key = (item.req_id, item.class_id) if isinstance(item, CandidateLink) else tuple(item)
        out.append(key in rtm)
    return out


def _curve(relevant: Sequence[bool], total: int) -> list[tuple[float, float]]:
    points = []
    hits = 0
    for cut, rel in enumerate(relevant, 1):
        if rel:
            hits += 1
            points.append((hits / total, hits / cut))
    return points


def precision_recall(ranked: Sequence[CandidateLink | tuple[str, str]], rtm: TraceMatrix) -> list[tuple[float, float]]:
    """``(recall, precision)`` at each cut where a relevant link is retrieved."""
    if not len(rtm):
        raise ValueError("recall is undefined for an empty trace matrix")
    return _curve(_relevance(ranked, rtm), len(rtm))


def average_precision(ranked: Sequence[CandidateLink | tuple[str, str]], rtm: TraceMatrix) -> float:
    points = precision_recall(ranked, rtm)
    return sum(p for _, p in points) / len(rtm)


def per_query_ap(per_query: Mapping[str, Sequence[CandidateLink]], rtm: TraceMatrix) -> dict[str, float]:
    """AP of each query that has at least one relevant link."""
    out = {}
    for req in sorted(rtm.requirement_ids):
        relevant = rtm.relevant_for(req)
        flags = [l.class_id in relevant for l in order_links(per_query.get(req, ()))]
        out[req] = sum(p for _, p in _curve(flags, len(relevant))) / len(relevant)
    return out


def mean_average_precision(per_query: Mapping[str, Sequence[CandidateLink]], rtm: TraceMatrix) -> float:
    aps = per_query_ap(per_query, rtm)
    if not aps:
        raise ValueError("no query has a relevant link")
    return sum(aps.values()) / len(aps)


def f_measures(points: Iterable[tuple[float, float]]) -> list[float]:
    return [2 * p * r / (p + r) if p + r > 0 else 0.0 for r, p in points]


# -- statistics -------------------------------------------------------------


def _midranks(values: Sequence[float]) -> list[Fraction]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks: list[Fraction] = [Fraction(0)] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mid = Fraction(i + j + 2, 2)
        for k in range(i, j + 1):
            ranks[order[k]] = mid
        i = j + 1
    return ranks


@dataclass(frozen=True)
class RankSumResult:
    statistic: float  # rank sum of the first sample
    p_value: float
    method: str  # "exact" or "normal"


def _exact_p(doubled: list[int], n: int, observed: int) -> float:
    """Two-sided p of the rank sum by counting subsets of size ``n``."""
    total = len(doubled)
    center = n * (total + 1)  # mean of the doubled rank sum
    dist: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    dist[0][0] = 1
    for r in doubled:
        for size in range(min(n, total) - 1, -1, -1):
            for s, ways in dist[size].items():
                bucket = dist[size + 1]
                bucket[s + r] = bucket.get(s + r, 0) + ways
    extreme = abs(observed - center)
    hits = sum(ways for s, ways in dist[n].items() if abs(s - center) >= extreme)
    return min(1.0, hits / comb(total, n))


def wilcoxon_rank_sum(x: Sequence[float], y: Sequence[float], exact_limit: int = EXACT_LIMIT) -> RankSumResult:
    """Two-sided rank-sum test.

    Small samples use the exact permutation distribution of the (mid)rank
    sum; larger ones a normal approximation with tie and continuity
    corrections.
    """
    n, m = len(x), len(y)
    if not n or not m:
        raise ValueError("both samples must be nonempty")
    ranks = _midranks(list(x) + list(y))
    w = sum(ranks[:n])
    total = n + m
    if total <= exact_limit:
        doubled = [int(2 * r) for r in ranks]
        return RankSumResult(float(w), _exact_p(doubled, n, int(2 * w)), "exact")
    counts: dict[Fraction, int] = {}
    for r in ranks:
        counts[r] = counts.get(r, 0) + 1
    ties = sum(t**3 - t for t in counts.values())
    var = n * m / 12 * ((total + 1) - ties / (total * (total - 1)))
    if var <= 0:
        return RankSumResult(float(w), 1.0, "normal")
    dev = abs(float(w) - n * (total + 1) / 2)
    z = max(dev - 0.5, 0.0) / math.sqrt(var)
    return RankSumResult(float(w), min(1.0, math.erfc(z / math.sqrt(2))), "normal")


def cliffs_delta(x: Sequence[float], y: Sequence[float]) -> float:
    """Absolute dominance statistic from all ``len(x) * len(y)`` pairs."""
    if not x or not y:
        raise ValueError("both samples must be nonempty")
    greater = sum(1 for a in x for b in y if a > b)
    less = sum(1 for a in x for b in y if a < b)
    return abs(greater - less) / (len(x) * len(y))


def effect_magnitude(delta: float) -> str:
    for bound, label in MAGNITUDES:
        if delta < bound:
            return label
    return "large"


@dataclass(frozen=True)
class StatResult:
    p_value: float
    method: str
    cliffs_delta: float
    magnitude: str

    def to_json(self) -> dict:
        return {"p_value": self.p_value, "method": self.method, "cliffs_delta": self.cliffs_delta, "magnitude": self.magnitude}


def compare(x: Sequence[float], y: Sequence[float]) -> StatResult:
    test = wilcoxon_rank_sum(x, y)
    delta = cliffs_delta(x, y)
    return StatResult(test.p_value, test.method, delta, effect_magnitude(delta))


# -- reports ----------------------------------------------------------------


@dataclass
class EvalReport:
    precision_recall_points: list[tuple[float, float]]
    ap: float
    map: float
    per_query_ap: dict[str, float]
    f_at_recall: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ap": self.ap,
            "map": self.map,
            "per_query_ap": dict(sorted(self.per_query_ap.items())),
            "precision_recall_points": [[r, p] for r, p in self.precision_recall_points],
            "f_at_recall": self.f_at_recall,
        }

    def pr_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["recall", "precision", "f"])
        for (r, p), f in zip(self.precision_recall_points, self.f_at_recall):
            w.writerow([repr(r), repr(p), repr(f)])
        return buf.getvalue()


def evaluate(per_query: Mapping[str, Sequence[CandidateLink]], rtm: TraceMatrix) -> EvalReport:
    ranked = global_ranking(per_query)
    points = precision_recall(ranked, rtm)
    aps = per_query_ap(per_query, rtm)
    return EvalReport(
        points,
        sum(p for _, p in points) / len(rtm),
        sum(aps.values()) / len(aps),
        aps,
        f_measures(points),
    )
