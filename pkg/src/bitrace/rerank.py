"""Adjust IR values using the biterms a requirement and a class share."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .biterm import Biterm
from .corpus import ReqKind
from .enrich import EnrichedDocument
from .ir import CandidateLink, SimilarityMatrix, assign_ranks

PENALTY = 0.9
PART_WEIGHTS = {
    ReqKind.USE_CASE: {"title": 0.4, "main_flow": 0.3, "sub_flow": 0.2, "alternative_flow": 0.1},
    ReqKind.ISSUE: {"summary": 0.6, "description": 0.4},
}


@dataclass(frozen=True)
class BitermIdfTable:
    idf: Mapping[Biterm, float]
    n_docs: int

    @classmethod
    def from_documents(cls, docs: Sequence[EnrichedDocument]) -> "BitermIdfTable":
        df: Counter[Biterm] = Counter()
        for d in docs:
            df.update(d.biterm_counts.keys())
        n = len(docs)
        return cls({bt: math.log(n / k) for bt, k in df.items()}, n)

    def total(self, biterms: Iterable[Biterm]) -> float:
        return sum(self.idf.get(bt, 0.0) for bt in sorted(biterms))


def shared_biterms(req_doc: EnrichedDocument, cls_doc: EnrichedDocument) -> frozenset[Biterm]:
    return frozenset(req_doc.biterm_counts.keys() & cls_doc.biterm_counts.keys())


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def global_weight(req_doc: EnrichedDocument, cls_doc: EnrichedDocument, idf: BitermIdfTable) -> float:
    shared = shared_biterms(req_doc, cls_doc)
    if not shared:
        return 0.0
    cons = idf.total(shared)
    return 0.5 * (
        _ratio(cons, idf.total(req_doc.biterm_counts)) + _ratio(cons, idf.total(cls_doc.biterm_counts))
    )


def part_weight(req_doc: EnrichedDocument, part: str, cls_doc: EnrichedDocument, idf: BitermIdfTable) -> float:
    owned = req_doc.part_biterm_counts.get(part, {}).keys()
    if not owned:
        return 0.0
    shared = owned & cls_doc.biterm_counts.keys()
    return _ratio(idf.total(shared), idf.total(owned))


def local_weight(req_doc: EnrichedDocument, cls_doc: EnrichedDocument, idf: BitermIdfTable) -> float:
    if req_doc.kind is None:
        raise ValueError(f"requirement {req_doc.owner} has no kind")
    return sum(
        w * part_weight(req_doc, part, cls_doc, idf) for part, w in PART_WEIGHTS[req_doc.kind].items()
    )


def multiplier(lam: float, theta: float, shared: bool, penalty: float = PENALTY) -> float:
    return 1.0 + lam + theta if shared else penalty


def adjust(
    link: CandidateLink, lam: float, theta: float, shared_nonempty: bool, penalty: float = PENALTY
) -> CandidateLink:
    if not shared_nonempty:
        lam = theta = 0.0
    return replace(
        link, lam=lam, theta=theta, ir_new=link.ir_initial * multiplier(lam, theta, shared_nonempty, penalty)
    )


def rerank(
    sim: SimilarityMatrix,
    req_docs: Mapping[str, EnrichedDocument],
    cls_docs: Mapping[str, EnrichedDocument],
    idf: BitermIdfTable,
    use_theta: bool = True,
    penalty: float = PENALTY,
) -> dict[str, list[CandidateLink]]:
    """Adjust every candidate link and re-rank each requirement's list.

    With ``use_theta`` off only the global weight is applied.
    """
    out: dict[str, list[CandidateLink]] = {}
    for i, r in enumerate(sim.req_ids):
        rdoc = req_docs[r]
        links = []
        for j, c in enumerate(sim.class_ids):
            cdoc = cls_docs[c]
            link = CandidateLink(r, c, float(sim.scores[i, j]))
            shared = bool(shared_biterms(rdoc, cdoc))
            lam = global_weight(rdoc, cdoc, idf) if shared else 0.0
            theta = local_weight(rdoc, cdoc, idf) if shared and use_theta else 0.0
            links.append(adjust(link, lam, theta, shared, penalty))
        out[r] = assign_ranks(links)
    return out
