"""tf-idf indexing and the VSM, LSI and JS similarity models."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from .enrich import EnrichedDocument

log = logging.getLogger(__name__)

MODELS = ("vsm", "lsi", "js")
SVD_RTOL = 1e-10


@dataclass(frozen=True)
class TfIdfIndex:
    doc_ids: tuple[str, ...]
    sides: tuple[str, ...]
    vocabulary: tuple[str, ...]
    df: np.ndarray
    idf: np.ndarray
    weights: np.ndarray  # documents x tokens

    @property
    def n_docs(self) -> int:
        return len(self.doc_ids)

    def column(self, token: str) -> int:
        return self.vocabulary.index(token)

    def rows(self, side: str) -> np.ndarray:
        return np.array([i for i, s in enumerate(self.sides) if s == side], dtype=int)

    def ids(self, side: str) -> list[str]:
        return [self.doc_ids[i] for i in self.rows(side)]


def build_index(docs: Sequence[EnrichedDocument], with_biterms: bool = True) -> TfIdfIndex:
    """One joint matrix over both artifact types; tf is the raw count."""
    if len(docs) < 2:
        raise ValueError("an index needs at least two documents")
    sides = {d.side for d in docs}
    if sides != {"requirement", "code"}:
        raise ValueError("an index needs both requirements and classes")
    seen: set[tuple[str, str]] = set()
    for d in docs:
        if (d.side, d.owner) in seen:
            raise ValueError(f"duplicate document {d.side}:{d.owner}")
        seen.add((d.side, d.owner))

    counts = [d.token_counts(with_biterms) for d in docs]
    vocab = tuple(sorted(set().union(*counts)))
    col = {t: j for j, t in enumerate(vocab)}
    tf = np.zeros((len(docs), len(vocab)))
    for i, (d, c) in enumerate(zip(docs, counts)):
        if not c:
            log.warning("empty document %s:%s kept as a zero vector", d.side, d.owner)
        for token, n in c.items():
            tf[i, col[token]] = n
    df = (tf > 0).sum(axis=0)
    idf = np.log(len(docs) / df) if len(vocab) else np.zeros(0)
    return TfIdfIndex(
        tuple(d.owner for d in docs), tuple(d.side for d in docs), vocab, df, idf, tf * idf
    )


@dataclass(frozen=True)
class SimilarityMatrix:
    req_ids: tuple[str, ...]
    class_ids: tuple[str, ...]
    scores: np.ndarray  # requirements x classes

    def score(self, req_id: str, class_id: str) -> float:
        return float(self.scores[self.req_ids.index(req_id), self.class_ids.index(class_id)])

    def items(self) -> Iterable[tuple[str, str, float]]:
        for i, r in enumerate(self.req_ids):
            for j, c in enumerate(self.class_ids):
                yield r, c, float(self.scores[i, j])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["req_id", "class_id", "score"])
        for r, c, s in sorted(self.items(), key=lambda t: (t[0], t[1])):
            w.writerow([r, c, repr(s)])
        return buf.getvalue()


def _split(index: TfIdfIndex, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray, tuple, tuple]:
    r, c = index.rows("requirement"), index.rows("code")
    return vectors[r], vectors[c], tuple(index.ids("requirement")), tuple(index.ids("code"))


def _cosine(a: np.ndarray, b: np.ndarray, floor: float = 0.0) -> np.ndarray:
    """Pairwise cosine; vectors with norm at or below ``floor`` count as zero."""
    na = np.linalg.norm(a, axis=1)
    nb = np.linalg.norm(b, axis=1)
    na[na <= floor] = 0.0
    nb[nb <= floor] = 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        sims = (a @ b.T) / np.outer(na, nb)
    sims[~np.isfinite(sims)] = 0.0
    return np.clip(sims, 0.0, 1.0)


def vsm_similarity(index: TfIdfIndex) -> SimilarityMatrix:
    r, c, rid, cid = _split(index, index.weights)
    return SimilarityMatrix(rid, cid, _cosine(r, c))


def lsi_similarity(index: TfIdfIndex, k: int) -> SimilarityMatrix:
    """Cosine between rows of ``V_k S_k`` from the SVD of the term-by-document matrix."""
    bound = min(index.weights.shape)
    if not 1 <= k <= bound:
        raise ValueError(f"lsi k={k} outside 1..{bound} (documents x tokens = {index.weights.shape})")
    _, s, vt = np.linalg.svd(index.weights.T, full_matrices=False)
    tol = SVD_RTOL * (s[0] if s.size else 0.0)
    s = np.where(s < tol, 0.0, s)
    docs = vt[:k].T * s[:k]
    r, c, rid, cid = _split(index, docs)
    # documents with no weight project to round-off noise
    return SimilarityMatrix(rid, cid, _cosine(r, c, floor=tol))


def js_divergence(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Base-2 Jensen-Shannon divergence between ``p`` and each row of ``q``."""
    m = 0.5 * (p + q)
    with np.errstate(divide="ignore", invalid="ignore"):
        kp = np.where(p > 0, p * np.log2(p / m), 0.0)
        kq = np.where(q > 0, q * np.log2(q / m), 0.0)
    return 0.5 * kp.sum(axis=-1) + 0.5 * kq.sum(axis=-1)


def _distributions(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mass = w.sum(axis=1)
    empty = mass <= 0
    safe = np.where(empty, 1.0, mass)
    return w / safe[:, None], empty


def js_similarity(index: TfIdfIndex) -> SimilarityMatrix:
    r, c, rid, cid = _split(index, index.weights)
    p, p_empty = _distributions(r)
    q, q_empty = _distributions(c)
    scores = np.zeros((len(rid), len(cid)))
    for i in range(len(rid)):
        if p_empty[i]:
            continue
        scores[i] = 1.0 - js_divergence(p[i][None, :], q)
    scores[:, q_empty] = 0.0
    return SimilarityMatrix(rid, cid, np.clip(scores, 0.0, 1.0))


def similarity(index: TfIdfIndex, model: str, lsi_k: int | None = None) -> SimilarityMatrix:
    if model == "vsm":
        return vsm_similarity(index)
    if model == "js":
        return js_similarity(index)
    if model == "lsi":
        if lsi_k is None:
            raise ValueError("the lsi model needs k")
        return lsi_similarity(index, lsi_k)
    raise ValueError(f"unknown model {model!r} (expected one of {', '.join(MODELS)})")


@dataclass(frozen=True)
class CandidateLink:
    req_id: str
    class_id: str
    ir_initial: float
    lam: float = 0.0
    theta: float = 0.0
    ir_new: float | None = None
    rank: int = 0

    @property
    def score(self) -> float:
        return self.ir_initial if self.ir_new is None else self.ir_new


def order_links(links: Iterable[CandidateLink]) -> list[CandidateLink]:
    """Descending score; ties by requirement then class id."""
    return sorted(links, key=lambda l: (-l.score, l.req_id, l.class_id))


def assign_ranks(links: Iterable[CandidateLink]) -> list[CandidateLink]:
    return [replace(l, rank=i) for i, l in enumerate(order_links(links), 1)]


def rank_candidates(sim: SimilarityMatrix) -> dict[str, list[CandidateLink]]:
    out: dict[str, list[CandidateLink]] = {}
    for i, r in enumerate(sim.req_ids):
        links = [CandidateLink(r, c, float(sim.scores[i, j])) for j, c in enumerate(sim.class_ids)]
        out[r] = assign_ranks(links)
    return out


def links_csv(per_query: Mapping[str, Sequence[CandidateLink]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["req_id", "class_id", "ir_initial", "lambda", "theta", "ir_new", "rank"])
    for r in sorted(per_query):
        for l in sorted(per_query[r], key=lambda l: l.rank):
            w.writerow([l.req_id, l.class_id, repr(l.ir_initial), repr(l.lam), repr(l.theta), repr(l.score), l.rank])
    return buf.getvalue()

