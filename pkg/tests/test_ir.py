from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from bitrace.enrich import EnrichedDocument
from bitrace.ir import (
    CandidateLink,
    SimilarityMatrix,
    build_index,
    js_divergence,
    js_similarity,
    links_csv,
    lsi_similarity,
    rank_candidates,
    similarity,
    vsm_similarity,
)


def _doc(owner, side, counts):
    return EnrichedDocument(owner, side, dict(counts))


def test_idf_is_natural_log_of_inverse_df():
    docs = [
        _doc("r1", "requirement", {"a": 1, "x": 2}),
        _doc("r2", "requirement", {"a": 1}),
        _doc("c1", "code", {"a": 3}),
        _doc("c2", "code", {"a": 1}),
    ]
    index = build_index(docs)
    assert index.idf[index.column("a")] == 0.0
    assert index.idf[index.column("x")] == pytest.approx(math.log(4), abs=1e-12)
    assert index.weights[0, index.column("x")] == pytest.approx(2 * math.log(4))
    assert list(index.df) == [4, 1]


def test_ubiquitous_terms_have_zero_idf():
    index = build_index([_doc("r", "requirement", {"a": 1, "b": 2}), _doc("c", "code", {"a": 1, "b": 1})])
    assert np.all(index.idf == 0)


def test_biterm_tokens_are_optional():
    from bitrace.biterm import Biterm

    doc = EnrichedDocument("r", "requirement", {"a": 1}, {Biterm("email", "send"): 2})
    other = _doc("c", "code", {"b": 1})
    assert "email__send" in build_index([doc, other]).vocabulary
    assert "email__send" not in build_index([doc, other], with_biterms=False).vocabulary


def test_build_index_preconditions(caplog):
    with pytest.raises(ValueError, match="two documents"):
        build_index([_doc("r", "requirement", {"a": 1})])
    with pytest.raises(ValueError, match="both"):
        build_index([_doc("r", "requirement", {"a": 1}), _doc("s", "requirement", {"a": 1})])
    with pytest.raises(ValueError, match="duplicate"):
        build_index([_doc("r", "requirement", {}), _doc("r", "requirement", {}), _doc("c", "code", {})])
    with caplog.at_level(logging.WARNING):
        build_index([_doc("r", "requirement", {"a": 1}), _doc("c", "code", {})])
    assert "empty document code:c" in caplog.text


FIXTURE = [
    _doc("r1", "requirement", {"email": 2, "send": 1, "user": 1}),
    _doc("r2", "requirement", {"login": 1, "password": 2}),
    _doc("c1", "code", {"email": 2, "send": 1, "user": 1}),
    _doc("c2", "code", {"drug": 1}),
    _doc("c3", "code", {"email": 1, "password": 1, "page": 3}),
]


def test_vsm_examples():
    sim = vsm_similarity(build_index(FIXTURE))
    assert sim.score("r1", "c1") == pytest.approx(1.0, abs=1e-12)
    assert sim.score("r1", "c2") == 0.0
    assert 0 < sim.score("r2", "c3") < 1


def test_vsm_independent_of_document_order():
    a = vsm_similarity(build_index(FIXTURE))
    b = vsm_similarity(build_index(list(reversed(FIXTURE))))
    for r, c, s in a.items():
        assert b.score(r, c) == pytest.approx(s, abs=1e-15)


def test_lsi_full_rank_equals_vsm_and_rank_one_is_collinear():
    index = build_index(FIXTURE)
    full = lsi_similarity(index, np.linalg.matrix_rank(index.weights))
    assert np.allclose(full.scores, vsm_similarity(index).scores, atol=1e-6)
    one = lsi_similarity(index, 1)
    assert set(np.round(one.scores.ravel(), 9)) <= {0.0, 1.0}


@pytest.mark.parametrize("k", [0, -1, 6, 100])
def test_lsi_k_out_of_range(k):
    with pytest.raises(ValueError, match="outside"):
        lsi_similarity(build_index(FIXTURE), k)


def test_js_divergence_example():
    p = np.array([0.5, 0.5, 0.0])
    q = np.array([[0.0, 0.5, 0.5]])
    assert js_divergence(p, q)[0] == pytest.approx(0.5, abs=1e-12)
    assert js_divergence(p, p[None, :])[0] == 0.0


def test_js_empty_documents_score_zero():
    docs = [_doc("r", "requirement", {}), _doc("s", "requirement", {"a": 1}), _doc("c", "code", {"a": 1, "b": 1})]
    sim = js_similarity(build_index(docs))
    assert sim.score("r", "c") == 0.0
    assert 0 < sim.score("s", "c") <= 1


def test_similarity_dispatch():
    index = build_index(FIXTURE)
    assert np.array_equal(similarity(index, "js").scores, js_similarity(index).scores)
    with pytest.raises(ValueError):
        similarity(index, "lsi")
    with pytest.raises(ValueError):
        similarity(index, "bm25")


def test_rank_candidates_tie_rule():
    sim = SimilarityMatrix(("R",), ("Beta", "Alpha", "Gamma"), np.array([[0.5, 0.5, 0.9]]))
    ranked = rank_candidates(sim)["R"]
    assert [(l.class_id, l.rank) for l in ranked] == [("Gamma", 1), ("Alpha", 2), ("Beta", 3)]


def test_csv_dumps():
    sim = SimilarityMatrix(("R",), ("B", "A"), np.array([[0.1, 0.9]]))
    assert sim.to_csv() == "req_id,class_id,score\nR,A,0.9\nR,B,0.1\n"
    text = links_csv({"R": [CandidateLink("R", "A", 0.5, 0.25, 0.1, 0.675, 1)]})
    assert text == "req_id,class_id,ir_initial,lambda,theta,ir_new,rank\nR,A,0.5,0.25,0.1,0.675,1\n"
