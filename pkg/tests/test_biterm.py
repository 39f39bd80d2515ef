from __future__ import annotations

import csv
import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitrace.biterm import (
    Biterm,
    BitermProfile,
    ConsensualBitermSet,
    canonicalize,
    crosscheck,
    extract_code_biterms,
    extract_req_biterms,
    identifier_biterms,
    inventory_csv,
    sentence_biterms,
)
from bitrace.corpus import CodeClassFacts, ReqKind, RequirementDoc
from bitrace.nlp import Locator, ParsedSentence, ParsedToken, heuristic_parse, read_conllu

words = st.text("abcdefg", min_size=1, max_size=4)


@given(words, words)
def test_canonicalize_is_order_free(a, b):
    x, y = canonicalize(a, b), canonicalize(b, a)
    assert x == y
    if a == b:
        assert x is None
    else:
        assert x.a < x.b and {x.a, x.b} == {a, b}


def test_biterm_rejects_noncanonical():
    with pytest.raises(ValueError):
        Biterm("send", "email")
    assert Biterm("email", "send").token == "email__send"


def _sentence(tokens, loc=None):
    return ParsedSentence(tuple(ParsedToken(i, *t) for i, t in enumerate(tokens, 1)), loc)


def test_relation_and_pos_filters():
    sent = _sentence(
        [
            ("The", "the", "DET", 3, "det"),
            ("fake", "fake", "ADJ", 3, "amod"),
            ("emails", "email", "NOUN", 4, "nsubj:pass"),
            ("sent", "send", "VERB", 0, "root"),
            ("quickly", "quickly", "ADV", 4, "advmod"),
            ("today", "today", "NOUN", 4, "obl:tmod"),
            ("and", "and", "CCONJ", 8, "cc"),
            ("stored", "store", "VERB", 4, "conj"),
        ]
    )
    got = set(sentence_biterms(sent))
    # det/advmod/conj are not whitelisted; obl:tmod counts through its base relation
    assert got == {Biterm("email", "fake"), Biterm("email", "send"), Biterm("send", "todai")}
    assert sentence_biterms(sent, frozenset({"amod"})) == [Biterm("email", "fake")]


def test_abbreviations_are_not_stemmed():
    # the lemma carries the abbreviation when the surface is inflected
    sent = _sentence([("sent", "send", "VERB", 0, "root"), ("LHCPs", "LHCP", "PROPN", 1, "obl")])
    assert sentence_biterms(sent) == [Biterm("lhcp", "send")]
    sent = _sentence([("sent", "send", "VERB", 0, "root"), ("LHCP", "LHCP", "PROPN", 1, "obl")])
    assert sentence_biterms(sent) == [Biterm("lhcp", "send")]


def test_requirement_profile_from_fixture(mini):
    parses = [s for s in read_conllu(mini / "parses.conllu") if s.source.owner == "UC35"]
    req = RequirementDoc("UC35", ReqKind.USE_CASE, {"title": "x"})
    profile = extract_req_biterms(req, parses)
    assert profile.slot_counts(Biterm("email", "send")) == {"sub_flow": 2}
    assert profile.slot_counts(Biterm("advers", "event")) == {"title": 1, "main_flow": 1}
    assert profile.total(Biterm("email", "fake")) == 2
    other = RequirementDoc("UC1", ReqKind.USE_CASE, {"title": "x"})
    with pytest.raises(ValueError, match="does not belong"):
        extract_req_biterms(other, parses)


def test_degraded_sentences_use_window_pairs():
    req = RequirementDoc("R", ReqKind.ISSUE, {"summary": "Send fake email"})
    profile = extract_req_biterms(req, heuristic_parse("Send fake email", Locator("req", "R", "summary", 1)))
    assert profile.biterms() == {Biterm("fake", "send"), Biterm("email", "send"), Biterm("email", "fake")}


def test_identifier_pairs():
    assert identifier_biterms("getFakeEmailDAO") == [
        Biterm("fake", "get"), Biterm("email", "get"), Biterm("dao", "get"),
        Biterm("email", "fake"), Biterm("dao", "fake"), Biterm("dao", "email"),
    ]
    assert identifier_biterms("run") == []
    assert identifier_biterms("emailEmail") == []


def test_code_profile_slots():
    cls = CodeClassFacts(
        "C",
        class_names=("EmailUtil",),
        method_names=("sendEmail",),
        invoked_method_names=("sendEmail", "getFakeEmail"),
        comments=("Send an email.",),
    )
    comment = heuristic_parse("Send an email.", Locator("cls", "C", "comment", 1))
    profile = extract_code_biterms(cls, comment)
    assert profile.slot_counts(Biterm("email", "send")) == {"method_name": 1, "invoked_method": 1, "comment": 1}
    assert profile.slot_counts(Biterm("email", "util")) == {"class_name": 1}
    with pytest.raises(ValueError):
        extract_code_biterms(CodeClassFacts("D"), comment)


def test_crosscheck_and_inventory():
    req = BitermProfile("R")
    req.add(Biterm("email", "send"), "sub_flow", 2)
    req.add(Biterm("advers", "event"), "title")
    code = BitermProfile("C")
    code.add(Biterm("email", "send"), "method_name")
    code.add(Biterm("dao", "get"), "invoked_method")
    cons = crosscheck([req], [code])
    assert list(cons) == [Biterm("email", "send")]
    assert Biterm("dao", "get") not in cons
    assert crosscheck([req], []) == ConsensualBitermSet()

    rows = list(csv.reader(io.StringIO(inventory_csv([code, req]))))
    assert rows[0] == ["owner", "slot", "term_a", "term_b", "count"]
    assert rows[1:] == [
        ["C", "invoked_method", "dao", "get", "1"],
        ["C", "method_name", "email", "send", "1"],
        ["R", "title", "advers", "event", "1"],
        ["R", "sub_flow", "email", "send", "2"],
    ]
    kept = list(csv.reader(io.StringIO(inventory_csv([req], cons))))
    assert kept[1:] == [["R", "sub_flow", "email", "send", "2"]]
    total = sum(int(r[4]) for r in rows[1:] if r[0] == "R")
    assert total == sum(req.total(b) for b in req.biterms())


def test_heuristic_parses_recover_the_parsed_consensual_set(mini):
    from bitrace.pipeline import extract_biterms, load_corpus, make_config

    base = {"requirements": str(mini / "requirements.json"), "code": str(mini / "src")}
    parsed_cfg = make_config(base, parses=str(mini / "parses.conllu"))
    parsed = extract_biterms(load_corpus(parsed_cfg), parsed_cfg)
    fallback_cfg = make_config(base)
    fallback = extract_biterms(load_corpus(fallback_cfg), fallback_cfg)
    assert fallback.parses.supplied == 0 and parsed.parses.degraded == 0
    overlap = set(parsed.consensual) & set(fallback.consensual)
    assert len(overlap) / len(parsed.consensual) >= 0.7
