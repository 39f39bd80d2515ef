from __future__ import annotations

import logging

import pytest

from bitrace.errors import InputError
from bitrace.nlp import (
    Locator,
    heuristic_parse,
    parse_conllu,
    read_conllu,
    sentence_split,
    tag_word,
    write_conllu,
)

SAMPLE = """\
# sent_id = req:UC35:sub_flow:1
# text = A fake email is sent
1-2\tAfake\t_\t_\t_\t_\t_\t_\t_\t_
1\tA\ta\tDET\t_\t_\t3\tdet\t_\t_
2\tfake\tfake\tADJ\t_\t_\t3\tamod\t_\t_
3\temail\temail\tNOUN\t_\t_\t5\tnsubj:pass\t_\t_
3.1\telided\t_\tNOUN\t_\t_\t_\t_\t_\t_
4\tis\tbe\tAUX\t_\t_\t5\taux:pass\t_\t_
5\tsent\tsend\tVERB\t_\t_\t0\troot\t_\t_
"""


def test_locator_roundtrip():
    loc = Locator.parse("cls:a.b:C:comment:3")
    assert loc == Locator("cls", "a.b:C", "comment", 3)
    assert str(loc) == "cls:a.b:C:comment:3"


@pytest.mark.parametrize(
    "text", ["doc:A:title:1", "req:A:middle:1", "cls:A:title:1", "req:A:title:x", "req::title:1", "req:A"]
)
def test_locator_rejects(text):
    with pytest.raises(ValueError):
        Locator.parse(text)


def test_parse_conllu():
    (sent,) = parse_conllu(SAMPLE)
    assert sent.source == Locator("req", "UC35", "sub_flow", 1)
    assert [t.form for t in sent.tokens] == ["A", "fake", "email", "is", "sent"]
    edges = {(g.form, d.form, r) for g, d, r in sent.edges()}
    assert ("email", "fake", "amod") in edges and ("sent", "email", "nsubj:pass") in edges
    assert not sent.degraded


def test_write_then_parse_is_identity():
    sents = parse_conllu(SAMPLE) + heuristic_parse("Send the fake email.", Locator("cls", "X", "comment", 1))
    again = parse_conllu(write_conllu(sents))
    assert again == sents
    assert again[1].degraded and again[1].pseudo_edges


@pytest.mark.parametrize(
    "mutate,message",
    [
        (lambda s: s.replace("# sent_id = req:UC35:sub_flow:1\n", ""), "sent_id"),
        (lambda s: s.replace("req:UC35", "doc:UC35"), "unresolvable locator"),
        (lambda s: s.replace("\tADJ\t", "\tADJECTIVE\t"), "UPOS"),
        (lambda s: s.replace("\t3\tamod", "\t9\tamod"), "HEAD 9"),
        (lambda s: s.replace("4\tis", "7\tis"), "consecutive"),
        (lambda s: s.replace("\tsend\tVERB", "\tsend VERB"), "10 tab-separated"),
    ],
)
def test_conllu_errors(mutate, message):
    with pytest.raises(InputError, match=message) as info:
        parse_conllu(mutate(SAMPLE), "bundle.conllu")
    assert "bundle.conllu:" in str(info.value)


def test_conllu_root_warning(caplog):
    with caplog.at_level(logging.WARNING):
        parse_conllu(SAMPLE.replace("\t0\troot", "\t3\tdep"))
    assert "exactly one root" in caplog.text


def test_read_conllu_missing(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        read_conllu(tmp_path / "none.conllu")


@pytest.mark.parametrize(
    "text,expected",
    [
        ("One. Two!", ["One.", "Two!"]),
        ("See e.g. The thing. Next", ["See e.g. The thing.", "Next"]),
        ("S1. The patient logs in. S2. Done.", ["S1. The patient logs in.", "S2. Done."]),
        ("J. Smith reports. Ok", ["J. Smith reports.", "Ok"]),
        ("version 2.0 is out", ["version 2.0 is out"]),
        ("", []),
    ],
)
def test_sentence_split(text, expected):
    assert sentence_split(text) == expected


@pytest.mark.parametrize(
    "form,prev,expected",
    [
        ("the", None, ("DET", "the")),
        ("sent", "AUX", ("VERB", "send")),
        ("reports", "NOUN", ("VERB", "report")),
        ("report", "DET", ("NOUN", "report")),
        ("LHCP", "DET", ("PROPN", "LHCP")),
        ("fake", "DET", ("ADJ", "fake")),
        ("S1", None, ("X", "S1")),
        ("42", None, ("NUM", "42")),
        (",", None, ("PUNCT", ",")),
        ("immunization", "DET", ("NOUN", "immunization")),
        ("quickly", "VERB", ("ADV", "quickly")),
    ],
)
def test_tag_word(form, prev, expected):
    assert tag_word(form, prev) == expected


def test_heuristic_window():
    (sent,) = heuristic_parse("send fake email")
    pairs = {(g.lemma, d.lemma, r) for g, d, r in sent.edges()}
    assert pairs == {("send", "fake", "win"), ("send", "email", "win"), ("fake", "email", "win")}
    assert sent.degraded


def test_heuristic_ordinals_follow_source():
    sents = heuristic_parse("First one. Second one.", Locator("req", "R", "main_flow", 4))
    assert [s.source.ordinal for s in sents] == [4, 5]
