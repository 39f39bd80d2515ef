from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from bitrace.biterm import Biterm, BitermProfile, ConsensualBitermSet
from bitrace.corpus import CodeClassFacts, ReqKind, RequirementDoc
from bitrace.enrich import (
    class_biterm_count,
    class_unigrams,
    enrich_class,
    enrich_requirement,
    requirement_unigrams,
)
from bitrace.preprocess import default_stopwords

SEND = Biterm("email", "send")
FAKE = Biterm("email", "fake")
STOP = default_stopwords()
UC = RequirementDoc(
    "UC35", ReqKind.USE_CASE, {"title": "Report event", "precondition": "Patient logged", "sub_flow": "Fake email sent"}
)


def test_requirement_counts_sum_over_parts():
    profile = BitermProfile("UC35")
    profile.add(SEND, "sub_flow", 2)
    profile.add(FAKE, "sub_flow", 2)
    profile.add(Biterm("event", "report"), "title")
    doc = enrich_requirement(profile, ConsensualBitermSet(frozenset({SEND, FAKE})), UC, STOP)
    assert doc.biterm_counts == {SEND: 2, FAKE: 2}
    assert doc.part_biterm_counts == {"sub_flow": {SEND: 2, FAKE: 2}}
    assert doc.kind is ReqKind.USE_CASE


def test_title_and_main_flow_add_up():
    profile = BitermProfile("UC35")
    profile.add(SEND, "title")
    profile.add(SEND, "main_flow", 2)
    doc = enrich_requirement(profile, ConsensualBitermSet(frozenset({SEND})), UC, STOP)
    assert doc.biterm_counts == {SEND: 3}
    assert doc.part_biterm_counts == {"title": {SEND: 1}, "main_flow": {SEND: 2}}


def test_no_consensual_biterms_leaves_unigrams():
    profile = BitermProfile("UC35")
    profile.add(SEND, "sub_flow")
    doc = enrich_requirement(profile, ConsensualBitermSet(), UC, STOP)
    assert doc.biterm_counts == {} and doc.part_biterm_counts == {}
    assert doc.unigram_counts == requirement_unigrams(UC, STOP)
    assert doc.token_counts() == doc.unigram_counts


def test_requirement_unigrams_cover_all_parts():
    assert requirement_unigrams(UC, STOP) == {
        "report": 1, "event": 1, "patient": 1, "log": 1, "fake": 1, "email": 1, "sent": 1,
    }


def test_class_counting_rules():
    assert class_biterm_count({"method_name": 1, "comment": 1, "invoked_method": 1}) == 3
    assert class_biterm_count({"invoked_method": 2}) == 1
    assert class_biterm_count({"class_name": 1, "field_decl": 3}) == 2
    assert class_biterm_count({"param_decl": 1, "field_decl": 1}) == 1
    assert class_biterm_count({"method_name": 2}) == 4
    assert class_biterm_count({}) == 0


def test_enrich_class():
    cls = CodeClassFacts(
        "EmailUtil",
        class_names=("EmailUtil",),
        method_names=("sendEmail",),
        invoked_method_names=("getFakeEmailDAO", "sendEmailRecord"),
        field_decls=("DAOFactory", "factory"),
        param_decls=("Email", "email"),
        comments=("Send an email.",),
    )
    profile = BitermProfile("EmailUtil")
    for slot in ("method_name", "comment", "invoked_method"):
        profile.add(SEND, slot)
    profile.add(FAKE, "invoked_method")
    profile.add(Biterm("dao", "get"), "invoked_method")
    doc = enrich_class(profile, ConsensualBitermSet(frozenset({SEND, FAKE})), cls, STOP)
    assert doc.biterm_counts == {SEND: 3, FAKE: 1}
    assert doc.token_counts()["email__send"] == 3
    # invoked methods and parameters stay out of the unigram document
    assert "fake" not in doc.unigram_counts and "record" not in doc.unigram_counts
    assert class_unigrams(cls, STOP) == {"email": 3, "util": 1, "send": 2, "dao": 1, "factori": 2}


slot_counts = st.dictionaries(
    st.sampled_from(["class_name", "method_name", "comment", "invoked_method", "field_decl", "param_decl"]),
    st.integers(1, 5),
)


@given(slot_counts, st.sampled_from(["class_name", "method_name", "comment"]))
def test_adding_a_strong_occurrence_never_lowers_the_count(slots, slot):
    more = dict(slots)
    more[slot] = more.get(slot, 0) + 1
    assert class_biterm_count(more) >= class_biterm_count(slots)
    assert class_biterm_count(more) >= 1
