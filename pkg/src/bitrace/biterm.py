"""Candidate biterm extraction and the requirement/code crosscheck.

A biterm is an unordered pair of normalized terms. Requirement biterms come
from dependency relations between content words; code biterms come from every
pair of fragments of a split identifier, plus comment sentences handled like
requirement text. Only biterms seen on both sides survive the crosscheck.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .corpus import CodeClassFacts, RequirementDoc
from .nlp import CONTENT_UPOS, WINDOW_REL, ParsedSentence
from .preprocess import Term, constituent_term, identifier_terms

DEFAULT_RELATIONS = frozenset(
    {"nsubj", "nsubj:pass", "obj", "iobj", "obl", "amod", "compound", "nmod", "acl", "xcomp"}
)
CODE_SLOTS = ("class_name", "method_name", "invoked_method", "field_decl", "param_decl", "comment")
TOKEN_SEP = "__"


@dataclass(frozen=True, order=True)
class Biterm:
    a: str
    b: str

    def __post_init__(self) -> None:
        if not self.a or not self.b or self.a >= self.b:
            raise ValueError(f"not a canonical biterm: ({self.a!r}, {self.b!r})")

    @property
    def token(self) -> str:
        """Synthetic index token, e.g. ``email__send``."""
        return f"{self.a}{TOKEN_SEP}{self.b}"

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def canonicalize(t1: Term | str, t2: Term | str) -> Biterm | None:
    """Order two normalized terms; ``None`` when they coincide."""
    a = t1.normalized if isinstance(t1, Term) else t1
    b = t2.normalized if isinstance(t2, Term) else t2
    if not a or not b or a == b:
        return None
    return Biterm(a, b) if a < b else Biterm(b, a)


@dataclass
class BitermProfile:
    owner: str
    counts: dict[Biterm, dict[str, int]] = field(default_factory=dict)

    def add(self, biterm: Biterm, slot: str, n: int = 1) -> None:
        slots = self.counts.setdefault(biterm, {})
        slots[slot] = slots.get(slot, 0) + n

    def biterms(self) -> set[Biterm]:
        return set(self.counts)

    def total(self, biterm: Biterm) -> int:
        return sum(self.counts.get(biterm, {}).values())

    def slot_counts(self, biterm: Biterm) -> Mapping[str, int]:
        return self.counts.get(biterm, {})

    def rows(self) -> Iterator[tuple[str, str, str, str, int]]:
        for bt in sorted(self.counts):
            for slot, n in sorted(self.counts[bt].items()):
                yield self.owner, slot, bt.a, bt.b, n


@dataclass(frozen=True)
class ConsensualBitermSet:
    biterms: frozenset[Biterm] = frozenset()

    def __contains__(self, bt: object) -> bool:
        return bt in self.biterms

    def __len__(self) -> int:
        return len(self.biterms)

    def __iter__(self) -> Iterator[Biterm]:
        return iter(sorted(self.biterms))


def _relation_ok(rel: str, relations: frozenset[str]) -> bool:
    return rel == WINDOW_REL or rel in relations or rel.split(":", 1)[0] in relations


def sentence_biterms(sentence: ParsedSentence, relations: frozenset[str] = DEFAULT_RELATIONS) -> list[Biterm]:
    """Biterms from qualifying relations between two content words."""
    out = []
    for gov, dep, rel in sentence.edges():
        if not _relation_ok(rel, relations):
            continue
        if gov.upos not in CONTENT_UPOS or dep.upos not in CONTENT_UPOS:
            continue
        t1 = constituent_term(gov.form, gov.lemma)
        t2 = constituent_term(dep.form, dep.lemma)
        if t1 is None or t2 is None:
            continue
        bt = canonicalize(t1, t2)
        if bt is not None:
            out.append(bt)
    return out


def extract_req_biterms(
    req: RequirementDoc,
    parsed: Iterable[ParsedSentence],
    relations: frozenset[str] = DEFAULT_RELATIONS,
) -> BitermProfile:
    profile = BitermProfile(req.id)
    for sent in parsed:
        loc = sent.source
        if loc is None or loc.side != "req" or loc.owner != req.id:
            raise ValueError(f"sentence {loc} does not belong to requirement {req.id}")
        for bt in sentence_biterms(sent, relations):
            profile.add(bt, loc.part)
    return profile


def identifier_biterms(name: str) -> list[Biterm]:
    """All fragment pairs of one identifier, in position order."""
    terms = identifier_terms(name)
    out = []
    for t1, t2 in combinations(terms, 2):
        bt = canonicalize(t1, t2)
        if bt is not None:
            out.append(bt)
    return out


def extract_code_biterms(
    cls: CodeClassFacts,
    comment_parses: Iterable[ParsedSentence] = (),
    relations: frozenset[str] = DEFAULT_RELATIONS,
) -> BitermProfile:
    profile = BitermProfile(cls.id)
    for slot, ident in cls.identifiers():
        for bt in identifier_biterms(ident):
            profile.add(bt, slot)
    for sent in comment_parses:
        loc = sent.source
        if loc is None or loc.side != "cls" or loc.owner != cls.id:
            raise ValueError(f"sentence {loc} does not belong to class {cls.id}")
        for bt in sentence_biterms(sent, relations):
            profile.add(bt, "comment")
    return profile


def crosscheck(
    req_profiles: Iterable[BitermProfile], code_profiles: Iterable[BitermProfile]
) -> ConsensualBitermSet:
    req_union: set[Biterm] = set()
    for p in req_profiles:
        req_union.update(p.counts)
    code_union: set[Biterm] = set()
    for p in code_profiles:
        code_union.update(p.counts)
    return ConsensualBitermSet(frozenset(req_union & code_union))


def inventory_csv(profiles: Iterable[BitermProfile], keep: ConsensualBitermSet | None = None) -> str:
    """Audit dump ``owner,slot,term_a,term_b,count``; optionally restricted."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["owner", "slot", "term_a", "term_b", "count"])
    for p in sorted(profiles, key=lambda p: p.owner):
        for owner, slot, a, b, n in p.rows():
            if keep is None or Biterm(a, b) in keep:
                writer.writerow([owner, slot, a, b, n])
    return buf.getvalue()


def group_sentences(sentences: Iterable[ParsedSentence]) -> dict[tuple[str, str], list[ParsedSentence]]:
    """Index parsed sentences by ``(side, owner)``."""
    grouped: dict[tuple[str, str], list[ParsedSentence]] = defaultdict(list)
    for s in sentences:
        if s.source is not None:
            grouped[(s.source.side, s.source.owner)].append(s)
    return dict(grouped)
