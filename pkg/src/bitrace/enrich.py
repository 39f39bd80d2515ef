"""Build index-ready documents, optionally injecting consensual biterms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .biterm import Biterm, BitermProfile, ConsensualBitermSet
from .corpus import CodeClassFacts, ReqKind, RequirementDoc
from .preprocess import normalize_tokens, split_identifier, tokenize_text

NAME_SLOTS = ("class_name", "method_name")
CONSERVATIVE_SLOTS = ("invoked_method", "field_decl", "param_decl")
# identifier fields that feed the class unigram document
UNIGRAM_FIELDS = ("class_names", "method_names", "field_decls")


@dataclass
class EnrichedDocument:
    owner: str
    side: str  # "requirement" or "code"
    unigram_counts: dict[str, int]
    biterm_counts: dict[Biterm, int] = field(default_factory=dict)
    part_biterm_counts: dict[str, dict[Biterm, int]] = field(default_factory=dict)
    kind: ReqKind | None = None

    def token_counts(self, with_biterms: bool = True) -> dict[str, int]:
        """Index tokens: unigrams plus ``a__b`` biterm tokens."""
        out = dict(self.unigram_counts)
        if with_biterms:
            for bt, n in self.biterm_counts.items():
                out[bt.token] = n
        return out

    def biterm_set(self) -> frozenset[Biterm]:
        return frozenset(self.biterm_counts)


def requirement_unigrams(req: RequirementDoc, stop: frozenset[str]) -> dict[str, int]:
    tokens: list[str] = []
    for text in req.parts.values():
        tokens.extend(tokenize_text(text))
    return dict(Counter(t.normalized for t in normalize_tokens(tokens, stop)))


def identifier_unigrams(name: str, stop: frozenset[str]) -> list[str]:
    frags = split_identifier(name)
    if name.upper() == name:
        frags = [f.lower() for f in frags]
    return [t.normalized for t in normalize_tokens(frags, stop)]


def class_unigrams(cls: CodeClassFacts, stop: frozenset[str]) -> dict[str, int]:
    counts: Counter[str] = Counter()
    for name in UNIGRAM_FIELDS:
        for ident in getattr(cls, name):
            counts.update(identifier_unigrams(ident, stop))
    for comment in cls.comments:
        counts.update(t.normalized for t in normalize_tokens(tokenize_text(comment), stop))
    return dict(counts)


def enrich_requirement(
    profile: BitermProfile | None,
    cons: ConsensualBitermSet,
    req: RequirementDoc,
    stop: frozenset[str],
) -> EnrichedDocument:
    if profile is not None and profile.owner != req.id:
        raise ValueError(f"profile {profile.owner} does not belong to requirement {req.id}")
    totals: dict[Biterm, int] = {}
    parts: dict[str, dict[Biterm, int]] = {}
    if profile is not None:
        for bt in sorted(profile.counts):
            if bt not in cons:
                continue
            for part, n in profile.counts[bt].items():
                parts.setdefault(part, {})[bt] = n
                totals[bt] = totals.get(bt, 0) + n
    return EnrichedDocument(req.id, "requirement", requirement_unigrams(req, stop), totals, parts, req.kind)


def class_biterm_count(slots: Mapping[str, int]) -> int:
    """Enriched count of one biterm from its per-slot occurrence counts."""
    strong = 2 * sum(slots.get(s, 0) for s in NAME_SLOTS) + slots.get("comment", 0)
    if strong:
        return strong
    return 1 if any(slots.get(s, 0) for s in CONSERVATIVE_SLOTS) else 0


def enrich_class(
    profile: BitermProfile | None,
    cons: ConsensualBitermSet,
    cls: CodeClassFacts,
    stop: frozenset[str],
) -> EnrichedDocument:
    if profile is not None and profile.owner != cls.id:
        raise ValueError(f"profile {profile.owner} does not belong to class {cls.id}")
    counts: dict[Biterm, int] = {}
    if profile is not None:
        for bt in sorted(profile.counts):
            if bt in cons:
                n = class_biterm_count(profile.counts[bt])
                if n:
                    counts[bt] = n
    return EnrichedDocument(cls.id, "code", class_unigrams(cls, stop), counts)
