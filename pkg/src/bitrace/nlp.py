"""Parsed-sentence model, CoNLL-U I/O, sentence splitting and the fallback tagger.

Dependency parses are produced outside this package (any UD parser) and
exchanged as CoNLL-U. Each sentence carries a ``# sent_id`` locator naming
the artifact it belongs to::

    req:<requirement id>:<part>:<ordinal>
    cls:<class id>:comment:<ordinal>

When no parse is available, :func:`heuristic_parse` tags words from a small
lexicon plus suffix rules and links every content word to the next two
content words (relation ``win``). Such sentences are flagged ``degraded``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from . import lexicon
from .corpus import ISSUE_PARTS, USE_CASE_PARTS
from .errors import InputError

log = logging.getLogger(__name__)

UPOS_TAGS = frozenset(
    "ADJ ADP ADV AUX CCONJ DET INTJ NOUN NUM PART PRON PROPN PUNCT SCONJ SYM VERB X".split()
)
CONTENT_UPOS = frozenset({"NOUN", "PROPN", "VERB", "ADJ"})
WINDOW_REL = "win"
WINDOW = 2


@dataclass(frozen=True)
class Locator:
    side: str  # "req" or "cls"
    owner: str
    part: str  # requirement part name, or "comment"
    ordinal: int

    def __str__(self) -> str:
        return f"{self.side}:{self.owner}:{self.part}:{self.ordinal}"

    @classmethod
    def parse(cls, text: str) -> "Locator":
        side, _, rest = text.strip().partition(":")
        pieces = rest.rsplit(":", 2)
        if side not in ("req", "cls") or len(pieces) != 3 or not pieces[0]:
            raise ValueError(f"unresolvable locator {text!r}")
        owner, part, ordinal = pieces
        if side == "req" and part not in USE_CASE_PARTS + ISSUE_PARTS:
            raise ValueError(f"unresolvable locator {text!r}: unknown part {part!r}")
        if side == "cls" and part != "comment":
            raise ValueError(f"unresolvable locator {text!r}: class sentences must be comments")
        try:
            return cls(side, owner, part, int(ordinal))
        except ValueError:
            raise ValueError(f"unresolvable locator {text!r}: ordinal must be an integer") from None


@dataclass(frozen=True)
class ParsedToken:
    index: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class ParsedSentence:
    tokens: tuple[ParsedToken, ...]
    source: Locator | None = None
    degraded: bool = False
    # (governor index, dependent index) pairs; only used in degraded mode
    pseudo_edges: tuple[tuple[int, int], ...] = field(default=())

    def edges(self) -> Iterator[tuple[ParsedToken, ParsedToken, str]]:
        """Yield ``(governor, dependent, relation)`` for every relation."""
        if self.degraded:
            for g, d in self.pseudo_edges:
                yield self.tokens[g - 1], self.tokens[d - 1], WINDOW_REL
            return
        for tok in self.tokens:
            if tok.head > 0:
                yield self.tokens[tok.head - 1], tok, tok.deprel

    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)


# -- CoNLL-U ----------------------------------------------------------------


def parse_conllu(text: str, source: str = "<string>") -> list[ParsedSentence]:
    sentences: list[ParsedSentence] = []
    meta: dict[str, str] = {}
    rows: list[tuple[int, list[str]]] = []

    def flush() -> None:
        nonlocal meta, rows
        if not rows:
            meta = {}
            return
        first = rows[0][0]
        if "sent_id" not in meta:
            raise InputError("sentence without '# sent_id' locator", source=source, line=first)
        try:
            loc = Locator.parse(meta["sent_id"])
        except ValueError as exc:
            raise InputError(str(exc), source=source, line=first) from None
        degraded = meta.get("parse") == "heuristic"
        tokens = []
        edges = []
        for lineno, cols in rows:
            try:
                idx, head = int(cols[0]), int(cols[6]) if cols[6] != "_" else 0
            except ValueError:
                raise InputError("non-integer ID or HEAD", source=source, line=lineno) from None
            if cols[3] not in UPOS_TAGS:
                raise InputError(f"unknown UPOS tag {cols[3]!r}", source=source, line=lineno)
            tokens.append(ParsedToken(idx, cols[1], cols[2], cols[3], head, cols[7]))
            if degraded and cols[8] != "_":
                for dep in cols[8].split("|"):
                    gov, _, rel = dep.partition(":")
                    if rel == WINDOW_REL:
                        edges.append((int(gov), idx))
        n = len(tokens)
        for expected, ((lineno, _), tok) in enumerate(zip(rows, tokens), 1):
            if tok.index != expected:
                raise InputError("token ids must be consecutive from 1", source=source, line=lineno)
            if not 0 <= tok.head <= n:
                raise InputError(f"HEAD {tok.head} outside sentence", source=source, line=lineno)
        if not degraded and sum(1 for t in tokens if t.head == 0) != 1:
            log.warning("%s:%d: sentence %s does not have exactly one root", source, first, loc)
        sentences.append(ParsedSentence(tuple(tokens), loc, degraded, tuple(sorted(edges))))
        meta, rows = {}, []

    lineno = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise InputError(f"expected 10 tab-separated columns, found {len(cols)}", source=source, line=lineno)
        if "-" in cols[0] or "." in cols[0]:
            continue  # multiword token range or empty node
        rows.append((lineno, cols))
    flush()
    return sentences


def read_conllu(path: str | Path) -> list[ParsedSentence]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read: {exc.strerror}", source=str(path)) from None
    return parse_conllu(text, str(path))


def write_conllu(sentences: Iterable[ParsedSentence]) -> str:
    """Serialize sentences; degraded parses keep their window links in DEPS."""
    blocks = []
    for s in sentences:
        lines = []
        if s.source is not None:
            lines.append(f"# sent_id = {s.source}")
        if s.degraded:
            lines.append("# parse = heuristic")
        deps: dict[int, list[str]] = {}
        for g, d in s.pseudo_edges:
            deps.setdefault(d, []).append(f"{g}:{WINDOW_REL}")
        for t in s.tokens:
            d = "|".join(deps.get(t.index, [])) or "_"
            lines.append(
                "\t".join([str(t.index), t.form, t.lemma or "_", t.upos, "_", "_", str(t.head), t.deprel or "_", d, "_"])
            )
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


# -- sentence splitting -----------------------------------------------------

_ABBREVIATIONS = frozenset(
    "e.g i.e etc vs cf al fig no mr mrs ms dr prof approx dept est inc ltd jr sr st".split()
)
_LABEL_RE = re.compile(r"^[\[(]?[A-Z]{1,3}\d+[a-z]?[\])]?$")
_BOUNDARY_RE = re.compile(r"([.!?]+)([\"')\]]*)(\s+)(?=[\[(\"']?[A-Z])")


def sentence_split(text: str) -> list[str]:
    """Split on . ! ? followed by whitespace and a capital letter.

    No split after known abbreviations, single-letter initials, or step
    labels such as ``S1.``.
    """
    text = text.strip()
    if not text:
        return []
    out: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        before = text[start : m.start()].split()
        last = before[-1] if before else ""
        if m.group(1) == ".":
            word = last.lower().rstrip(".")
            if word in _ABBREVIATIONS or (len(last) == 1 and last.isalpha()) or _LABEL_RE.match(last):
                continue
        out.append(text[start : m.end(2)].strip())
        start = m.end()
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out


# -- heuristic tagging ------------------------------------------------------

_WORD_RE = re.compile(r"(?:[A-Za-z]\.){2,}|[A-Za-z][A-Za-z0-9]*(?:'[a-z]+)?|\d+(?:\.\d+)?|[^\sA-Za-z0-9]")
_STEP_LABEL_RE = re.compile(r"[A-Z]{1,3}\d+[a-z]?")

_FUNCTION_TAGS = {w: tag for tag, words in lexicon.FUNCTION_WORDS.items() for w in words}


def _verb_base(word: str) -> str | None:
    if word in lexicon.VERBS:
        return word
    if word in lexicon.IRREGULAR_LEMMAS:
        return lexicon.IRREGULAR_LEMMAS[word]
    for suffix, repl in (("ies", "y"), ("es", ""), ("s", ""), ("ied", "y"), ("ed", "e"), ("ed", ""), ("ing", "e"), ("ing", "")):
        if word.endswith(suffix) and len(word) > len(suffix) + 2:
            base = word[: -len(suffix)] + repl
            if base in lexicon.VERBS:
                return base
            if len(base) > 2 and base[-1] == base[-2] and base[:-1] in lexicon.VERBS:
                return base[:-1]
    return None


def tag_word(form: str, prev_upos: str | None) -> tuple[str, str]:
    """Return ``(upos, lemma)`` for one word given the previous tag."""
    if form.isdigit() or re.fullmatch(r"\d+(\.\d+)?", form):
        return "NUM", form
    if not form[0].isalnum():
        return "PUNCT", form
    if _STEP_LABEL_RE.fullmatch(form) or "." in form or (len(form) == 1 and form.lower() not in "ai"):
        return "X", form
    low = form.lower()
    if low in _FUNCTION_TAGS:
        return _FUNCTION_TAGS[low], lexicon.IRREGULAR_LEMMAS.get(low, low)
    if 2 <= len(form) <= 6 and form.isupper() and form.isalpha():
        return "PROPN", form
    if low in lexicon.ADJECTIVES:
        return "ADJ", low
    base = _verb_base(low)
    if base is not None:
        nominal_slot = prev_upos in ("DET", "ADJ", "ADP") or (prev_upos == "PRON" and low in lexicon.NOUN_VERB)
        if base in lexicon.NOUN_VERB and nominal_slot:
            return "NOUN", low
        return "VERB", base
    if low.endswith("ly") and len(low) > 4:
        return "ADV", low
    if low.endswith(lexicon.NOUN_SUFFIXES):
        return "NOUN", low
    if low.endswith(lexicon.VERB_SUFFIXES + ("ate",)):
        return "VERB", low
    if low.endswith(lexicon.ADJ_SUFFIXES):
        return "ADJ", low
    if low.endswith(("ed", "ing")) and len(low) > 5:
        return "VERB", low
    return "NOUN", low


def heuristic_parse(text: str, source: Locator | None = None) -> list[ParsedSentence]:
    """Tag and window-link every sentence of ``text``.

    With ``source`` given, sentence ordinals are assigned from
    ``source.ordinal`` upward.
    """
    out = []
    for k, sent in enumerate(sentence_split(text)):
        forms = _WORD_RE.findall(sent)
        if not forms:
            continue
        tokens = []
        prev = None
        for i, form in enumerate(forms, 1):
            upos, lemma = tag_word(form, prev)
            tokens.append(ParsedToken(i, form, lemma, upos, 0, "_"))
            prev = upos
        content = [t.index for t in tokens if t.upos in CONTENT_UPOS]
        edges = tuple(
            (g, d) for pos, g in enumerate(content) for d in content[pos + 1 : pos + 1 + WINDOW]
        )
        loc = None
        if source is not None:
            loc = Locator(source.side, source.owner, source.part, source.ordinal + k)
        out.append(ParsedSentence(tuple(tokens), loc, True, edges))
    return out
