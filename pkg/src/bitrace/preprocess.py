"""Tokenization, identifier splitting and term normalization.

Everything downstream (unigram documents, biterm constituents) goes through
the helpers in this module so both artifact sides are normalized the same
way: lowercase, Porter-stemmed, with short all-caps abbreviations kept
verbatim (lowercased, unstemmed).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .porter import stem

__all__ = [
    "Term",
    "split_identifier",
    "porter_stem",
    "normalize_tokens",
    "tokenize_text",
    "identifier_terms",
    "constituent_term",
    "is_abbreviation",
    "load_stopwords",
    "default_stopwords",
]

_LOWER = r"[^\W\d_A-Z]"
_FRAGMENT_RE = re.compile(rf"[A-Z]+(?=[A-Z]{_LOWER})|[A-Z]?{_LOWER}+|[A-Z]+|\d+")
_WORD_RE = re.compile(r"\w+")

# All-caps words that are ordinary vocabulary rather than domain abbreviations.
COMMON_WORDS = frozenset(
    """
    ok note todo fixme xxx hack warning error new old all and not only none
    yes no true false null any must shall may will see use used get set add
    end start stop
    """.split()
)


@dataclass(frozen=True)
class Term:
    surface: str
    normalized: str
    is_abbreviation: bool = False


def split_identifier(name: str) -> list[str]:
    """Split ``name`` on underscores, case changes and letter/digit borders.

    Runs of capitals are kept together except that the last capital of a run
    followed by lowercase starts a new fragment (``HTTPServer`` -> ``HTTP``,
    ``Server``).
    """
    out: list[str] = []
    for chunk in re.split(r"[\W_]+", name):
        if chunk:
            out.extend(_FRAGMENT_RE.findall(chunk))
    return out


def porter_stem(word: str) -> str:
    return stem(word)


def is_abbreviation(surface: str, stop: Iterable[str] = ()) -> bool:
    if not (2 <= len(surface) <= 6 and surface.isalpha() and surface.isupper()):
        return False
    low = surface.lower()
    return low not in COMMON_WORDS and low not in stop


def _alnum(token: str) -> str:
    return "".join(ch for ch in token if ch.isalnum())


def normalize_tokens(tokens: Iterable[str], stop: frozenset[str] | set[str]) -> list[Term]:
    """Clean, lowercase, stop-filter and stem raw tokens.

    Digit-only tokens and single characters are dropped. Abbreviations
    (all-caps, 2 to 6 letters, not an ordinary word) skip stemming.
    """
    terms: list[Term] = []
    for raw in tokens:
        token = _alnum(raw)
        if not token or token.isdigit():
            continue
        abbrev = is_abbreviation(token, stop)
        low = token.lower()
        if len(low) < 2 or low in stop:
            continue
        norm = low if abbrev else stem(low)
        if norm in stop or not norm:
            continue
        terms.append(Term(raw, norm, abbrev))
    return terms


def tokenize_text(text: str) -> list[str]:
    """Word tokens of free text, with embedded identifiers split apart."""
    out: list[str] = []
    for word in _WORD_RE.findall(text):
        out.extend(split_identifier(word))
    return out


def identifier_terms(name: str) -> list[Term]:
    """Normalized fragments of a code identifier, without stop filtering.

    Fragments of CONSTANT_CASE identifiers are ordinary words, not
    abbreviations.
    """
    shouting = name.upper() == name
    terms: list[Term] = []
    for frag in split_identifier(name):
        if frag.isdigit() or len(frag) < 2:
            continue
        abbrev = not shouting and is_abbreviation(frag)
        low = frag.lower()
        terms.append(Term(frag, low if abbrev else stem(low), abbrev))
    return terms


def constituent_term(surface: str, lemma: str | None = None) -> Term | None:
    """Normalize one word of a parsed sentence for use inside a biterm.

    The lemma, when available, is stemmed in place of the surface form so
    that inflections unify (``sent`` -> ``send``). Stop words are not removed.
    """
    token = _alnum(surface)
    if not token or token.isdigit():
        return None
    if is_abbreviation(token):
        return Term(surface, token.lower(), True)
    base = _alnum(lemma) if lemma and lemma != "_" else token
    base = (base or token).lower()
    if len(base) < 2 or base.isdigit():
        return None
    return Term(surface, stem(base), False)


def load_stopwords(path: str | Path) -> frozenset[str]:
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


@lru_cache(maxsize=None)
def _bundled(name: str) -> frozenset[str]:
    text = resources.files("bitrace").joinpath("data", name).read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def default_stopwords(include_code: bool = True) -> frozenset[str]:
    """The bundled English IR list, plus Java keywords and accessor prefixes."""
    words = _bundled("stopwords_en.txt")
    if include_code:
        words = words | _bundled("stopwords_code.txt")
    return words
