"""Lexical extraction of class facts from Java sources.

This is a token scanner with brace/paren bookkeeping, not a Java parser. It
recognises enough structure to recover, per top-level class: declared class
and method names, call sites, field and parameter declarations (type and
name identifiers) and the comments that precede a class or method.
Syntax errors never abort a scan; they only cost facts.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CodeClassFacts

log = logging.getLogger(__name__)

__all__ = ["scan_java_sources", "scan_java_text", "tokenize_java"]

JAVA_KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null var
    """.split()
)
MODIFIERS = frozenset(
    "public private protected static final abstract native synchronized "
    "transient volatile strictfp default sealed".split()
)
TYPE_KEYWORDS = ("class", "interface", "enum", "record")

_TOKEN_RE = re.compile(
    r"""
    (?P<comment>//[^\n]*|/\*.*?(?:\*/|\Z))
  | (?P<text>\"\"\".*?(?:\"\"\"|\Z))
  | (?P<str>"(?:\\.|[^"\\\n])*"?)
  | (?P<chr>'(?:\\.|[^'\\\n])*'?)
  | (?P<ident>[^\W\d][\w$]*|\$[\w$]*)
  | (?P<num>\d[\w.]*)
  | (?P<ws>\s+)
  | (?P<op>.)
    """,
    re.S | re.X,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int


def tokenize_java(source: str) -> list[Token]:
    """Split Java source into tokens, dropping whitespace."""
    out: list[Token] = []
    line = 1
    for m in _TOKEN_RE.finditer(source):
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind in ("text", "chr"):
                kind = "str"
            out.append(Token(kind, text, line))
        line += text.count("\n")
    return out


def clean_comment(text: str) -> str:
    if text.startswith("//"):
        body = text[2:]
    else:
        body = text[2:]
        if body.endswith("*/"):
            body = body[:-2]
        body = "\n".join(ln.strip().lstrip("*") for ln in body.splitlines())
    body = re.sub(r"\{@\w+\s+([^}]*)\}", r"\1", body)
    body = re.sub(r"<[^>]+>", " ", body)
    body = re.sub(r"(?<!\w)@\w+", " ", body)
    return " ".join(body.split())


@dataclass
class _Facts:
    id: str
    class_names: list[str] = field(default_factory=list)
    method_names: list[str] = field(default_factory=list)
    invoked_method_names: list[str] = field(default_factory=list)
    field_decls: list[str] = field(default_factory=list)
    param_decls: list[str] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def freeze(self) -> CodeClassFacts:
        return CodeClassFacts(
            self.id,
            tuple(self.class_names),
            tuple(self.method_names),
            tuple(self.invoked_method_names),
            tuple(self.field_decls),
            tuple(self.param_decls),
            tuple(self.comments),
        )


def _decl_identifiers(toks: list[Token]) -> list[str]:
    """Type and name identifiers of a declaration fragment.

    Modifiers, keywords and qualifier prefixes (``java.util.``) are dropped.
    """
    out = []
    for i, t in enumerate(toks):
        if t.kind != "ident" or t.text in JAVA_KEYWORDS or t.text in MODIFIERS:
            continue
        if i + 1 < len(toks) and toks[i + 1].text == ".":
            continue
        if i > 0 and toks[i - 1].text == "@":
            continue
        out.append(t.text)
    return out


class _Scanner:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.pending: list[str] = []

    # -- cursor helpers --------------------------------------------------

    def _eof(self) -> bool:
        return self.i >= len(self.toks)

    def _peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else None

    def _text(self, offset: int = 0) -> str:
        t = self._peek(offset)
        return t.text if t is not None else ""

    def _skip_balanced(self, open_: str, close: str) -> list[Token]:
        """Consume from an opening bracket to its match; return the inner tokens."""
        depth = 0
        inner: list[Token] = []
        while not self._eof():
            t = self.toks[self.i]
            self.i += 1
            if t.text == open_ and t.kind == "op":
                depth += 1
                if depth == 1:
                    continue
            elif t.text == close and t.kind == "op":
                depth -= 1
                if depth == 0:
                    return inner
            inner.append(t)
        return inner

    def _skip_annotation(self) -> None:
        # at '@'
        self.i += 1
        if self._peek() is not None and self._peek().kind == "ident":
            self.i += 1
        while self._text() == "." and self._peek(1) is not None and self._peek(1).kind == "ident":
            self.i += 2
        if self._text() == "(":
            self._skip_balanced("(", ")")

    def _is_annotation(self) -> bool:
        return self._text() == "@" and self._text(1) != "interface"

    # -- file level ------------------------------------------------------

    def scan_file(self) -> list[_Facts]:
        package = ""
        classes: list[_Facts] = []
        while not self._eof():
            t = self.toks[self.i]
            if t.kind == "comment":
                self._comment(t)
                continue
            if t.text == "package":
                self.i += 1
                name = []
                while not self._eof() and self._text() != ";":
                    name.append(self._text())
                    self.i += 1
                self.i += 1
                package = "".join(name)
                self.pending.clear()
                continue
            if t.text == "import":
                while not self._eof() and self._text() != ";":
                    self.i += 1
                self.i += 1
                self.pending.clear()
                continue
            if self._is_annotation():
                self._skip_annotation()
                continue
            if t.text in (";", "}", ")"):
                self.i += 1
                continue
            start = self.i
            facts = self._member(None, top_level=True, package=package)
            if facts is not None:
                classes.append(facts)
            if self.i == start:
                self.i += 1
        return classes

    def _comment(self, t: Token) -> None:
        text = clean_comment(t.text)
        if text:
            self.pending.append(text)
        self.i += 1

    # -- declarations ----------------------------------------------------

    def _header(self) -> tuple[list[Token], str]:
        """Collect declaration tokens up to the first terminator at depth 0."""
        header: list[Token] = []
        angle = 0
        while not self._eof():
            t = self.toks[self.i]
            if t.kind == "comment":
                self.i += 1
                continue
            if self._is_annotation():
                self._skip_annotation()
                continue
            if t.kind == "op":
                if t.text == "<":
                    angle += 1
                elif t.text == ">" and angle:
                    angle -= 1
                elif angle == 0 and t.text in "{;}=(,)":
                    return header, t.text
            header.append(t)
            self.i += 1
        return header, ""

    def _member(self, facts: _Facts | None, *, top_level: bool = False, package: str = "", owner: str | None = None) -> _Facts | None:
        """Parse one member declaration inside a class body (or at file level).

        Returns a new top-level ``_Facts`` when a top-level type is declared.
        """
        comments, self.pending = self.pending, []
        header, term = self._header()
        kw_at = next(
            (k for k, t in enumerate(header) if t.text in TYPE_KEYWORDS and t.kind == "ident"
             and (k == 0 or header[k - 1].text != ".")
             and (t.text != "record" or (k + 1 < len(header) and header[k + 1].kind == "ident"))),
            None,
        )
        if kw_at is not None and kw_at + 1 < len(header) and header[kw_at + 1].kind == "ident":
            name = header[kw_at + 1].text
            if top_level:
                facts = _Facts(f"{package}.{name}" if package else name)
            assert facts is not None
            facts.class_names.append(name)
            facts.comments.extend(comments)
            if term == "(":  # record components
                inner = self._skip_balanced("(", ")")
                facts.field_decls.extend(_decl_identifiers(inner))
                _, term = self._header()
            if term == "{":
                self.i += 1
                self._class_body(facts, name, is_enum=header[kw_at].text == "enum")
            elif term == ";":
                self.i += 1
            return facts if top_level else None
        if facts is None:
            # stray tokens at file level
            if term in ("{", "("):
                self._skip_balanced(term, "}" if term == "{" else ")")
            elif term:
                self.i += 1
            return None
        if term == "(":
            self._method(facts, header, comments, owner)
        elif term in ("=", ";", ","):
            self._field(facts, header, term)
        elif term == "{":
            self.i += 1
            self._scan_code(facts, "block")
        elif term in (")", "}"):
            pass  # caller handles the closing brace
        return None

    def _method(self, facts: _Facts, header: list[Token], comments: list[str], owner: str | None) -> None:
        name_tok = header[-1] if header else None
        params = self._skip_balanced("(", ")")
        for chunk in _split_commas(params):
            facts.param_decls.extend(_decl_identifiers(chunk))
        if name_tok is not None and name_tok.kind == "ident" and name_tok.text not in JAVA_KEYWORDS:
            # constructors repeat the class name; keep their comments only
            if name_tok.text != owner:
                facts.method_names.append(name_tok.text)
            facts.comments.extend(comments)
        # throws clause, array dims, annotation defaults
        while not self._eof():
            t = self._text()
            if t == "{":
                self.i += 1
                self._scan_code(facts, "block")
                return
            if t == ";":
                self.i += 1
                return
            if t == "}":
                return
            if t == "default":
                self.i += 1
                self._scan_code(facts, "expr")
                continue
            self.i += 1

    def _field(self, facts: _Facts, header: list[Token], term: str) -> None:
        facts.field_decls.extend(_decl_identifiers(header))
        while not self._eof():
            if term == "=":
                self.i += 1
                self._scan_code(facts, "expr")
                term = self._text()
                continue
            if term == ",":
                self.i += 1
                names, term = self._header()
                facts.field_decls.extend(_decl_identifiers(names))
                continue
            if term == ";":
                self.i += 1
            return

    def _class_body(self, facts: _Facts, name: str | None, is_enum: bool = False) -> None:
        if is_enum:
            self._enum_constants(facts)
        while not self._eof():
            t = self.toks[self.i]
            if t.kind == "comment":
                self._comment(t)
                continue
            if t.text == "}":
                self.i += 1
                self.pending.clear()
                return
            if t.text == ";":
                self.i += 1
                continue
            start = self.i
            self._member(facts, owner=name)
            if self.i == start:
                self.i += 1

    def _enum_constants(self, facts: _Facts) -> None:
        while not self._eof():
            t = self.toks[self.i]
            if t.kind == "comment":
                self.i += 1
            elif self._is_annotation():
                self._skip_annotation()
            elif t.text == ";":
                self.i += 1
                return
            elif t.text == "}":
                return
            elif t.text == "(":
                self.i += 1
                self._scan_code(facts, "paren")
            elif t.text == "{":
                self.i += 1
                self._class_body(facts, None)
            else:
                self.i += 1
        self.pending.clear()

    # -- bodies ----------------------------------------------------------

    def _scan_code(self, facts: _Facts, mode: str) -> None:
        """Scan statements or an expression, recording call sites.

        ``block`` stops after the closing brace, ``paren`` after the closing
        parenthesis, ``expr`` before a top-level ``;`` or ``,``.
        """
        parens: list[bool] = []  # True when the paren opens a `new T(...)`
        braces = 0
        while not self._eof():
            t = self.toks[self.i]
            text = t.text
            if t.kind == "comment":
                self.i += 1
                continue
            if t.kind == "op":
                if text == "(":
                    parens.append(False)
                elif text == ")":
                    if not parens:
                        if mode == "paren":
                            self.i += 1
                        return
                    opened_by_new = parens.pop()
                    if opened_by_new and self._text(1) == "{":
                        self.i += 2
                        self._class_body(facts, None)
                        continue
                elif text == "{":
                    braces += 1
                elif text == "}":
                    if braces == 0:
                        if mode == "block":
                            self.i += 1
                        return
                    braces -= 1
                elif text in ";," and mode == "expr" and not parens and braces == 0:
                    return
                self.i += 1
                continue
            if t.kind == "ident":
                nxt = self._text(1)
                prev = self.toks[self.i - 1].text if self.i > 0 else ""
                if text == "new":
                    self.i += 1
                    self._creator(parens)
                    continue
                if text in ("class", "interface", "enum") and prev != "." and self._peek(1) and self._peek(1).kind == "ident":
                    facts.class_names.append(self._text(1))
                    self.i += 2
                    while not self._eof() and self._text() not in ("{", ";"):
                        self.i += 1
                    if self._text() == "{":
                        self.i += 1
                        self._class_body(facts, None, is_enum=text == "enum")
                    continue
                if nxt == "(" and text not in JAVA_KEYWORDS and prev != "@":
                    facts.invoked_method_names.append(text)
            self.i += 1

    def _creator(self, parens: list[bool]) -> None:
        # after `new`: qualified type with optional type arguments
        while not self._eof():
            t = self.toks[self.i]
            if t.kind == "comment" or t.kind == "ident" or t.text == ".":
                self.i += 1
            elif self._is_annotation():
                self._skip_annotation()
            elif t.text == "<":
                self._skip_balanced("<", ">")
            else:
                break
        if self._text() == "(":
            parens.append(True)
            self.i += 1


def _split_commas(toks: list[Token]) -> list[list[Token]]:
    chunks: list[list[Token]] = [[]]
    depth = 0
    for t in toks:
        if t.kind == "op" and t.text in "<([{":
            depth += 1
        elif t.kind == "op" and t.text in ">)]}":
            depth -= 1
        if t.text == "," and depth == 0:
            chunks.append([])
        else:
            chunks[-1].append(t)
    return [c for c in chunks if c]


def scan_java_text(source: str) -> list[CodeClassFacts]:
    """Facts for every top-level type declared in one compilation unit."""
    return [f.freeze() for f in _Scanner(tokenize_java(source)).scan_file()]


def scan_java_sources(directory: str | Path) -> list[CodeClassFacts]:
    directory = Path(directory)
    facts: list[CodeClassFacts] = []
    seen: set[str] = set()
    for path in sorted(directory.rglob("*.java")):
        try:
            source = path.read_bytes().decode("utf-8", errors="replace")
        except OSError as exc:
            log.warning("skipping unreadable file %s: %s", path, exc)
            continue
        try:
            found = scan_java_text(source)
        except RecursionError:
            log.warning("nesting too deep, skipping %s", path)
            continue
        for f in found:
            if f.id in seen:
                log.warning("duplicate class %s in %s ignored", f.id, path)
                continue
            seen.add(f.id)
            facts.append(f)
    if not facts:
        log.warning("no Java classes found under %s", directory)
    return facts
