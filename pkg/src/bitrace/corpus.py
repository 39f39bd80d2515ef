"""Artifact types and their on-disk formats.

Requirements come as JSON or as sectioned text (``== Main Flow ==`` headers),
code as JSON fact files (see :mod:`bitrace.javascan` for the Java scanner that
produces them) and gold links as a two-column CSV.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError

log = logging.getLogger(__name__)

USE_CASE_PARTS = ("title", "precondition", "main_flow", "sub_flow", "alternative_flow")
ISSUE_PARTS = ("summary", "description")

_PART_ALIASES = {
    "mainflow": "main_flow",
    "basic_flow": "main_flow",
    "subflow": "sub_flow",
    "alternate_flow": "alternative_flow",
    "alternative": "alternative_flow",
    "summ": "summary",
    "desc": "description",
}


class ReqKind(str, Enum):
    USE_CASE = "use_case"
    ISSUE = "issue"

    @property
    def part_names(self) -> tuple[str, ...]:
        return USE_CASE_PARTS if self is ReqKind.USE_CASE else ISSUE_PARTS

    @classmethod
    def parse(cls, value: str) -> "ReqKind":
        key = re.sub(r"[\s_-]+", "", str(value)).lower()
        if key in ("usecase", "uc"):
            return cls.USE_CASE
        if key == "issue":
            return cls.ISSUE
        raise ValueError(f"unknown requirement kind {value!r} (expected use_case or issue)")


def _ws(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class RequirementDoc:
    id: str
    kind: ReqKind
    parts: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        allowed = self.kind.part_names
        bad = [p for p in self.parts if p not in allowed]
        if bad:
            raise ValueError(
                f"part not admissible for kind {self.kind.value}: {', '.join(bad)} "
                f"(valid: {', '.join(allowed)})"
            )
        # canonical part order, independent of input order
        object.__setattr__(
            self, "parts", {p: self.parts[p] for p in allowed if p in self.parts}
        )

    def text(self, part: str) -> str:
        return self.parts.get(part, "")

    def to_json(self) -> dict:
        return {"id": self.id, "kind": self.kind.value, "parts": dict(self.parts)}


SLOT_FIELDS = {
    "class_name": "class_names",
    "method_name": "method_names",
    "invoked_method": "invoked_method_names",
    "field_decl": "field_decls",
    "param_decl": "param_decls",
}
FACT_FIELDS = tuple(SLOT_FIELDS.values()) + ("comments",)


@dataclass(frozen=True)
class CodeClassFacts:
    id: str
    class_names: tuple[str, ...] = ()
    method_names: tuple[str, ...] = ()
    invoked_method_names: tuple[str, ...] = ()
    field_decls: tuple[str, ...] = ()
    param_decls: tuple[str, ...] = ()
    comments: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for name in FACT_FIELDS:
            value = tuple(getattr(self, name))
            object.__setattr__(self, name, value)
            if name != "comments" and any(not ident for ident in value):
                raise ValueError(f"{self.id}: empty identifier in {name}")

    def identifiers(self) -> Iterator[tuple[str, str]]:
        """Yield ``(slot, identifier)`` for every identifier occurrence."""
        for slot, name in SLOT_FIELDS.items():
            for ident in getattr(self, name):
                yield slot, ident

    def to_json(self) -> dict:
        out: dict = {"id": self.id}
        for name in FACT_FIELDS:
            out[name] = list(getattr(self, name))
        return out


@dataclass(frozen=True)
class TraceMatrix:
    links: frozenset[tuple[str, str]]

    def __len__(self) -> int:
        return len(self.links)

    def __contains__(self, link: object) -> bool:
        return link in self.links

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(sorted(self.links))

    @property
    def requirement_ids(self) -> set[str]:
        return {r for r, _ in self.links}

    @property
    def class_ids(self) -> set[str]:
        return {c for _, c in self.links}

    def relevant_for(self, req_id: str) -> set[str]:
        return {c for r, c in self.links if r == req_id}

    def validate(self, req_ids: Iterable[str], class_ids: Iterable[str], source: str = "rtm") -> None:
        req_ids, class_ids = set(req_ids), set(class_ids)
        missing_r = sorted(self.requirement_ids - req_ids)
        missing_c = sorted(self.class_ids - class_ids)
        if missing_r or missing_c:
            parts = []
            if missing_r:
                parts.append("unknown requirements: " + ", ".join(missing_r))
            if missing_c:
                parts.append("unknown classes: " + ", ".join(missing_c))
            raise InputError("dangling trace links; " + "; ".join(parts), source=source)


# -- requirements -----------------------------------------------------------


def _part_key(header: str) -> str:
    key = re.sub(r"[\s-]+", "_", header.strip().lower())
    key = _PART_ALIASES.get(key, key)
    if key not in USE_CASE_PARTS + ISSUE_PARTS and key.endswith("s"):
        key = _PART_ALIASES.get(key[:-1], key[:-1])
    return key


def _make_requirement(rid: str, kind: ReqKind, parts: dict[str, str], source: str, line: int | None):
    try:
        return RequirementDoc(rid, kind, {p: _ws(t) for p, t in parts.items()})
    except ValueError as exc:
        raise InputError(f"requirement {rid}: {exc}", source=source, line=line) from None


def _requirements_from_json(text: str, source: str) -> list[RequirementDoc]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", source=source, line=exc.lineno) from None
    if isinstance(data, dict):
        data = data.get("requirements")
    if not isinstance(data, list):
        raise InputError("expected a list of requirement records", source=source)
    out = []
    for i, rec in enumerate(data):
        where = f"record {i}"
        if not isinstance(rec, dict) or not isinstance(rec.get("id"), str) or not rec["id"]:
            raise InputError(f"{where}: missing string field 'id'", source=source)
        where = f"record {i} ({rec['id']})"
        try:
            kind = ReqKind.parse(rec.get("kind", "use_case"))
        except ValueError as exc:
            raise InputError(f"{where}: {exc}", source=source) from None
        parts = rec.get("parts", {})
        if not isinstance(parts, dict) or not all(isinstance(v, str) for v in parts.values()):
            raise InputError(f"{where}: 'parts' must map part names to strings", source=source)
        out.append(_make_requirement(rec["id"], kind, parts, f"{source} {where}", None))
    return out


_HEADER_RE = re.compile(r"^\s*==\s*(.+?)\s*==\s*$")
_DIRECTIVE_RE = re.compile(r"^#(id|kind)\s+(.+?)\s*$")


def _requirements_from_sections(text: str, source: str, default_id: str) -> list[RequirementDoc]:
    out: list[RequirementDoc] = []
    rid: str | None = None
    kind: str | None = None
    parts: dict[str, list[str]] = {}
    current: str | None = None
    start_line = 1

    def flush() -> None:
        if rid is None and not parts:
            return
        if kind is not None:
            try:
                k = ReqKind.parse(kind)
            except ValueError as exc:
                raise InputError(str(exc), source=source, line=start_line) from None
        else:
            k = ReqKind.ISSUE if set(parts) & set(ISSUE_PARTS) else ReqKind.USE_CASE
        joined = {p: "\n".join(lines) for p, lines in parts.items()}
        out.append(_make_requirement(rid or default_id, k, joined, source, start_line))

    for lineno, line in enumerate(text.splitlines(), 1):
        m = _DIRECTIVE_RE.match(line)
        if m:
            if m.group(1) == "id":
                flush()
                rid, kind, parts, current, start_line = m.group(2), None, {}, None, lineno
            else:
                kind = m.group(2)
            continue
        m = _HEADER_RE.match(line)
        if m:
            key = _part_key(m.group(1))
            if key not in USE_CASE_PARTS + ISSUE_PARTS:
                valid = ", ".join(USE_CASE_PARTS + ISSUE_PARTS)
                raise InputError(f"unknown part {m.group(1)!r} (valid: {valid})", source=source, line=lineno)
            if key in parts:
                raise InputError(f"part {key} appears twice", source=source, line=lineno)
            parts[key] = []
            current = key
            continue
        if current is None:
            if line.strip():
                raise InputError("text outside of any '== Part ==' section", source=source, line=lineno)
            continue
        parts[current].append(line)
    flush()
    return out


def load_requirements(path: str | Path, format: str | None = None) -> list[RequirementDoc]:
    """Load requirements from a JSON file, a sectioned text file, or a directory of either."""
    path = Path(path)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix.lower() in (".json", ".txt"))
        reqs = [r for f in files for r in load_requirements(f, format)]
    else:
        fmt = format or ("json" if path.suffix.lower() == ".json" else "sectioned_text")
        try:
            text = path.read_text(encoding="utf-8-sig")
        except OSError as exc:
            raise InputError(f"cannot read: {exc.strerror}", source=str(path)) from None
        if fmt == "json":
            reqs = _requirements_from_json(text, str(path))
        elif fmt == "sectioned_text":
            reqs = _requirements_from_sections(text, str(path), path.stem)
        else:
            raise ValueError(f"unknown requirements format {fmt!r}")
    seen: set[str] = set()
    for r in reqs:
        if r.id in seen:
            raise InputError(f"duplicate requirement id {r.id}", source=str(path))
        seen.add(r.id)
    return reqs


def dump_requirements(reqs: Sequence[RequirementDoc], path: str | Path) -> None:
    payload = {"requirements": [r.to_json() for r in reqs]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


# -- code facts -------------------------------------------------------------


def _facts_from_record(rec: object, index: int, source: str) -> CodeClassFacts:
    if not isinstance(rec, dict):
        raise InputError(f"class record {index} is not an object", source=source)
    cid = rec.get("id")
    if not isinstance(cid, str) or not cid:
        raise InputError(f"class record {index}: field 'id' must be a non-empty string", source=source)
    unknown = set(rec) - {"id", *FACT_FIELDS}
    if unknown:
        raise InputError(f"class {cid}: unknown field(s) {', '.join(sorted(unknown))}", source=source)
    values = {}
    for name in FACT_FIELDS:
        value = rec.get(name, [])
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise InputError(f"class {cid}: field '{name}' must be a list of strings", source=source)
        if name != "comments" and any(not v for v in value):
            raise InputError(f"class {cid}: field '{name}' contains an empty identifier", source=source)
        values[name] = tuple(value)
    return CodeClassFacts(cid, **values)


def load_code_facts(path: str | Path) -> list[CodeClassFacts]:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8-sig"))
    except OSError as exc:
        raise InputError(f"cannot read: {exc.strerror}", source=str(path)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", source=str(path), line=exc.lineno) from None
    if isinstance(data, dict):
        data = data.get("classes")
    if not isinstance(data, list):
        raise InputError("field 'classes' must be a list", source=str(path))
    facts = [_facts_from_record(rec, i, str(path)) for i, rec in enumerate(data)]
    seen: set[str] = set()
    for f in facts:
        if f.id in seen:
            raise InputError(f"duplicate class id {f.id}", source=str(path))
        seen.add(f.id)
    return facts


def dump_code_facts(facts: Sequence[CodeClassFacts], path: str | Path) -> None:
    payload = {"classes": [f.to_json() for f in facts]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


# -- trace matrix -----------------------------------------------------------


def load_rtm(
    path: str | Path,
    requirements: Iterable[RequirementDoc] | None = None,
    classes: Iterable[CodeClassFacts] | None = None,
) -> TraceMatrix:
    """Read a ``req_id,class_id`` CSV; validate ids when corpora are given."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read: {exc.strerror}", source=str(path)) from None
    reader = csv.reader(io.StringIO(raw, newline=""))
    links: set[tuple[str, str]] = set()
    header_seen = False
    for row in reader:
        lineno = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if [c.lower() for c in cells] != ["req_id", "class_id"]:
                raise InputError("expected header 'req_id,class_id'", source=str(path), line=lineno)
            header_seen = True
            continue
        if len(cells) != 2 or not all(cells):
            raise InputError("expected two non-empty columns", source=str(path), line=lineno)
        links.add((cells[0], cells[1]))
    if not header_seen:
        raise InputError("empty file, expected header 'req_id,class_id'", source=str(path))
    rtm = TraceMatrix(frozenset(links))
    if requirements is not None and classes is not None:
        rtm.validate((r.id for r in requirements), (c.id for c in classes), source=str(path))
    return rtm
