"""Run configuration and the end-to-end trace pipeline."""

from __future__ import annotations

import contextlib
import hashlib
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Iterator, Mapping

from .biterm import (
    DEFAULT_RELATIONS,
    BitermProfile,
    ConsensualBitermSet,
    crosscheck,
    extract_code_biterms,
    extract_req_biterms,
    group_sentences,
    inventory_csv,
)
from .corpus import CodeClassFacts, RequirementDoc, load_code_facts, load_requirements
from .enrich import EnrichedDocument, class_unigrams, enrich_class, enrich_requirement, requirement_unigrams
from .errors import BitraceError, ConfigError, InputError, InvariantError
from .ir import MODELS, CandidateLink, SimilarityMatrix, build_index, links_csv, rank_candidates, similarity
from .javascan import scan_java_sources
from .nlp import Locator, ParsedSentence, heuristic_parse, read_conllu
from .preprocess import default_stopwords, load_stopwords
from .rerank import PENALTY, BitermIdfTable, rerank

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

log = logging.getLogger(__name__)

# TOML section -> config fields it may set
SECTIONS = {
    "inputs": ("requirements", "code", "parses", "rtm", "stopwords"),
    "ir": ("model", "lsi_k"),
    "biterms": ("relations",),
    "rerank": ("enrich", "adjust", "use_theta", "penalty"),
    "output": ("out_dir",),
    "run": ("seed",),
}
PATH_FIELDS = ("requirements", "code", "parses", "rtm", "stopwords", "out_dir")


@dataclass(frozen=True)
class RunConfig:
    requirements: str | None = None
    code: str | None = None
    parses: str | None = None
    rtm: str | None = None
    stopwords: str | None = None
    model: str = "vsm"
    lsi_k: int | None = None
    relations: tuple[str, ...] = tuple(sorted(DEFAULT_RELATIONS))
    enrich: bool = True
    adjust: bool = True
    use_theta: bool = True
    penalty: float = PENALTY
    out_dir: str = "out"
    seed: int = 0  # reserved; every stage is deterministic

    def validate(self, need_inputs: bool = True) -> "RunConfig":
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r} (expected one of {', '.join(MODELS)})")
        if self.model == "lsi" and self.lsi_k is None:
            raise ConfigError("model 'lsi' requires lsi_k (--lsi-k)")
        if self.model != "lsi" and self.lsi_k is not None:
            raise ConfigError(f"lsi_k is only meaningful with model 'lsi', not {self.model!r}")
        if self.lsi_k is not None and (not isinstance(self.lsi_k, int) or self.lsi_k < 1):
            raise ConfigError(f"lsi_k must be a positive integer, got {self.lsi_k!r}")
        if not self.adjust and not self.use_theta:
            raise ConfigError("the lambda-only toggle needs adjustment enabled")
        if not self.penalty > 0:
            raise ConfigError(f"penalty must be positive, got {self.penalty!r}")
        if not self.relations:
            raise ConfigError("relation whitelist is empty")
        if need_inputs:
            missing = [n for n in ("requirements", "code") if not getattr(self, n)]
            if missing:
                raise ConfigError("missing input path(s): " + ", ".join(missing))
        return self

    @property
    def arm(self) -> str:
        if not self.enrich and not self.adjust:
            return "ir-only"
        if self.enrich and not self.adjust:
            return "+b"
        if self.enrich and not self.use_theta:
            return "+b+lambda"
        if self.enrich:
            return "full"
        return "adjust-only"

    def to_json(self) -> dict:
        """Everything that can change results; the output location cannot."""
        out = asdict(self)
        del out["out_dir"]
        out["relations"] = list(self.relations)
        return out

    def digest(self) -> str:
        canonical = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_config(path: str | Path) -> dict[str, Any]:
    """Flatten a TOML run file into config field values.

    Relative paths are resolved against the file's directory.
    """
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    values: dict[str, Any] = {}
    for section, body in data.items():
        if section not in SECTIONS or not isinstance(body, dict):
            raise ConfigError(f"{path}: unknown section [{section}] (expected {', '.join(SECTIONS)})")
        for key, value in body.items():
            if key not in SECTIONS[section]:
                raise ConfigError(f"{path}: unknown key {section}.{key}")
            if key in PATH_FIELDS and isinstance(value, str):
                value = str((path.parent / value).resolve()) if not Path(value).is_absolute() else value
            if key == "relations":
                if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                    raise ConfigError(f"{path}: biterms.relations must be a list of strings")
                value = tuple(sorted(set(value)))
            values[key] = value
    return values


def make_config(file_values: Mapping[str, Any] | None = None, **overrides: Any) -> RunConfig:
    known = {f.name: f for f in fields(RunConfig)}
    merged = dict(file_values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    bad = set(merged) - set(known)
    if bad:
        raise ConfigError("unknown config field(s): " + ", ".join(sorted(bad)))
    for name in ("enrich", "adjust", "use_theta"):
        if name in merged and not isinstance(merged[name], bool):
            raise ConfigError(f"{name} must be true or false")
    return RunConfig(**merged)


@contextlib.contextmanager
def stage(name: str) -> Iterator[None]:
    """Tag errors raised inside a pipeline stage with the stage name."""
    try:
        yield
    except ConfigError as exc:
        raise ConfigError(f"[{name}] {exc}") from exc
    except InvariantError as exc:
        raise InvariantError(f"[{name}] {exc}") from exc
    except BitraceError as exc:
        raise InputError(f"[{name}] {exc}") from exc
    except ValueError as exc:
        raise InputError(f"[{name}] {exc}") from exc


# -- loading ----------------------------------------------------------------


@dataclass
class Corpus:
    requirements: list[RequirementDoc]
    classes: list[CodeClassFacts]
    stop: frozenset[str]


def load_corpus(config: RunConfig) -> Corpus:
    with stage("load"):
        reqs = load_requirements(_existing(config.requirements, "requirements"))
        code = _existing(config.code, "code")
        classes = scan_java_sources(code) if code.is_dir() else load_code_facts(code)
        stop = load_stopwords(_existing(config.stopwords, "stopwords")) if config.stopwords else default_stopwords()
    if not reqs:
        raise InputError("[load] no requirements found", source=str(config.requirements))
    return Corpus(reqs, classes, stop)


def _existing(path: str | None, what: str) -> Path:
    if not path:
        raise ConfigError(f"missing {what} path")
    p = Path(path)
    if not p.exists():
        raise InputError(f"{what} path does not exist", source=str(p))
    return p


# -- sentence acquisition ---------------------------------------------------


@dataclass
class ParseSet:
    by_owner: dict[tuple[str, str], list[ParsedSentence]] = field(default_factory=dict)
    supplied: int = 0
    degraded: int = 0


def collect_parses(corpus: Corpus, bundle: str | None) -> ParseSet:
    """Supplied parses where available, heuristic parses for the rest."""
    grouped: dict[tuple[str, str], list[ParsedSentence]] = {}
    if bundle:
        root = Path(bundle)
        files = sorted(root.rglob("*.conllu")) if root.is_dir() else [_existing(bundle, "parses")]
        sentences = [s for f in files for s in read_conllu(f)]
        grouped = group_sentences(sentences)
        known = {("req", r.id) for r in corpus.requirements} | {("cls", c.id) for c in corpus.classes}
        stray = sorted(k for k in grouped if k not in known)
        if stray:
            log.warning("%d parsed artifact(s) not in the corpus, e.g. %s:%s", len(stray), *stray[0])
    out = ParseSet()
    for req in corpus.requirements:
        given = grouped.get(("req", req.id), [])
        covered = {s.source.part for s in given}
        sents = list(given)
        out.supplied += len(given)
        for part, text in req.parts.items():
            if part not in covered and text.strip():
                extra = heuristic_parse(text, Locator("req", req.id, part, 1))
                out.degraded += len(extra)
                sents.extend(extra)
        out.by_owner[("req", req.id)] = sents
    for cls in corpus.classes:
        given = grouped.get(("cls", cls.id), [])
        sents = list(given)
        out.supplied += len(given)
        if not given:
            ordinal = 1
            for comment in cls.comments:
                extra = heuristic_parse(comment, Locator("cls", cls.id, "comment", ordinal))
                ordinal += len(extra)
                out.degraded += len(extra)
                sents.extend(extra)
        out.by_owner[("cls", cls.id)] = sents
    if bundle and out.degraded:
        log.warning("%d sentence(s) lacked a supplied parse; heuristic pairing used", out.degraded)
    return out


# -- pipeline ---------------------------------------------------------------


@dataclass
class BitermStage:
    req_profiles: dict[str, BitermProfile]
    code_profiles: dict[str, BitermProfile]
    consensual: ConsensualBitermSet
    parses: ParseSet


def extract_biterms(corpus: Corpus, config: RunConfig) -> BitermStage:
    relations = frozenset(config.relations)
    with stage("parse"):
        parses = collect_parses(corpus, config.parses)
    with stage("extract"):
        req_profiles = {
            r.id: extract_req_biterms(r, parses.by_owner[("req", r.id)], relations) for r in corpus.requirements
        }
        code_profiles = {
            c.id: extract_code_biterms(c, parses.by_owner[("cls", c.id)], relations) for c in corpus.classes
        }
    with stage("crosscheck"):
        cons = crosscheck(req_profiles.values(), code_profiles.values())
    return BitermStage(req_profiles, code_profiles, cons, parses)


@dataclass
class TraceResult:
    config: RunConfig
    similarity: SimilarityMatrix
    ranked: dict[str, list[CandidateLink]]
    stats: dict[str, Any]
    documents: list[EnrichedDocument] = field(default_factory=list)
    biterms: BitermStage | None = None

    def manifest(self) -> dict:
        return {
            "arm": self.config.arm,
            "config": self.config.to_json(),
            "config_hash": self.config.digest(),
            "stats": self.stats,
        }


def _score(config: RunConfig, docs: list[EnrichedDocument], with_biterms: bool) -> tuple[SimilarityMatrix, int]:
    with stage("index"):
        index = build_index(docs, with_biterms=with_biterms)
    try:
        sim = similarity(index, config.model, config.lsi_k)
    except ValueError as exc:
        raise ConfigError(f"[similarity] {exc}") from exc
    return sim, len(index.vocabulary)


def run_trace(config: RunConfig) -> TraceResult:
    config.validate()
    corpus = load_corpus(config)
    bt = extract_biterms(corpus, config)
    use_biterms = config.enrich or config.adjust
    cons = bt.consensual if use_biterms else ConsensualBitermSet()
    with stage("enrich"):
        req_docs = [
            enrich_requirement(bt.req_profiles[r.id], cons, r, corpus.stop) for r in corpus.requirements
        ]
        cls_docs = [enrich_class(bt.code_profiles[c.id], cons, c, corpus.stop) for c in corpus.classes]
        _check_part_totals(req_docs)
    docs = req_docs + cls_docs
    sim, vocab = _score(config, docs, with_biterms=config.enrich)
    with stage("rerank"):
        if config.adjust:
            idf = BitermIdfTable.from_documents(docs)
            ranked = rerank(
                sim,
                {d.owner: d for d in req_docs},
                {d.owner: d for d in cls_docs},
                idf,
                use_theta=config.use_theta,
                penalty=config.penalty,
            )
        else:
            ranked = rank_candidates(sim)
    stats = {
        "requirements": len(corpus.requirements),
        "classes": len(corpus.classes),
        "vocabulary": vocab,
        "consensual_biterms": len(bt.consensual),
        "sentences_supplied": bt.parses.supplied,
        "sentences_degraded": bt.parses.degraded,
    }
    return TraceResult(config, sim, ranked, stats, docs, bt)


def run_ir_only(config: RunConfig) -> TraceResult:
    """Plain tf-idf retrieval over unigram documents; no parsing, no biterms."""
    config.validate()
    corpus = load_corpus(config)
    docs = [EnrichedDocument(r.id, "requirement", requirement_unigrams(r, corpus.stop), kind=r.kind) for r in corpus.requirements]
    docs += [EnrichedDocument(c.id, "code", class_unigrams(c, corpus.stop)) for c in corpus.classes]
    sim, vocab = _score(config, docs, with_biterms=False)
    ranked = rank_candidates(sim)
    stats = {"requirements": len(corpus.requirements), "classes": len(corpus.classes), "vocabulary": vocab}
    return TraceResult(replace(config, enrich=False, adjust=False), sim, ranked, stats, docs)


def _check_part_totals(req_docs: list[EnrichedDocument]) -> None:
    for d in req_docs:
        summed: dict = {}
        for counts in d.part_biterm_counts.values():
            for b, n in counts.items():
                summed[b] = summed.get(b, 0) + n
        if summed != d.biterm_counts:
            raise InvariantError(f"part counts of {d.owner} do not add up to its totals")


def write_trace(result: TraceResult, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "similarity.csv": result.similarity.to_csv(),
        "reranked.csv": links_csv(result.ranked),
        "manifest.json": json.dumps(result.manifest(), indent=2, sort_keys=True) + "\n",
    }
    written = []
    for name, text in files.items():
        path = out / name
        path.write_text(text, encoding="utf-8", newline="")
        written.append(path)
    return written


def write_biterms(stage_out: BitermStage, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reqs = list(stage_out.req_profiles.values())
    code = list(stage_out.code_profiles.values())
    files = {
        "candidates_req.csv": inventory_csv(reqs),
        "candidates_code.csv": inventory_csv(code),
        "consensual_req.csv": inventory_csv(reqs, stage_out.consensual),
        "consensual_code.csv": inventory_csv(code, stage_out.consensual),
        "consensual.txt": "".join(f"{b.a} {b.b}\n" for b in stage_out.consensual),
    }
    written = []
    for name, text in files.items():
        path = out / name
        path.write_text(text, encoding="utf-8", newline="")
        written.append(path)
    return written
