"""Requirements-to-code trace recovery with consensual biterms."""

from __future__ import annotations

from .biterm import Biterm, BitermProfile, ConsensualBitermSet, crosscheck
from .corpus import CodeClassFacts, ReqKind, RequirementDoc, TraceMatrix
from .enrich import EnrichedDocument, enrich_class, enrich_requirement
from .errors import BitraceError, ConfigError, InputError, InvariantError
from .evaluation import EvalReport, compare, evaluate
from .ir import CandidateLink, SimilarityMatrix, build_index, similarity
from .pipeline import RunConfig, run_ir_only, run_trace
from .rerank import BitermIdfTable, rerank

__version__ = "0.1.0"

__all__ = [
    "Biterm",
    "BitermIdfTable",
    "BitermProfile",
    "BitraceError",
    "CandidateLink",
    "CodeClassFacts",
    "ConfigError",
    "ConsensualBitermSet",
    "EnrichedDocument",
    "EvalReport",
    "InputError",
    "InvariantError",
    "ReqKind",
    "RequirementDoc",
    "RunConfig",
    "SimilarityMatrix",
    "TraceMatrix",
    "build_index",
    "compare",
    "crosscheck",
    "enrich_class",
    "enrich_requirement",
    "evaluate",
    "rerank",
    "run_ir_only",
    "run_trace",
    "similarity",
]
