"""Exact sampling of tent-map codes for rational slopes."""

from ._backend import NAME as BACKEND
from .automaton import (
    REJECT,
    AutomatonState,
    InvariantFault,
    SegmentTable,
    code_probability,
    count_codes,
    delta_step,
    recognize,
    table_grow,
    table_init,
)
from .numeric import BitSource, DomainError, Mu, bernoulli_exact, rational_bit_size
from .oracle import CapExceeded, Section, enumerate_sections, exact_distribution, section_of
from .sampler import ChainSampler, CodeStream, RunStats, run_stats_only, sample_code, sample_stream
from .tent import complement, decode_partial, encode, tent_apply, tent_iterate, tent_tilde

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "REJECT", "AutomatonState", "BitSource", "CapExceeded", "ChainSampler",
    "CodeStream", "DomainError", "InvariantFault", "Mu", "RunStats", "Section",
    "SegmentTable", "bernoulli_exact", "code_probability", "complement", "count_codes",
    "decode_partial", "delta_step", "encode", "enumerate_sections", "exact_distribution",
    "rational_bit_size", "recognize", "run_stats_only", "sample_code", "sample_stream",
    "section_of", "table_grow", "table_init", "tent_apply", "tent_iterate", "tent_tilde",
]
