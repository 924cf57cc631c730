"""Multistage group-testing designs, decoders and verification harness."""

from mgt._core import (
    DesignParams,
    InvalidParams,
    PoolMatrix,
    ProtocolViolation,
    audit,
    baseline_binary_splitting,
    candidates,
    compute_params,
    decode,
    design,
    entropy,
    generate_matrix,
    outcome,
    rates,
    read_matrix,
    verify,
    write_matrix,
)

__all__ = [
    "DesignParams",
    "InvalidParams",
    "PoolMatrix",
    "ProtocolViolation",
    "audit",
    "baseline_binary_splitting",
    "candidates",
    "compute_params",
    "decode",
    "design",
    "entropy",
    "generate_matrix",
    "outcome",
    "rates",
    "read_matrix",
    "verify",
    "write_matrix",
]
