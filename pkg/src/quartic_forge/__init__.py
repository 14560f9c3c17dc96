"""Certificates that a degree-7 polynomial over Q yields a plane quartic
jacobian with End = Z, via Galois image, general position and lattice checks."""

__version__ = "0.1.0"

from .arith import UniPoly, parse_poly
from .errors import InputError, NotUsableError, QuarticForgeError, ValidationError
from .galois import classify_galois, verify_witness
from .pipeline import PipelineConfig, replay_certificate, run_pipeline

__all__ = [
    "UniPoly",
    "parse_poly",
    "InputError",
    "NotUsableError",
    "QuarticForgeError",
    "ValidationError",
    "classify_galois",
    "verify_witness",
    "PipelineConfig",
    "replay_certificate",
    "run_pipeline",
]
