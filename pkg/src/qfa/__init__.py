"""Quantum arithmetic by semi-boolean polynomial encoding."""
from .arith import ArithSpec, build_arith, build_poly_eval, inplace_add, inplace_mul_const, semi_inplace_mul_const
from .circuit import Circuit, CircuitBuilder, Gate, depth, gate_counts, lowered_metrics, transpile
from .dyadic import Dyadic
from .encoder import EncoderConfig, encode_sbp, encode_sbp_inplace, qft
from .errors import QfaError
from .numfmt import QFormat
from .sbpoly import SBPolynomial, VarId, var

__all__ = [
    "ArithSpec",
    "Circuit",
    "CircuitBuilder",
    "Dyadic",
    "EncoderConfig",
    "Gate",
    "QFormat",
    "QfaError",
    "SBPolynomial",
    "VarId",
    "build_arith",
    "build_poly_eval",
    "depth",
    "encode_sbp",
    "encode_sbp_inplace",
    "gate_counts",
    "inplace_add",
    "inplace_mul_const",
    "lowered_metrics",
    "qft",
    "semi_inplace_mul_const",
    "transpile",
    "var",
]
