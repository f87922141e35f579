"""Partial-separability cones of three-qubit X-states and the lattice they generate."""

from .cones import ConeTag, Verdict, fully_separable_ghz, member, member_all
from .lattice import Answer, EvalResult, check_distributivity, check_modularity, evaluate, normalize, parse
from .slices import RegionTag, region, rho_modular, rho_st, scan
from .witness import DualTag, Witness, certify_out, member_dual, search_witness
from .xcore import EXACT, FLOAT, NumericMode, Status, XMatrix, ghz, pairing, validate

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "ConeTag",
    "DualTag",
    "EXACT",
    "EvalResult",
    "FLOAT",
    "NumericMode",
    "RegionTag",
    "Status",
    "Verdict",
    "Witness",
    "XMatrix",
    "certify_out",
    "check_distributivity",
    "check_modularity",
    "evaluate",
    "fully_separable_ghz",
    "ghz",
    "member",
    "member_all",
    "member_dual",
    "normalize",
    "pairing",
    "parse",
    "region",
    "rho_modular",
    "rho_st",
    "scan",
    "search_witness",
    "validate",
]
