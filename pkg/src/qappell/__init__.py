"""Exact Askey-Wilson operator calculus and Appell-type OPS on the q-quadratic lattice."""
from .algebra import LaurentPoly, ZPoly, format_scalar, to_scalar
from .appell import AppellCase, AppellReport, solution_family
from .functionals import MomentFunctional, moments_from_ttrr, pair
from .lattice import LatticeParam, apply_Dq, apply_Sq
from .ops import TTRR, OpsFamily, alsc_ttrr, generate_ops
from .pearson import PearsonData, ttrr_from_pearson

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "ZPoly",
    "format_scalar",
    "to_scalar",
    "AppellCase",
    "AppellReport",
    "solution_family",
    "MomentFunctional",
    "moments_from_ttrr",
    "pair",
    "LatticeParam",
    "apply_Dq",
    "apply_Sq",
    "TTRR",
    "OpsFamily",
    "alsc_ttrr",
    "generate_ops",
    "PearsonData",
    "ttrr_from_pearson",
]
