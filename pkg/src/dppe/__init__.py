"""Implicitization of linear differential polynomial parametric equations.

A system ``x_i = P_i(U)``, ``i = 1..n``, in ``n - 1`` differential
parameters is implicitized with perturbed linear complete differential
resultants over Q or Q(t).
"""

from .difffield import FieldElem
from .dpoly import DerVar, DPPESystem, LinDiffPoly, U, X, decompose, id_content_primitive, normalize, substitute
from .errors import DPPEError, ZeroResultant
from .implicitize import Certificate, Decision, extract_lowest, run
from .oreops import OrePoly, ore_coprime, ore_gcld, ore_left_divmod, ore_mul
from .parsing import Document, parse_document, render_document, system_from_F
from .perturb import Perturbation, default_phi, perturb
from .pertpoly import PertPoly
from .resultant import SystemProfile, dcres, dcres_h, leading_matrix, profile

__all__ = [
    "FieldElem",
    "DerVar",
    "DPPESystem",
    "LinDiffPoly",
    "U",
    "X",
    "decompose",
    "id_content_primitive",
    "normalize",
    "substitute",
    "DPPEError",
    "ZeroResultant",
    "Certificate",
    "Decision",
    "extract_lowest",
    "run",
    "OrePoly",
    "ore_coprime",
    "ore_gcld",
    "ore_left_divmod",
    "ore_mul",
    "Document",
    "parse_document",
    "render_document",
    "system_from_F",
    "Perturbation",
    "default_phi",
    "perturb",
    "PertPoly",
    "SystemProfile",
    "dcres",
    "dcres_h",
    "leading_matrix",
    "profile",
]

__version__ = "0.1.0"
