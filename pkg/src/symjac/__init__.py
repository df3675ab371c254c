"""Symplectic Jacobi diagrams: exact linear algebra on diagram spaces."""

from .config import CapExceeded
from .diagrams import (Diagram, H, MalformedDiagram, Phi, PortGraph, Theta, Y,
                       canonicalize, enumerate_diagrams, format_diagram)
from .elements import element
from .hopf import antipode, bracket, chi, chi_inv, coproduct, star
from .quotient import QuotientBasis, nf, quotient_basis
from .symplectic import OMEGA, GenusError, alpha, beta, parse_label

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "Diagram", "H", "MalformedDiagram", "Phi", "PortGraph",
    "Theta", "Y", "canonicalize", "enumerate_diagrams", "format_diagram",
    "element", "antipode", "bracket", "chi", "chi_inv", "coproduct", "star",
    "QuotientBasis", "nf", "quotient_basis", "OMEGA", "GenusError", "alpha",
    "beta", "parse_label",
]
