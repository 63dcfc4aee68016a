"""Kauffman brackets and Jones-like polynomials of link diagrams on surfaces."""

__version__ = "0.1.0"
