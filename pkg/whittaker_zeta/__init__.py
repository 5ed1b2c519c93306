"""Whittaker Zeta: archimedean Whittaker functions and Rankin-Selberg zeta integrals."""

__version__ = "0.1.0"
__author__ = "Whittaker Zeta Team"
