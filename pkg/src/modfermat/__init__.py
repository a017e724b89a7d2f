"""Exact and numeric tools for modular polynomials, singular moduli and the
system Phi_N(x, u) = Phi_M(y, v) = 0, u + v = 1 over Q."""

__version__ = "0.1.0"
