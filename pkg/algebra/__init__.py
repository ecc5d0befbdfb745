"""Exact coefficient fields, polynomials, roots and plane curves."""
