"""Decomposition, linear conjugacy, symmetries and semiconjugacy of polynomials."""
