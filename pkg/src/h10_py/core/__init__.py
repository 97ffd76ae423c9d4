"""Exact arithmetic, polynomials, grammar, ring models, coding and gadgets."""
