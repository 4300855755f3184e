"""Exact arithmetic for Koornwinder polynomials, their specialization on
the resonance curve t^(k+1) q^(r-1) = 1, and certification that the span
of resonant polynomials matches the wheel-condition ideal.
"""
