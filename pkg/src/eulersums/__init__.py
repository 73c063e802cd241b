"""High-precision evaluation and verification of Euler sums, Stirling and Bell
weighted series, and alternating multiple zeta values."""

__version__ = "0.1.0"
