"""Hamming approximation of NP witnesses: exact ball counting, the
universe-shrinking decider, n/2 approximators, amplification gadgets and
brute-force oracles."""

from hamwit.core import (
    ApproxParams, BitString, LogBase, ball_radius, binomial, h_bound,
    hamming_distance, lemma1_ratio, p_bound, tail_count,
)
from hamwit.kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "ApproxParams", "BitString", "LogBase", "ball_radius", "binomial", "h_bound",
    "hamming_distance", "lemma1_ratio", "p_bound", "tail_count", "BACKEND",
]
