"""Expected number of distinct adjacent pairs in geometrically distributed random words."""

__version__ = "0.1.0"

from .closedform import CertifiedValue, expected_pairs, p_ii, p_ij, s_n_binomial, s_n_sum, t_n_binomial, t_n_sum
from .model import GeomParams, distinct_pairs, letter_pmf, sample_word

__all__ = [
    "CertifiedValue",
    "GeomParams",
    "distinct_pairs",
    "expected_pairs",
    "letter_pmf",
    "p_ii",
    "p_ij",
    "s_n_binomial",
    "s_n_sum",
    "sample_word",
    "t_n_binomial",
    "t_n_sum",
]
