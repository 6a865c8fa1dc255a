"""Exact mutual-information computations for Boolean functions of noisy inputs.

The package answers, at desk scale, how much a single Boolean bit
b(X^n) can reveal about the noisy observation Y^n of X^n through a
binary symmetric channel: exact posteriors and entropies for explicit
truth tables, compression operators and the reduced candidate family
S_n, the lex-function functional T_alpha with its chord-certificate
verifier, and drivers that package the checks into reports.
"""

from .core import (
    ChannelParam,
    DomainError,
    LexSpec,
    TruthTable,
    binary_entropy,
    entropy_f,
    initial_segment,
    is_lex,
    lex_of,
)
from .infomeasure import (
    PosteriorField,
    cond_entropy,
    edge_boundary,
    mutual_info,
    mutual_info_single,
    posterior_naive,
    posterior_transform,
    sum_single_mi,
)

__all__ = [
    "ChannelParam",
    "DomainError",
    "LexSpec",
    "TruthTable",
    "binary_entropy",
    "entropy_f",
    "initial_segment",
    "is_lex",
    "lex_of",
    "PosteriorField",
    "cond_entropy",
    "edge_boundary",
    "mutual_info",
    "mutual_info_single",
    "posterior_naive",
    "posterior_transform",
    "sum_single_mi",
]
