"""Restricted k-fold sumsets, extension graphs, and searches around the
bound (k+1)|(k+1)^A| <= (n-k)|k^A|."""

__version__ = "0.1.0"

from .errors import (BudgetExceededError, InvalidInputError, InvariantViolation,  # noqa: E402
                     KsumsError, SumOverflowError)
from .intset import IntegerSet  # noqa: E402
from .sumsets import (RepresentationList, SumMultiplicityTable,  # noqa: E402
                      enumerate_representations, ksum_multiplicity, ksum_set, ksum_size, ksum_sizes)
from .oracle import brute_force_oracle  # noqa: E402
from .graph import (ExtensionGraph, VerificationReport, build_extension_graphs,  # noqa: E402
                    degree_profile, verify_counting_chain)
from .theorem import RatioVerdict, generate, ratio_check, structural_checks  # noqa: E402
from .search import SearchReport, exhaustive_search, stochastic_search  # noqa: E402
