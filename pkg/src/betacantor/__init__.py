"""Hausdorff dimension of digit-restricted beta-expansion Cantor sets."""

from .beta_core import (OneExpansion, Order, UndecidedAtDepth, evaluate, expand, expansion_of_one,
                        is_admissible, lex_compare, t_beta_step, value_of_word)
from .cantor_dim import (AlphaResult, DigitSet, DimensionResult, InV, MaxSequence, NotInV,
                         OmegaSequence, PlateauInterval, classify_V_013, dimension_curve,
                         hausdorff_dimension, inverse_beta_for_alpha, max_sequence,
                         plateau_from_word, recode_omega, solve_alpha)
from .covers_measure import (BoxCountTable, CoverLevel, Interval, Separated, Violated,
                             box_dimension_estimate, cover_level, premeasure_sum, separation_check)
from .field import Beta, FieldElem, as_beta
from .highreal import HighReal
from .local_ifs import (InQ, IntervalUnion, NotInQ, build_B, build_C_approx, difference_points,
                        extended_ifs_attractor, hausdorff_distance, invariance_check,
                        iter_B_stages, member_Q)
from .word_automata import (CountingAutomaton, WordCountTable, build_automaton, count_admissible,
                            dimension_from_matrix, enumerate_restricted, iter_admissible,
                            perron_eigenvalue, word_count_table)

__all__ = [
    "AlphaResult", "as_beta", "Beta", "box_dimension_estimate", "BoxCountTable", "build_automaton",
    "build_B", "build_C_approx", "classify_V_013", "count_admissible", "CountingAutomaton",
    "cover_level", "CoverLevel", "difference_points", "DigitSet", "dimension_curve",
    "dimension_from_matrix", "DimensionResult", "enumerate_restricted", "evaluate", "expand",
    "expansion_of_one", "extended_ifs_attractor", "FieldElem", "hausdorff_dimension",
    "hausdorff_distance", "HighReal", "InQ", "Interval", "IntervalUnion", "InV",
    "invariance_check", "inverse_beta_for_alpha", "is_admissible", "iter_admissible",
    "iter_B_stages", "lex_compare", "max_sequence", "MaxSequence", "member_Q", "NotInQ", "NotInV",
    "OmegaSequence", "OneExpansion", "Order", "perron_eigenvalue", "plateau_from_word",
    "PlateauInterval", "premeasure_sum", "recode_omega", "Separated", "separation_check",
    "solve_alpha", "t_beta_step", "UndecidedAtDepth", "value_of_word", "Violated",
    "word_count_table", "WordCountTable",
]

__version__ = "0.1.0"
