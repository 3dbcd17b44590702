"""Half-split recurrences: exact evaluation, decomposition checks and special numbers."""
from .decomposition import (InequalityViolation, Mode, Relation, SplitEvaluation,
                            VerificationReport, Violation, ViolationKind, equality_set,
                            split_value, verify_range)
from .matrix_lab import (ArgumentMatrix, ColumnCensus, ColumnRecord, EpsilonPartition, ParityCase,
                         QuartetCheck, build_matrix, census, classify_column, column_params,
                         epsilon_partition, rearranged_matrix, verify_quartet_identity)
from .recurrence import (P, T, ZERO, HalfSplitRecurrence, MemoTable, RecurrenceOverflowError,
                         children, evaluate, make_recurrence, midpoint_set)
from .special import (SpecialGroup, SpreadProfile, check_group_recurrence, detect_groups,
                      parents_containing, special_set, spread_profile)

__version__ = "0.1.0"
