"""Dictionary update methods and the alternating learning driver."""

from .atoms import replace_dead_atoms
from .blotless import (
    block_partition,
    blotless_block_update,
    blotless_ls,
    dictionary_from_inverse,
    itertls_update,
    partls_update,
    row_system,
    solve_tls_row,
    tls_truncate,
)
from .ksvd import ksvd_update
from .learner import (
    HISTORY_FIELDS,
    IterationRecord,
    LearnResult,
    learn,
    random_dictionary,
    reseed_after_failure,
    stale_atoms,
    update_dictionary,
    write_history_csv,
)
from .mod import mod_update
from .stls import constraint_jacobian, constraint_residual, stls_objective, stls_update

__all__ = [
    "HISTORY_FIELDS",
    "IterationRecord",
    "LearnResult",
    "block_partition",
    "blotless_block_update",
    "blotless_ls",
    "constraint_jacobian",
    "constraint_residual",
    "dictionary_from_inverse",
    "itertls_update",
    "ksvd_update",
    "learn",
    "mod_update",
    "partls_update",
    "random_dictionary",
    "replace_dead_atoms",
    "reseed_after_failure",
    "row_system",
    "solve_tls_row",
    "stale_atoms",
    "stls_objective",
    "stls_update",
    "tls_truncate",
    "update_dictionary",
    "write_history_csv",
]
