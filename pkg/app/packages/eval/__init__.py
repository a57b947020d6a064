"""Recovery and image-quality metrics."""

from .psnr import format_db, psnr
from .recovery import RecoveryError, is_exact_recovery, recovery_error

__all__ = ["RecoveryError", "format_db", "is_exact_recovery", "psnr", "recovery_error"]
