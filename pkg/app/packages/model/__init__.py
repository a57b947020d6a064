"""Core domain types shared by every solver and experiment."""

from .dictionary import Dictionary, normalize
from .sparsity import SparseCoeffs, SupportPattern, project_to_pattern
from .training_set import TrainingSet

__all__ = [
    "Dictionary",
    "SparseCoeffs",
    "SupportPattern",
    "TrainingSet",
    "normalize",
    "project_to_pattern",
]
