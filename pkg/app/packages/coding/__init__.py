"""Sparse coding stage."""

from .omp import OmpResult, omp_encode, omp_encode_all

__all__ = ["OmpResult", "omp_encode", "omp_encode_all"]
