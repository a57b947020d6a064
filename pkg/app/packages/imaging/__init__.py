"""Grayscale image I/O, patch pipeline and dictionary denoising."""

from .denoiser import denoise, denoise_omp_config
from .patches import extract_patches, patch_positions, reconstruct_from_patches, sample_training_patches
from .pgm import PEAK, GrayImage, add_noise, list_images, load_pgm, save_pgm

__all__ = [
    "GrayImage",
    "PEAK",
    "add_noise",
    "denoise",
    "denoise_omp_config",
    "extract_patches",
    "list_images",
    "load_pgm",
    "patch_positions",
    "reconstruct_from_patches",
    "sample_training_patches",
    "save_pgm",
]
