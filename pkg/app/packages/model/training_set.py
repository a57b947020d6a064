"""Training matrices with optional ground truth."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from app.packages.base.errors import ConfigError, DimensionMismatchError
from app.packages.numerics.linalg import as_matrix
from app.packages.numerics.matrix_io import read_matrix, write_matrix

from .dictionary import Dictionary, _frozen_copy
from .sparsity import SparseCoeffs, SupportPattern


logger = logging.getLogger(__name__)

SIDECAR_NAME = "training_set.json"


@dataclass(frozen=True)
class TrainingSet:
    samples: np.ndarray
    ground_truth: Optional[tuple[Dictionary, SparseCoeffs]] = None
    seed: int = 0
    theta: float = 0.0
    snr_db: Optional[float] = None

    def __post_init__(self) -> None:
        samples = as_matrix(self.samples, "samples")
        if self.ground_truth is not None:
            d0, x0 = self.ground_truth
            if d0.m != samples.shape[0] or x0.values.shape != (d0.l, samples.shape[1]):
                raise DimensionMismatchError(
                    f"ground truth {d0.atoms.shape} x {x0.values.shape} does not produce samples {samples.shape}"
                )
        object.__setattr__(self, "samples", _frozen_copy(samples))

    @property
    def m(self) -> int:
        return self.samples.shape[0]

    @property
    def n(self) -> int:
        return self.samples.shape[1]

    def export(self, directory: str | Path) -> Path:
        """Write ``Y.txt`` (plus ``D0.txt``, ``X0.txt``, ``pattern.json``) and a JSON sidecar."""

        target = Path(directory)
        target.mkdir(parents=True, exist_ok=True)
        write_matrix(target / "Y.txt", self.samples)
        files = {"samples": "Y.txt"}
        if self.ground_truth is not None:
            d0, x0 = self.ground_truth
            write_matrix(target / "D0.txt", d0.atoms)
            write_matrix(target / "X0.txt", x0.values)
            x0.pattern.save(target / "pattern.json")
            files.update({"dictionary": "D0.txt", "coefficients": "X0.txt", "pattern": "pattern.json"})
        sidecar = {
            "m": self.m,
            "n": self.n,
            "l": None if self.ground_truth is None else self.ground_truth[0].l,
            "seed": self.seed,
            "theta": self.theta,
            "snr_db": self.snr_db,
            "files": files,
        }
        (target / SIDECAR_NAME).write_text(json.dumps(sidecar, indent=2), encoding="utf-8")
        logger.info("Exported training set %dx%d to %s", self.m, self.n, target)
        return target

    @classmethod
    def load(cls, directory: str | Path) -> "TrainingSet":
        source = Path(directory)
        try:
            meta = json.loads((source / SIDECAR_NAME).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{source}: missing or unreadable {SIDECAR_NAME}") from exc
        files = meta.get("files", {})
        samples = read_matrix(source / files.get("samples", "Y.txt"))
        ground_truth = None
        if "dictionary" in files:
            pattern = SupportPattern.load(source / files["pattern"])
            ground_truth = (
                Dictionary(read_matrix(source / files["dictionary"])),
                SparseCoeffs(read_matrix(source / files["coefficients"]), pattern),
            )
        return cls(
            samples=samples,
            ground_truth=ground_truth,
            seed=int(meta.get("seed", 0)),
            theta=float(meta.get("theta", 0.0)),
            snr_db=meta.get("snr_db"),
        )


__all__ = ["SIDECAR_NAME", "TrainingSet"]
