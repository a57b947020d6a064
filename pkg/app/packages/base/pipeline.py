"""Template-method base class for experiment steps."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Generic, Mapping, MutableMapping, Optional, TypeVar


logger = logging.getLogger(__name__)

ConfigT = TypeVar("ConfigT")
InputT = TypeVar("InputT")
OutputT = TypeVar("OutputT")
FinalT = TypeVar("FinalT")


@dataclass(slots=True)
class PipelineContext(Generic[ConfigT]):
    """Execution context passed to pipeline steps."""

    job_id: str
    config: ConfigT
    params: MutableMapping[str, Any] = field(default_factory=dict)
    started: float = field(default_factory=time.perf_counter)

    def elapsed(self) -> float:
        return time.perf_counter() - self.started


class PipelineStep(Generic[ConfigT, InputT, OutputT, FinalT]):
    """Template method base-class: ``init_context`` -> ``process`` -> ``after_process``."""

    def init_context(
        self,
        *,
        job_id: str,
        config: ConfigT,
        params: Optional[Mapping[str, Any]] = None,
    ) -> PipelineContext[ConfigT]:
        return PipelineContext(job_id=job_id, config=config, params=dict(params or {}))

    def run(
        self,
        *,
        job_id: str,
        config: ConfigT,
        input_data: InputT,
        params: Optional[Mapping[str, Any]] = None,
    ) -> FinalT:
        context = self.init_context(job_id=job_id, config=config, params=params)
        logger.info("Starting %s", job_id)
        processed = self.process(context, input_data)
        final = self.after_process(context, processed)
        logger.info("Finished %s in %.2fs", job_id, context.elapsed())
        return processed if final is None else final

    def process(self, context: PipelineContext[ConfigT], input_data: InputT) -> OutputT:
        raise NotImplementedError

    def after_process(self, context: PipelineContext[ConfigT], processed: OutputT) -> Optional[FinalT]:
        return None


__all__ = ["PipelineContext", "PipelineStep"]
