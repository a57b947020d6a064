"""Bounded async fan-out of independent trials onto worker threads."""

from __future__ import annotations

import asyncio
import logging
import sys
from typing import Callable, Sequence, TypeVar

from app.packages.base.errors import BlotlessError


logger = logging.getLogger(__name__)

MIN_PYTHON = (3, 11)
if sys.version_info < MIN_PYTHON:
    raise ImportError(f"the trial pool needs Python {MIN_PYTHON[0]}.{MIN_PYTHON[1]}+ for asyncio.TaskGroup")

TaskT = TypeVar("TaskT")
ResultT = TypeVar("ResultT")


class TrialPoolError(BlotlessError):
    """Raised when a trial fails with an error outside the library hierarchy."""

    def __init__(self, index: int, message: str) -> None:
        self.index = index
        super().__init__(f"Trial task {index} failed: {message}")


async def run_trials(
    tasks: Sequence[TaskT],
    worker: Callable[[TaskT], ResultT],
    *,
    threads: int = 1,
) -> list[ResultT]:
    """Run ``worker`` over ``tasks`` with at most ``threads`` in flight.

    Results come back in task order whatever the completion order. Library
    errors propagate unchanged; anything else is wrapped in ``TrialPoolError``.
    """

    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    semaphore = asyncio.Semaphore(threads)

    async def _run_one(index: int, task: TaskT) -> ResultT:
        async with semaphore:
            try:
                return await asyncio.to_thread(worker, task)
            except BlotlessError:
                raise
            except Exception as exc:
                raise TrialPoolError(index, repr(exc)) from exc

    try:
        async with asyncio.TaskGroup() as task_group:
            handles = [task_group.create_task(_run_one(i, task)) for i, task in enumerate(tasks)]
    except ExceptionGroup as group:
        raise group.exceptions[0] from None
    logger.debug("Completed %d trial tasks on %d threads", len(handles), threads)
    return [handle.result() for handle in handles]


def run_trials_blocking(
    tasks: Sequence[TaskT],
    worker: Callable[[TaskT], ResultT],
    *,
    threads: int = 1,
) -> list[ResultT]:
    """Synchronous entry point; single-threaded runs skip the event loop."""

    if threads == 1:
        return [worker(task) for task in tasks]
    return asyncio.run(run_trials(tasks, worker, threads=threads))


__all__ = ["TrialPoolError", "run_trials", "run_trials_blocking"]
