"""Parallel trial execution."""

from .orchestrator import TrialPoolError, run_trials, run_trials_blocking

__all__ = ["TrialPoolError", "run_trials", "run_trials_blocking"]
