"""
Run configuration and command orchestration.
"""

from .runner import RunResult, run
from .schemas import Command, OutputFormat, RunConfig

__all__ = ["Command", "OutputFormat", "RunConfig", "RunResult", "run"]
