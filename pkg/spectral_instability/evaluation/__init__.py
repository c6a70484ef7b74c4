"""
Acceptance checks of the numerical pipeline.
"""

from .acceptance import AcceptanceSuite, CheckResult, run_acceptance

__all__ = ["AcceptanceSuite", "CheckResult", "run_acceptance"]
