"""Command-line harness: file formats, the verification suite and the CLI."""

from .suite import RunConfig, VerificationReport, run_full_suite

__all__ = ["RunConfig", "VerificationReport", "run_full_suite"]
