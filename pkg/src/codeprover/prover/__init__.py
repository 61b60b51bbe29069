"""Proof scripts, their execution and independent log checking."""

from .engine import CheckResult, LogEntry, ProofLog, check_log, check_log_report, run_script
from .script import ProofScript, ProofStep, ScriptBuilder, ScriptError
from .sextic66 import CorollaryError, CorollaryReport, sextic66_script, sextic_corollary

__all__ = [
    "CheckResult",
    "CorollaryError",
    "CorollaryReport",
    "LogEntry",
    "ProofLog",
    "ProofScript",
    "ProofStep",
    "ScriptBuilder",
    "ScriptError",
    "check_log",
    "check_log_report",
    "run_script",
    "sextic66_script",
    "sextic_corollary",
]
