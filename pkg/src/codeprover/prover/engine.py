"""Run proof scripts and re-check the resulting logs."""

from __future__ import annotations

import graphlib
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

from ..reductions import ReductionError
from ..serialize import DocumentError, dumps, load_json
from .arith import ExpressionError
from .rules import check_step, execute_step, validate_step
from .script import Axiom, ProofScript, ProofStep, ScriptError

LOG_FORMAT = "codeprover-log/1"

VERIFIED = "verified"
FAILED = "failed"
AXIOM = "axiom"


@dataclass(frozen=True)
class LogEntry:
    step: ProofStep
    status: str
    summary: str = ""
    certificate: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.status in (VERIFIED, AXIOM)

    def to_dict(self) -> dict[str, Any]:
        return {
            "step": self.step.to_dict(),
            "status": self.status,
            "summary": self.summary,
            "certificate": self.certificate,
            "wall_time": round(self.wall_time, 6),
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "LogEntry":
        return cls(
            ProofStep.from_dict(doc["step"]),
            doc["status"],
            doc.get("summary", ""),
            doc.get("certificate") or {},
            float(doc.get("wall_time", 0.0)),
            doc.get("error"),
        )


@dataclass(frozen=True)
class ProofLog:
    name: str
    entries: tuple[LogEntry, ...] = ()
    conclusion: str | None = None
    description: str = ""

    @property
    def verified(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def status(self) -> str:
        return VERIFIED if self.verified else FAILED

    @property
    def first_failure(self) -> LogEntry | None:
        return next((e for e in self.entries if not e.ok), None)

    @property
    def wall_time(self) -> float:
        return sum(e.wall_time for e in self.entries)

    def entry(self, step_id: str) -> LogEntry:
        for e in self.entries:
            if e.step.id == step_id:
                return e
        raise KeyError(step_id)

    def conclusion_text(self) -> str | None:
        if self.conclusion is None:
            return None
        return self.entry(self.conclusion).step.claim.describe()

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": LOG_FORMAT,
            "name": self.name,
            "description": self.description,
            "conclusion": self.conclusion,
            "status": self.status,
            "entries": [e.to_dict() for e in self.entries],
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ProofLog":
        if not isinstance(doc, dict) or doc.get("format") != LOG_FORMAT:
            raise DocumentError(f"not a {LOG_FORMAT} document")
        try:
            entries = tuple(LogEntry.from_dict(e) for e in doc["entries"])
        except (KeyError, TypeError, ScriptError) as exc:
            raise DocumentError(f"bad log entry: {exc}") from None
        return cls(doc.get("name", "log"), entries, doc.get("conclusion"), doc.get("description", ""))

    def dumps(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "ProofLog":
        return cls.from_dict(load_json(text))


def _run_one(step: ProofStep, claims: dict, status: dict[str, str]) -> LogEntry:
    start = time.perf_counter()
    blocked = [d for d in step.depends_on if status.get(d) not in (VERIFIED, AXIOM)]
    if blocked:
        return LogEntry(step, FAILED, "not run", error=f"dependencies not verified: {', '.join(blocked)}")
    if isinstance(step.justification, Axiom):
        return LogEntry(step, AXIOM, "taken as given", {"citation": step.justification.citation})
    try:
        cert, summary = execute_step(step, claims)
    except (ReductionError, ExpressionError, ArithmeticError, ValueError) as exc:
        return LogEntry(step, FAILED, "execution error", wall_time=time.perf_counter() - start, error=f"{type(exc).__name__}: {exc}")
    reason = check_step(step, claims, cert)
    elapsed = time.perf_counter() - start
    if reason is not None:
        return LogEntry(step, FAILED, summary, cert, elapsed, reason)
    return LogEntry(step, VERIFIED, summary, cert, elapsed)


def validate_script(script: ProofScript) -> list[str]:
    order = script.order()
    for step in script.steps:
        validate_step(step)
    return order


def run_script(script: ProofScript, jobs: int = 1) -> ProofLog:
    """Execute every step whose dependencies verified; raises ScriptError if malformed."""
    validate_script(script)
    claims = {s.id: s.claim for s in script.steps}
    by_id = {s.id: s for s in script.steps}
    status: dict[str, str] = {}
    results: dict[str, LogEntry] = {}

    sorter = graphlib.TopologicalSorter({s.id: set(s.depends_on) for s in script.steps})
    sorter.prepare()
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while sorter.is_active():
            ready = sorted(sorter.get_ready(), key=lambda sid: [s.id for s in script.steps].index(sid))
            if pool is None:
                wave = [_run_one(by_id[sid], claims, status) for sid in ready]
            else:
                wave = list(pool.map(lambda sid: _run_one(by_id[sid], claims, status), ready))
            for entry in wave:
                results[entry.step.id] = entry
                status[entry.step.id] = entry.status
                sorter.done(entry.step.id)
    finally:
        if pool is not None:
            pool.shutdown()
    entries = tuple(results[s.id] for s in script.steps)
    return ProofLog(script.name, entries, script.conclusion, script.description)


@dataclass(frozen=True)
class CheckResult:
    step_id: str
    ok: bool
    reason: str | None = None


def check_log_report(log: ProofLog) -> list[CheckResult]:
    """Re-verify each entry from its claim and certificate; no solver is invoked."""
    steps = [e.step for e in log.entries]
    claims = {s.id: s.claim for s in steps}
    entries = {e.step.id: e for e in log.entries}
    graph = {s.id: set(s.depends_on) for s in steps}
    missing = {d for deps in graph.values() for d in deps if d not in entries}
    if len(entries) != len(steps):
        return [CheckResult("?", False, "duplicate step ids")]
    try:
        order = list(graphlib.TopologicalSorter({k: v - missing for k, v in graph.items()}).static_order())
    except graphlib.CycleError:
        return [CheckResult("?", False, "dependency cycle")]

    passed: dict[str, bool] = {}
    results: dict[str, CheckResult] = {}
    for sid in order:
        entry = entries[sid]
        step = entry.step
        bad = [d for d in step.depends_on if not passed.get(d, False)]
        try:
            validate_step(step)
        except ScriptError as exc:
            bad, malformed = [], str(exc)
        else:
            malformed = None
        if malformed:
            res = CheckResult(sid, False, malformed)
        elif bad:
            res = CheckResult(sid, False, f"depends on unverified {', '.join(bad)}")
        elif isinstance(step.justification, Axiom):
            ok = entry.status == AXIOM and bool(step.justification.citation.strip())
            res = CheckResult(sid, ok, None if ok else "axiom entry malformed")
        elif entry.status != VERIFIED:
            res = CheckResult(sid, False, f"recorded status {entry.status}")
        else:
            reason = check_step(step, claims, entry.certificate)
            res = CheckResult(sid, reason is None, reason)
        passed[sid] = res.ok
        results[sid] = res
    return [results[s.id] for s in steps]


def check_log(log: ProofLog) -> bool:
    return all(r.ok for r in check_log_report(log))


def summarize(log: ProofLog, results: Iterable[CheckResult] | None = None) -> str:
    lines = []
    for e in log.entries:
        j = e.step.justification.kind
        line = f"[{e.status:8}] {e.step.id:<14} {j:<11} {e.step.claim.describe()}"
        lines.append(line)
        if e.summary:
            lines.append(f"{'':25}{e.summary}")
        if e.error:
            lines.append(f"{'':25}error: {e.error}")
    return "\n".join(lines)
