"""
Running independent checks and collecting their outcomes.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable

from mfcas.exceptions import MfcasError
from mfcas.log import get_logger
from mfcas.utils import DummyExecutor, get_n_workers

logger = get_logger(__name__)

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Check:
    """
    One independent job of a suite. ``func`` is a module-level function (so
    it can be sent to worker processes) returning either a report object
    with ``to_dict`` or a dictionary; both carry a ``passed`` entry.
    """

    name: str
    func: Callable
    args: tuple = ()
    long: bool = False


@dataclass
class CheckResult:
    name: str
    status: str
    payload: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status, "payload": self.payload}
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def run_check(check: Check) -> CheckResult:
    """Runs one check; kernel errors turn into a failed result."""
    start = time.perf_counter()
    try:
        outcome = check.func(*check.args)
        payload = outcome if isinstance(outcome, dict) else outcome.to_dict()
        status = PASS if payload.get("passed") else FAIL
    except MfcasError as e:
        payload = {"error": f"{type(e).__name__}: {e}", "passed": False}
        status = FAIL
    return CheckResult(check.name, status, payload, time.perf_counter() - start)


def run_checks(checks: list, n_jobs: int = 1, long: bool = False) -> list:
    """
    Runs the checks across ``n_jobs`` worker processes (sequentially for a
    single worker). Long checks are skipped unless ``long`` is set. The
    results keep the order of ``checks`` whatever order the jobs finish in.

    Raises:
        ValueError: for duplicated check names or an invalid ``n_jobs``.
    """
    names = [c.name for c in checks]
    if len(set(names)) != len(names):
        raise ValueError("check names must be unique")

    n_workers = get_n_workers(n_jobs)
    results = {}
    todo = []
    for c in checks:
        if c.long and not long:
            results[c.name] = CheckResult(
                c.name, SKIP, {"reason": "long check, enable with --long"}
            )
        else:
            todo.append(c)

    logger.info(f"Running {len(todo)} checks with {n_workers} workers")
    executor = (
        ProcessPoolExecutor(max_workers=n_workers) if n_workers > 1 else DummyExecutor()
    )
    with executor:
        tasks = {executor.submit(run_check, c): c.name for c in todo}
        for t in as_completed(tasks):
            result = t.result()
            logger.info(f"{result.status}: {result.name}")
            results[tasks[t]] = result

    return [results[n] for n in names]


@dataclass
class RunReport:
    suite: str
    results: list = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def failures(self) -> list:
        return [r for r in self.results if r.status == FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def summary(self) -> dict:
        return {
            "passed": self.count(PASS),
            "failed": self.count(FAIL),
            "skipped": self.count(SKIP),
        }

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "suite": self.suite,
            "checks": [r.to_dict(timings) for r in self.results],
            "summary": self.summary(),
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, default=str) + "\n"

    def to_text(self, timings: bool = False) -> str:
        lines = []
        for r in self.results:
            line = f"{r.status.upper():<5} {r.name}"
            if timings and r.status != SKIP:
                line += f" ({r.elapsed:.2f}s)"
            lines.append(line)
            if r.status == FAIL:
                for message in _failure_messages(r.payload):
                    lines.append(f"      {message}")
        s = self.summary()
        lines.append(
            f"{self.suite}: {s['passed']} passed, {s['failed']} failed, "
            f"{s['skipped']} skipped"
        )
        return "\n".join(lines) + "\n"


def _failure_messages(payload: dict) -> list:
    out = []
    if payload.get("error"):
        out.append(payload["error"])
    for key in ("messages", "errors", "failures"):
        out.extend(str(m) for m in payload.get(key) or [])
    return out
