"""Check reports: ordered per-axiom records with failure witnesses."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckRecord:
    check_id: str
    passed: bool
    witness: Optional[tuple] = None
    lhs: Optional[object] = None
    rhs: Optional[object] = None
    fatal: bool = True

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = ""
        if not self.passed and self.witness is not None:
            extra = " at %r" % (self.witness,)
        if not self.fatal:
            status += " (advisory)"
        return "%-40s %s%s" % (self.check_id, status, extra)


@dataclass
class CheckReport:
    subject: str
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records if r.fatal)

    def add(self, check_id, passed, witness=None, lhs=None, rhs=None, fatal=True):
        self.records.append(CheckRecord(check_id, passed, witness, lhs, rhs, fatal))

    def compare(self, check_id, lhs, rhs, witness=None, fatal=True):
        """Record exact equality of two tensors, with a differing index."""
        if lhs == rhs:
            self.add(check_id, True, fatal=fatal)
        else:
            where = witness
            if where is None and hasattr(lhs, "first_difference"):
                where = lhs.first_difference(rhs)
            self.add(check_id, False, witness=where, lhs=lhs, rhs=rhs, fatal=fatal)

    def extend(self, other: "CheckReport", prefix: str = ""):
        for r in other.records:
            self.records.append(CheckRecord(
                (prefix + r.check_id) if prefix else r.check_id,
                r.passed, r.witness, r.lhs, r.rhs, r.fatal))

    def first_failure(self) -> Optional[CheckRecord]:
        for r in self.records:
            if not r.passed and r.fatal:
                return r
        return None

    def render(self) -> str:
        lines = ["%s: %s" % (self.subject, "PASS" if self.passed else "FAIL")]
        lines += ["  " + r.summary() for r in self.records]
        return "\n".join(lines)

    def __repr__(self):
        return "CheckReport(%r, passed=%r, %d records)" % (
            self.subject, self.passed, len(self.records))


def run_indexed(items, fn, jobs: int = 1):
    """Evaluate ``fn(item)`` for every item, preserving input order.

    With ``jobs > 1`` the work is spread over a thread pool; the results
    are reassembled in input order, so reports are deterministic no
    matter the worker count.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
