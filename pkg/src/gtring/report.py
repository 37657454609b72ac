"""Verification results and the JSON suite report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    identity: str
    instance: dict
    ok: bool
    first_discrepancy: Any = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"identity": self.identity, "instance": self.instance, "status": "pass" if self.ok else "fail"}
        if self.first_discrepancy is not None:
            out["first_discrepancy"] = self.first_discrepancy
        return out


@dataclass
class SuiteReport:
    suite: str
    instances: list[dict] = field(default_factory=list)

    def add(self, ident: str, params: Any, ok: bool, detail: Any = None) -> None:
        entry = {"id": ident, "params": params, "status": "pass" if ok else "fail"}
        if detail is not None:
            entry["detail"] = detail
        self.instances.append(entry)

    def add_check(self, ident: str, check: Check) -> None:
        self.add(ident, check.instance, check.ok, None if check.ok else check.first_discrepancy)

    @property
    def passed(self) -> int:
        return sum(1 for i in self.instances if i["status"] == "pass")

    @property
    def failed(self) -> int:
        return len(self.instances) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def first_failure(self) -> dict | None:
        return next((i for i in self.instances if i["status"] != "pass"), None)

    def to_json(self) -> dict:
        return {"suite": self.suite, "instances": self.instances, "passed": self.passed, "failed": self.failed}
