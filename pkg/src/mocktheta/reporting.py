"""Machine-readable verification reports.

Reports are plain dict/list structures rendered as canonical JSON: sorted
keys, two-space indent, no volatile fields (timestamps, durations), so that
identical runs produce byte-identical artifacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

SCHEMA_VERSION = 1


@dataclass
class IdentityReport:
    identity: str
    level: int
    instances_checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "level": self.level,
            "instances_checked": self.instances_checked,
            "failures": self.failures,
            "status": "pass" if self.ok else "fail",
        }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def envelope(command: str, params: dict, results, status_ok: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": results,
        "status": "pass" if status_ok else "fail",
    }
