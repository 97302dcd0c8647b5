"""Uniform result record for every verification and scan.

One Report per claim run. Serialization is JSON with fixed camelCase keys
and sorted dictionaries, so two runs with the same inputs and seed differ
at most in wallTimeMs; canonical_json() zeroes that field for byte
comparison.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

VERDICTS = ("pass", "fail", "inapplicable", "budget-exceeded")

DEFAULT_SEED = 20240 + 8


@dataclass
class Report:
    claim_id: str
    field_spec: str
    verdict: str
    parameters: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    wall_time_ms: int = 0
    seed: int | None = None
    tool_version: str = ""
    primary_counter: str | None = None

    def __post_init__(self):
        if not self.tool_version:
            from . import __version__

            self.tool_version = __version__
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.witnesses:
            raise ValueError("a failing report must carry a witness")

    def to_dict(self) -> dict:
        return {
            "claimId": self.claim_id,
            "fieldSpec": self.field_spec,
            "verdict": self.verdict,
            "parameters": self.parameters,
            "witnesses": self.witnesses,
            "counters": self.counters,
            "wallTimeMs": self.wall_time_ms,
            "seed": self.seed,
            "toolVersion": self.tool_version,
            "primaryCounter": self.primary_counter,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            claim_id=d["claimId"],
            field_spec=d["fieldSpec"],
            verdict=d["verdict"],
            parameters=d.get("parameters", {}),
            witnesses=d.get("witnesses", []),
            counters=d.get("counters", {}),
            wall_time_ms=d.get("wallTimeMs", 0),
            seed=d.get("seed"),
            tool_version=d.get("toolVersion", ""),
            primary_counter=d.get("primaryCounter"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def canonical_json(self) -> str:
        """Byte-stable form: identical inputs and seed give identical bytes.
        The wall-clock counter is zeroed, everything else is kept."""
        d = self.to_dict()
        d["wallTimeMs"] = 0
        return json.dumps(d, sort_keys=True, separators=(",", ":"))

    def primary_value(self):
        if self.primary_counter is None:
            return ""
        return self.counters.get(self.primary_counter, "")

    def csv_row(self) -> list:
        return [
            self.claim_id,
            self.field_spec,
            self.verdict,
            self.primary_value(),
            self.wall_time_ms,
        ]

    def human_line(self) -> str:
        extra = ""
        if self.primary_counter is not None:
            extra = f" {self.primary_counter}={self.primary_value()}"
        return (
            f"{self.claim_id} [{self.field_spec}] {self.verdict}{extra}"
            f" ({self.wall_time_ms} ms)"
        )


CSV_HEADER = ["claimId", "fieldSpec", "verdict", "primaryCounter", "wallTimeMs"]


class Stopwatch:
    """Millisecond wall-clock timer for report construction."""

    def __init__(self):
        self.t0 = time.perf_counter()

    def ms(self) -> int:
        return int((time.perf_counter() - self.t0) * 1000)
