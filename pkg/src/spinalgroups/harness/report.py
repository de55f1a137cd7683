"""Suite reports in machine (JSON) and human (table) form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    name: str
    status: str
    observed: object = None
    expected: object = None
    counterexample: str | None = None
    note: str = ""


def check(name: str, ok: bool, observed=None, expected=None, counterexample=None, note="") -> Check:
    return Check(name, PASS if ok else FAIL, observed, expected,
                 None if ok else counterexample, note)


def skip(name: str, note: str) -> Check:
    return Check(name, SKIP, note=note)


@dataclass
class SuiteReport:
    suite: str
    group: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_dict(self) -> dict:
        # wall time is left out so identical runs give identical bytes
        return {
            "suite": self.suite,
            "group": self.group,
            "config": self.config,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_machine(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite} | group {self.group} | seed {self.seed}"]
        width = max([len(c.name) for c in self.checks] + [5])
        for c in self.checks:
            obs = _short(c.observed)
            exp = _short(c.expected)
            line = f"  {c.status.upper():4}  {c.name:<{width}}  observed={obs}"
            if c.expected is not None:
                line += f"  expected={exp}"
            if c.counterexample:
                line += f"  counterexample={c.counterexample}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line.rstrip())
        n_fail = sum(c.status == FAIL for c in self.checks)
        n_skip = sum(c.status == SKIP for c in self.checks)
        lines.append(
            f"  {len(self.checks) - n_fail - n_skip} passed, {n_fail} failed, "
            f"{n_skip} skipped in {self.wall_time:.2f}s"
        )
        return "\n".join(lines) + "\n"


def _short(value, limit: int = 60) -> str:
    text = str(value)
    return text if len(text) <= limit else text[: limit - 3] + "..."
