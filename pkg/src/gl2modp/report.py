from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of a verification sweep: counts, pass flag, failure witnesses."""

    kind: str
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def bump(self, key, n=1):
        self.counts[key] = self.counts.get(key, 0) + n

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        out = VerificationReport(self.kind, dict(self.counts), list(self.witnesses), self.seed)
        for k, v in other.counts.items():
            out.bump(k, v)
        out.witnesses.extend(other.witnesses)
        return out

    def to_json(self):
        return {
            "kind": self.kind,
            "counts": dict(sorted(self.counts.items())),
            "passed": self.passed,
            "witnesses": self.witnesses,
            "seed": self.seed,
        }

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
        status = "PASS" if self.passed else f"FAIL ({len(self.witnesses)} witnesses)"
        return f"{self.kind}: {status} [{counts}]"
