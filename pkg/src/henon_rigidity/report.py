"""Pass/fail records shared by the verification suites."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

__all__ = ["Check", "VerificationReport"]


@dataclass(frozen=True)
class Check:
    name: str
    max_residual: float
    tolerance: float
    passed: bool

    @classmethod
    def of(cls, name: str, residual: float, tol: float) -> "Check":
        residual = float(residual)
        return cls(name, residual, float(tol), bool(residual <= tol))


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.checks), default=0.0)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        return {"checks": [asdict(c) for c in self.checks], "overall": self.overall}
