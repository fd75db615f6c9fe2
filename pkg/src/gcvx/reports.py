"""Law-check reports with reproducible counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Failure:
    law: str
    instance: str
    witness: object
    erratum_expected: bool = False

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "instance": self.instance,
            "witness": self.witness,
            "erratumExpected": self.erratum_expected,
        }


@dataclass
class LawReport:
    suite: str
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    instance_index: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return self.instances - len(self.failures)

    @property
    def unexpected_failures(self) -> list[Failure]:
        return [f for f in self.failures if not f.erratum_expected]

    @property
    def ok(self) -> bool:
        return not self.unexpected_failures

    def record(self, passed: bool, law: str, instance: str, witness=None,
               erratum_expected: bool = False, detail=None) -> None:
        self.instances += 1
        if detail is not None:
            self.instance_index[instance] = detail
        if not passed:
            self.failures.append(
                Failure(law, instance, witness, erratum_expected))

    def merge(self, other: "LawReport") -> None:
        self.instances += other.instances
        self.failures.extend(other.failures)
        self.instance_index.update(other.instance_index)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "passed": self.passed,
            "failures": sorted(
                (f.to_json() for f in self.failures),
                key=lambda d: (d["law"], d["instance"])),
            "instanceIndex": {k: self.instance_index[k]
                              for k in sorted(self.instance_index)},
        }
