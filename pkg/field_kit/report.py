"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Flat diagnostic records shared by every module.
Each record is (name, value, passed) and serializes to the run summary.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Diagnostic:
    name: str
    value: float
    passed: bool = True
    where: str = ''

    def as_dict(self) -> dict:
        out_dict = {'name': self.name, 'value': float(self.value), 'pass': bool(self.passed)}
        if self.where:
            out_dict['where'] = self.where
        return out_dict


@dataclass
class Suite:
    """Named group of diagnostics; passes iff every diagnostic passes."""
    name: str
    diagnostics: list = field(default_factory=list)

    def add(self, name: str, value: float, passed: bool = True, where: str = '') -> Diagnostic:
        diagnostic = Diagnostic(name, float(value), bool(passed), where)
        self.diagnostics.append(diagnostic)
        return diagnostic

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.diagnostics)

    def failures(self) -> list:
        return [d for d in self.diagnostics if not d.passed]

    def as_dict(self) -> dict:
        return {'name': self.name, 'pass': self.passed,
                'diagnostics': [d.as_dict() for d in self.diagnostics]}
