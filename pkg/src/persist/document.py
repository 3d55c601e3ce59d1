"""JSON form of a persistence report.

Polynomials are stored in their printed form (grlex order, ``p/q``
coefficients), so documents diff cleanly and re-parse to the same objects.
Certificate forms over the polarization blocks use block variable names
such as ``u0*v0``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources

import jsonschema

from persist.persistence import PersistenceReport, ProbeOutcome
from persist.printing import format_rational

SCHEMA_VERSION = 1


def _load_schema() -> dict:
    return json.loads(resources.files("persist").joinpath("report.schema.json").read_text())


REPORT_SCHEMA = _load_schema()


@dataclass(frozen=True)
class Certificate:
    present: bool
    c: str | None = None
    form: str | None = None

    def to_json(self, form_key: str) -> dict:
        return {"present": self.present, "c": self.c, form_key: self.form}

    @classmethod
    def from_json(cls, obj: dict, form_key: str) -> Certificate:
        return cls(obj["present"], obj.get("c"), obj.get(form_key))

    @classmethod
    def of(cls, cert) -> Certificate:
        if cert is None:
            return cls(False)
        return cls(True, format_rational(Fraction(cert.c)), str(cert.form))


@dataclass(frozen=True)
class ReportDocument:
    input: str
    d: int
    n: int
    concise: bool
    hess: str
    condition_a: Certificate
    condition_c: Certificate
    condition_d: Certificate
    G: str | None
    persistent: bool
    rank_lower_bound: int | None
    homaloidal: bool | None
    family: str | None
    notes: tuple[str, ...] = ()
    probe: str | None = None
    seed: int | None = None
    ms: float = 0.0
    version: str = ""
    schema: int = SCHEMA_VERSION
    violations: tuple[str, ...] = field(default=())

    @classmethod
    def from_report(cls, text: str, report: PersistenceReport, ms: float,
                    probe: ProbeOutcome | None = None) -> ReportDocument:
        from persist import __version__

        fam = report.small_dim_family
        return cls(
            input=text,
            d=report.d,
            n=report.n,
            concise=report.concise.concise,
            hess=str(report.hess),
            condition_a=Certificate.of(report.condition_a),
            condition_c=Certificate.of(report.condition_c),
            condition_d=Certificate.of(report.condition_d),
            G=str(report.G) if report.G is not None else None,
            persistent=report.persistent,
            rank_lower_bound=report.rank_lower_bound,
            homaloidal=report.homaloidal_flag,
            family=fam.family if fam else None,
            notes=tuple(report.notes),
            probe=probe.verdict if probe else None,
            seed=probe.seed if probe else None,
            ms=round(ms, 3),
            version=__version__,
            violations=tuple(report.violations()),
        )

    def to_json(self) -> dict:
        out = asdict(self)
        out["condition_a"] = self.condition_a.to_json("ell")
        out["condition_c"] = self.condition_c.to_json("g")
        out["condition_d"] = self.condition_d.to_json("g")
        out["notes"] = list(self.notes)
        out["violations"] = list(self.violations)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> ReportDocument:
        jsonschema.validate(obj, REPORT_SCHEMA)
        kw = dict(obj)
        kw["condition_a"] = Certificate.from_json(obj["condition_a"], "ell")
        kw["condition_c"] = Certificate.from_json(obj["condition_c"], "g")
        kw["condition_d"] = Certificate.from_json(obj["condition_d"], "g")
        kw["notes"] = tuple(obj["notes"])
        kw["violations"] = tuple(obj["violations"])
        return cls(**kw)

    @classmethod
    def loads(cls, text: str) -> ReportDocument:
        return cls.from_json(json.loads(text))


def validate(obj: dict) -> None:
    jsonschema.validate(obj, REPORT_SCHEMA)
