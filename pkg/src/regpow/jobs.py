"""Flat key = value job files."""

from __future__ import annotations

from dataclasses import dataclass, replace
from dataclasses import field as _field
from pathlib import Path

from .groebner import Budget, Ideal
from .kernel import GF, QQ, Field, ParseError, Ring


class JobError(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    field: str = "Q"
    variables: tuple = ()
    generators: tuple = ()
    qmax: int = 5
    window: int = 3
    fat_points: bool = False
    reg_phi_star: int | None = None
    budget: Budget = _field(default_factory=Budget)
    name: str = "job"

    def coefficient_field(self) -> Field:
        text = self.field.strip()
        if text in ("Q", "QQ"):
            return QQ
        parts = text.split()
        if len(parts) == 2 and parts[0] in ("Fp", "GF"):
            try:
                return GF(int(parts[1]))
            except ValueError as exc:
                raise JobError(f"bad field {text!r}: {exc}") from exc
        raise JobError(f"unknown field {text!r}")

    def ring(self) -> Ring:
        if not self.variables:
            raise JobError("no variables given")
        try:
            return Ring.polynomial(self.variables, self.coefficient_field())
        except ValueError as exc:
            raise JobError(str(exc)) from exc

    def ideal(self) -> Ideal:
        ring = self.ring()
        if not self.generators:
            raise JobError("no generators given")
        polys = []
        for text in self.generators:
            try:
                polys.append(ring(text))
            except ParseError as exc:
                raise JobError(f"generator {text!r}: {exc}") from exc
        try:
            I = Ideal(ring, polys)
        except ValueError as exc:
            raise JobError(str(exc)) from exc
        degs = {g.total_degree() for g in I.generators}
        if not I.generators:
            raise JobError("all generators are zero")
        if len(degs) != 1:
            raise JobError(f"generators are not equigenerated: degrees {sorted(degs)}")
        if degs.pop() < 1:
            raise JobError("generators must have positive degree")
        return I

    def validate(self) -> "JobSpec":
        self.ideal()
        if self.qmax < 1:
            raise JobError("qmax must be at least 1")
        if self.window < 1:
            raise JobError("window must be at least 1")
        return self

    def with_qmax(self, qmax: int | None) -> "JobSpec":
        return self if qmax is None else replace(self, qmax=qmax)


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise JobError(f"expected true/false, got {text!r}")


def _int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise JobError(f"{key}: expected an integer, got {text!r}") from None


def parse_job(text: str, name: str = "job") -> JobSpec:
    values: dict = {"generators": []}
    budget = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise JobError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key == "field":
            values["field"] = val
        elif key == "vars":
            values["variables"] = tuple(v.strip() for v in val.split(",") if v.strip())
        elif key == "gen":
            values["generators"].append(val)
        elif key in ("qmax", "window"):
            values[key] = _int(key, val)
        elif key == "fat_points":
            values["fat_points"] = _bool(val)
        elif key == "reg_phi_star":
            values["reg_phi_star"] = _int(key, val)
        elif key == "name":
            values["name"] = val
        elif key == "budget_degree":
            budget["max_degree"] = _int(key, val)
        elif key == "budget_size":
            budget["max_size"] = _int(key, val)
        elif key == "budget_seconds":
            try:
                budget["max_seconds"] = float(val)
            except ValueError:
                raise JobError(f"budget_seconds: expected a number, got {val!r}") from None
        else:
            raise JobError(f"line {lineno}: unknown key {key!r}")
    values["generators"] = tuple(values["generators"])
    values.setdefault("name", name)
    return JobSpec(budget=Budget(**budget), **values).validate()


def load_job(path: str | Path) -> JobSpec:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise JobError(f"cannot read job file {p}: {exc.strerror}") from exc
    return parse_job(text, name=p.stem)
