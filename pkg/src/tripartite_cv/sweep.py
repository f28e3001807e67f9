"""Parameter sweeps, figure data and classification maps.

This layer only formats what the library returns: every number in a table is
the unmodified ``value``/``slack`` of a :class:`~tripartite_cv.criteria.CriterionResult`.
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field

from . import criteria as C
from .models import (
    DEFAULT_GRIDS,
    FIGURE_KAPPAS,
    AokiParams,
    AsymmetricParams,
    OpaParams,
    covariance,
    grid,
)

MODEL_ALIASES = {"asymmetric": "asym", "opa": "opa", "aoki": "aoki", "asym": "asym"}

SWEEPABLE = {
    "opa": ("kt",),
    "aoki": ("r", "mu", "nu"),
    "asym": ("zt", "t", "kappa1", "kappa2"),
}
DEFAULT_SWEPT = {"opa": "kt", "aoki": "r", "asym": "zt"}
DEFAULT_FIXED = {
    "opa": {},
    "aoki": {"mu": 2.0 / 3.0, "nu": 0.5},
    "asym": {"kappa1": FIGURE_KAPPAS[0], "kappa2": FIGURE_KAPPAS[1]},
}

NUMBER_FORMAT = "{:#.12g}"


class SpecError(ValueError):
    """A sweep request is malformed; ``field`` names the offending part."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class CriterionSpec:
    label: C.Criterion
    indices: tuple[int, ...]

    _PATTERN = re.compile(r"^\s*([A-Z0-9_]+)\s*\(\s*([1-3](?:\s*,\s*[1-3])*)\s*\)\s*$")

    @classmethod
    def parse(cls, text: str) -> "CriterionSpec":
        """Parse ``"DS_MINUS(1,2)"`` style labels."""
        m = cls._PATTERN.match(text.upper())
        if not m:
            raise SpecError("criteria", f"cannot parse {text!r}; expected e.g. DS_MINUS(1,2)")
        try:
            label = C.Criterion(m.group(1))
        except ValueError:
            names = ", ".join(c.value for c in C.Criterion)
            raise SpecError("criteria", f"unknown criterion {m.group(1)!r}; choose from {names}") from None
        indices = tuple(int(x) for x in m.group(2).split(","))
        if len(indices) != label.arity:
            raise SpecError("criteria", f"{label.value} takes {label.arity} mode index(es), got {text!r}")
        if len(set(indices)) != len(indices):
            raise SpecError("criteria", f"mode indices must differ in {text!r}")
        return cls(label, indices)

    def __str__(self) -> str:
        return f"{self.label.value}({','.join(map(str, self.indices))})"

    def evaluate(self, cov) -> C.CriterionResult:
        return C.evaluate(cov, self.label, self.indices)


def parse_criteria(text: str) -> list[CriterionSpec]:
    # split on commas that are not inside parentheses
    parts = re.findall(r"[^,()]+\([^)]*\)|[^,()]+", text)
    specs = [CriterionSpec.parse(p) for p in parts if p.strip()]
    if not specs:
        raise SpecError("criteria", "at least one criterion is required")
    return specs


def parse_grid(text: str) -> tuple[float, float, float]:
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise SpecError("grid", f"expected start:stop:step, got {text!r}") from None
    return start, stop, step


@dataclass(frozen=True, kw_only=True)
class ParameterSweep:
    """A model, one swept parameter on an inclusive grid, and fixed values for the rest."""

    model: str
    swept_parameter: str | None = None
    grid: tuple[float, float, float] | None = None
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        name = MODEL_ALIASES.get(self.model)
        if name is None:
            raise SpecError("model", f"unknown model {self.model!r}; choose opa, aoki or asym")
        object.__setattr__(self, "model", name)
        swept = self.swept_parameter or DEFAULT_SWEPT[name]
        if swept not in SWEEPABLE[name]:
            raise SpecError("swept_parameter",
                            f"{swept!r} is not a parameter of {name}; choose from {SWEEPABLE[name]}")
        object.__setattr__(self, "swept_parameter", swept)
        g = self.grid if self.grid is not None else DEFAULT_GRIDS[name]
        start, stop, step = g
        if not step > 0:
            raise SpecError("grid", f"step must be > 0, got {step}")
        if start > stop:
            raise SpecError("grid", f"start ({start}) must not exceed stop ({stop})")
        object.__setattr__(self, "grid", (float(start), float(stop), float(step)))
        unknown = set(self.fixed) - set(SWEEPABLE[name])
        if unknown:
            raise SpecError("set", f"unknown parameter(s) {sorted(unknown)} for {name}")
        if swept in self.fixed:
            raise SpecError("set", f"{swept!r} is swept and cannot also be fixed")
        if name == "asym" and {"t", "zt"} <= set(self.fixed) | {swept}:
            raise SpecError("set", "give either t or zt, not both")

    def points(self) -> list[float]:
        return [float(x) for x in grid(*self.grid)]

    def params_at(self, value: float):
        values = {**DEFAULT_FIXED[self.model], **self.fixed, self.swept_parameter: value}
        return build_params(self.model, values)

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "swept_parameter": self.swept_parameter,
            "grid": list(self.grid),
            "fixed": dict(sorted(self.fixed.items())),
        }


@dataclass(frozen=True, kw_only=True)
class SweepSpec(ParameterSweep):
    criteria: tuple[CriterionSpec, ...]
    output: str = "csv"

    def __post_init__(self):
        super().__post_init__()
        if not self.criteria:
            raise SpecError("criteria", "at least one criterion is required")
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if self.output not in ("csv", "json"):
            raise SpecError("format", f"output must be csv or json, got {self.output!r}")

    def as_dict(self) -> dict:
        return {**super().as_dict(), "criteria": [str(c) for c in self.criteria]}


def point_params(model: str, fixed: dict):
    """Parameters for a single point: defaults overridden by ``fixed``."""
    name = MODEL_ALIASES.get(model)
    if name is None:
        raise SpecError("model", f"unknown model {model!r}; choose opa, aoki or asym")
    unknown = set(fixed) - set(SWEEPABLE[name])
    if unknown:
        raise SpecError("set", f"unknown parameter(s) {sorted(unknown)} for {name}")
    if {"t", "zt"} <= set(fixed):
        raise SpecError("set", "give either t or zt, not both")
    return build_params(name, {**DEFAULT_FIXED[name], **fixed})


def build_params(model: str, values: dict):
    """Construct model parameters; for ``asym``, ``zt`` is converted to ``t``."""
    if model == "opa":
        return OpaParams(values.get("kt", 0.0))
    if model == "aoki":
        return AokiParams(values.get("r", 0.0), values.get("mu", 2 / 3), values.get("nu", 0.5))
    k1 = values.get("kappa1", FIGURE_KAPPAS[0])
    k2 = values.get("kappa2", FIGURE_KAPPAS[1])
    if "zt" in values:
        return AsymmetricParams.from_zt(values["zt"], k1, k2)
    return AsymmetricParams(k1, k2, values.get("t", 0.0))


@dataclass
class Table:
    columns: list[str]
    rows: list[list]
    spec: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [dict(zip(self.columns, row)) for row in self.rows]
        return json.dumps({"spec": self.spec, "rows": rows}, indent=1) + "\n"

    def render(self, output: str) -> str:
        return self.to_csv() if output == "csv" else self.to_json()


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return NUMBER_FORMAT.format(v)
    return str(v)


def run_sweep(spec: SweepSpec) -> Table:
    names = [str(c) for c in spec.criteria]
    columns = [spec.swept_parameter] + names
    for n in names:
        columns += [f"{n}:violated", f"{n}:slack"]
    rows = []
    for x in spec.points():
        cov = covariance(spec.params_at(x))
        results = [c.evaluate(cov) for c in spec.criteria]
        row = [x] + [r.value for r in results]
        for r in results:
            row += [r.violated, r.slack]
        rows.append(row)
    return Table(columns, rows, spec.as_dict())


def classification_map(spec: ParameterSweep) -> Table:
    """One :func:`~tripartite_cv.criteria.classify` verdict per grid point."""
    columns = [spec.swept_parameter, "regime", "tripartite", "t_state",
               "bipartite_pairs", "steerable_pairs", "vlf_pairs_violated", "vlf_single_violated"]
    rows = []
    for x in spec.points():
        d = C.classify(covariance(spec.params_at(x))).as_dict()
        rows.append([x, d["regime"], d["tripartite"], d["t_state"],
                     _pairs(d["bipartite_pairs"]), _pairs(d["steerable_pairs"]),
                     _pairs(d["vlf_pairs_violated"]), " ".join(map(str, d["vlf_single_violated"]))])
    return Table(columns, rows, spec.as_dict())


def _pairs(pairs) -> str:
    return " ".join(f"{a}{b}" for a, b in pairs)


FIGURES = {
    "fig1": ("opa", ["DS_MINUS(1,2)", "VLF_PAIR(1,2)", "VLF_SINGLE(1)", "STEER3_PAIR(1)"]),
    "fig2": ("aoki", ["DS_MINUS(1,2)", "VLF_PAIR(1,2)", "VLF_SINGLE(1)"]),
    "fig3": ("asym", ["DS_MINUS(1,3)", "VLF_SINGLE(1)", "VLF_SINGLE(3)", "VLF_PAIR(1,2)", "VLF_PAIR(1,3)"]),
    "fig4": ("asym", ["REID_PAIR(1,3)", "REID_PAIR(3,1)"]),
    "fig5": ("asym", ["STEER3_ONE(1)", "STEER3_ONE(2)", "STEER3_ONE(3)"]),
}


def figure_spec(fig: str, output: str = "csv") -> SweepSpec:
    key = fig.lower()
    if key not in FIGURES:
        raise SpecError("figure", f"unknown figure {fig!r}; choose from {', '.join(FIGURES)}")
    model, labels = FIGURES[key]
    return SweepSpec(model=model, criteria=tuple(CriterionSpec.parse(s) for s in labels), output=output)


def reproduce_figure(fig: str, output: str = "csv") -> Table:
    return run_sweep(figure_spec(fig, output))
