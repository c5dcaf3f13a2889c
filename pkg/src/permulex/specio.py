"""Morphism spec files and JSON analysis reports.

Exact values are written as strings (``"3/4"``, ``"(3-sqrt(5))/2"``) and
ball values as ``"mid +/- rad"``, so every number re-parses with
:func:`~permulex.scalars.parse_scalar`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import AnalysisRejection, ParseError, ValidationError
from .order import PositionType
from .pipeline import Analysis
from .scalars import format_scalar, parse_scalar
from .words import Morphism

BUNDLED = ("thue-morse", "fibonacci", "fibonacci-squared", "g-nonmonotone", "inseparable-001-011")
REPORT_VERSION = 1


@dataclass(frozen=True)
class MorphismSpec:
    name: str
    alphabet_size: int
    images: tuple
    seed: int = 0
    power: int = 1
    type_order: tuple | None = None

    @property
    def morphism(self) -> Morphism:
        return Morphism.from_strings(self.images, name=self.name)

    def to_dict(self) -> dict:
        d = {"name": self.name, "alphabet_size": self.alphabet_size, "images": list(self.images),
             "seed": self.seed}
        if self.power != 1:
            d["power"] = self.power
        if self.type_order is not None:
            d["type_order"] = [list(t) for t in self.type_order]
        return d


def _int_field(data, key, default=None):
    if key not in data:
        if default is None:
            raise ParseError("missing required field", field=key)
        return default
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {v!r}", field=key)
    return v


def spec_from_dict(data, default_name: str = "unnamed") -> MorphismSpec:
    """Validate a decoded spec object."""
    if not isinstance(data, dict):
        raise ParseError("spec must be a JSON object")
    unknown = set(data) - {"name", "alphabet_size", "images", "seed", "power", "type_order"}
    if unknown:
        raise ParseError(f"unknown field(s) {sorted(unknown)}", field=sorted(unknown)[0])
    name = data.get("name", default_name)
    if not isinstance(name, str):
        raise ParseError("name must be a string", field="name")
    q = _int_field(data, "alphabet_size")
    if not 1 <= q <= 10:
        raise ValidationError(f"alphabet_size must be in 1..10 for digit images, got {q}")
    images = data.get("images")
    if not isinstance(images, list) or not all(isinstance(s, str) for s in images):
        raise ParseError("images must be a list of strings", field="images")
    if len(images) != q:
        raise ValidationError(f"expected {q} images, got {len(images)} (missing image)")
    for a, img in enumerate(images):
        if not img.isdigit() and img != "":
            raise ParseError(f"image of letter {a} is not a digit string: {img!r}", field="images")
    seed = _int_field(data, "seed", 0)
    if not 0 <= seed < q:
        raise ValidationError(f"seed {seed} outside alphabet of size {q}")
    power = _int_field(data, "power", 1)
    if power < 1:
        raise ValidationError(f"power must be >= 1, got {power}")
    order = data.get("type_order")
    if order is not None:
        try:
            order = tuple(PositionType(int(a), int(p)) for a, p in order)
        except (TypeError, ValueError):
            raise ParseError("type_order must be a list of [letter, index] pairs", field="type_order") from None
    spec = MorphismSpec(name, q, tuple(images), seed, power, order)
    spec.morphism  # validates letters and nonempty images
    return spec


def parse_spec_text(text: str, default_name: str = "unnamed") -> MorphismSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return spec_from_dict(data, default_name)


def parse_spec(path) -> MorphismSpec:
    """Read a spec file; a bare bundled name such as ``"thue-morse"`` also works."""
    p = Path(path)
    if not p.exists() and str(path) in BUNDLED:
        return bundled_spec(str(path))
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ValidationError(f"spec file not found: {path}") from None
    return parse_spec_text(text, p.stem)


def bundled_spec(name: str) -> MorphismSpec:
    if name not in BUNDLED:
        raise ValidationError(f"no bundled spec {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files("permulex").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return parse_spec_text(text, name)


# -- reports ----------------------------------------------------------------

def _interval(iv) -> list:
    return [format_scalar(iv.lo), format_scalar(iv.hi)]


def analysis_report(analysis: Analysis, spec: MorphismSpec | None = None) -> dict:
    """JSON-ready report of every stage of the construction."""
    sp = analysis.spectral
    table = analysis.type_table
    layout = analysis.interval_morphism.layout
    mono = analysis.monotonicity
    report = {
        "version": REPORT_VERSION,
        "status": "ok",
        "name": spec.name if spec else analysis.base.name,
        "images": ["".join(map(str, img)) for img in analysis.morphism.images],
        "seed": analysis.seed,
        "power": analysis.power,
        "primitivity": {"primitive": analysis.primitivity.primitive, "power": analysis.primitivity.power},
        "theta": format_scalar(sp.theta),
        "mu": [format_scalar(x) for x in sp.mu],
        "min_poly": list(sp.min_poly),
        "precision": sp.precision,
        "monotonicity": {"verdict": mono.status.value, "witness": mono.witness, "depth": mono.depth},
        "type_order": {
            "order": [list(t) for t in layout.order],
            "verdict": table.verdict.value,
            "evidence": {"prefix": table.evidence[0], "depth": table.evidence[1]},
            "measured_order": None if table.order is None else [list(t) for t in table.order],
        },
        "layout": {
            "I": [_interval(iv) for iv in layout.letter_intervals],
            "J": [{"type": list(t), "interval": _interval(iv)} for t, iv in layout.type_intervals],
        },
        "start": format_scalar(analysis.interval_morphism.start),
        "orientation": layout.orientation.value,
    }
    if analysis.power_search is not None:
        report["power_search"] = {"power": analysis.power_search.power,
                                  "verdicts": {str(k): v.status.value for k, v in analysis.power_search.verdicts.items()}}
    return report


def rejection_report(exc: AnalysisRejection, name: str | None = None) -> dict:
    witness = getattr(exc, "witness", None)
    return {"version": REPORT_VERSION, "status": "rejected", "name": name, "reason": exc.reason,
            "witness": list(witness) if witness is not None else None, "message": str(exc)}


def report_values(report: dict) -> dict:
    """Re-parse the numeric strings of a report into scalars."""
    prec = report.get("precision")
    parse = lambda s: parse_scalar(s, prec + 8 if prec else None)
    return {
        "theta": parse(report["theta"]),
        "mu": [parse(s) for s in report["mu"]],
        "I": [[parse(s) for s in iv] for iv in report["layout"]["I"]],
        "J": [[parse(s) for s in e["interval"]] for e in report["layout"]["J"]],
        "start": parse(report["start"]),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
