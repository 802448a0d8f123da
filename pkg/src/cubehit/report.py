"""Output envelopes shared by every CLI command: text, CSV and JSON rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

FORMATS = ("text", "csv", "json")


def decimal(v) -> str:
    """Decimal rendering to 15 significant digits."""
    return format(float(v), ".15g")


def exact_str(v) -> str:
    """Rational rendering ``p/q`` in lowest terms (integers stay bare)."""
    return str(Fraction(v))


def render_value(v, exact: bool) -> str:
    if isinstance(v, bool) or isinstance(v, str):
        return str(v).lower() if isinstance(v, bool) else v
    if isinstance(v, (Fraction, int)):
        return exact_str(v) if exact else (str(v) if isinstance(v, int) else decimal(v))
    if isinstance(v, float):
        return decimal(v)
    if v is None:
        return ""
    return str(v)


def json_value(v, exact: bool):
    """JSON-ready value; every number becomes a string in exact mode."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, dict):
        return {k: json_value(x, exact) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [json_value(x, exact) for x in v]
    if exact:
        return render_value(v, True)
    if isinstance(v, Fraction):
        return float(v)
    return v


@dataclass
class Envelope:
    command: str
    parameters: dict[str, Any]
    columns: list[str]
    results: list[dict[str, Any]]
    exact: bool
    summary: dict[str, Any] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)
    text: Callable[["Envelope"], list[str]] | None = None

    def fmt(self, v) -> str:
        return render_value(v, self.exact)

    def to_json_obj(self) -> dict:
        return {
            "command": self.command,
            "format": "json",
            "exact": self.exact,
            "parameters": json_value(self.parameters, self.exact),
            "columns": list(self.columns),
            "results": [{c: json_value(row.get(c), self.exact) for c in self.columns} for row in self.results],
            "summary": json_value(self.summary, self.exact),
            "metadata": json_value(self.metadata, False),
        }


def render(env: Envelope, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(env.to_json_obj(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(env.columns)
        for row in env.results:
            w.writerow([env.fmt(row.get(c)) for c in env.columns])
        return buf.getvalue()
    if fmt == "text":
        if env.text is not None:
            lines = env.text(env)
        else:
            widths = [max([len(c)] + [len(env.fmt(r.get(c))) for r in env.results]) for c in env.columns]
            lines = ["  ".join(c.ljust(wd) for c, wd in zip(env.columns, widths)).rstrip()]
            for r in env.results:
                lines.append("  ".join(env.fmt(r.get(c)).ljust(wd) for c, wd in zip(env.columns, widths)).rstrip())
        return "".join(line + "\n" for line in lines)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def load_schema() -> dict:
    return json.loads(resources.files("cubehit").joinpath("output_schema.json").read_text())


def validate(obj: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``obj`` is not a valid envelope."""
    import jsonschema

    jsonschema.validate(obj, load_schema())
