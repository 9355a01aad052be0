"""Report validation against the shipped JSON schema."""
from __future__ import annotations

import json
from importlib import resources

import jsonschema

_SCHEMA = None


def report_schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        text = resources.files("qkcolor.schemas").joinpath(
            "report.schema.json").read_text()
        _SCHEMA = json.loads(text)
    return _SCHEMA


def validate_report(report: dict) -> dict:
    """Raises jsonschema.ValidationError on a malformed report."""
    jsonschema.validate(report, report_schema())
    return report
