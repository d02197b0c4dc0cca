"""Structural validation of agent outputs.

Agent output contracts are ordinary JSON Schema documents checked with the
``jsonschema`` library. Strictness is the point: required fields, enumerated
values, numeric ranges, and no extra fields. :func:`strict_object` builds
object schemas with that posture so agent definitions stay terse.
"""

from __future__ import annotations

from typing import Any

from jsonschema import Draft202012Validator

from ..errors import ConfigurationError


def strict_object(
    properties: dict[str, Any],
    required: list[str] | None = None,
) -> dict[str, Any]:
    """An object schema that rejects extra fields; all properties required
    unless an explicit ``required`` list is given."""
    return {
        "type": "object",
        "properties": properties,
        "required": list(properties) if required is None else required,
        "additionalProperties": False,
    }


def unit_interval() -> dict[str, Any]:
    return {"type": "number", "minimum": 0.0, "maximum": 1.0}


def check_schema(schema: dict[str, Any]) -> None:
    """Raise ConfigurationError if the schema document itself is malformed."""
    try:
        Draft202012Validator.check_schema(schema)
    except Exception as exc:
        raise ConfigurationError(f"malformed output schema: {exc}") from exc


def validate_payload(payload: Any, schema: dict[str, Any]) -> list[str]:
    """Validate *payload* against *schema*; return error messages (empty = valid)."""
    validator = Draft202012Validator(schema)
    errors = []
    for err in sorted(validator.iter_errors(payload), key=lambda e: list(e.absolute_path)):
        location = "/".join(str(p) for p in err.absolute_path) or "<root>"
        errors.append(f"{location}: {err.message}")
    return errors
