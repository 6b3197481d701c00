"""Parsers for the command-line literals.

Function specs look like ``name{key=value,...}``; values are JSON
(numbers, lists, nested lists) or bare words such as ``positive``.
"""
import json
from typing import Any, Dict, List, Tuple

from glft.utils.exceptions import UsageError


def split_top_level(text: str, sep: str = ',') -> List[str]:
    """Split on `sep` outside brackets and braces."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in '[{(':
            depth += 1
        elif ch in ']})':
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append(''.join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise UsageError(f"unbalanced brackets in {text!r}")
    parts.append(''.join(current))
    return parts


def parse_value(text: str) -> Any:
    """JSON value, falling back to the bare word."""
    text = text.strip()
    if not text:
        raise UsageError("empty parameter value")
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_function_spec(text: str) -> Tuple[str, Dict[str, Any]]:
    """Parse ``name{key=value,...}`` into (name, params).

    Examples:
        >>> parse_function_spec("exp")
        ('exp', {})
        >>> parse_function_spec("affine{a=[3],b=2}")
        ('affine', {'a': [3], 'b': 2})
    """
    text = text.strip()
    if not text:
        raise UsageError("empty function spec")
    if '{' not in text:
        return text, {}
    if not text.endswith('}'):
        raise UsageError(f"function spec must end with '}}': {text!r}")
    name, body = text.split('{', 1)
    name = name.strip()
    body = body[:-1].strip()
    if not name:
        raise UsageError(f"function spec without a name: {text!r}")
    params: Dict[str, Any] = {}
    if not body:
        return name, params
    for item in split_top_level(body):
        if '=' not in item:
            raise UsageError(f"parameter must be key=value, got {item!r}")
        key, value = item.split('=', 1)
        key = key.strip()
        if not key:
            raise UsageError(f"empty parameter name in {text!r}")
        params[key] = parse_value(value)
    return name, params


def format_function_spec(name: str, params: Dict[str, Any]) -> str:
    """Inverse of parse_function_spec (compact JSON values)."""
    if not params:
        return name
    body = ','.join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in params.items())
    return f"{name}{{{body}}}"


def parse_json_literal(text: str, what: str = "literal") -> Any:
    """Parse a JSON literal given on the command line."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON {what}: {e}") from e
