"""
Parsing of --group option values.

A group option is a catalog name (``Q8``, ``C2xD8``, ``SD(8,2,3)``), an
inline JSON object, or ``@path`` naming a JSON file holding the object.
"""

import json
from pathlib import Path
from typing import Union

from ..errors import InputError


def parse_group_option(value: str) -> Union[str, dict]:
    """
    Turn a --group value into a descriptor.

    Raises:
        InputError: If inline or file JSON cannot be read
    """
    value = value.strip()
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError as ex:
            raise InputError(f"Group descriptor file not found: {path}") from ex
        except json.JSONDecodeError as ex:
            raise InputError(f"Invalid JSON in group descriptor file {path}: {ex}") from ex
    if value.startswith("{"):
        try:
            return json.loads(value)
        except json.JSONDecodeError as ex:
            raise InputError(f"Invalid inline group descriptor: {ex}") from ex
    return value


def group_label(descriptor: Union[str, dict, None]) -> str:
    """Short label for logs."""
    if descriptor is None:
        return "-"
    if isinstance(descriptor, str):
        return descriptor
    return str(descriptor.get("name") or descriptor.get("kind") or "custom")
