from __future__ import annotations

from typing import Any, Sequence

import importlib_resources as resources
import yaml


with resources.as_file(resources.files("trimap.config") / "trimap.yaml") as trimap_config_file:
    with open(trimap_config_file, "rt", encoding="utf-8") as f:
        trimap_config: dict[str, Any] = yaml.safe_load(f)


def get_default(section: str, name: str) -> Any:
    """Packaged default value from `trimap.config.trimap.yaml`.

    :param section: Top-level section, e.g. `bench`.
    :param name: Key inside the section.
    :returns: Configured value.
    :raises KeyError: The section or key is not configured.
    """
    try:
        return trimap_config[section][name]
    except KeyError:
        raise KeyError(f"No default `{section}.{name}` in trimap.yaml.") from None


def parse_int_list(value: str | Sequence[int]) -> tuple[int, ...]:
    """Parse comma-separated integers such as `256,512,1024`.

    :param value: String with comma-separated integers or a sequence of integers.
    :returns: Tuple of integers in the given order.
    :raises ValueError: An item is not an integer or the list is empty.
    """
    if isinstance(value, str):
        items = [item.strip() for item in value.split(",") if item.strip()]
    else:
        items = list(value)

    if len(items) == 0:
        raise ValueError("Expected at least one integer.")

    try:
        return tuple(int(item) for item in items)
    except ValueError as e:
        raise ValueError(f"Invalid integer list `{value}`.") from e


def parse_name_list(value: str | Sequence[str]) -> tuple[str, ...]:
    """Parse comma-separated names such as `bb,ltm,rb`."""
    if isinstance(value, str):
        return tuple(item.strip() for item in value.split(",") if item.strip())
    return tuple(value)
