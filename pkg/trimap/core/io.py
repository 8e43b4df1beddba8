from __future__ import annotations

from typing import Any

from attrs import asdict, fields
from cattrs import Converter
from cattrs.gen import make_dict_structure_fn, make_dict_unstructure_fn, override
from cattrs.preconf.pyyaml import make_converter as make_yaml_converter

from trimap.core.models import BenchmarkRecord
from trimap.core.platform import Platform, RegisteredComponent


yaml_converter = make_yaml_converter()


def unstructure_attrs_without_init_false(obj: Any) -> dict[str, Any]:
    obj_dict = asdict(obj)

    # drop init=False attributes
    for f in fields(obj.__class__):
        if not f.init:
            del obj_dict[f.name]

    return obj_dict


def structure_platform(platform_dict: dict[str, Any], _: type[Platform]) -> Platform:
    platform_dict["registered_components"] = {
        k: RegisteredComponent(**v) for k, v in platform_dict.get("registered_components", {}).items()
    }
    return Platform(**platform_dict)


yaml_converter.register_unstructure_hook(Platform, unstructure_attrs_without_init_false)
yaml_converter.register_structure_hook(Platform, structure_platform)


# benchmark records <-> csv rows
CSV_COLUMNS = (
    "strategy",
    "workload",
    "n",
    "rho",
    "sqrt",
    "reps",
    "median_ns",
    "improvement",
    "waste_fraction",
)

_csv_renames = {
    "sqrt_strategy": override(rename="sqrt"),
    "repetitions": override(rename="reps"),
    "median_time": override(rename="median_ns"),
    "improvement_I": override(rename="improvement"),
    "rsd": override(omit=True),
    "flagged": override(omit=True),
}

csv_converter = Converter()
csv_converter.register_unstructure_hook(
    BenchmarkRecord, make_dict_unstructure_fn(BenchmarkRecord, csv_converter, **_csv_renames)
)
csv_converter.register_structure_hook(
    BenchmarkRecord, make_dict_structure_fn(BenchmarkRecord, csv_converter, **_csv_renames)
)
