from __future__ import annotations

from typing import TYPE_CHECKING

from pytest_cases import parametrize_with_cases


if TYPE_CHECKING:
    from trimap import Platform


def case_platform() -> "Platform":
    from trimap import Platform

    return Platform()


def case_platform_packaged() -> "Platform":
    from trimap import Platform

    return Platform.from_env()


@parametrize_with_cases("test_object", cases=".", prefix="case_")
def test_structure_unstructure(test_object: "Platform") -> None:
    from attrs import fields

    from trimap.core.io import yaml_converter

    # unstructure
    test_object_unstructured = yaml_converter.unstructure(test_object)

    # structure
    test_object_structured = yaml_converter.structure(test_object_unstructured, test_object.__class__)

    # compare
    assert test_object == test_object_structured

    # all init=True attributes should be present, and no init=False attributes
    for field in fields(test_object.__class__):
        if field.init:
            assert field.name in test_object_unstructured
        else:
            assert field.name not in test_object_unstructured


def test_csv_row_names() -> None:
    from trimap import BenchmarkRecord
    from trimap.core.io import CSV_COLUMNS, csv_converter

    record = BenchmarkRecord("ltm", "edm", 64, 16, "newton", 5, 1200, 1.25, 0.1, rsd=0.02, flagged=True)
    row = csv_converter.unstructure(record)

    # renamed columns, timing stability is not part of the row
    assert tuple(row) == CSV_COLUMNS
    assert row["strategy"] == "ltm"
    assert row["sqrt"] == "newton"
    assert row["median_ns"] == 1200

    parsed = csv_converter.structure({k: str(v) for k, v in row.items()}, BenchmarkRecord)
    assert parsed == record
    assert parsed.flagged is False
