import json

import pytest

from conftest import workbench
from reltilt.io import (
    InputError,
    complex_from_dict,
    complex_to_dict,
    load_algebra,
    load_subcategory,
    parse_subcategory,
    report_json,
    representation_from_dict,
    representation_to_dict,
    subcategory_to_dict,
)


def test_builtin_names():
    assert load_algebra("A3").dim == 6
    assert load_algebra("A4r3").dim == 9
    with pytest.raises(InputError):
        load_algebra("A3r1")


def test_subcategory_forms_agree(tmp_path):
    wb = workbench("A2")
    by_label = parse_subcategory(wb, ["M(10)", "P2[1]"])
    assert parse_subcategory(wb, "M10,P2[1]") == by_label
    assert parse_subcategory(wb, [["mod", 2], ["shift", 1]]) == by_label
    as_dicts = subcategory_to_dict(wb, by_label)
    assert parse_subcategory(wb, as_dicts["complexes"]) == by_label
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"objects": as_dicts["labels"]}))
    assert load_subcategory(wb, str(path)) == by_label
    with pytest.raises(InputError):
        parse_subcategory(wb, ["nonsense"])


def test_module_and_complex_round_trip():
    wb = workbench("A4r3")
    for i, M in enumerate(wb.atlas.modules):
        again = representation_from_dict(wb.algebra, representation_to_dict(M))
        assert again.key() == M.key()
        C = wb.obj(("mod", i))
        D = complex_from_dict(wb.algebra, complex_to_dict(C))
        assert (D.p1, D.p0) == (C.p1, C.p0) and (D.d == C.d).all()


def test_report_is_versioned_and_sorted():
    text = report_json({"b": 1, "a": (1, 2)})
    assert json.loads(text) == {"schema": 1, "a": [1, 2], "b": 1}
    assert text.index('"a"') < text.index('"b"')
