import json

from src import spine as sp
from src.export import (
    export_dot,
    export_report_json,
    marked_graph_to_dot,
    shape_records,
    shape_to_dot,
    shapes_json,
)
from src.report import ClaimReport, SuiteReport


def test_shape_records_ids_and_fields():
    records = shape_records(sp.enumerate_shapes(3))
    assert [r.shape_id for r in records] == ["s3-1", "s3-2"]
    assert sorted(r.star_class for r in records) == ["FStar", "ZeroStar"]
    pointed = shape_records(sp.enumerate_shapes(3, pointed=True), pointed=True)
    assert pointed[0].shape_id == "p3-1"
    assert all(r.base is not None for r in pointed)


def test_shapes_json_is_a_list():
    data = json.loads(shapes_json(shape_records(sp.enumerate_shapes(2))))
    assert data[0]["vertices"] == 2
    assert data[0]["twist_rank"] == 0


def test_shape_dot_marks_base_and_labels():
    shape = sp.GraphShape(3, 3, ((0, 1), (0, 2)), frozenset({0, 1, 2}), base=0)
    text = shape_to_dot(shape, "f3")
    assert text.startswith('graph "f3" {')
    assert "shape=doublecircle" in text
    assert text.count("style=filled") == 3
    assert "0 -- 1;" in text


def test_marked_graph_dot_uses_labels():
    text = marked_graph_to_dot(sp.standard_zero_star(3), "z3")
    for i in (1, 2, 3):
        assert f'label="{i}"' in text
    assert 'label=""' in text


def test_export_writes_files(tmp_path):
    report = SuiteReport(
        scope="w4",
        n_min=4,
        n_max=4,
        seed=1,
        claims=[ClaimReport(claim_id="w4.x", reference="r", status="skipped")],
    ).tally()
    out = tmp_path / "report.json"
    export_report_json(report, str(out))
    assert json.loads(out.read_text())["totals"]["skipped"] == 1

    dot = tmp_path / "nested" / "g.dot"
    export_dot("graph g {}\n", str(dot))
    assert dot.read_text() == "graph g {}\n"
