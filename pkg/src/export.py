# src/export.py
"""Export of verification reports, shape listings and graphs"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from .gilbert_presentation import relator_dump
from .report import ShapeRecord, SuiteReport
from .spine import GraphShape, SpineVertex, classify_star, shape_automorphism_count, twist_kernel_rank


def report_json(report: SuiteReport) -> str:
    return report.model_dump_json(indent=2)


def export_report_json(report: SuiteReport, output_path: str) -> None:
    """Write a suite report as JSON"""
    Path(output_path).write_text(report_json(report), encoding='utf-8')


def shape_record(shape: GraphShape, shape_id: str) -> ShapeRecord:
    return ShapeRecord(
        shape_id=shape_id,
        vertices=shape.order,
        leaves=len(shape.leaves()),
        labeled=sorted(shape.labeled),
        rank=shape.n,
        star_class=classify_star(shape).value,
        twist_rank=twist_kernel_rank(shape),
        edges=[list(e) for e in shape.edges],
        base=shape.base,
        automorphisms=shape_automorphism_count(shape),
    )


def shape_records(shapes: Iterable[GraphShape], pointed: bool = False) -> List[ShapeRecord]:
    prefix = "p" if pointed else "s"
    records = []
    for k, s in enumerate(shapes, 1):
        records.append(shape_record(s, f"{prefix}{s.n}-{k}"))
    return records


def shapes_json(records: List[ShapeRecord]) -> str:
    return json.dumps([r.model_dump() for r in records], indent=2, ensure_ascii=False)


def shape_to_dot(shape: GraphShape, name: str = "shape", labels: Optional[Dict[int, str]] = None) -> str:
    """DOT text for a shape; labeled vertices are filled, the base is double-circled"""
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v in shape.vertices:
        attrs = []
        text = labels.get(v) if labels else None
        if text is None:
            text = f"v{v}" if v in shape.labeled else ""
        attrs.append(f'label="{text}"')
        if v in shape.labeled:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightgray")
        else:
            attrs.append("width=0.15")
        if v == shape.base:
            attrs.append("shape=doublecircle")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in shape.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def marked_graph_to_dot(vertex: SpineVertex, name: str = "marked") -> str:
    labels = {v: str(w) for v, w in vertex.labels().items()}
    return shape_to_dot(vertex.shape, name, labels)


def export_dot(text: str, output_path: str) -> None:
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')


def export_relator_dump(n: int, output_path: str) -> None:
    """Write the relator instances for rank n, one per line"""
    Path(output_path).write_text(relator_dump(n) + "\n", encoding='utf-8')
