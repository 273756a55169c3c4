"""JSON, CSV and SVG writers."""

from __future__ import annotations

import csv
import json
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np

SCAN_HEADER = [
    "A", "B", "alpha", "beta_re", "beta_im", "gamma_re", "gamma_im", "delta_re", "delta_im",
    "mu", "cond22_min", "cond23_min", "qstar_min", "closed_form_1", "closed_form_2",
]

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"]


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_json(report: dict, path) -> Path:
    path = Path(path)
    path.write_text(dumps(report))
    return path


def emit_csv(rows: list[dict], path) -> Path:
    """Write scan rows under SCAN_HEADER; missing cells are left empty."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SCAN_HEADER, lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in SCAN_HEADER})
    return path


def write_curve_csv(curve, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(["theta", "re", "im"])
        for t, w in zip(curve.thetas, curve.samples):
            writer.writerow([repr(float(t)), repr(float(w.real)), repr(float(w.imag))])
    return path


def svg_document(curves, labels=None) -> ET.Element:
    if not curves:
        raise ValueError("at least one curve is required")
    labels = list(labels or [f"curve {i}" for i in range(len(curves))])
    allw = np.concatenate([np.asarray(c.samples) for c in curves])
    # y is flipped so the picture has the usual orientation
    xmin, xmax = float(allw.real.min()), float(allw.real.max())
    ymin, ymax = float(-allw.imag.max()), float(-allw.imag.min())
    width = max(xmax - xmin, 1e-12)
    height = max(ymax - ymin, 1e-12)
    padx, pady = 0.01 * width, 0.01 * height
    box = (xmin - padx, ymin - pady, width + 2 * padx, height + 2 * pady)
    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width="600", height=f"{600 * box[3] / box[2]:.0f}",
                      viewBox=" ".join(f"{v:.6g}" for v in box))
    for i, (c, label) in enumerate(zip(curves, labels)):
        colour = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{w.real:.8g},{-w.imag:.8g}" for w in c.samples)
        first = c.samples[0]
        pts += f" {first.real:.8g},{-first.imag:.8g}"
        line = ET.SubElement(root, "polyline", points=pts, fill="none", stroke=colour)
        line.set("stroke-width", "1.5")
        line.set("vector-effect", "non-scaling-stroke")
        ET.SubElement(line, "title").text = label
    size = 0.04 * max(box[2], box[3])
    legend = ET.SubElement(root, "g", id="legend")
    for i, label in enumerate(labels):
        text = ET.SubElement(legend, "text", x=f"{box[0] + size:.6g}",
                             y=f"{box[1] + size * (1.3 * i + 1.2):.6g}",
                             fill=PALETTE[i % len(PALETTE)])
        text.set("font-size", f"{size:.6g}")
        text.text = label
    return root


def emit_svg(curves, labels, path) -> Path:
    path = Path(path)
    root = svg_document(curves, labels)
    ET.ElementTree(root).write(path, encoding="unicode", xml_declaration=False)
    return path
