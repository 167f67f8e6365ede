"""Writers and readers for CSV curves, OBJ meshes, SVG polylines and JSON."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable

import numpy as np

from .curves import SampledCurve, SledCurve, is_closed
from .errors import FormatMismatch, IoFailure
from .mesh import SurfaceMesh

FORMATS = ("OBJ", "CSV", "SVG", "JSON")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _open(path, mode="w"):
    try:
        return open(path, mode, newline="" if "b" not in mode else None)
    except OSError as exc:
        raise IoFailure(f"cannot open {path}: {exc}") from exc


def write_curve_csv(curve: SampledCurve | SledCurve, path) -> None:
    """``s,x,z`` for profile curves, ``u,x1,x2`` for sled-plane curves."""
    if isinstance(curve, SledCurve):
        header, cols = ("u", "x1", "x2"), (curve.s, curve.u1, curve.u2)
    elif isinstance(curve, SampledCurve) and not curve.unit_speed:
        # heart curves are sampled in u, not arc length
        header, cols = ("u", "x1", "x2"), (curve.s, curve.x, curve.z)
    else:
        header, cols = ("s", "x", "z"), (curve.s, curve.x, curve.z)
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([fmt(v) for v in row])


def read_curve_csv(path) -> SampledCurve:
    """Read an ``s,x,z`` (or ``u,x1,x2``) file as a :class:`SampledCurve`."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if not rows or [h.strip() for h in rows[0]] not in (["s", "x", "z"], ["u", "x1", "x2"]):
        raise FormatMismatch(f"{path}: expected header 's,x,z' or 'u,x1,x2'")
    unit = [h.strip() for h in rows[0]][0] == "s"
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise FormatMismatch(f"{path}: non-numeric entry ({exc})") from exc
    if data.ndim != 2 or data.shape[1] != 3:
        raise FormatMismatch(f"{path}: expected three columns")
    curve = SampledCurve(data[:, 0], data[:, 1], data[:, 2], unit_speed=unit)
    curve.closed = is_closed(curve.x, curve.z)
    if unit and not curve.is_unit_speed():
        curve.unit_speed = False
    return curve


def write_obj(mesh: SurfaceMesh, path) -> None:
    with _open(path) as fh:
        fh.write(f"# {json.dumps(mesh.provenance, sort_keys=True)}\n")
        for v in mesh.vertices:
            fh.write(f"v {fmt(v[0])} {fmt(v[1])} {fmt(v[2])}\n")
        for n in mesh.normals:
            fh.write(f"vn {fmt(n[0])} {fmt(n[1])} {fmt(n[2])}\n")
        for f in mesh.faces + 1:
            fh.write("f " + " ".join(f"{i}//{i}" for i in f) + "\n")


def read_obj(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vertices, normals and 1-based faces of an OBJ written by :func:`write_obj`."""
    verts, norms, faces = [], [], []
    with open(path) as fh:
        for line in fh:
            tag, *rest = line.split() or [""]
            if tag == "v":
                verts.append([float(t) for t in rest])
            elif tag == "vn":
                norms.append([float(t) for t in rest])
            elif tag == "f":
                faces.append([int(t.split("/")[0]) for t in rest])
    return np.array(verts), np.array(norms), np.array(faces, dtype=int)


def write_svg(
    curves: Iterable[np.ndarray], path, stroke_width: float | None = None,
    colors: Iterable[str] | None = None,
) -> None:
    """Planar polylines in an SVG 1.1 document.

    The y axis is flipped so the picture keeps the mathematical orientation;
    the viewBox is the data bounding box plus a 5% margin.
    """
    polys = [np.asarray(c, dtype=float) for c in curves]
    if not polys:
        raise FormatMismatch("nothing to draw")
    allp = np.vstack(polys)
    xmin, ymin = allp[:, 0].min(), (-allp[:, 1]).min()
    xmax, ymax = allp[:, 0].max(), (-allp[:, 1]).max()
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    mx, my = 0.05 * max(xmax - xmin, 1e-12 * span), 0.05 * max(ymax - ymin, 1e-12 * span)
    vb = (xmin - mx, ymin - my, xmax - xmin + 2 * mx, ymax - ymin + 2 * my)
    sw = stroke_width if stroke_width is not None else span / 400.0
    palette = list(colors) if colors is not None else ["#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad"]
    with _open(path) as fh:
        fh.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        fh.write(
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{" ".join(fmt(v) for v in vb)}" width="800" '
            f'height="{max(1, int(round(800 * vb[3] / vb[2])))}">\n'
        )
        for k, p in enumerate(polys):
            pts = " ".join(f"{fmt(x)},{fmt(-y)}" for x, y in p)
            fh.write(
                f'  <polyline fill="none" stroke="{palette[k % len(palette)]}" '
                f'stroke-width="{fmt(sw)}" points="{pts}"/>\n'
            )
        fh.write("</svg>\n")


def _json(obj, indent=0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, (bool, type(None), str, int)) and not isinstance(obj, float):
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return fmt(x)
    if isinstance(obj, np.integer):
        return str(int(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise FormatMismatch(f"cannot serialize {type(obj).__name__} as JSON")


def dumps_json(obj) -> str:
    """JSON text with every float printed to 17 significant digits."""
    return _json(obj) + "\n"


def write_json(obj, path) -> None:
    with _open(path) as fh:
        fh.write(dumps_json(obj))


def export(payload, path, format: str) -> None:
    """Write ``payload`` (curve, sled, mesh or report) in the requested format."""
    f = format.upper()
    if f not in FORMATS:
        raise FormatMismatch(f"unknown format {format!r}")
    path = Path(path)
    if f == "OBJ":
        if not isinstance(payload, SurfaceMesh):
            raise FormatMismatch("OBJ export needs a SurfaceMesh")
        write_obj(payload, path)
    elif f == "CSV":
        if not isinstance(payload, (SampledCurve, SledCurve)):
            raise FormatMismatch("CSV export needs a curve")
        write_curve_csv(payload, path)
    elif f == "SVG":
        if isinstance(payload, (SampledCurve, SledCurve)):
            write_svg([payload.points], path)
        elif isinstance(payload, (list, tuple)) and all(
            isinstance(c, (SampledCurve, SledCurve)) for c in payload
        ):
            write_svg([c.points for c in payload], path)
        else:
            raise FormatMismatch("SVG export needs one or more curves")
    else:
        if hasattr(payload, "to_dict"):
            payload = payload.to_dict()
        if not isinstance(payload, (dict, list)):
            raise FormatMismatch("JSON export needs a report or a dict")
        write_json(payload, path)
