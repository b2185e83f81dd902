"""Deterministic CSV/JSON/SVG emission for the experiment harness.

CSV and JSON are written with shortest round-trip float formatting so a
given config always produces byte-identical files.  SVG plots are plain
polyline renders of orthographically projected curves; every SVG has a
CSV twin carrying the exact plotted numbers.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .quadratic import QuadraticTrajectory, RotationTrajectory

SCHEMA_PREFIX = "so3cubics"

# fixed palette: numeric reference, first-order, second-order, baseline
CURVE_COLORS = {
    "reference": "#1f6feb",
    "first": "#2da44e",
    "second": "#cf222e",
    "taylor2": "#57606a",
    "approx": "#cf222e",
}


def write_csv(path: Path, header: list[str], rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    return path


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return int(x)
    return x


def write_json(path: Path, payload: dict) -> Path:
    path = Path(path)
    with path.open("w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def quadratic_to_rows(traj: QuadraticTrajectory, times=None):
    """Rows (t, V, V', V'') sampled at the given times (grid by default)."""
    times = traj.grid if times is None else np.asarray(times, dtype=float)
    v = np.atleast_2d(traj.eval(times, 0))
    v1 = np.atleast_2d(traj.eval(times, 1))
    v2 = np.atleast_2d(traj.eval(times, 2))
    for i, t in enumerate(times):
        yield [t, *v[i], *v1[i], *v2[i]]


QUADRATIC_CSV_HEADER = [
    "t",
    "v_x", "v_y", "v_z",
    "dv_x", "dv_y", "dv_z",
    "ddv_x", "ddv_y", "ddv_z",
]


def write_quadratic_csv(path: Path, traj: QuadraticTrajectory, times=None) -> Path:
    return write_csv(path, QUADRATIC_CSV_HEADER, quadratic_to_rows(traj, times))


def quadratic_to_dict(traj: QuadraticTrajectory) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}-quadratic-v1",
        "grid": traj.grid.tolist(),
        "v": traj.v.tolist(),
        "dv": traj.v1.tolist(),
        "ddv": traj.v2.tolist(),
        "constant": traj.C.tolist(),
        "accel": traj.c,
        "null": traj.null,
    }


def write_quadratic_json(path: Path, traj: QuadraticTrajectory) -> Path:
    return write_json(path, quadratic_to_dict(traj))


ROTATION_CSV_HEADER = ["t"] + [f"r{i}{j}" for i in range(3) for j in range(3)]


def write_rotation_csv(path: Path, traj: RotationTrajectory, stride: int = 1) -> Path:
    rows = ([t, *r.reshape(9)] for t, r in
            zip(traj.grid[::stride], traj.rotations[::stride]))
    return write_csv(path, ROTATION_CSV_HEADER, rows)


def rotation_to_dict(traj: RotationTrajectory, stride: int = 1) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}-rotation-v1",
        "grid": traj.grid[::stride].tolist(),
        "rotations": traj.rotations[::stride].reshape(-1, 9).tolist(),
    }


def write_rotation_json(path: Path, traj: RotationTrajectory, stride: int = 1) -> Path:
    return write_json(path, rotation_to_dict(traj, stride))


@dataclass
class SvgCurve:
    """One polyline: projected 2D points plus optional labelled markers."""

    name: str
    points: np.ndarray          # (N, 2)
    color: str = "#1f6feb"
    dashed: bool = False
    markers: list = field(default_factory=list)   # [(x, y, label)]


def project_points(points3d: np.ndarray, projection: np.ndarray) -> np.ndarray:
    """Orthographic projection of (N, 3) points onto two axis rows."""
    return np.asarray(points3d, dtype=float) @ np.asarray(projection, dtype=float).T


def render_svg(curves: list[SvgCurve], title: str = "",
               width: int = 720, height: int = 540, margin: float = 56.0) -> str:
    pts = np.vstack([c.points for c in curves if len(c.points)])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    pad = 0.05 * span
    lo, hi = lo - pad, hi + pad
    span = hi - lo

    def to_px(p):
        x = margin + (p[0] - lo[0]) / span[0] * (width - 2 * margin)
        y = height - margin - (p[1] - lo[1]) / span[1] * (height - 2 * margin)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="#d0d7de"/>',
    ]
    if title:
        parts.append(f'<text x="{width / 2}" y="{margin - 20}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="14">{title}</text>')
    for corner, anchor in ((lo, "start"), (hi, "end")):
        x, y = to_px(corner)
        parts.append(f'<text x="{x:.1f}" y="{height - margin + 16:.1f}" text-anchor="{anchor}" '
                     f'font-family="sans-serif" font-size="10">{corner[0]:.3g}</text>')
        parts.append(f'<text x="{margin - 6:.1f}" y="{y:.1f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="10">{corner[1]:.3g}</text>')
    legend_y = margin + 4.0
    for curve in curves:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(to_px, curve.points))
        dash = ' stroke-dasharray="6,4"' if curve.dashed else ""
        parts.append(f'<polyline fill="none" stroke="{curve.color}" stroke-width="1.5"'
                     f'{dash} points="{coords}"/>')
        parts.append(f'<text x="{width - margin + 4:.1f}" y="{legend_y:.1f}" '
                     f'font-family="sans-serif" font-size="10" fill="{curve.color}">'
                     f'{curve.name}</text>')
        legend_y += 14.0
        for mx, my, label in curve.markers:
            x, y = to_px((mx, my))
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{curve.color}"/>')
            if label:
                parts.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" '
                             f'font-family="sans-serif" font-size="9">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def write_svg(path: Path, curves: list[SvgCurve], title: str = "") -> Path:
    path = Path(path)
    path.write_text(render_svg(curves, title=title))
    return path
