"""Deterministic text serialization of surface meshes.

All floats are written with their shortest round-trip decimal
representation, so identical meshes serialize to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .mesh import Seam, SurfaceMesh, branch_color

__all__ = ["PlyData", "csv_text", "json_text", "obj_text", "ply_text", "read_ply", "seams_json_text"]


def _fmt(v: float) -> str:
    return repr(float(v))


def ply_text(mesh: SurfaceMesh) -> str:
    """Ascii PLY 1.0 with per-vertex uchar RGB; z carries the charisma."""
    lines = [
        "ply",
        "format ascii 1.0",
        "comment riemannmesh surface",
        f"element vertex {mesh.n_vertices}",
        "property double x",
        "property double y",
        "property double z",
        "property uchar red",
        "property uchar green",
        "property uchar blue",
        f"element face {mesh.n_faces}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    for (x, y, c), (r, g, b) in zip(mesh.positions, mesh.colors):
        lines.append(f"{_fmt(x)} {_fmt(y)} {_fmt(c)} {r} {g} {b}")
    for a, b2, c2 in mesh.faces:
        lines.append(f"3 {a} {b2} {c2}")
    return "\n".join(lines) + "\n"


@dataclass
class PlyData:
    vertices: np.ndarray  # (N, 3) float
    colors: np.ndarray    # (N, 3) int
    faces: np.ndarray     # (M, 3) int


def read_ply(text: str) -> PlyData:
    """Parse an ascii PLY of the layout ply_text writes."""
    lines = text.splitlines()
    if lines[:2] != ["ply", "format ascii 1.0"]:
        raise ValueError("not an ascii PLY 1.0 file")
    counts: list[tuple[str, int]] = []
    body = 0
    for i, line in enumerate(lines[2:], start=2):
        if line.startswith("element "):
            _, name, num = line.split()
            counts.append((name, int(num)))
        elif line == "end_header":
            body = i + 1
            break
    else:
        raise ValueError("missing end_header")
    sizes = dict(counts)
    n_vertices = sizes.get("vertex", 0)
    n_faces = sizes.get("face", 0)
    vertices = np.empty((n_vertices, 3), dtype=float)
    colors = np.empty((n_vertices, 3), dtype=int)
    for i in range(n_vertices):
        parts = lines[body + i].split()
        vertices[i] = [float(p) for p in parts[:3]]
        colors[i] = [int(p) for p in parts[3:6]]
    faces = np.empty((n_faces, 3), dtype=int)
    for i in range(n_faces):
        parts = lines[body + n_vertices + i].split()
        if parts[0] != "3":
            raise ValueError("only triangle faces are supported")
        faces[i] = [int(p) for p in parts[1:4]]
    return PlyData(vertices, colors, faces)


def obj_text(mesh: SurfaceMesh, mtl_filename: str) -> tuple[str, str]:
    """Wavefront OBJ plus MTL; branch color is carried by one material per
    branch since core OBJ has no vertex colors."""
    obj = [f"mtllib {mtl_filename}"]
    for x, y, c in mesh.positions:
        obj.append(f"v {_fmt(x)} {_fmt(y)} {_fmt(c)}")
    current = None
    for (a, b, c2), k in zip(mesh.faces, mesh.face_branch):
        if k != current:
            obj.append(f"g branch_{k}")
            obj.append(f"usemtl branch_{k}")
            current = k
        obj.append(f"f {a + 1} {b + 1} {c2 + 1}")

    mtl = []
    seen: dict[int, None] = {}
    for k in mesh.face_branch:
        seen.setdefault(int(k), None)
    for k in seen:
        r, g, b = branch_color(k)
        mtl.append(f"newmtl branch_{k}")
        mtl.append(f"Kd {_fmt(r / 255)} {_fmt(g / 255)} {_fmt(b / 255)}")
    return "\n".join(obj) + "\n", "\n".join(mtl) + "\n"


def _seam_record(s: Seam) -> dict:
    return {
        "upper_branch": s.upper_branch,
        "lower_branch": s.lower_branch,
        "max_gap": s.max_gap,
        "mean_gap": s.mean_gap,
        "welded": s.welded,
    }


def json_text(mesh: SurfaceMesh) -> str:
    """Versioned JSON with full surface-point records."""
    doc = {
        "schema": 1,
        "function": mesh.function.label(),
        "charisma": mesh.kind.value,
        "chart": "range" if mesh.range_chart else "surface",
        "welded": mesh.welded,
        "sheets": [int(k) for k in mesh.sheet_branches],
        "vertices": [
            {"x": p.x, "y": p.y, "c": p.c, "k": p.k, "w": [p.w.real, p.w.imag]}
            for p in mesh.iter_points()
        ],
        "faces": [[int(a), int(b), int(c)] for a, b, c in mesh.faces],
        "seams": [_seam_record(s) for s in mesh.seams],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def csv_text(mesh: SurfaceMesh) -> str:
    """Vertex table with header x,y,c,k."""
    lines = ["x,y,c,k"]
    for p in mesh.iter_points():
        lines.append(f"{_fmt(p.x)},{_fmt(p.y)},{_fmt(p.c)},{p.k}")
    return "\n".join(lines) + "\n"


def seams_json_text(mesh: SurfaceMesh, weld_tol: float) -> str:
    """Sidecar seam report: pre-weld gap statistics per sheet pair."""
    doc = {
        "schema": 1,
        "function": mesh.function.label(),
        "charisma": mesh.kind.value,
        "weld_tol": weld_tol,
        "welded": mesh.welded,
        "seams": [_seam_record(s) for s in mesh.seams],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"
