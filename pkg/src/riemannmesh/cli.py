"""Command-line front end: configure a surface job, build it, write files.

Exit codes: 0 success, 2 usage error, 3 charisma/function incompatibility,
4 I/O error, 5 domain error escaping the pipeline. Output is atomic: files
are staged to temporaries and renamed only once everything rendered.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .branches import BranchIndexError, DomainError, IndexedFunction
from .charisma import (
    CharismaCompatibilityError,
    CharismaKind,
    compatible_kinds,
    is_compatible,
)
from .formats import csv_text, json_text, obj_text, ply_text, seams_json_text
from .mesh import (
    DEFAULT_LOG_BRANCHES,
    DEFAULT_WELD_TOL,
    DomainGrid,
    GridError,
    GridMismatchError,
    SurfaceMesh,
    assemble_surface,
    build_range_chart,
    build_sheet,
)

__all__ = ["JobSpec", "build_mesh", "main", "parse_args", "run"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCOMPATIBLE = 3
EXIT_IO = 4
EXIT_DOMAIN = 5

_FORMAT_SUFFIX = {"ply": ".ply", "obj": ".obj", "json": ".json", "csv": ".csv"}

# one preset per reference surface; unset fields fall back to the globals
FIGURE_PRESETS: dict[str, dict] = {
    "3a": {"function": "root:3", "charisma": "index", "walls": True},
    "3b-range": {"function": "root:3", "charisma": "index", "range_chart": True},
    "4": {"function": "root:3", "charisma": "sin"},
    "5": {"function": "root:3", "charisma": "cos"},
    "6": {"function": "log", "charisma": "imag", "branches": "-2..2"},
}


@dataclass(frozen=True)
class JobSpec:
    """Fully validated configuration of one build-and-export run."""

    function: IndexedFunction
    kind: CharismaKind
    branches: tuple[int, ...]
    grid: DomainGrid
    weld: bool = True
    weld_tol: float = DEFAULT_WELD_TOL
    walls: bool = False
    fmt: str = "ply"
    output: Path = Path("surface.ply")
    range_chart: bool = False


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="riemannmesh",
        description="Build colored, triangulated Riemann-surface meshes for "
        "indexed branches of the complex logarithm and n-th roots.",
    )
    p.add_argument("--function", metavar="{log|root:N}",
                   help="multivalued function to plot (default root:3)")
    p.add_argument("--charisma", choices=[k.value for k in CharismaKind],
                   help="height function lifting the sheets (default sin)")
    p.add_argument("--branches", metavar="KMIN..KMAX",
                   help="branch index range, intersected with the admissible set "
                   "(default: the whole admissible set; -2..2 for log)")
    p.add_argument("--r-min", type=float, help="inner sample radius (default 0.05)")
    p.add_argument("--r-max", type=float, help="outer sample radius (default 2)")
    p.add_argument("--n-r", type=int, help="radial sample count (default 40)")
    p.add_argument("--n-theta", type=int, help="angular step count (default 240)")
    p.add_argument("--radial-spacing", choices=("linear", "log"),
                   help="radial spacing rule (default linear)")
    p.add_argument("--weld", action=argparse.BooleanOptionalAction,
                   help="merge cut seams whose charisma is continuous (default on)")
    p.add_argument("--weld-tol", type=float,
                   help=f"pointwise seam gap tolerance (default {DEFAULT_WELD_TOL})")
    p.add_argument("--walls", action=argparse.BooleanOptionalAction,
                   help="bridge open seams with wall quads (index charisma only; default off)")
    p.add_argument("--format", choices=sorted(_FORMAT_SUFFIX),
                   help="output format (default ply)")
    p.add_argument("--output", "-o", metavar="PATH",
                   help="output path (default derived from function and charisma)")
    p.add_argument("--figure", choices=list(FIGURE_PRESETS),
                   help="preset reproducing one of the documented reference surfaces")
    return p


def _parse_branch_range(text: str) -> range:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
    elif re.fullmatch(r"-?\d+", text):
        lo = hi = int(text)
    else:
        raise ValueError(f"expected KMIN..KMAX or a single integer, got {text!r}")
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _normalize_argv(argv: list[str]) -> list[str]:
    # join "--branches -2..2" into one token; argparse would otherwise read
    # the leading-dash value as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--branches":
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append(f"--branches={val}")
        else:
            out.append(tok)
    return out


def parse_args(argv: list[str] | None = None) -> JobSpec:
    """Parse and validate CLI flags into a JobSpec.

    Usage problems exit with code 2 via argparse; a charisma/function
    mismatch raises CharismaCompatibilityError for main() to map to 3.
    """
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    ns = parser.parse_args(_normalize_argv(list(argv)))
    preset = FIGURE_PRESETS[ns.figure] if ns.figure else {}

    def setting(name: str, default):
        value = getattr(ns, name)
        return value if value is not None else preset.get(name, default)

    try:
        function = IndexedFunction.from_label(setting("function", "root:3"))
    except ValueError as e:
        parser.error(f"argument --function: {e}")
    kind = CharismaKind(setting("charisma", "sin"))
    range_chart = bool(preset.get("range_chart", False))
    if not range_chart and not is_compatible(kind, function):
        raise CharismaCompatibilityError(
            f"charisma '{kind.value}' is not defined for {function.label()}; "
            f"valid: {', '.join(k.value for k in compatible_kinds(function))}"
        )

    r_min = setting("r_min", 0.05)
    r_max = setting("r_max", 2.0)
    n_r = setting("n_r", 40)
    n_theta = setting("n_theta", 240)
    spacing = setting("radial_spacing", "linear")
    if not (math.isfinite(r_min) and r_min > 0):
        parser.error("argument --r-min: must be a positive number")
    if not (math.isfinite(r_max) and r_max > r_min):
        parser.error("argument --r-max: must exceed --r-min")
    if n_r < 2:
        parser.error("argument --n-r: must be at least 2")
    if n_theta < 8:
        parser.error("argument --n-theta: must be at least 8")
    grid = DomainGrid(r_min, r_max, n_r, n_theta, spacing)

    if range_chart:
        branches: tuple[int, ...] = ()
    else:
        requested = setting("branches", None)
        if requested is None:
            admissible = function.branch_indices()
            branches = tuple(admissible if admissible is not None else DEFAULT_LOG_BRANCHES)
        else:
            try:
                asked = _parse_branch_range(requested)
            except ValueError as e:
                parser.error(f"argument --branches: {e}")
            branches = tuple(k for k in asked if function.is_admissible(k))
            if not branches:
                parser.error(
                    f"argument --branches: no admissible branch of {function.label()} in {requested!r}"
                )

    fmt = setting("format", "ply")
    out = setting("output", None)
    if out is None:
        stem = function.label().replace(":", "")
        stem += "_range" if range_chart else f"_{kind.value}"
        out = stem + _FORMAT_SUFFIX[fmt]

    return JobSpec(
        function=function,
        kind=kind,
        branches=branches,
        grid=grid,
        weld=bool(setting("weld", True)),
        weld_tol=setting("weld_tol", DEFAULT_WELD_TOL),
        walls=bool(setting("walls", False)),
        fmt=fmt,
        output=Path(out),
        range_chart=range_chart,
    )


def build_mesh(job: JobSpec) -> SurfaceMesh:
    """Run the mesh pipeline for a job; no file I/O."""
    if job.range_chart:
        return build_range_chart(job.function, job.grid)
    sheets = [build_sheet(job.function, k, job.kind, job.grid) for k in job.branches]
    return assemble_surface(sheets, weld=job.weld, weld_tol=job.weld_tol, walls=job.walls)


def render_outputs(job: JobSpec, mesh: SurfaceMesh) -> dict[Path, str]:
    """Serialize the mesh and its seam sidecar to {path: text}."""
    files: dict[Path, str] = {}
    if job.fmt == "ply":
        files[job.output] = ply_text(mesh)
    elif job.fmt == "obj":
        mtl_path = job.output.with_suffix(".mtl")
        obj, mtl = obj_text(mesh, mtl_path.name)
        files[job.output] = obj
        files[mtl_path] = mtl
    elif job.fmt == "json":
        files[job.output] = json_text(mesh)
    elif job.fmt == "csv":
        files[job.output] = csv_text(mesh)
    else:
        raise ValueError(f"unknown format {job.fmt!r}")
    files[job.output.with_suffix(".seams.json")] = seams_json_text(mesh, job.weld_tol)
    return files


def _write_atomic(files: dict[Path, str]) -> None:
    # stage everything, then rename; an error leaves no partial output
    staged: list[tuple[str, Path]] = []
    try:
        for path, text in files.items():
            fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.", suffix=".tmp")
            staged.append((tmp, path))
            with os.fdopen(fd, "w", newline="\n") as fh:
                fh.write(text)
        while staged:
            tmp, path = staged.pop()
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            try:
                os.unlink(tmp)
            except OSError:
                pass


def run(job: JobSpec) -> int:
    """Build the job's mesh and write it plus the seam sidecar.

    Returns the process exit code; error text goes to stderr.
    """
    try:
        mesh = build_mesh(job)
        _write_atomic(render_outputs(job, mesh))
    except OSError as e:
        print(f"riemannmesh: i/o error: {e}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, BranchIndexError, GridError, GridMismatchError,
            CharismaCompatibilityError) as e:
        print(f"riemannmesh: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        job = parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    except CharismaCompatibilityError as e:
        print(f"riemannmesh: {e}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    return run(job)
