"""Sampled curves on S^3 through the chart, their R^3 images, and polyline file formats."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import PoleHit
from .exp_circle import DEDUP_TOL, make_subset
from .milnor_chart import chart_point, stereographic_array, torus_knot_curve
from .phi_map import phi_inverse

FORMATS = ("csv", "json", "obj")


def pushoff_curve(samples: int, delta: float, tol: float = DEDUP_TOL) -> np.ndarray:
    """Push-off of the diagonal circle, ``{theta - delta, theta, theta + delta}``, on S^3.

    ``theta`` runs over ``samples`` equally spaced values in ``[0, pi)``; each
    subset is pulled back to a lattice and sent through the chart.  Returns
    an ``(samples, 4)`` array of points in R^4.
    """
    out = np.empty((samples, 4))
    for k in range(samples):
        theta = math.pi * k / samples
        L = phi_inverse(make_subset([theta - delta, theta, theta + delta], tol), tol)
        out[k] = chart_point(L).as_r4()
    return out


def diagonal_curve(samples: int) -> np.ndarray:
    """Chart image of the degenerate lattices, i.e. of the diagonal circle itself."""
    from .phi_map import Degenerate

    return np.array([chart_point(Degenerate(math.pi * k / samples)).as_r4() for k in range(samples)])


def s3_grid(n_eta: int = 8, n_xi1: int = 16, n_xi2: int = 8) -> np.ndarray:
    """Hopf-coordinate grid on S^3 (1024 points by default)."""
    eta = (np.arange(n_eta) + 0.5) * (math.pi / 2) / n_eta
    xi1 = 2 * math.pi * np.arange(n_xi1) / n_xi1
    xi2 = 2 * math.pi * np.arange(n_xi2) / n_xi2
    E, X1, X2 = np.meshgrid(eta, xi1, xi2, indexing="ij")
    E, X1, X2 = E.ravel(), X1.ravel(), X2.ravel()
    return np.stack([np.cos(E) * np.cos(X1), np.cos(E) * np.sin(X1), np.sin(E) * np.cos(X2), np.sin(E) * np.sin(X2)], 1)


def select_pole(curve: np.ndarray, grid: np.ndarray | None = None) -> np.ndarray:
    """Grid point of S^3 farthest (in min distance) from the curve."""
    grid = s3_grid() if grid is None else grid
    dist = np.min(np.linalg.norm(grid[:, None, :] - curve[None, :, :], axis=-1), axis=1)
    k = int(np.argmax(dist))
    if dist[k] <= 1e-9:
        raise PoleHit("every candidate pole lies on the curve")
    return grid[k]


def to_r3(curve: np.ndarray, pole: np.ndarray | None = None) -> np.ndarray:
    pole = select_pole(curve) if pole is None else pole
    return stereographic_array(curve, pole)


def trefoil_curve(samples: int, delta: float = 0.1, kind: str = "pushoff") -> np.ndarray:
    """R^3 polyline of the push-off (``kind="pushoff"``) or the analytic knot (``"torus"``)."""
    if kind == "pushoff":
        s3 = pushoff_curve(samples, delta)
    elif kind == "torus":
        s3 = torus_knot_curve(samples)
    else:
        raise ValueError(f"unknown curve kind {kind!r}")
    return to_r3(s3)


def planar_circle(samples: int = 64, radius: float = 1.0) -> np.ndarray:
    t = 2 * math.pi * np.arange(samples) / samples
    return np.stack([radius * np.cos(t), radius * np.sin(t), np.zeros(samples)], 1)


# --- file formats -----------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_of(path: str | Path, fmt: str | None = None) -> str:
    if fmt is None:
        fmt = Path(path).suffix.lstrip(".").lower()
    if fmt not in FORMATS:
        raise ValueError(f"unrecognised polyline format {fmt!r}")
    return fmt


def dumps_polyline(points: np.ndarray, fmt: str) -> str:
    if fmt == "csv":
        rows = ["x,y,z"] + [",".join(_fmt(c) for c in p) for p in points]
        return "\n".join(rows) + "\n"
    if fmt == "json":
        return json.dumps({"points": [[float(c) for c in p] for p in points]}) + "\n"
    if fmt == "obj":
        lines = ["v " + " ".join(_fmt(c) for c in p) for p in points]
        idx = " ".join(str(i + 1) for i in range(len(points)))
        lines.append(f"l {idx} 1")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unrecognised polyline format {fmt!r}")


def loads_polyline(text: str, fmt: str) -> np.ndarray:
    if fmt == "csv":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if lines and lines[0].replace(" ", "") == "x,y,z":
            lines = lines[1:]
        pts = [[float(c) for c in ln.split(",")] for ln in lines]
    elif fmt == "json":
        data = json.loads(text)
        pts = data["points"] if isinstance(data, dict) else data
    elif fmt == "obj":
        pts = [[float(c) for c in ln.split()[1:4]] for ln in text.splitlines() if ln.startswith("v ")]
    else:
        raise ValueError(f"unrecognised polyline format {fmt!r}")
    arr = np.array(pts, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("polyline file must hold rows of three coordinates")
    return arr


def write_polyline(path: str | Path, points: np.ndarray, fmt: str | None = None) -> None:
    Path(path).write_text(dumps_polyline(points, format_of(path, fmt)))


def read_polyline(path: str | Path, fmt: str | None = None) -> np.ndarray:
    return loads_polyline(Path(path).read_text(), format_of(path, fmt))
