"""CSV profile files and key-value metadata sidecars."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

HEADER = (
    "r_over_ro",
    "u_r_over_Uo",
    "P_rr",
    "P_tt",
    "Z",
    "Y",
    "u_r_classical_over_Uo",
    "delta",
)
RAW_HEADER = ("r", "u_r", "P_rr", "P_tt", "Z", "Y", "u_r_classical", "delta")
CLASSICAL_HEADER = ("r_over_ro", "u_r_classical_over_Uo")


def fmt(x: float) -> str:
    # 17 significant digits: exact round trip for doubles
    return f"{float(x):.16e}"


def profile_columns(prof, raw: bool = False) -> tuple[tuple[str, ...], list[np.ndarray]]:
    """Table columns for a :class:`RadialProfile`.

    Normalized output divides r by r_o and displacements by U_o. With
    ``raw`` the physical values are kept. The deviation column is always
    normalized by U_o, and is NaN when U_o = 0.
    """
    f = prof.fields
    ro, Uo = prof.geometry.r_o, prof.boundary.U_o
    delta = prof.delta if prof.delta is not None else np.full_like(f.r, np.nan)
    if raw:
        return RAW_HEADER, [f.r, f.u_r, f.P_rr, f.P_tt, f.Z, f.Y, prof.u_classical, delta]
    if Uo == 0:
        raise ValueError("U_o = 0: normalized output is undefined, use raw output")
    return HEADER, [f.r / ro, f.u_r / Uo, f.P_rr, f.P_tt, f.Z, f.Y, prof.u_classical / Uo, delta]


def render_csv(header, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_text(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def write_profile_csv(path, prof, raw: bool = False):
    header, cols = profile_columns(prof, raw)
    write_text(path, render_csv(header, cols))


def read_csv(path) -> dict[str, np.ndarray]:
    """Column name -> float array."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    data = np.array(body, dtype=float).reshape(len(body), len(header))
    return {name: data[:, k] for k, name in enumerate(header)}


def render_metadata(items: dict) -> str:
    lines = []
    for key, value in items.items():
        if isinstance(value, float):
            value = repr(value)
        elif isinstance(value, (list, tuple)):
            value = ", ".join(repr(v) if isinstance(v, float) else str(v) for v in value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def read_metadata(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if "=" in line and not line.lstrip().startswith("#"):
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out
