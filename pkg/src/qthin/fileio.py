"""CSV and JSON writers shared across the package.

Complex vectors use the repo-wide ``index,re,im`` CSV layout (UTF-8, LF line
endings); power patterns export as ``u,p_linear,p_db``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

_FLOOR = 1e-300  # keeps log10 finite for exact pattern nulls


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _write_lines(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def write_complex_csv(path, values) -> None:
    vec = np.asarray(values, dtype=complex)
    lines = ["index,re,im"]
    lines += [f"{i},{_fmt(v.real)},{_fmt(v.imag)}" for i, v in enumerate(vec)]
    _write_lines(path, lines)


def read_complex_csv(path) -> np.ndarray:
    rows = Path(path).read_text(encoding="utf-8").strip().split("\n")
    if rows[0] != "index,re,im":
        raise ValueError(f"unexpected header {rows[0]!r} in {path}")
    out = np.empty(len(rows) - 1, dtype=complex)
    for row in rows[1:]:
        i, re, im = row.split(",")
        out[int(i)] = complex(float(re), float(im))
    return out


def write_power_csv(path, u, p_linear) -> None:
    p = np.maximum(np.asarray(p_linear, dtype=float), _FLOOR)
    lines = ["u,p_linear,p_db"]
    lines += [
        f"{_fmt(ui)},{_fmt(pi)},{_fmt(10.0 * np.log10(pi))}" for ui, pi in zip(u, p)
    ]
    _write_lines(path, lines)


def write_pattern_db_csv(path, u, p_linear) -> None:
    p = np.maximum(np.asarray(p_linear, dtype=float), _FLOOR)
    lines = ["u,p_db"]
    lines += [f"{_fmt(ui)},{_fmt(10.0 * np.log10(pi))}" for ui, pi in zip(u, p)]
    _write_lines(path, lines)


def write_probabilities_csv(path, p) -> None:
    lines = ["n,p"]
    lines += [f"{i},{_fmt(v)}" for i, v in enumerate(p)]
    _write_lines(path, lines)


def write_sorted_probabilities_csv(path, sorted_p) -> None:
    lines = ["t,p"]
    lines += [f"{t},{_fmt(v)}" for t, v in enumerate(sorted_p)]
    _write_lines(path, lines)


def write_noise_sweep_csv(path, rows) -> None:
    """Rows of (snr_db, seed, rank t, sorted probability)."""
    lines = ["snr_db,seed,t,p_sorted"]
    lines += [f"{_fmt(s)},{seed},{t},{_fmt(p)}" for s, seed, t, p in rows]
    _write_lines(path, lines)


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def write_text(path, text) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text if text.endswith("\n") else text + "\n")
