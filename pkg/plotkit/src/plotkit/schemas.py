"""Readers for the divisibility CLI's published CSV schemas.

Two file kinds are consumed:

  timeline  t,gamma_plus,gamma_minus,Gamma,omega,cp,p,blp,
            margin_cp,margin_p1,margin_p2,margin_blp,divergent
  region    Gamma,gamma_plus,region

Comment lines starting with '#' may precede the header and are preserved as
metadata (the CLI records the time unit and the gamma_minus value there).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

TIMELINE_COLUMNS = (
    "t",
    "gamma_plus",
    "gamma_minus",
    "Gamma",
    "omega",
    "cp",
    "p",
    "blp",
    "margin_cp",
    "margin_p1",
    "margin_p2",
    "margin_blp",
    "divergent",
)
REGION_COLUMNS = ("Gamma", "gamma_plus", "region")

REGION_LABELS = ("CP", "P_only", "BLP_only", "none")


@dataclass(frozen=True)
class TimelineData:
    """Parsed timeline CSV; divergent rows carry NaN rates for plot gaps."""

    t: np.ndarray
    gamma_plus: np.ndarray
    gamma_minus: np.ndarray
    Gamma: np.ndarray
    omega: np.ndarray
    cp: np.ndarray
    p: np.ndarray
    blp: np.ndarray
    divergent: np.ndarray
    time_unit: str


@dataclass(frozen=True)
class RegionData:
    """Parsed region CSV as a dense class grid."""

    Gamma: np.ndarray
    gamma_plus: np.ndarray
    classes: np.ndarray
    gamma_minus: float


def _split_comments(path):
    comments = []
    rows = []
    with open(path, newline="") as fh:
        for line in fh:
            if line.startswith("#"):
                comments.append(line.rstrip("\n"))
            else:
                rows.append(line)
    return comments, rows


def _check_columns(header, required, path):
    missing = [c for c in required if c not in header]
    if missing:
        raise ValueError(f"{path}: missing columns: {', '.join(missing)}")


def _float_or_nan(text):
    return float(text) if text != "" else math.nan


def read_timeline_csv(path) -> TimelineData:
    comments, rows = _split_comments(path)
    reader = csv.DictReader(rows)
    if reader.fieldnames is None:
        raise ValueError(f"{path}: empty file")
    _check_columns(reader.fieldnames, TIMELINE_COLUMNS, path)

    unit = "dimensionless"
    for line in comments:
        if "time unit:" in line:
            unit = line.split("time unit:", 1)[1].strip()

    records = list(reader)
    if not records:
        raise ValueError(f"{path}: no data rows")

    def col(name):
        return np.array([_float_or_nan(r[name]) for r in records])

    divergent = np.array([r["divergent"] == "1" for r in records])
    data = {name: col(name) for name in ("t", "gamma_plus", "gamma_minus", "Gamma", "omega")}
    for name in ("gamma_plus", "gamma_minus", "Gamma", "omega"):
        data[name] = np.where(divergent, math.nan, data[name])
    flags = {name: col(name).astype(float) for name in ("cp", "p", "blp")}
    for name in flags:
        flags[name] = np.where(divergent, math.nan, flags[name])

    return TimelineData(
        t=data["t"],
        gamma_plus=data["gamma_plus"],
        gamma_minus=data["gamma_minus"],
        Gamma=data["Gamma"],
        omega=data["omega"],
        cp=flags["cp"],
        p=flags["p"],
        blp=flags["blp"],
        divergent=divergent,
        time_unit=unit,
    )


def read_region_csv(path) -> RegionData:
    comments, rows = _split_comments(path)
    reader = csv.DictReader(rows)
    if reader.fieldnames is None:
        raise ValueError(f"{path}: empty file")
    _check_columns(reader.fieldnames, REGION_COLUMNS, path)

    gamma_minus = 0.0
    for line in comments:
        if "gamma_minus" in line and "=" in line:
            gamma_minus = float(line.split("=", 1)[1].strip())

    G_vals, gp_vals, labels = [], [], []
    for r in reader:
        G_vals.append(float(r["Gamma"]))
        gp_vals.append(float(r["gamma_plus"]))
        label = r["region"]
        if label not in REGION_LABELS:
            raise ValueError(f"{path}: unknown region label {label!r}")
        labels.append(REGION_LABELS.index(label))
    if not labels:
        raise ValueError(f"{path}: no data rows")

    G_axis = np.unique(G_vals)
    gp_axis = np.unique(gp_vals)
    if len(G_axis) * len(gp_axis) != len(labels):
        raise ValueError(f"{path}: rows do not form a dense grid")

    classes = np.full((len(G_axis), len(gp_axis)), -1, dtype=int)
    g_index = {v: i for i, v in enumerate(G_axis)}
    gp_index = {v: i for i, v in enumerate(gp_axis)}
    for G, gp, lab in zip(G_vals, gp_vals, labels):
        classes[g_index[G], gp_index[gp]] = lab
    if (classes < 0).any():
        raise ValueError(f"{path}: grid has missing cells")

    return RegionData(
        Gamma=G_axis, gamma_plus=gp_axis, classes=classes, gamma_minus=gamma_minus
    )
