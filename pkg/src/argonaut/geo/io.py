"""Text fixtures for grids and matchup tables ("NA" is the missing token)."""

from __future__ import annotations

import math
from datetime import datetime
from pathlib import Path

import numpy as np

from .types import Grid4D, MatchupRow, MatchupTable, ObsPoint

NA = "NA"

MATCHUP_COLUMNS = ("time", "lat", "lon", "depth_m", "obs", "model", "valid")


def _fmt(x: float) -> str:
    return NA if math.isnan(x) else repr(float(x))


def _parse(token: str) -> float:
    return float("nan") if token == NA else float(token)


def dump_grid(grid: Grid4D, path: str | Path) -> None:
    lines = [
        f"units: {grid.units}",
        "times: " + " ".join(t.isoformat() for t in grid.times),
        "depths_m: " + " ".join(repr(float(v)) for v in grid.depths_m),
        "lats: " + " ".join(repr(float(v)) for v in grid.lats),
        "lons: " + " ".join(repr(float(v)) for v in grid.lons),
        "values:",
    ]
    flat = grid.values.ravel()  # row-major
    for start in range(0, flat.size, 8):
        lines.append(" ".join(_fmt(v) for v in flat[start : start + 8]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_grid(path: str | Path) -> Grid4D:
    text = Path(path).read_text(encoding="utf-8")
    header: dict[str, str] = {}
    value_tokens: list[str] = []
    in_values = False
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if in_values:
            value_tokens.extend(line.split())
        elif line == "values:":
            in_values = True
        else:
            key, _, rest = line.partition(":")
            header[key.strip()] = rest.strip()
    times = [datetime.fromisoformat(tok) for tok in header["times"].split()]
    depths = [float(tok) for tok in header["depths_m"].split()]
    lats = [float(tok) for tok in header["lats"].split()]
    lons = [float(tok) for tok in header["lons"].split()]
    shape = (len(times), len(depths), len(lats), len(lons))
    expected = int(np.prod(shape))
    if len(value_tokens) != expected:
        raise ValueError(f"value block has {len(value_tokens)} entries, axes imply {expected}")
    values = np.array([_parse(tok) for tok in value_tokens], dtype=np.float64).reshape(shape)
    return Grid4D(times, depths, lats, lons, values, units=header.get("units", ""))


def dump_matchup(table: MatchupTable, path: str | Path, delimiter: str = ",") -> None:
    lines = [delimiter.join(MATCHUP_COLUMNS)]
    for row in table.rows:
        lines.append(
            delimiter.join(
                [
                    row.obs.time.isoformat(),
                    repr(row.obs.lat),
                    repr(row.obs.lon),
                    repr(row.obs.depth_m),
                    _fmt(row.obs.value),
                    _fmt(row.model),
                    "true" if row.valid else "false",
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_matchup(path: str | Path, delimiter: str = ",") -> MatchupTable:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or tuple(lines[0].split(delimiter)) != MATCHUP_COLUMNS:
        raise ValueError("bad matchup header")
    rows = []
    for line in lines[1:]:
        if not line.strip():
            continue
        time_s, lat_s, lon_s, depth_s, obs_s, model_s, _valid = line.split(delimiter)
        obs = ObsPoint(
            time=datetime.fromisoformat(time_s),
            lat=float(lat_s), lon=float(lon_s), depth_m=float(depth_s),
            value=_parse(obs_s),
        )
        rows.append(MatchupRow(obs=obs, model=_parse(model_s)))
    return MatchupTable(rows=tuple(rows))
