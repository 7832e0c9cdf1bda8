"""Reading and writing run artifacts.

Every subcommand writes ``<out>/<subcommand>.json`` with a schema
version, the full run configuration and the seed, plus tabular files in
CSV or JSON. Floats are written with their shortest round-trip repr so
identical runs produce byte-identical files.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Sequence

import numpy as np
from pydantic import TypeAdapter
from pydantic import ValidationError as PydanticValidationError

from app.config import RunConfig
from app.exceptions import InvalidStateError
from app.models.bounds import BoundReport
from app.models.burgers import BlowupResult, CharacteristicSolution
from app.models.simulation import Trajectory
from app.models.state import FourierState, ModeRecord

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

TableFormat = Literal["csv", "json"]

STATE_COLUMNS = ["k", "re", "im"]
TRAJECTORY_COLUMNS = ["t", "k", "re", "im"]
TRIAL_COLUMNS = ["bound_id", "m", "trial", "ratio"]
BURGERS_COLUMNS = [
    "t",
    "z_re",
    "z_im",
    "abs_v",
    "abs_dz_v",
    "abs_denominator",
]

_records = TypeAdapter(List[ModeRecord])


def _plain(value: Any) -> Any:
    """Convert numpy scalars, complex numbers and paths for JSON."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return _plain(value.item())
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Path):
        return str(value)
    return value


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    """Write a JSON document with sorted keys."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_plain(payload), indent=2, sort_keys=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_table(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    fmt: TableFormat = "csv",
) -> Path:
    """
    Write rows as CSV or as a JSON list of objects.

    Args:
        path: Target path without suffix
        columns: Column names
        rows: Row values in column order
        fmt: "csv" or "json"

    Returns:
        Path: The written file, with the suffix of the format
    """
    target = path.with_suffix(f".{fmt}")
    target.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        table = [dict(zip(columns, _plain(list(row)))) for row in rows]
        target.write_text(
            json.dumps(table, indent=2) + "\n", encoding="utf-8"
        )
    else:
        with target.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(rows)
    logger.debug(f"Wrote {target}")
    return target


def summary_payload(
    subcommand: str, config: RunConfig, results: Dict[str, Any]
) -> Dict[str, Any]:
    """Summary document embedding the configuration and seed."""
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "seed": config.seed,
        "config": config.to_artifact(),
        "results": results,
    }


def write_summary(
    config: RunConfig, subcommand: str, results: Dict[str, Any]
) -> Path:
    """Write ``<out>/<subcommand>.json``."""
    return write_json(
        config.out / f"{subcommand}.json",
        summary_payload(subcommand, config, results),
    )


def state_rows(state: FourierState) -> List[List[Any]]:
    return [[k, float(z.real), float(z.imag)] for k, z in state.items()]


def trajectory_rows(trajectory: Trajectory) -> List[List[Any]]:
    """One row per (sample, mode)."""
    rows: List[List[Any]] = []
    for t, state in zip(trajectory.times, trajectory.states):
        rows.extend([float(t), *row] for row in state_rows(state))
    return rows


def trial_rows(reports: Sequence[BoundReport]) -> List[List[Any]]:
    return [
        [report.bound_id, report.m, index, float(ratio)]
        for report in reports
        for index, ratio in enumerate(report.ratios)
    ]


def burgers_rows(
    solutions: Sequence[CharacteristicSolution],
) -> List[List[Any]]:
    """Rows (t, z, |v|, |d_z v|, |1 + lambda phi'|) per sample point."""
    rows: List[List[Any]] = []
    for solution in solutions:
        for z, v, dz_v, denominator in zip(
            solution.z, solution.v, solution.dz_v, solution.denominator
        ):
            rows.append(
                [
                    float(solution.t),
                    float(z.real),
                    float(z.imag),
                    float(abs(v)),
                    float(abs(dz_v)),
                    float(abs(denominator)),
                ]
            )
    return rows


def blowup_rows(result: BlowupResult) -> List[List[Any]]:
    return [
        [float(t), float(d)]
        for t, d in zip(result.times, result.min_denominators)
    ]


def write_state(path: Path, state: FourierState) -> Path:
    """Write a state as JSON (``.json``) or CSV (any other suffix)."""
    if path.suffix == ".json":
        return write_json(path, state.to_dict())
    return write_table(path, STATE_COLUMNS, state_rows(state), "csv")


def load_state(path: Path, real_valued: bool = True) -> FourierState:
    """
    Read a state written by write_state.

    JSON files hold ``{"modes": [{"k", "re", "im"}, ...]}``; CSV files
    have the header k,re,im.

    Args:
        path: JSON or CSV file
        real_valued: Validate Hermitian symmetry on load

    Returns:
        FourierState: The stored state

    Raises:
        InvalidStateError: If the file is missing or malformed
    """
    if not path.is_file():
        raise InvalidStateError(f"State file not found: {path}")
    try:
        if path.suffix == ".json":
            document = json.loads(path.read_text(encoding="utf-8"))
            raw = document.get("modes", [])
            real_valued = bool(document.get("real_valued", real_valued))
        else:
            with path.open(newline="", encoding="utf-8") as handle:
                raw = list(csv.DictReader(handle))
        records = _records.validate_python(raw)
    except (
        PydanticValidationError,
        json.JSONDecodeError,
        AttributeError,
    ) as e:
        raise InvalidStateError(
            f"Malformed state file {path}", detail=str(e)
        ) from e
    state = FourierState.from_records(records, real_valued=real_valued)
    logger.info(f"Loaded state with {len(state)} modes from {path}")
    return state
